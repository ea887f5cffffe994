"""Command-line interface: ``qgcomb <command> [flags]``.

All tabular output is CSV (default) or JSON with the same field names.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import math
import os
import sys
import tempfile
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path

from .amplitudes import DEFAULT_LADDER, trace_identity_ladder
from .ensemble import mc_form_factor, quadrature_form_factor, rmt_reference
from .graph import free_phase_map, graph_from_spec
from .orbits import enumerate_families, famsum_form_factor
from .ring import (
    QUARTER_PI,
    RingGraph,
    k_approx,
    k_asymptotic,
    k_cue,
    k_exact,
    k_po_eta,
    k_po_quarter,
)
from .suite import CHECK_NAMES, verify_identities

COMMANDS = ("verify-identities", "form-factor", "mc", "trace-identity", "famsum", "rmt-report")


def parse_n(text: str) -> list[int]:
    """``7``, ``1:40`` / ``1-40`` (inclusive) or ``1,2,3,5``."""
    out = []
    for part in text.split(","):
        part = part.strip()
        sep = ":" if ":" in part else ("-" if "-" in part.lstrip("-") else None)
        if sep:
            lo, hi = part.split(sep, 1)
            out += range(int(lo), int(hi) + 1)
        else:
            out.append(int(part))
    if not out or min(out) < 1:
        raise ValueError(f"--n must name positive integers, got {text!r}")
    return out


@dataclass
class RunConfig:
    command: str
    max_n: int = 40
    order: int = 30
    m_max: int = 20
    nu_max: int = 4
    samples: int = 100_000
    seed: int = 0
    eps: tuple[float, ...] = DEFAULT_LADDER
    nu: int = 1
    kappa: int = 0
    n0: int = 0
    graph: str = "ring"
    beta: int = 2
    n: list[int] = field(default_factory=lambda: [1])
    out: str | None = None
    format: str = "csv"
    workers: int = 1
    fault: str | None = None

    def validate(self):
        if self.command not in COMMANDS:
            raise ValueError(f"unknown command {self.command!r}")
        if self.format not in ("csv", "json"):
            raise ValueError("format must be csv or json")
        if self.beta not in (1, 2):
            raise ValueError("beta must be 1 or 2")
        if self.command == "verify-identities":
            if not 2 <= self.max_n <= 200:
                raise ValueError("max-n must lie in [2, 200]")
            if not 2 <= self.order <= 60:
                raise ValueError("order must lie in [2, 60]")
            if self.m_max < 1:
                raise ValueError("m-max must be >= 1")
            if self.fault is not None and self.fault not in CHECK_NAMES:
                raise ValueError(f"unknown check {self.fault!r}")
        if self.command in ("form-factor", "mc", "famsum", "rmt-report"):
            if not self.n or min(self.n) < 1:
                raise ValueError("n values must be >= 1")
        if self.command in ("mc", "rmt-report") and self.samples < 100:
            raise ValueError("samples must be >= 100")
        if self.command == "trace-identity":
            if not 0 <= self.kappa <= self.nu:
                raise ValueError("need 0 <= kappa <= nu")
            if not self.eps or min(self.eps) <= 0:
                raise ValueError("eps values must be positive")
        if self.command == "form-factor" and not self.graph.startswith("ring"):
            raise ValueError("form-factor supports only the ring graph")
        return self


def _fmt(x) -> str:
    if isinstance(x, Fraction):
        return str(x)
    if isinstance(x, float):
        return repr(x)
    return "" if x is None else str(x)


def _jsonable(x):
    if isinstance(x, Fraction):
        return str(x)
    if isinstance(x, float) and not math.isfinite(x):
        return str(x)
    return x


def render(rows: list[dict], fmt: str, meta: dict | None = None) -> str:
    if fmt == "json":
        payload = {"rows": [{k: _jsonable(v) for k, v in r.items()} for r in rows]}
        if meta:
            payload.update({k: _jsonable(v) for k, v in meta.items()})
        return json.dumps(payload, indent=2) + "\n"
    buf = io.StringIO()
    if rows:
        w = csv.DictWriter(buf, fieldnames=list(rows[0]), lineterminator="\n")
        w.writeheader()
        for r in rows:
            w.writerow({k: _fmt(v) for k, v in r.items()})
    return buf.getvalue()


def emit(text: str, out: str | None):
    if out is None:
        sys.stdout.write(text)
        return
    path = Path(out)
    fd, tmp = tempfile.mkstemp(dir=path.parent or ".", prefix=f".{path.name}.")
    with os.fdopen(fd, "w") as fh:
        fh.write(text)
    os.replace(tmp, path)


def _exact_if_known(system, beta: int, n: int):
    if isinstance(system, RingGraph) and beta == 2:
        if system.eta == QUARTER_PI:
            return k_exact(n)
        return k_po_eta(n, system.eta)
    if free_phase_map(system, beta).shape[1] <= 3 and n <= 40:
        return quadrature_form_factor(system, beta, n)
    return None


def cmd_verify_identities(cfg: RunConfig) -> int:
    results = verify_identities(cfg.max_n, cfg.order, cfg.m_max, cfg.nu_max, fault=cfg.fault)
    ok = all(r.passed for r in results)
    if cfg.format == "json":
        rows = [
            {"check": r.name, "passed": r.passed, "cases": r.cases,
             "counterexample": r.counterexample, "seconds": round(r.seconds, 3)}
            for r in results
        ]
        emit(render(rows, "json", {"all_passed": ok}), cfg.out)
    else:
        emit("\n".join(r.line() for r in results) + "\n", cfg.out)
    return 0 if ok else 1


def cmd_form_factor(cfg: RunConfig) -> int:
    rows = []
    for n in cfg.n:
        ke, kp, kc = k_exact(n), k_po_quarter(n), k_cue(n)
        rows.append({
            "n": n, "K_exact": float(ke), "K_po": float(kp), "K_approx": k_approx(n),
            "K_cue": float(kc), "K_asymptotic": k_asymptotic(n), "K_exact_rational": ke, "K_po_rational": kp, "K_cue_rational": kc,
        })
    emit(render(rows, cfg.format), cfg.out)
    return 0 if all(r["K_exact_rational"] == r["K_po_rational"] for r in rows) else 1


def cmd_mc(cfg: RunConfig) -> int:
    system = graph_from_spec(cfg.graph)
    rows = []
    for n in cfg.n:
        res = mc_form_factor(system, cfg.beta, n, cfg.samples, cfg.seed, workers=cfg.workers)
        rows.append({"n": n, "estimate": res.estimate, "stderr": res.stderr,
                     "exact_if_known": _exact_if_known(system, cfg.beta, n)})
    emit(render(rows, cfg.format), cfg.out)
    return 0


def cmd_trace_identity(cfg: RunConfig) -> int:
    ladder = trace_identity_ladder(cfg.nu, cfg.kappa, ladder=cfg.eps, n0=cfg.n0)
    rows = [{"epsilon": r.epsilon, "sum": r.sum, "target": r.target, "abs_error": r.abs_error}
            for r in ladder]
    emit(render(rows, cfg.format), cfg.out)
    errs = [r.abs_error for r in sorted(ladder, key=lambda r: -r.epsilon)]
    return 0 if all(a > b for a, b in zip(errs, errs[1:])) else 1


def cmd_famsum(cfg: RunConfig) -> int:
    system = graph_from_spec(cfg.graph)
    rows = []
    totals = {}
    for n in cfg.n:
        table = enumerate_families(system, cfg.beta, n)
        totals[n] = famsum_form_factor(table)
        for key, e in sorted(table.families.items(), key=lambda kv: kv[0].counts):
            rows.append({"n": n, "family_key": key.label(), "orbit_count": e.orbits,
                         "amp_re": e.amplitude.real, "amp_im": e.amplitude.imag})
        rows.append({"n": n, "family_key": "form_factor", "orbit_count": sum(
            e.orbits for e in table.families.values()), "amp_re": totals[n], "amp_im": 0.0})
    emit(render(rows, cfg.format, {"form_factor": {str(k): v for k, v in totals.items()}}), cfg.out)
    return 0


def cmd_rmt_report(cfg: RunConfig) -> int:
    """Descriptive, never gating: MC form factors of complete graphs beside COE/CUE curves."""
    rows = []
    specs = cfg.graph.split(",") if cfg.graph != "ring" else ["complete:4", "complete:5"]
    for spec in specs:
        g = graph_from_spec(spec)
        for beta in (1, 2):
            for n in cfg.n:
                res = mc_form_factor(g, beta, n, cfg.samples, cfg.seed, workers=cfg.workers)
                tau = n / g.n_directed
                rows.append({"graph": spec, "beta": beta, "n": n, "tau": tau,
                             "estimate": res.estimate, "stderr": res.stderr,
                             "rmt": rmt_reference(tau, beta)})
    emit(render(rows, cfg.format), cfg.out)
    return 0


HANDLERS = {
    "verify-identities": cmd_verify_identities,
    "form-factor": cmd_form_factor,
    "mc": cmd_mc,
    "trace-identity": cmd_trace_identity,
    "famsum": cmd_famsum,
    "rmt-report": cmd_rmt_report,
}


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="qgcomb", description=__doc__.splitlines()[0])
    p.add_argument("command", choices=COMMANDS)
    p.add_argument("--max-n", type=int, default=40)
    p.add_argument("--order", type=int, default=30)
    p.add_argument("--m-max", type=int, default=20)
    p.add_argument("--nu-max", type=int, default=4)
    p.add_argument("--samples", type=int, default=100_000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--eps", default=",".join(map(str, DEFAULT_LADDER)),
                   help="comma-separated epsilon ladder")
    p.add_argument("--nu", type=int, default=1)
    p.add_argument("--kappa", type=int, default=0)
    p.add_argument("--n0", type=int, default=0)
    p.add_argument("--graph", default="ring",
                   help="ring[:eta], complete:V, path:V, single, or a graph file")
    p.add_argument("--beta", type=int, choices=(1, 2), default=2)
    p.add_argument("--n", default=None, help="int, range a:b, or list a,b,c")
    p.add_argument("--out", default=None)
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--inject-fault", dest="fault", default=None, help=argparse.SUPPRESS)
    return p


_DEFAULT_N = {"form-factor": "1:40", "mc": "1,2,3,5,8", "famsum": "5", "rmt-report": "1:20"}


def config_from_args(argv=None) -> RunConfig:
    a = build_parser().parse_args(argv)
    n_text = a.n if a.n is not None else _DEFAULT_N.get(a.command, "1")
    return RunConfig(
        command=a.command, max_n=a.max_n, order=a.order, m_max=a.m_max, nu_max=a.nu_max,
        samples=a.samples, seed=a.seed, eps=tuple(float(e) for e in a.eps.split(",")),
        nu=a.nu, kappa=a.kappa, n0=a.n0, graph=a.graph, beta=a.beta, n=parse_n(n_text),
        out=a.out, format=a.format, workers=a.workers, fault=a.fault,
    ).validate()


def main(argv=None) -> int:
    try:
        cfg = config_from_args(argv)
        return HANDLERS[cfg.command](cfg)
    except (ValueError, ArithmeticError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
