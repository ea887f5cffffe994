"""Batch runner for the exact identity checks, used by ``qgcomb verify-identities``."""
from __future__ import annotations

import time
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable, Iterator

from . import exact, series
from .amplitudes import amplitude_table, kravtchouk_amplitude_agrees, trace_identity_ladder
from .ring import k_avg_po, k_cue, k_exact, k_po_quarter

LADDER_TOL = 0.05


@dataclass
class CheckResult:
    name: str
    passed: bool
    cases: int
    counterexample: str | None = None
    seconds: float = 0.0

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        msg = f"{status} {self.name} ({self.cases} cases, {self.seconds:.2f}s)"
        if self.counterexample:
            msg += f" first counterexample: {self.counterexample}"
        return msg


Case = tuple[str, object, object]  # (label, got, expected)


class _Corrupted:
    def __init__(self, value):
        self.value = value

    def __eq__(self, other):
        return False

    def __repr__(self):
        return f"corrupted({self.value})"


def _run(name: str, cases: Iterable[Case], fault: str | None) -> CheckResult:
    t0 = time.perf_counter()
    count = 0
    bad = None
    cases = list(cases)
    for k, (label, got, want) in enumerate(cases):
        if fault == name and k == len(cases) - 1:
            want = _Corrupted(want)  # test hook
        count += 1
        if got != want:
            bad = f"{label}: got {got}, expected {want!r}"
            break
    return CheckResult(name, bad is None, count, bad, time.perf_counter() - t0)


def _ci3(max_n: int) -> Iterator[Case]:
    for n in range(2, max_n + 1):
        for q in range(1, n):
            yield f"(n={n}, q={q})", exact.s_sum(n, q), 1


def _recursion(max_n: int) -> Iterator[Case]:
    for n in range(2, max_n + 1):
        for q in range(1, n):
            top = min(q + 1, n - q) + 1
            for a in range(1, top + 1):
                for b in range(1, top + 1):
                    yield f"(n={n}, q={q}, nu={a}, nu'={b})", exact.recursion_residual(n, q, a, b), 0


def _ci1(max_n: int) -> Iterator[Case]:
    for n in range(2, max_n + 1):
        for nu in range(1, n // 2 + 1):
            lhs, mid, rhs = exact.ci1_sides(n, nu)
            yield f"(n={n}, nu={nu})", (lhs, mid), (rhs, rhs)


def _nq_kravtchouk(max_st: int) -> Iterator[Case]:
    for s in range(1, max_st + 1):
        for t in range(1, max_st + 1):
            yield f"(s={s}, t={t})", exact.check_nq_kravtchouk(s, t), True


def _ci2(m_max: int) -> Iterator[Case]:
    for m in range(1, m_max + 1):
        for parity in ("even", "odd"):
            lhs, rhs, _ = exact.ci2_check(m, parity)
            yield f"(m={m}, {parity})", lhs, rhs


def _coefficients(a, b, label: str) -> Iterator[Case]:
    for k in range(a.order + 1):
        yield f"{label} x^{k}", a[k], b[k]


def _series(order: int) -> Iterator[Case]:
    yield from _coefficients(series.g1_po(order), series.g1_closed(order), "G1")
    yield from _coefficients(series.g2_po(order), series.g2_closed(order), "G2")


def _bivariate(order: int) -> Iterator[Case]:
    po, closed = series.g_bivariate_po(order), series.g_bivariate_closed(order)
    for s in range(order + 1):
        for t in range(order + 1 - s):
            yield f"g x^{s} y^{t}", po[(s, t)], closed[(s, t)]


def _big_g(order: int) -> Iterator[Case]:
    spec, po = series.big_g_spectral(order), series.big_g_po(order)
    yield from _coefficients(spec, po, "G")
    for n in range(1, order + 1):
        yield f"G x^{n} vs 2^n K(n)", spec[n], 2**n * k_exact(n)


def _ring_equivalence(max_n: int) -> Iterator[Case]:
    for n in range(1, max_n + 1):
        yield f"n={n}", k_exact(n), k_po_quarter(n)


def _cue(max_n: int) -> Iterator[Case]:
    for n in range(1, max_n + 1):
        yield f"n={n}", k_avg_po(n), k_cue(n)


def _amplitudes(max_n: int) -> Iterator[Case]:
    for n in range(1, max_n + 1):
        yield f"sum_q A({n},q)^2", sum(amplitude_table(n).squares(), Fraction(0)), 2 * k_exact(n)
    for n in range(1, min(max_n, 20) + 1):
        yield f"Kravtchouk form of A({n},.)", kravtchouk_amplitude_agrees(n), True


def _trace_ladder(nu_max: int) -> Iterator[Case]:
    for nu in range(1, nu_max + 1):
        for kappa in range(nu + 1):
            rows = trace_identity_ladder(nu, kappa)
            errs = [r.abs_error for r in rows]
            ok = all(a > b for a, b in zip(errs, errs[1:])) and errs[-1] < LADDER_TOL
            yield f"(nu={nu}, kappa={kappa}) errors {['%.4f' % e for e in errs]}", ok, True


def verify_identities(
    max_n: int = 40,
    order: int = 30,
    m_max: int = 20,
    nu_max: int = 4,
    fault: str | None = None,
    progress: Callable[[CheckResult], None] | None = None,
) -> list[CheckResult]:
    rec_n = min(max_n, 40)
    suites = [
        ("ci3", _ci3(max_n)),
        ("recursion", _recursion(rec_n)),
        ("ci1", _ci1(max_n)),
        ("nq-kravtchouk", _nq_kravtchouk(min(max_n, 40))),
        ("ci2", _ci2(m_max)),
        ("g1-g2", _series(order)),
        ("g-bivariate", _bivariate(min(order, 24))),
        ("G-spectral-vs-po", _big_g(order)),
        ("k-exact-vs-po", _ring_equivalence(max_n)),
        ("k-cue-average", _cue(min(max_n, 25))),
        ("amplitudes", _amplitudes(max_n)),
        ("trace-identity", _trace_ladder(nu_max)),
    ]
    results = []
    for name, cases in suites:
        res = _run(name, cases, fault)
        if progress:
            progress(res)
        results.append(res)
    return results


CHECK_NAMES = (
    "ci3", "recursion", "ci1", "nq-kravtchouk", "ci2", "g1-g2", "g-bivariate",
    "G-spectral-vs-po", "k-exact-vs-po", "k-cue-average", "amplitudes", "trace-identity",
)
