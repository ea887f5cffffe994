"""Abel-summed trace identity over the epsilon ladder for every 0 <= kappa <= nu <= nu_max.

Prints one line per (nu, kappa, n0) with the error at each rung and the
extrapolated limit.  The (0, 0) row converges to tr S^0 = 2 rather than A(0,0) = 1.
"""
import argparse
from dataclasses import dataclass, field

from qgcomb.amplitudes import DEFAULT_LADDER, amplitude_table, extrapolate_limit, trace_identity_ladder


@dataclass
class Config:
    nu_max: int = 4
    n0_values: tuple[int, ...] = (-3, 0, 5)
    ladder: tuple[float, ...] = field(default=DEFAULT_LADDER)


def main(argv=None):
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--nu-max", type=int, default=4)
    p.add_argument("--n0", default="-3,0,5")
    a = p.parse_args(argv)
    cfg = Config(a.nu_max, tuple(int(x) for x in a.n0.split(",")))

    head = " ".join(f"eps={e:<5}" for e in cfg.ladder)
    print(f"{'nu':>2} {'k':>2} {'n0':>3} {'target':>9}  {head}  limit")
    for nu in range(cfg.nu_max + 1):
        for kappa in range(nu + 1):
            target = amplitude_table(nu).values()[kappa]
            for n0 in cfg.n0_values:
                rows = trace_identity_ladder(nu, kappa, cfg.ladder, n0=n0)
                errs = " ".join(f"{r.abs_error:9.5f}" for r in rows)
                print(f"{nu:2d} {kappa:2d} {n0:3d} {target:9.5f}  {errs}  {extrapolate_limit(rows):.5f}")


if __name__ == "__main__":
    main()
