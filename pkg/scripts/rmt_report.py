"""Monte Carlo form factors of complete graphs next to the COE/CUE curves (descriptive only)."""
import argparse
from dataclasses import dataclass

from qgcomb.ensemble import mc_form_factor, rmt_reference
from qgcomb.graph import complete_graph


@dataclass
class Config:
    vertices: tuple[int, ...] = (4, 5)
    samples: int = 20_000
    seed: int = 0
    workers: int = 1


def main(argv=None):
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument("--vertices", default="4,5")
    p.add_argument("--samples", type=int, default=Config.samples)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--workers", type=int, default=1)
    a = p.parse_args(argv)
    cfg = Config(tuple(int(v) for v in a.vertices.split(",")), a.samples, a.seed, a.workers)

    print("V,beta,n,tau,estimate,stderr,rmt")
    for v in cfg.vertices:
        g = complete_graph(v)
        for beta in (1, 2):
            for n in range(1, 2 * g.n_directed + 1):
                res = mc_form_factor(g, beta, n, cfg.samples, cfg.seed + n, workers=cfg.workers)
                tau = n / g.n_directed
                print(f"{v},{beta},{n},{tau:.4f},{res.estimate:.5f},{res.stderr:.5f},"
                      f"{rmt_reference(tau, beta):.5f}")


if __name__ == "__main__":
    main()
