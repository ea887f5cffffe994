"""Independent reference computations used only by the tests."""
from __future__ import annotations

from fractions import Fraction

import numpy as np


def pascal(n_max: int) -> list[list[int]]:
    rows = [[1]]
    for n in range(1, n_max + 1):
        prev = rows[-1]
        rows.append([1] + [prev[k - 1] + prev[k] for k in range(1, n)] + [1])
    return rows


def polymul(a: list, b: list) -> list:
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] += x * y
    return out


def polypow(p: list, k: int) -> list:
    out = [1]
    for _ in range(k):
        out = polymul(out, p)
    return out


def nq_residue(s: int, t: int) -> int:
    """-(-1)^t [z^-1] (1 + 1/z)^t (1 - z)^(s-1), by explicit polynomial expansion.

    (1 + 1/z)^t = z^-t (z + 1)^t, so the z^-1 coefficient is the z^(t-1)
    coefficient of (1 + z)^t (1 - z)^(s-1).
    """
    poly = polymul(polypow([1, 1], t), polypow([1, -1], s - 1))
    c = poly[t - 1] if t - 1 < len(poly) else 0
    return -((-1) ** t) * c


def kravtchouk_sum_genfun(N: int, k: int, x: int, u: Fraction, v: Fraction) -> Fraction:
    """[z^k] (1 + v z)^x (1 - u z)^(N - x)."""
    poly = polymul(polypow([Fraction(1), v], x), polypow([Fraction(1), -u], N - x))
    return poly[k] if k < len(poly) else Fraction(0)


def s_sum_bruteforce(n: int, q: int) -> Fraction:
    from math import comb

    def c(a, b):
        return comb(a, b) if 0 <= b <= a else 0

    total = Fraction(0)
    for a in range(1, n):
        for b in range(1, n):
            w = c(q - 1, a - 1) * c(q - 1, b - 1) * c(n - q - 1, a - 1) * c(n - q - 1, b - 1)
            if w and a + b <= n:
                total += Fraction((n - 1) * n * (-1) ** (a + b) * w, 2 * a * b * c(n, a + b))
    return total


def ring_trace_power(eta: float, phi1: float, phi2: float, n: int) -> complex:
    c, s = np.cos(eta), np.sin(eta)
    m = np.diag(np.exp(1j * np.array([phi1, phi2]))) @ np.array([[c, 1j * s], [1j * s, c]])
    return complex(np.trace(np.linalg.matrix_power(m, n)))
