"""Family amplitudes A(n, q) of the ring at eta = pi/4 and the trace identity.

``tr S^n = sum_q A(n, q) exp(i (q phi1 + (n-q) phi2))`` where q counts
traversals of the loop in positive direction.  ``2**(n/2) A(n, q)`` is an
integer, so amplitudes are stored as that integer plus n.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import numpy as np

from .exact import KravtchoukSpec, binomial, kravtchouk, nq

DEFAULT_LADDER = (0.2, 0.1, 0.05, 0.02)
# |sum_q A(n+v, q+k) A(n, q)| <= sqrt(2K(n+v) 2K(n)); K(n; pi/4) <= 5/4 gives 2.5,
# and K <= 1.05 for n >= 4
AMPLITUDE_BOUND = 2.5


@dataclass(frozen=True)
class AmplitudeTable:
    n: int
    scaled: tuple[int, ...]  # 2**(n/2) * A(n, q), q = 0..n

    def squares(self) -> list[Fraction]:
        return [Fraction(a * a, 2**self.n) for a in self.scaled]

    def signs(self) -> list[int]:
        return [(a > 0) - (a < 0) for a in self.scaled]

    def values(self) -> list[float]:
        f = 2.0 ** (-self.n / 2)
        return [a * f for a in self.scaled]

    def __getitem__(self, q: int) -> float:
        return self.values()[q]


def _scaled_amplitude(n: int, q: int) -> int:
    if q == 0 or q == n:
        return 1
    v = Fraction((-1) ** q * n * nq(n - q, q), q)
    if v.denominator != 1:
        raise ArithmeticError(f"(n/q) N(n-q,q) not integral at n={n}, q={q}")
    return v.numerator


def amplitude_table(n: int) -> AmplitudeTable:
    if n < 0:
        raise ValueError("n must be non-negative")
    return AmplitudeTable(n, tuple(_scaled_amplitude(n, q) for q in range(n + 1)))


def kravtchouk_amplitude_agrees(n: int) -> bool:
    """Compare A(n, q) with (-1)^(n+q) (n/q) C(n-1,n-q)^(1/2) P_{n-1,n-q}(q) via squares and signs."""
    table = amplitude_table(n)
    for q in range(1, n):
        p = kravtchouk(KravtchoukSpec(n - 1, n - q, q))
        square = Fraction(n, q) ** 2 * binomial(n - 1, n - q) * p.square / 2**n
        if square != table.squares()[q]:
            return False
        if p.sign != 0 and (-1) ** (n + q) * p.sign != table.signs()[q]:
            return False
    return True


def trace_coefficients_exact(n: int) -> tuple[int, ...]:
    """Integer coefficients of ``2**(n/2) tr S^n`` by expanding the matrix power.

    Works with ``sqrt(2) sigma = [[1, i], [i, 1]]`` over Gaussian integers,
    independently of any closed form for A(n, q).
    """
    if n == 0:
        return (2,)
    # entries: dict q -> (re, im) polynomial in x = exp(i phi1)
    eye = [[{0: (1, 0)}, {}], [{}, {0: (1, 0)}]]
    sig = [[(1, 0), (0, 1)], [(0, 1), (1, 0)]]
    m = eye
    for _ in range(n):
        new = [[{}, {}], [{}, {}]]
        for i in range(2):
            shift = 1 if i == 0 else 0
            for j in range(2):
                acc = new[i][j]
                for k in range(2):
                    sr, si = sig[i][k]
                    for q, (re, im) in m[k][j].items():
                        r0, i0 = acc.get(q + shift, (0, 0))
                        acc[q + shift] = (r0 + sr * re - si * im, i0 + sr * im + si * re)
        m = new
    out = []
    for q in range(n + 1):
        re0, im0 = m[0][0].get(q, (0, 0))
        re1, im1 = m[1][1].get(q, (0, 0))
        if im0 + im1 != 0:
            raise ArithmeticError("trace coefficient is not real")
        out.append(re0 + re1)
    return tuple(out)


@lru_cache(maxsize=4)
def _amplitude_rows(n_max: int) -> tuple[np.ndarray, ...]:
    s = 1 / math.sqrt(2)
    sig = np.array([[s, 1j * s], [1j * s, s]])
    m = [[np.ones(1, complex), np.zeros(1, complex)], [np.zeros(1, complex), np.ones(1, complex)]]
    rows = [np.array([1.0])]  # A(0, 0) = 1 by the q = 0, n convention
    zero = np.zeros(1, complex)
    for _ in range(n_max):
        new = [[None, None], [None, None]]
        for i in range(2):
            for j in range(2):
                acc = sig[i, 0] * m[0][j] + sig[i, 1] * m[1][j]
                new[i][j] = np.concatenate([zero, acc]) if i == 0 else np.concatenate([acc, zero])
        m = new
        rows.append((m[0][0] + m[1][1]).real)
    return tuple(rows)


def amplitude_rows(n_max: int) -> tuple[np.ndarray, ...]:
    """Float A(n, .) for n = 0..n_max, from the transfer-matrix recursion.

    Row n has length n+1.  Cached in blocks of 1024.
    """
    block = 1024 * (n_max // 1024 + 1)
    return _amplitude_rows(block)[: n_max + 1]


def s_n_from_families(n: int, phi1: float, phi2: float) -> complex:
    table = amplitude_table(n)
    return sum(
        a * np.exp(1j * (q * phi1 + (n - q) * phi2)) for q, a in enumerate(table.values())
    )


def _tail_bound(eps: float, n_max: int) -> float:
    return AMPLITUDE_BOUND * eps * math.exp(-(n_max + 1) * eps) / (1 - math.exp(-eps))


def trace_identity_sum(
    nu: int,
    kappa: int,
    eps: float,
    n0: int = 0,
    n_max: int | None = None,
    tol: float = 1e-9,
) -> float:
    """eps * sum_{n >= n0} exp(-n eps) sum_q A(n+nu, q+kappa) A(n, q), truncated at n_max.

    Amplitudes with n < 0 are zero.  Raises when the discarded tail may
    exceed ``tol``.
    """
    if not 0 <= kappa <= nu:
        raise ValueError(f"need 0 <= kappa <= nu, got kappa={kappa}, nu={nu}")
    if eps <= 0:
        raise ValueError("eps must be positive")
    if n_max is None:
        n_max = math.ceil(40 / eps)
    if n_max < 40 / eps or _tail_bound(eps, n_max) > tol:
        raise ValueError(
            f"horizon n_max={n_max} too small for eps={eps}: tail bound {_tail_bound(eps, n_max):.2g}"
        )
    rows = amplitude_rows(n_max + nu)
    total = 0.0
    for n in range(max(n0, 0), n_max + 1):
        total += math.exp(-n * eps) * float(np.dot(rows[n + nu][kappa : kappa + n + 1], rows[n]))
    return eps * total


@dataclass(frozen=True)
class LadderRow:
    epsilon: float
    sum: float
    target: float
    abs_error: float


def trace_identity_ladder(nu: int, kappa: int, ladder=DEFAULT_LADDER, n0: int = 0) -> list[LadderRow]:
    target = amplitude_table(nu).values()[kappa]
    rows = []
    for eps in ladder:
        val = trace_identity_sum(nu, kappa, eps, n0=n0)
        rows.append(LadderRow(eps, val, target, abs(val - target)))
    return rows


def extrapolate_limit(rows: list[LadderRow]) -> float:
    """Value at eps -> 0 from a least-squares line through the two smallest-eps rungs.

    The Abel mean approaches its limit linearly in eps.
    """
    pts = sorted(rows, key=lambda r: r.epsilon)[:2]
    (e1, s1), (e2, s2) = [(r.epsilon, r.sum) for r in pts]
    return (e2 * s1 - e1 * s2) / (e2 - e1)
