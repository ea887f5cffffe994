"""Exact integer/rational evaluation of the binomial sums behind the ring-graph identities.

Everything here works in ``int`` and ``fractions.Fraction``; no floats.
Kravtchouk values carry an irrational prefactor, so they are handled as
``(square, sign)`` pairs.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb

HALF = Fraction(1, 2)


def binomial(n: int, k: int) -> int:
    """C(n, k), extended by zero outside ``0 <= k <= n``."""
    if n < 0 or k < 0 or k > n:
        return 0
    return comb(n, k)


def _sign(x) -> int:
    return (x > 0) - (x < 0)


def nq(s: int, t: int) -> int:
    """Alternating binomial sum N(s, t) = sum_v (-1)^(t-v) C(t, v) C(s-1, v-1)."""
    if s < 1 or t < 1:
        raise ValueError(f"nq needs s, t >= 1, got ({s}, {t})")
    return sum(
        (-1) ** (t - v) * binomial(t, v) * binomial(s - 1, v - 1)
        for v in range(1, min(s, t) + 1)
    )


@dataclass(frozen=True)
class KravtchoukSpec:
    N: int
    k: int
    x: int
    u: Fraction = HALF
    v: Fraction = HALF

    def __post_init__(self):
        u, v = Fraction(self.u), Fraction(self.v)
        object.__setattr__(self, "u", u)
        object.__setattr__(self, "v", v)
        if self.N < 0 or not 0 <= self.k <= self.N or not 0 <= self.x <= self.N:
            raise ValueError(f"need 0 <= k, x <= N, got {self}")
        if u + v != 1 or not 0 < u < 1:
            raise ValueError(f"weights must satisfy u + v = 1, 0 < u < 1, got u={u}, v={v}")


@dataclass(frozen=True)
class KravtchoukValue:
    """P_{N,k}(x) stored as its exact square and the sign of the polynomial."""

    square: Fraction
    sign: int


def kravtchouk_sum(spec: KravtchoukSpec) -> Fraction:
    """The alternating sum inside P_{N,k}(x), without the normalising prefactor."""
    N, k, x, u, v = spec.N, spec.k, spec.x, spec.u, spec.v
    return sum(
        (
            (-1) ** (k - j) * binomial(x, j) * binomial(N - x, k - j) * u ** (k - j) * v**j
            for j in range(k + 1)
        ),
        Fraction(0),
    )


def kravtchouk(spec: KravtchoukSpec) -> KravtchoukValue:
    total = kravtchouk_sum(spec)
    norm = binomial(spec.N, spec.k) * (spec.u * spec.v) ** spec.k
    return KravtchoukValue(total * total / norm, _sign(total))


def kravtchouk_square(spec: KravtchoukSpec) -> Fraction:
    return kravtchouk(spec).square


def check_nq_kravtchouk(s: int, t: int) -> bool:
    """N(s,t) = (-1)^(s+t) C(s+t-1, s)^(1/2) P_{s+t-1,s}(t), compared via squares and signs."""
    value = nq(s, t)
    p = kravtchouk(KravtchoukSpec(s + t - 1, s, t))
    if value * value != binomial(s + t - 1, s) * p.square:
        return False
    return _sign(value) == (-1) ** (s + t) * p.sign


def ci1_sides(n: int, nu: int) -> tuple[int, int, Fraction]:
    """The three members of sum_q C(q-1,v-1)C(n-q-1,v-1) = C(n-1,2v-1) = (2v/n)C(n,2v)."""
    lhs = sum(binomial(q - 1, nu - 1) * binomial(n - q - 1, nu - 1) for q in range(1, n))
    return lhs, binomial(n - 1, 2 * nu - 1), Fraction(2 * nu, n) * binomial(n, 2 * nu)


def ci1_check(n: int, nu: int) -> bool:
    if n < 2 or nu < 1:
        raise ValueError(f"ci1 needs n >= 2, nu >= 1, got ({n}, {nu})")
    a, b, c = ci1_sides(n, nu)
    return a == b == c


def _f_raw(n: int, q: int, nu: int, nup: int) -> Fraction:
    # F without the range check; vanishing binomials make out-of-range terms 0
    c = (
        binomial(q - 1, nu - 1)
        * binomial(q - 1, nup - 1)
        * binomial(n - q - 1, nu - 1)
        * binomial(n - q - 1, nup - 1)
    )
    if c == 0:
        return Fraction(0)
    return Fraction((n - 1) * n * (-1) ** (nu + nup) * c, 2 * nu * nup * binomial(n, nu + nup))


def f_term(n: int, q: int, nu: int, nup: int) -> Fraction:
    """The summand F_{v,v'}(n, q) of the double sum S(n, q)."""
    if not 1 <= q < n:
        raise ValueError(f"f_term needs 1 <= q < n, got n={n}, q={q}")
    if nu < 1 or nup < 1:
        raise ValueError(f"f_term needs nu, nu' >= 1, got ({nu}, {nup})")
    return _f_raw(n, q, nu, nup)


def s_sum(n: int, q: int) -> Fraction:
    """S(n, q) = sum_{v,v'=1}^{min(q, n-q)} F_{v,v'}(n, q); equals 1 for every 1 <= q < n."""
    if not 1 <= q < n:
        raise ValueError(f"s_sum needs 1 <= q < n, got n={n}, q={q}")
    top = min(q, n - q)
    return sum(
        (_f_raw(n, q, a, b) for a in range(1, top + 1) for b in range(1, top + 1)),
        Fraction(0),
    )


def recursion_residual(n: int, q: int, nu: int, nup: int) -> Fraction:
    """q^2 F(n,q) - (n-q-1)^2 F(n,q+1) + (n-1)(n-2q-1) F(n+1,q+1); identically zero.

    Defined for ``1 <= q`` and ``q + 1 < n + 1``.  At ``q = n - 1`` the middle
    term has ``q + 1 = n`` where F is taken as 0 (its binomial C(-1, .) vanishes).
    """
    if q < 1 or q + 1 > n:
        raise ValueError(f"recursion needs 1 <= q <= n - 1, got n={n}, q={q}")
    return (
        q * q * _f_raw(n, q, nu, nup)
        - (n - q - 1) ** 2 * _f_raw(n, q + 1, nu, nup)
        + (n - 1) * (n - 2 * q - 1) * _f_raw(n + 1, q + 1, nu, nup)
    )


def ci2_rhs(m: int, parity: str) -> int:
    c = binomial(2 * m, m)
    if parity == "even":
        return 2 ** (2 * m + 1) + (-1) ** m * c - 2
    if parity == "odd":
        return 2 ** (2 * m + 2) - 2 * (-1) ** m * c - 2
    raise ValueError(f"parity must be 'even' or 'odd', got {parity!r}")


def ci2_lhs(m: int, parity: str) -> int:
    """n^2 sum_q (N(n-q,q)/q)^2 with n = 2m or 2m+1, evaluated via Kravtchouk squares."""
    n = 2 * m if parity == "even" else 2 * m + 1
    total = Fraction(0)
    for q in range(1, n):
        p2 = kravtchouk_square(KravtchoukSpec(n - 1, n - q, q))
        total += binomial(n - 1, n - q) * Fraction(n, q) ** 2 * p2
    if total.denominator != 1:
        raise ArithmeticError(f"ci2 left side is not an integer: {total}")
    return total.numerator


def ci2_lhs_direct(m: int, parity: str) -> int:
    """Same left side summed straight from N(n-q, q); independent of the Kravtchouk route."""
    n = 2 * m if parity == "even" else 2 * m + 1
    total = n * n * sum((Fraction(nq(n - q, q), q) ** 2 for q in range(1, n)), Fraction(0))
    return int(total)


def ci2_check(m: int, parity: str) -> tuple[int, int, bool]:
    if m < 1:
        raise ValueError(f"ci2 needs m >= 1, got {m}")
    rhs = ci2_rhs(m, parity)
    lhs = ci2_lhs(m, parity)
    return lhs, rhs, lhs == rhs
