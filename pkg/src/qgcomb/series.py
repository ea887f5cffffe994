"""Truncated power series with exact rational coefficients.

Used to compare the orbit-sum generating functions against their closed
forms coefficient by coefficient.
"""
from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence

from .exact import binomial, nq


class Series1:
    """Univariate series ``sum_k c_k x^k`` known through ``x**order``."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable, order: int):
        if order < 0:
            raise ValueError("order must be non-negative")
        cs = [Fraction(c) for c in coeffs][: order + 1]
        cs += [Fraction(0)] * (order + 1 - len(cs))
        self.coeffs = tuple(cs)

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1

    @classmethod
    def constant(cls, c, order: int) -> "Series1":
        return cls([c], order)

    @classmethod
    def x(cls, order: int) -> "Series1":
        return cls([0, 1], order)

    @classmethod
    def poly(cls, coeffs: Sequence, order: int) -> "Series1":
        return cls(coeffs, order)

    def __getitem__(self, k: int) -> Fraction:
        return self.coeffs[k] if 0 <= k <= self.order else Fraction(0)

    def __repr__(self):
        return f"Series1({[str(c) for c in self.coeffs]}, order={self.order})"

    def __eq__(self, other):
        if not isinstance(other, Series1):
            return NotImplemented
        return self.coeffs == other.coeffs

    def _coerce(self, other) -> "Series1":
        if isinstance(other, Series1):
            return other
        return Series1.constant(other, self.order)

    def __add__(self, other):
        other = self._coerce(other)
        n = min(self.order, other.order)
        return Series1([self[k] + other[k] for k in range(n + 1)], n)

    __radd__ = __add__

    def __neg__(self):
        return Series1([-c for c in self.coeffs], self.order)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        if not isinstance(other, Series1):
            c = Fraction(other)
            return Series1([c * a for a in self.coeffs], self.order)
        n = min(self.order, other.order)
        a, b = self.coeffs, other.coeffs
        out = [sum((a[i] * b[k - i] for i in range(k + 1)), Fraction(0)) for k in range(n + 1)]
        return Series1(out, n)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, Series1):
            return self * other.reciprocal()
        return self * (1 / Fraction(other))

    def __rtruediv__(self, other):
        return self._coerce(other) * self.reciprocal()

    def reciprocal(self) -> "Series1":
        a = self.coeffs
        if a[0] == 0:
            raise ZeroDivisionError("series has zero constant term")
        out = [1 / a[0]]
        for k in range(1, self.order + 1):
            acc = sum((a[i] * out[k - i] for i in range(1, k + 1)), Fraction(0))
            out.append(-acc / a[0])
        return Series1(out, self.order)

    def inv_sqrt(self) -> "Series1":
        """``a**(-1/2)`` for a series with constant term 1.

        Solves ``r**2 * a = 1`` order by order: with ``r0 = 1`` the degree-k
        coefficient of ``r**2 * a`` is ``2 r_k + (known terms)``.
        """
        a = self.coeffs
        if a[0] != 1:
            raise ValueError(f"inv_sqrt needs constant term 1, got {a[0]}")
        r = [Fraction(1)]
        sq = [Fraction(1)]  # coefficients of r*r, filled as r grows
        for k in range(1, self.order + 1):
            # r*r at degree k without the 2*r_k*r_0 contribution
            partial = sum((r[i] * r[k - i] for i in range(1, k)), Fraction(0))
            # (r*r*a)_k = (r*r)_k + sum_{j>=1} a_j (r*r)_{k-j} = 0
            tail = sum((a[j] * sq[k - j] for j in range(1, k + 1)), Fraction(0))
            rk = -(partial + tail) / 2
            r.append(rk)
            sq.append(partial + 2 * rk)
        return Series1(r, self.order)

    def scale(self, c) -> "Series1":
        """Substitute ``x -> c*x``."""
        c = Fraction(c)
        return Series1([a * c**k for k, a in enumerate(self.coeffs)], self.order)


class Series2:
    """Bivariate series ``sum c_{s,t} x^s y^t`` truncated at total degree ``order``."""

    __slots__ = ("coeffs", "order")

    def __init__(self, coeffs: dict[tuple[int, int], Fraction] | None, order: int):
        self.order = order
        self.coeffs = {
            (s, t): Fraction(c)
            for (s, t), c in (coeffs or {}).items()
            if s >= 0 and t >= 0 and s + t <= order and c != 0
        }

    @classmethod
    def constant(cls, c, order: int) -> "Series2":
        return cls({(0, 0): c}, order)

    def __getitem__(self, st: tuple[int, int]) -> Fraction:
        return self.coeffs.get(st, Fraction(0))

    def __eq__(self, other):
        if not isinstance(other, Series2):
            return NotImplemented
        return self.order == other.order and self.coeffs == other.coeffs

    def __repr__(self):
        return f"Series2({len(self.coeffs)} terms, order={self.order})"

    def __add__(self, other):
        n = min(self.order, other.order)
        out = dict(self.coeffs)
        for k, c in other.coeffs.items():
            out[k] = out.get(k, 0) + c
        return Series2(out, n)

    def __neg__(self):
        return Series2({k: -c for k, c in self.coeffs.items()}, self.order)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if not isinstance(other, Series2):
            c = Fraction(other)
            return Series2({k: c * v for k, v in self.coeffs.items()}, self.order)
        n = min(self.order, other.order)
        out: dict[tuple[int, int], Fraction] = {}
        for (s1, t1), a in self.coeffs.items():
            for (s2, t2), b in other.coeffs.items():
                if s1 + s2 + t1 + t2 <= n:
                    key = (s1 + s2, t1 + t2)
                    out[key] = out.get(key, 0) + a * b
        return Series2(out, n)

    __rmul__ = __mul__

    def reciprocal(self) -> "Series2":
        """Geometric expansion ``1/(c(1 - h)) = (1/c) sum h^k``; h has no constant term."""
        c = self[(0, 0)]
        if c == 0:
            raise ZeroDivisionError("series has zero constant term")
        h = Series2({k: -v / c for k, v in self.coeffs.items() if k != (0, 0)}, self.order)
        total = Series2.constant(1, self.order)
        power = Series2.constant(1, self.order)
        for _ in range(self.order):
            power = power * h
            total = total + power
        return total * (1 / c)


# -- generating functions of N(s, t) -------------------------------------


def _check_order(order: int, lowest: int):
    if order < lowest:
        raise ValueError(f"order must be >= {lowest}, got {order}")


def g1_po(order: int) -> Series1:
    """sum_{s,t>=1} N(s,t)^2 x^(s+t)."""
    _check_order(order, 2)
    c = [0] * (order + 1)
    for n in range(2, order + 1):
        c[n] = sum(nq(s, n - s) ** 2 for s in range(1, n))
    return Series1(c, order)


def g1_closed(order: int) -> Series1:
    """x/(2x-1) * [(4x^2+1)^(-1/2) - 1/(1-x)]."""
    _check_order(order, 2)
    x = Series1.x(order)
    root = Series1.poly([1, 0, 4], order).inv_sqrt()
    return x / (2 * x - 1) * (root - 1 / (1 - x))


def g2_po(order: int) -> Series1:
    """sum_{s,t>=1} N(s,t) N(t,s) x^(s+t)."""
    _check_order(order, 2)
    c = [0] * (order + 1)
    for n in range(2, order + 1):
        c[n] = sum(nq(s, n - s) * nq(n - s, s) for s in range(1, n))
    return Series1(c, order)


def g2_closed(order: int) -> Series1:
    """(1/2)(4x^2+2x+1) / [(2x+1) sqrt(4x^2+1)] - 1/2."""
    _check_order(order, 2)
    num = Series1.poly([1, 2, 4], order)
    den = Series1.poly([1, 2], order)
    root = Series1.poly([1, 0, 4], order).inv_sqrt()
    return num * root / den * Fraction(1, 2) - Fraction(1, 2)


def g_bivariate_po(order: int) -> Series2:
    """sum_{s,t>=1} N(s,t) x^s y^t through total degree ``order``."""
    _check_order(order, 2)
    return Series2(
        {(s, t): nq(s, t) for s in range(1, order) for t in range(1, order - s + 1)}, order
    )


def g_bivariate_closed(order: int) -> Series2:
    """xy / [(1+y)(1-x+y-2xy)]."""
    _check_order(order, 2)
    xy = Series2({(1, 1): 1}, order)
    den = Series2({(0, 0): 1, (0, 1): 1}, order) * Series2(
        {(0, 0): 1, (1, 0): -1, (0, 1): 1, (1, 1): -2}, order
    )
    return xy * den.reciprocal()


def big_g_spectral(order: int) -> Series1:
    """sum_n K(n; pi/4) (2x)^n from the spectral closed form."""
    _check_order(order, 1)
    one_m2x = Series1.poly([1, -2], order)
    root = Series1.poly([1, 0, 4], order).inv_sqrt()
    return one_m2x * root * Fraction(1, 2) - Series1.poly([1, -6], order) / one_m2x * Fraction(1, 2)


def big_g_po(order: int, use_orbit_sums: bool = False) -> Series1:
    """x/(1-x) + G1(x) + G2(-x), the orbit-sum side of the same generating function.

    By default G1, G2 enter through their closed forms; ``use_orbit_sums``
    substitutes the raw N(s,t) double sums instead.
    """
    _check_order(order, 1)
    o = max(order, 2)
    g1 = g1_po(o) if use_orbit_sums else g1_closed(o)
    g2 = g2_po(o) if use_orbit_sums else g2_closed(o)
    x = Series1.x(o)
    total = x / (1 - x) + g1 + g2.scale(-1)
    return Series1(total.coeffs, order)


def inv_sqrt_binomial(order: int) -> Series1:
    """(1+4x^2)^(-1/2) = sum_k (-1)^k C(2k,k) x^(2k); a closed-form reference."""
    c = [0] * (order + 1)
    for k in range(order // 2 + 1):
        c[2 * k] = (-1) ** k * binomial(2 * k, k)
    return Series1(c, order)
