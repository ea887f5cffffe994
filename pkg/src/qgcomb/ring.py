"""The single-vertex ring graph: quantum map, eigenphase statistics and form factors.

Two directed bonds (the loop traversed either way) meet at one vertex with
scattering matrix ``[[cos eta, i sin eta], [i sin eta, cos eta]]``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np
from scipy.integrate import quad

from .exact import binomial, nq

QUARTER_PI = math.pi / 4


def _wrap(phi: float) -> float:
    return (phi + math.pi) % (2 * math.pi) - math.pi


@dataclass(frozen=True)
class RingParams:
    eta: float = QUARTER_PI
    phi1: float = 0.0
    phi2: float = 0.0

    def __post_init__(self):
        if not 0.0 <= self.eta <= math.pi / 2:
            raise ValueError(f"eta must lie in [0, pi/2], got {self.eta}")
        object.__setattr__(self, "phi1", _wrap(self.phi1))
        object.__setattr__(self, "phi2", _wrap(self.phi2))


def vertex_matrix(eta: float) -> np.ndarray:
    c, s = math.cos(eta), math.sin(eta)
    return np.array([[c, 1j * s], [1j * s, c]])


def ring_s_matrix(p: RingParams) -> np.ndarray:
    phases = np.exp(1j * np.array([p.phi1, p.phi2]))
    return phases[:, None] * vertex_matrix(p.eta)


class RingGraph:
    """The ring as a scattering system for the generic graph machinery.

    Directed bond 0 is the loop in positive direction (phase phi1), bond 1
    its reversal (phi2).
    """

    n_directed = 2
    n_bonds = 1
    reverse = (1, 0)

    def __init__(self, eta: float = QUARTER_PI):
        RingParams(eta)
        self.eta = eta

    def bare_matrix(self) -> np.ndarray:
        return vertex_matrix(self.eta)

    def __repr__(self):
        return f"RingGraph(eta={self.eta!r})"


def eigenphase_gap(p: RingParams) -> float:
    """Difference lambda between the two eigenphases of the ring map."""
    d = (p.phi1 - p.phi2) / 2
    c = math.cos(p.eta) * math.cos(d)
    # 1 - c^2 written without cancellation; acos(c) is inaccurate when c is near 1
    s = math.hypot(math.sin(p.eta), math.cos(p.eta) * math.sin(d))
    return 2 * math.atan2(s, c)


def r2(r: float, eta: float) -> float:
    """Smooth part of the two-point correlator R2(r; eta) on ``0 <= r <= 2``.

    The ``delta_2(r)/pi`` spike is left out.  Returns ``inf`` exactly on the
    square-root edge of the support.
    """
    if not 0 <= r <= 2:
        raise ValueError(f"r must lie in [0, 2], got {r}")
    x = math.pi * r / 2
    # cos^2(eta) - cos^2(x) written as a product to keep precision near the edge
    gap = math.sin(x - eta) * math.sin(x + eta)
    base = -1 / math.pi
    if gap < 0:
        return base
    s = math.sin(abs(x))
    if gap == 0:
        return math.inf if s != 0 else base
    return base + s / (2 * math.pi) / math.sqrt(gap)


def r2_quarter(r: float) -> float:
    """Smooth part of R2 at eta = pi/4 in its reduced form."""
    c = math.cos(math.pi * r)
    if abs(r - 1) >= 0.5:
        return -1 / math.pi
    return -1 / math.pi + math.sqrt((c - 1) / c) / (2 * math.pi)


def r2_average(r: float) -> float:
    """Smooth part of R2 after averaging eta over d(mu) = 2|cos eta sin eta| d(eta)."""
    return -1 / math.pi + math.sin(math.pi * r / 2) ** 2 / math.pi


# -- form factors ------------------------------------------------------------


def k_exact(n: int) -> Fraction:
    """K(n; pi/4) from the Fourier transform of the spectral correlator."""
    if n < 0:
        raise ValueError("n must be non-negative")
    m = n // 2
    value = 1 + Fraction((-1) ** (m + n), 2 ** (2 * m + 1)) * binomial(2 * m, m)
    if n == 0:
        value -= Fraction(3, 2)
    return value


def k_approx(n: int) -> float:
    """The large-n curve 1 + (-1)^(m+n) / (2 sqrt(pi n)) drawn beside the exact values.

    Its amplitude is too small by sqrt(2); see ``k_asymptotic``.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    m = n // 2
    return 1 + (-1) ** (m + n) / (2 * math.sqrt(math.pi * n))


def k_asymptotic(n: int) -> float:
    """Leading Stirling term of ``k_exact``: C(2m,m)/2^(2m+1) ~ 1/sqrt(2 pi n)."""
    if n < 1:
        raise ValueError("n must be >= 1")
    m = n // 2
    return 1 + (-1) ** (m + n) / math.sqrt(2 * math.pi * n)


def k_po_quarter(n: int) -> Fraction:
    """K(n; pi/4) from the periodic-orbit family sum.

    Evaluates both orbit-sum renderings and insists they agree.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    base = Fraction(1, 2**n)
    w = Fraction(1, 2 ** (n + 1))
    first = base + w * sum((Fraction(n, q) * nq(n - q, q)) ** 2 for q in range(1, n))
    second = base + w * sum(
        (nq(q, n - q) + (-1) ** n * nq(n - q, q)) ** 2 for q in range(1, n)
    )
    if first != second:
        raise ArithmeticError(f"orbit-sum forms disagree at n={n}: {first} vs {second}")
    return first


def _backscatter_coeffs(n: int, q: int) -> list[tuple[int, Fraction]]:
    # (nu, (-1)^nu / nu * C(q-1,nu-1) C(n-q-1,nu-1)) for the non-vanishing nu
    out = []
    for nu in range(1, min(q, n - q) + 1):
        c = binomial(q - 1, nu - 1) * binomial(n - q - 1, nu - 1)
        if c:
            out.append((nu, Fraction((-1) ** nu * c, nu)))
    return out


def k_po_eta(n: int, eta: float) -> float:
    """K2(n; eta) from families labelled by q = traversals in positive direction."""
    if n < 1:
        raise ValueError("n must be >= 1")
    s, c = math.sin(eta), math.cos(eta)
    total = 0.0
    for q in range(1, n):
        inner = sum(float(w) * s ** (2 * nu) * c ** (n - 2 * nu) for nu, w in _backscatter_coeffs(n, q))
        total += inner * inner
    return c ** (2 * n) + n * n / 2 * total


def k_cue(n: int) -> Fraction:
    """Form factor of 2x2 CUE matrices."""
    if n < 1:
        raise ValueError("n must be >= 1")
    return Fraction(1, 2) if n == 1 else Fraction(1)


def k_avg_po(n: int) -> Fraction:
    """eta-averaged orbit-sum form factor, exact.

    The measure ``2 sin(eta) cos(eta) d(eta)`` turns each ``sin^(2j) cos^(2n-2j)``
    into ``1 / ((n+1) C(n, j))``, hence the ``n^2 / (2(n+1))`` weight.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    total = Fraction(0)
    for q in range(1, n):
        coeffs = _backscatter_coeffs(n, q)
        for a, wa in coeffs:
            for b, wb in coeffs:
                total += wa * wb / binomial(n, a + b)
    return Fraction(1, n + 1) + Fraction(n * n, 2 * (n + 1)) * total


def k_avg_numeric(n: int) -> float:
    """Quadrature of ``k_po_eta`` against the eta measure; an oracle for ``k_avg_po``."""
    val, _ = quad(
        lambda e: k_po_eta(n, e) * 2 * math.sin(e) * math.cos(e), 0, math.pi / 2, epsabs=1e-13
    )
    return val


def classical_u(n: int, eta: float, method: str = "exact") -> float:
    """tr U^n for the ring's classical walk; ``method`` is 'exact' or 'po'."""
    if n < 1:
        raise ValueError("n must be >= 1")
    if method == "exact":
        return 1 + math.cos(2 * eta) ** n
    if method != "po":
        raise ValueError(f"unknown method {method!r}")
    s2, c2 = math.sin(eta) ** 2, math.cos(eta) ** 2
    total = 2 * c2**n
    for q in range(1, n):
        for nu in range(1, min(q, n - q) + 1):
            w = binomial(q - 1, nu - 1) * binomial(n - q - 1, nu - 1)
            total += n / nu * w * s2 ** (2 * nu) * c2 ** (n - 2 * nu)
    return total


class QuadratureError(RuntimeError):
    def __init__(self, message: str, error_estimate: float):
        super().__init__(f"{message} (error estimate {error_estimate:.3g})")
        self.error_estimate = error_estimate


def _edge_factor(x):
    # x / sin(pi x / 2), finite at x = 0
    return 2 / (np.pi * np.sinc(x / 2))


def fourier_consistency(n: int, eta: float = QUARTER_PI, tol: float = 1e-8) -> float:
    """K(n; eta) as pi * int_0^2 cos(n pi r) R2(r; eta) dr.

    The delta terms contribute ``1 - 2 delta_{n,0}`` analytically.  The
    smooth part lives on ``(a, 2-a)`` with ``a = 2 eta / pi`` and has inverse
    square-root edges, integrated with an algebraic endpoint weight.
    """
    if n < 0:
        raise ValueError("n must be non-negative")
    if not 0 < eta < math.pi / 2:
        raise ValueError("eta must lie strictly inside (0, pi/2)")
    a = 2 * eta / math.pi
    b = 2 - a

    def smooth(r):
        # R2 smooth part times sqrt((r-a)(b-r)); the weight supplies the edges
        return (
            math.cos(n * math.pi * r)
            * math.sin(math.pi * r / 2)
            / (2 * math.pi)
            * math.sqrt(_edge_factor(r - a) * _edge_factor(b - r))
        )

    val, err = quad(smooth, a, b, weight="alg", wvar=(-0.5, -0.5), limit=200, epsabs=tol / 10)
    if err > tol:
        raise QuadratureError(f"Fourier integral at n={n} did not converge", err)
    return (1.0 if n else -1.0) + math.pi * val


@dataclass(frozen=True)
class FormFactorRow:
    n: int
    value: Fraction | float
    method: str
    stderr: float | None = None


METHODS = ("exact", "po", "approx", "asymptotic", "cue", "mc", "quadrature")


def form_factor_table(ns, methods=("exact", "po", "approx", "cue")) -> list[FormFactorRow]:
    fns = {"exact": k_exact, "po": k_po_quarter, "approx": k_approx, "cue": k_cue,
           "asymptotic": k_asymptotic}
    rows = []
    for n in ns:
        for m in methods:
            if m not in fns:
                raise ValueError(f"method {m!r} needs sampling; use graph.mc_form_factor")
            rows.append(FormFactorRow(n, fns[m](n), m))
    return rows
