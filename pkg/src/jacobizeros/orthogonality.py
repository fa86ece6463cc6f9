"""Contour orthogonality of ``p_k = P_k^(n+1/2, -n-1/2)`` against ``w_n``.

For a counterclockwise contour encircling ``[-1, 1]`` and ``0 <= j <= k``,

    int t^j p_k(t) w_n(t) dt = h(n, k) delta_{jk},

with ``w_n(t) = ((1-t)/(1+t))^n w_tilde(t)`` and

    h(n, k) = -pi^2 2^(k+2) / (Gamma(2k+2) Gamma(-k-n-1/2) Gamma(-k+n+1/2)).

The Gamma values are half-integers and integers, so ``h`` is evaluated
exactly as a rational multiple of ``pi``.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import factorial

from .errors import GammaPole
from .geometry import QuadratureContour, build_gamma_contour
from .io import atomic_open, fmt
from .jacobi import ExactPolynomial, jacobi_coefficients, kappa
from .numerics import DEFAULT_PRECISION, PrecisionConfig, integer_power, w_tilde

__all__ = [
    "HalfIntegerGamma",
    "half_integer_gamma",
    "h_coefficient",
    "h_exact",
    "weight_wn",
    "contour_inner_product",
    "OrthogonalityReport",
    "verify_orthogonality",
    "write_report_csv",
]


@dataclass(frozen=True)
class HalfIntegerGamma:
    """Exact ``Gamma(x)`` for ``x`` in ``(1/2) Z``.

    The value is ``q * sqrt(pi)**sqrt_pi_power`` with rational ``q`` and
    ``sqrt_pi_power`` in ``{0, 1}``; ``pole`` marks non-positive integers.
    """

    argument: Fraction
    q: Fraction = Fraction(0)
    sqrt_pi_power: int = 0
    pole: bool = False

    def __mul__(self, other: "HalfIntegerGamma") -> tuple[Fraction, int]:
        """Product as ``(rational, power of sqrt(pi))``."""
        if self.pole or other.pole:
            raise GammaPole("product involves a Gamma pole")
        return self.q * other.q, self.sqrt_pi_power + other.sqrt_pi_power


@lru_cache(maxsize=None)
def half_integer_gamma(x) -> HalfIntegerGamma:
    """Exact Gamma at an integer or half-integer.

    Examples
    --------
    >>> g = half_integer_gamma(Fraction(-1, 2))
    >>> (g.q, g.sqrt_pi_power)
    (Fraction(-2, 1), 1)
    """
    x = Fraction(x)
    if x.denominator == 1:
        n = x.numerator
        if n <= 0:
            return HalfIntegerGamma(x, pole=True)
        return HalfIntegerGamma(x, Fraction(factorial(n - 1)), 0)
    if x.denominator != 2:
        raise ValueError("argument must be an integer or half-integer")
    # walk from Gamma(1/2) = sqrt(pi) using Gamma(y+1) = y Gamma(y)
    q = Fraction(1)
    y = Fraction(1, 2)
    while y < x:
        q *= y
        y += 1
    while y > x:
        y -= 1
        q /= y
    return HalfIntegerGamma(x, q, 1)


def h_coefficient(n: int, k: int) -> Fraction:
    """Rational ``c`` with ``h(n, k) = c * pi``.

    Parameters
    ----------
    n : int
        Weight index of ``w_n``.
    k : int
        Polynomial degree.
    """
    if n < 0 or k < 0:
        raise ValueError("n and k must be non-negative")
    g1 = half_integer_gamma(2 * k + 2)
    g2 = half_integer_gamma(Fraction(-2 * k - 2 * n - 1, 2))
    g3 = half_integer_gamma(Fraction(-2 * k + 2 * n + 1, 2))
    q23, p23 = g2 * g3
    if g1.pole:
        raise GammaPole("Gamma(2k+2) pole")
    denom_q = g1.q * q23
    # numerator -pi^2 2^(k+2), denominator carries sqrt(pi)^p23 = pi
    assert p23 == 2
    return Fraction(-(2 ** (k + 2))) / denom_q


def h_exact(n: int, k: int, precision: PrecisionConfig | None = None):
    """``h(n, k)`` as an mpf at the given precision.

    >>> float(h_exact(1, 1)) / 3.141592653589793
    2.5
    """
    precision = DEFAULT_PRECISION if precision is None else precision
    c = h_coefficient(n, k)
    ctx = precision.ctx
    return ctx.pi * c.numerator / c.denominator


def weight_wn(t, n: int, precision: PrecisionConfig | None = None):
    """``((1 - t)/(1 + t))^n * w_tilde(t)``."""
    precision = DEFAULT_PRECISION if precision is None else precision
    ctx = precision.ctx
    t = ctx.mpc(t)
    base = w_tilde(t, precision)  # raises PoleAtMinusOne first
    return integer_power((1 - t) / (1 + t), n, precision) * base


@lru_cache(maxsize=None)
def _build_generic_P(k: int, n: int) -> ExactPolynomial:
    """``P_k^(n+1/2, -n-1/2)`` with exact coefficients."""
    alpha = Fraction(2 * n + 1, 2)
    coeffs = jacobi_coefficients(k, alpha, -alpha)
    # leading coefficient of P_k^(a,b) is (k+a+b+1)_k / (2^k k!) = C(2k,k)/2^k here
    return ExactPolynomial(k, tuple(coeffs), alpha, -alpha, kappa(k))


def _horner(coeffs, t):
    acc = 0
    for c in reversed(coeffs):
        acc = acc * t + c
    return acc


def contour_inner_product(j: int, k: int, n: int, contour: QuadratureContour | None = None,
                          precision: PrecisionConfig | None = None):
    """Trapezoid value of ``int t^j p_k(t) w_n(t) dt`` over ``contour``."""
    precision = DEFAULT_PRECISION if precision is None else precision
    if not 0 <= j <= k:
        raise ValueError("need 0 <= j <= k")
    contour = build_gamma_contour(2, 1024, precision) if contour is None else contour
    ctx = precision.ctx
    coeffs = _build_generic_P(k, n).rounded(precision)
    total = ctx.mpc(0)
    for t, wt in zip(contour.nodes, contour.weights):
        total += wt * t**j * _horner(coeffs, t) * weight_wn(t, n, precision)
    return total


@dataclass(frozen=True)
class OrthogonalityReport:
    """One quadrature check against ``h(n, k) delta_{jk}``."""

    n: int
    k: int
    j: int
    numeric: object
    exact: object
    abs_error: object
    tolerance: float

    @property
    def passed(self) -> bool:
        return self.abs_error < self.tolerance


def verify_orthogonality(n_max: int, k_max: int, contour: QuadratureContour | None = None,
                         precision: PrecisionConfig | None = None,
                         tolerance: float = 1e-15) -> list[OrthogonalityReport]:
    """All reports for ``n <= n_max``, ``k <= k_max``, ``j <= k``.

    Node quantities (``w_tilde``, the Moebius ratio powers, ``t^j``) are
    computed once and shared by every ``(n, k, j)``.
    """
    if n_max > 8 or k_max > 8 or n_max < 0 or k_max < 0:
        raise ValueError("n_max and k_max must lie in [0, 8]")
    precision = PrecisionConfig(256) if precision is None else precision
    contour = build_gamma_contour(2, 1024, precision) if contour is None else contour
    ctx = precision.ctx
    nodes = contour.nodes
    base = [wt * w_tilde(t, precision) for t, wt in zip(nodes, contour.weights)]
    ratio = [(1 - t) / (1 + t) for t in nodes]
    reports = []
    weighted = base
    for n in range(n_max + 1):
        if n:
            weighted = [b * r for b, r in zip(weighted, ratio)]
        for k in range(k_max + 1):
            coeffs = _build_generic_P(k, n).rounded(precision)
            v = [w * _horner(coeffs, t) for w, t in zip(weighted, nodes)]
            for j in range(k + 1):
                numeric = ctx.fsum(v)
                exact = h_exact(n, k, precision) if j == k else ctx.mpf(0)
                err = abs(numeric - exact)
                reports.append(OrthogonalityReport(n, k, j, numeric, exact, err, tolerance))
                if j < k:
                    v = [x * t for x, t in zip(v, nodes)]
    return reports


def write_report_csv(path, reports, digits: int = 25) -> None:
    """CSV with columns ``n,k,j,re_numeric,im_numeric,exact,abs_error``."""
    with atomic_open(path) as fh:
        w = csv.writer(fh)
        w.writerow(["n", "k", "j", "re_numeric", "im_numeric", "exact", "abs_error"])
        for r in reports:
            w.writerow([r.n, r.k, r.j, fmt(r.numeric.real, digits), fmt(r.numeric.imag, digits),
                        fmt(r.exact, digits), fmt(r.abs_error, 6)])
