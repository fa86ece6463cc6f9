"""Exact construction of ``P_m = P_m^(m+1/2, -m-1/2)`` and its monic form.

Coefficients are kept as exact rationals; rounding happens once, when a
polynomial is evaluated at a given precision.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import comb
from typing import Sequence

from .numerics import PrecisionConfig, DEFAULT_PRECISION

__all__ = [
    "ExactPolynomial",
    "binomial",
    "pochhammer",
    "jacobi_coefficients",
    "build_P",
    "build_pi",
    "kappa",
    "evaluate",
    "evaluate_derivative",
    "evaluate_exact",
    "evaluate_hypergeometric",
    "to_json",
    "from_json",
]


def binomial(u: Fraction, k: int) -> Fraction:
    """Generalized binomial ``u (u-1) ... (u-k+1) / k!`` for rational ``u``."""
    u = Fraction(u)
    out = Fraction(1)
    for i in range(k):
        out = out * (u - i) / (i + 1)
    return out


def pochhammer(a: Fraction, n: int) -> Fraction:
    """Rising factorial ``(a)_n``."""
    a = Fraction(a)
    out = Fraction(1)
    for i in range(n):
        out *= a + i
    return out


def kappa(m: int) -> Fraction:
    """Leading coefficient ``C(2m, m) / 2**m`` of ``P_m``."""
    return Fraction(comb(2 * m, m), 2**m)


@dataclass(frozen=True)
class ExactPolynomial:
    """Polynomial with exact rational coefficients in ascending order.

    Attributes
    ----------
    degree : int
    coeffs : tuple of Fraction
        ``coeffs[k]`` multiplies ``x**k``.
    alpha, beta : Fraction
        Jacobi parameters.
    kappa : Fraction
        Leading coefficient of the unnormalized polynomial.
    monic : bool
        Whether the polynomial was divided by ``kappa``.
    """

    degree: int
    coeffs: tuple[Fraction, ...]
    alpha: Fraction
    beta: Fraction
    kappa: Fraction
    monic: bool = False
    _cache: dict = field(default_factory=dict, compare=False, repr=False, hash=False)

    def __post_init__(self):
        if len(self.coeffs) != self.degree + 1:
            raise ValueError("coefficient count must be degree + 1")
        if self.coeffs[-1] == 0:
            raise ValueError("leading coefficient must be non-zero")
        if self.monic and self.coeffs[-1] != 1:
            raise ValueError("monic polynomial must have leading coefficient 1")

    @property
    def m(self) -> int:
        return self.degree

    def rounded(self, precision: PrecisionConfig):
        """Coefficients rounded to ``precision``, cached per precision."""
        key = precision.mantissa_bits
        cached = self._cache.get(key)
        if cached is None:
            ctx = precision.ctx
            cached = tuple(ctx.mpf(c.numerator) / c.denominator for c in self.coeffs)
            self._cache[key] = cached
        return cached

    def derivative_coeffs(self) -> tuple[Fraction, ...]:
        return tuple(k * c for k, c in enumerate(self.coeffs) if k)

    def max_abs_coeff(self) -> Fraction:
        return max(abs(c) for c in self.coeffs)


def jacobi_coefficients(n: int, alpha: Fraction, beta: Fraction) -> list[Fraction]:
    """Monomial coefficients of ``P_n^(alpha, beta)`` from the explicit sum.

    Uses ``2**-n * sum_k C(n+alpha, n-k) C(n+beta, k) (x-1)**k (x+1)**(n-k)``
    accumulated by a Horner-like recursion in ``(x - 1)`` so that the cost is
    ``O(n**2)`` rational operations.
    """
    alpha, beta = Fraction(alpha), Fraction(beta)
    if n == 0:
        return [Fraction(1)]
    # a[k] = C(n+alpha, n-k) C(n+beta, k)
    b_alpha = [Fraction(1)] * (n + 1)  # C(n+alpha, i) for i = 0..n
    b_beta = [Fraction(1)] * (n + 1)
    for i in range(n):
        b_alpha[i + 1] = b_alpha[i] * (n + alpha - i) / (i + 1)
        b_beta[i + 1] = b_beta[i] * (n + beta - i) / (i + 1)
    a = [b_alpha[n - k] * b_beta[k] for k in range(n + 1)]
    # T_n = a_n; T_j = T_{j+1} (x-1) + a_j (x+1)^(n-j); T_0 is the sum
    acc = [a[n]]
    for j in range(n - 1, -1, -1):
        shifted = [Fraction(0)] * (len(acc) + 1)
        for i, c in enumerate(acc):
            shifted[i + 1] += c
            shifted[i] -= c
        d = n - j
        for i in range(d + 1):
            shifted[i] += a[j] * comb(d, i)
        acc = shifted
    scale = Fraction(1, 2**n)
    return [c * scale for c in acc]


@lru_cache(maxsize=256)
def build_P(m: int) -> ExactPolynomial:
    """Build ``P_m^(m+1/2, -m-1/2)`` with exact rational coefficients.

    Examples
    --------
    >>> [str(c) for c in build_P(2).coeffs]
    ['21/8', '15/4', '3/2']
    """
    if m < 0:
        raise ValueError("m must be non-negative")
    alpha = Fraction(2 * m + 1, 2)
    coeffs = jacobi_coefficients(m, alpha, -alpha)
    return ExactPolynomial(m, tuple(coeffs), alpha, -alpha, kappa(m))


@lru_cache(maxsize=256)
def build_pi(m: int) -> ExactPolynomial:
    """Monic normalization ``pi_m = P_m / kappa_m``."""
    p = build_P(m)
    k = p.kappa
    return ExactPolynomial(
        m, tuple(c / k for c in p.coeffs), p.alpha, p.beta, k, monic=True
    )


def evaluate_exact(poly: ExactPolynomial, x: Fraction) -> Fraction:
    """Horner evaluation in exact rational arithmetic."""
    x = Fraction(x)
    acc = Fraction(0)
    for c in reversed(poly.coeffs):
        acc = acc * x + c
    return acc


def evaluate(poly: ExactPolynomial, z, precision: PrecisionConfig | None = None):
    """Horner evaluation at ``z`` with coefficients rounded to ``precision``.

    Raises
    ------
    PrecisionTooLow
        If ``precision`` is below ``2m + 64`` bits.
    """
    precision = DEFAULT_PRECISION if precision is None else precision
    precision.check_degree(poly.degree)
    ctx = precision.ctx
    z = ctx.mpc(z)
    acc = ctx.mpc(0)
    for c in reversed(poly.rounded(precision)):
        acc = acc * z + c
    return acc


def evaluate_derivative(poly: ExactPolynomial, z, precision: PrecisionConfig | None = None):
    """Return ``(p(z), p'(z))`` by a joint Horner recursion."""
    precision = DEFAULT_PRECISION if precision is None else precision
    precision.check_degree(poly.degree)
    ctx = precision.ctx
    z = ctx.mpc(z)
    p = ctx.mpc(0)
    dp = ctx.mpc(0)
    for c in reversed(poly.rounded(precision)):
        dp = dp * z + p
        p = p * z + c
    return p, dp


def evaluate_hypergeometric(m: int, z, precision: PrecisionConfig | None = None):
    """Evaluate ``P_m`` through its terminating Gauss series.

    ``P_m(x) = (alpha+1)_m / m! * 2F1(-m, m+1; alpha+1; (1-x)/2)`` with
    ``alpha = m + 1/2`` (the parameter sum ``alpha + beta`` vanishes).
    Independent of :func:`build_P`, so it serves as a cross-check.
    """
    precision = DEFAULT_PRECISION if precision is None else precision
    ctx = precision.ctx
    alpha = Fraction(2 * m + 1, 2)
    y = (1 - ctx.mpc(z)) / 2
    # exact ratio of consecutive series coefficients
    coef = Fraction(1)
    total = ctx.mpc(0)
    power = ctx.mpc(1)
    for k in range(m + 1):
        total += power * (ctx.mpf(coef.numerator) / coef.denominator)
        coef = coef * (-m + k) * (m + 1 + k) / ((alpha + 1 + k) * (k + 1))
        power *= y
    pref = pochhammer(alpha + 1, m) / pochhammer(Fraction(1), m)
    return total * ctx.mpf(pref.numerator) / pref.denominator


def _frac_str(c: Fraction) -> str:
    return f"{c.numerator}/{c.denominator}"


def to_json(poly: ExactPolynomial) -> str:
    """Serialize to ``{"m", "kappa", "coeffs"}`` with ``"p/q"`` strings."""
    record = {
        "m": poly.degree,
        "monic": poly.monic,
        "kappa": _frac_str(poly.kappa),
        "coeffs": [_frac_str(c) for c in poly.coeffs],
    }
    return json.dumps(record)


def from_json(text: str) -> ExactPolynomial:
    """Inverse of :func:`to_json` for the diagonal family."""
    rec = json.loads(text)
    m = int(rec["m"])
    coeffs: Sequence[Fraction] = tuple(Fraction(c) for c in rec["coeffs"])
    alpha = Fraction(2 * m + 1, 2)
    return ExactPolynomial(
        m, tuple(coeffs), alpha, -alpha, Fraction(rec["kappa"]), bool(rec.get("monic", False))
    )
