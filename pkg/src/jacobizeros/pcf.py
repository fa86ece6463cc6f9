"""Parabolic cylinder function ``D_nu`` at ``nu = -1/2``.

Two evaluation regimes:

* ``|w| < 8``: the integral
  ``D(w) = exp(-w^2/4)/Gamma(1/2) int_0^inf t^{-1/2} exp(-w t - t^2/2) dt``
  after ``t = s^2`` becomes ``exp(-w^2/4)/sqrt(pi) int_R exp(-w s^2 - s^4/2) ds``,
  an entire, rapidly decaying integrand for which the trapezoid rule
  converges geometrically.
* ``|w| >= 8``: the large-argument expansion, including the exponentially
  growing second series when ``|arg w| > pi/2``.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from fractions import Fraction

from .errors import AccuracyLoss
from .numerics import DEFAULT_PRECISION, PrecisionConfig, _context

__all__ = [
    "NU",
    "PolarConstant",
    "PCF_A",
    "pcf_D_minus_half",
    "pcf_integral",
    "pcf_series",
    "q_local",
]

NU = Fraction(-1, 2)
SERIES_RADIUS = 8.0
OVERLAP = (6.0, 10.0)


@dataclass(frozen=True)
class PolarConstant:
    """Number ``2**log2_modulus * exp(i pi turn)`` with rational parts.

    Powers are exact in this representation.

    >>> a = PCF_A
    >>> (a ** 4).log2_modulus, (a ** 4).turn
    (Fraction(1, 1), Fraction(-1, 1))
    """

    log2_modulus: Fraction
    turn: Fraction

    def __pow__(self, k: int) -> "PolarConstant":
        return PolarConstant(self.log2_modulus * k, self.turn * k)

    def __mul__(self, other: "PolarConstant") -> "PolarConstant":
        return PolarConstant(self.log2_modulus + other.log2_modulus, self.turn + other.turn)

    def normalized(self) -> "PolarConstant":
        """Same number with ``turn`` reduced to ``(-1, 1]``."""
        t = self.turn % 2
        if t > 1:
            t -= 2
        return PolarConstant(self.log2_modulus, t)

    def value(self, precision: PrecisionConfig | None = None):
        precision = DEFAULT_PRECISION if precision is None else precision
        ctx = precision.ctx
        lm = self.log2_modulus
        mod = ctx.power(2, ctx.mpf(lm.numerator) / lm.denominator)
        t = self.turn
        return mod * ctx.expjpi(ctx.mpf(t.numerator) / t.denominator)


#: the scaling constant 2^{1/4} e^{-i pi/4}
PCF_A = PolarConstant(Fraction(1, 4), Fraction(-1, 4))


def _integral(w, bits: int):
    r = float(abs(w))
    work = bits + int(r * r / (4 * math.log(2))) + 16
    ctx = _context(work)
    w = ctx.mpc(w)
    h = ctx.mpf(1.25 * (work * math.log(2) + r * r / 2 + 10) ** -0.75)
    tol = ctx.ldexp(1, -work)
    total = ctx.mpc(0)
    peak = ctx.mpf(1)
    k = 1
    while True:
        s2 = (k * h) ** 2
        term = ctx.exp(-w * s2 - s2 * s2 / 2)
        total += term
        at = abs(term)
        if at > peak:
            peak = at
        if k * h > 1 and at < tol * peak:
            break
        k += 1
    return ctx.exp(-w * w / 4) * h * (1 + 2 * total) / ctx.sqrt(ctx.pi)


def pcf_integral(w, precision: PrecisionConfig | None = None):
    """``D_{-1/2}(w)`` from the integral representation (any ``w``)."""
    precision = DEFAULT_PRECISION if precision is None else precision
    return precision.ctx.mpc(_integral(w, precision.mantissa_bits))


def _series_sum(ctx, x, sign, terms):
    # sum_s sign^s (1/2)_{2s} / (s! x^s), x = 2 w^2
    total = ctx.mpc(1)
    t = ctx.mpc(1)
    prev = ctx.mpf(1)
    tiny = ctx.eps
    s = 1
    while True:
        if terms is not None and s >= terms:
            break
        t = t * sign * (2 * s - ctx.mpf(1.5)) * (2 * s - ctx.mpf(0.5)) / (s * x)
        at = abs(t)
        if terms is None and (at > prev or at < tiny * abs(total)):
            break
        total += t
        prev = at
        s += 1
        if s > 10000:
            break
    return total


def _stokes_weight(ctx, F):
    # smooth Stokes multiplier erfc(-Im F / sqrt(2 Re F)) / 2, F the singulant
    if F.real <= 0:
        return None
    return ctx.erfc(-F.imag / ctx.sqrt(2 * F.real)) / 2


def pcf_series(w, precision: PrecisionConfig | None = None, terms: int | None = None,
               smooth: bool | None = None):
    """Large-argument expansion of ``D_{-1/2}(w)``.

    Parameters
    ----------
    w : complex-like
    precision : PrecisionConfig, optional
    terms : int, optional
        Number of terms kept in each series (``2`` keeps the ``1/w^2``
        correction only). Default: truncate before the smallest term.
    smooth : bool, optional
        Switch the subdominant series on across the Stokes lines
        ``arg w = +-pi/2`` and ``+-pi`` with error-function multipliers
        instead of a step. Defaults to ``True`` for optimal truncation and
        ``False`` when ``terms`` is given.

    Notes
    -----
    For ``|arg w| > pi/2`` the recessive expansion is completed by
    ``-sqrt(2 pi)/Gamma(-nu) e^{+-i pi nu} e^{w^2/4} w^{-nu-1} (...)``
    with the sign of ``arg w``. With smoothing, the multiplier of that term
    rises from 0 to 1 across ``arg w = pi/2``, and the coefficient of the
    first series falls from 1 to 0 as ``arg w`` approaches ``pi``, where it
    is maximally subdominant.
    """
    precision = DEFAULT_PRECISION if precision is None else precision
    if smooth is None:
        smooth = terms is None
    ctx = precision.ctx
    w = ctx.mpc(w)
    x = 2 * w * w
    root = ctx.sqrt(w)
    arg = ctx.arg(w)
    quarter = ctx.pi / 4
    first = ctx.mpf(1)
    second = ctx.mpf(0)
    if not smooth:
        if abs(arg) > 2 * quarter:
            second = ctx.mpf(1)
    elif abs(arg) > quarter:
        if abs(arg) < 3 * quarter:
            F = -w * w / 2
            second = _stokes_weight(ctx, F if arg > 0 else ctx.conj(F))
        else:
            second = ctx.mpf(1)
            F = w * w / 2
            b = _stokes_weight(ctx, F if arg > 0 else ctx.conj(F))
            if b is not None:
                first = 1 - 2 * b
    val = first * ctx.exp(-w * w / 4) / root * _series_sum(ctx, x, -1, terms)
    if second:
        # -sqrt(2 pi)/Gamma(1/2) = -sqrt(2);  e^{+-i pi nu} = -+i
        phase = ctx.mpc(0, -1) if arg > 0 else ctx.mpc(0, 1)
        val += (second * -ctx.sqrt(2) * phase * ctx.exp(w * w / 4) / root
                * _series_sum(ctx, x, 1, terms))
    return val


def pcf_D_minus_half(w, precision: PrecisionConfig | None = None, check: bool = False):
    """Parabolic cylinder function ``D_{-1/2}(w)``.

    Parameters
    ----------
    w : complex-like
    precision : PrecisionConfig, optional
    check : bool
        In the annulus ``6 <= |w| <= 10`` also evaluate the other regime and
        warn with :class:`AccuracyLoss` if they differ by more than ``1e-8``
        relative.

    Examples
    --------
    >>> round(float(pcf_D_minus_half(0).real), 10)
    1.2162802143
    """
    precision = DEFAULT_PRECISION if precision is None else precision
    ctx = precision.ctx
    w = ctx.mpc(w)
    r = float(abs(w))
    if r < SERIES_RADIUS:
        val = pcf_integral(w, precision)
    else:
        val = pcf_series(w, precision)
    if check and OVERLAP[0] <= r <= OVERLAP[1]:
        other = pcf_series(w, precision) if r < SERIES_RADIUS else pcf_integral(w, precision)
        diff = abs(val - other) / max(abs(val), abs(other))
        if diff > 1e-8:
            warnings.warn(f"D_-1/2 regimes disagree by {float(diff):.3g} at w={complex(w)}",
                          AccuracyLoss, stacklevel=2)
    return val


def q_local(xi, precision: PrecisionConfig | None = None, check: bool = False):
    """``q_l(xi) = e^{i pi/4} D(e^{-3 pi i/4} xi) - i sqrt(2) D(e^{-5 pi i/4} xi)``."""
    precision = DEFAULT_PRECISION if precision is None else precision
    ctx = precision.ctx
    xi = ctx.mpc(xi)
    d1 = pcf_D_minus_half(xi * ctx.expjpi(ctx.mpf(-0.75)), precision, check)
    d2 = pcf_D_minus_half(xi * ctx.expjpi(ctx.mpf(-1.25)), precision, check)
    return ctx.expjpi(ctx.mpf(0.25)) * d1 - ctx.mpc(0, 1) * ctx.sqrt(2) * d2
