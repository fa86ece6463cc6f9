"""Outer and local large-``m`` approximations of ``pi_m``.

Outer (band just outside the left lemniscate, away from the origin)::

    pi_m(z) ~ (1+z)^{1/2} / z^{1/2} * (1+z)^m * q(m, z),
    q(m, z) = 1 - i sqrt(2) / ((1-z^2)^m (1-z)^{1/2} (1+z)^{1/2}).

Local (near the origin, upper half plane), with ``xi = lambda(z)``::

    pi_m(z) ~ (1+z)^m (1+z)^{1/2} (xi e^{-5 pi i/4})^{1/2} e^{i xi^2/4} / (2 z^{1/2})
              * [1 - 1/((1-z)^{1/2} (1+z)^{1/2})] * q_l(xi).

All square roots use the branch conventions of :mod:`jacobizeros.numerics`.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import DomainError, NoConvergence, RegionError
from .geometry import RegionParams, Zone, classify_region
from .jacobi import build_pi, evaluate
from .numerics import (
    DEFAULT_PRECISION,
    PrecisionConfig,
    integer_power,
    round_up_bits,
    sqrt_one_minus,
    sqrt_one_plus,
    sqrt_principal_2pi,
)
from .pcf import q_local

__all__ = [
    "TAU_RADIUS",
    "tau",
    "lambda_map",
    "lambda_inverse",
    "q_outer",
    "q_outer_logspace",
    "outer_asymptotic",
    "local_asymptotic",
    "AsymptoticSample",
    "exact_precision",
    "sample_outer",
    "sample_local",
    "loglog_slope",
]

TAU_RADIUS = 0.8


def _tau_series(z, ctx, bits, derivative=False):
    # S(z) = sum z^{2k}/(k+1) and, if asked, S'(z) = sum 2k z^{2k-1}/(k+1)
    z2 = z * z
    tol = ctx.ldexp(1, -bits - 8)
    s = ctx.mpc(1)
    ds = ctx.mpc(0)
    power = ctx.mpc(1)  # z^{2k-2} at the top of the loop
    k = 0
    while True:
        k += 1
        if derivative:
            ds += 2 * k * power * z / (k + 1)
        power *= z2
        s += power / (k + 1)
        if abs(power) * 2 * (k + 1) < tol:
            break
    return s, ds


def tau(z, precision: PrecisionConfig | None = None):
    """``sqrt(sum_{k>=0} z^{2k}/(k+1))`` (principal root), ``|z| < 0.8``.

    ``tau(z)^2 = -log(1 - z^2) / z^2``.
    """
    precision = DEFAULT_PRECISION if precision is None else precision
    ctx = precision.ctx
    z = ctx.mpc(z)
    if abs(z) >= TAU_RADIUS:
        raise DomainError(f"tau series needs |z| < {TAU_RADIUS}")
    s, _ = _tau_series(z, ctx, precision.mantissa_bits)
    return ctx.sqrt(s)


def lambda_map(m: int, z, precision: PrecisionConfig | None = None):
    """``xi = sqrt(2m) z e^{-i pi/4} tau(z)``, so ``(1-z^2)^m = e^{-i xi^2/2}``."""
    precision = DEFAULT_PRECISION if precision is None else precision
    ctx = precision.ctx
    z = ctx.mpc(z)
    return ctx.sqrt(2 * m) * z * ctx.expjpi(ctx.mpf(-0.25)) * tau(z, precision)


def lambda_inverse(m: int, xi, precision: PrecisionConfig | None = None,
                   max_preimage: float = 0.5, max_iter: int = 64):
    """Invert :func:`lambda_map` by Newton's method.

    Starts from ``xi e^{i pi/4} / sqrt(2m)``.

    Raises
    ------
    DomainError
        If the start or the iterate leaves ``|z| < max_preimage``.
    NoConvergence
        After ``max_iter`` steps.
    """
    precision = DEFAULT_PRECISION if precision is None else precision
    ctx = precision.ctx
    bits = precision.mantissa_bits
    xi = ctx.mpc(xi)
    if xi == 0:
        return ctx.mpc(0)
    c = ctx.sqrt(2 * m) * ctx.expjpi(ctx.mpf(-0.25))
    z = xi / c
    tol = ctx.ldexp(1, -bits + 16) * max(1, abs(xi))
    for _ in range(max_iter):
        if abs(z) >= max_preimage:
            raise DomainError(f"preimage of xi={complex(xi)} leaves |z| < {max_preimage}")
        s, ds = _tau_series(z, ctx, bits, derivative=True)
        t = ctx.sqrt(s)
        f = c * z * t - xi
        if abs(f) < tol:
            return z
        df = c * (t + z * ds / (2 * t))
        z = z - f / df
    raise NoConvergence(f"lambda_inverse did not converge for xi={complex(xi)}")


def q_outer(m: int, z, precision: PrecisionConfig | None = None):
    """``1 - i sqrt(2) / ((1-z^2)^m (1-z)^{1/2} (1+z)^{1/2})``."""
    precision = DEFAULT_PRECISION if precision is None else precision
    ctx = precision.ctx
    z = ctx.mpc(z)
    denom = integer_power(1 - z * z, m, precision) * sqrt_one_minus(z, precision) \
        * sqrt_one_plus(z, precision)
    return 1 - ctx.mpc(0, 1) * ctx.sqrt(2) / denom


def q_outer_logspace(m: int, z, precision: PrecisionConfig | None = None):
    """Same as :func:`q_outer` with the power taken as ``exp(m log(1-z^2))``."""
    precision = DEFAULT_PRECISION if precision is None else precision
    ctx = precision.ctx
    z = ctx.mpc(z)
    prod = sqrt_one_minus(z, precision) * sqrt_one_plus(z, precision)
    return 1 - ctx.mpc(0, 1) * ctx.sqrt(2) * ctx.exp(-m * ctx.log(1 - z * z)) / prod


def outer_asymptotic(m: int, z, precision: PrecisionConfig | None = None,
                     region: RegionParams | None = None, check_region: bool = True):
    """Leading-order outer approximation of ``pi_m(z)``.

    Raises
    ------
    RegionError
        Unless ``z`` lies in the outer band and outside ``u_eps``.
    """
    precision = DEFAULT_PRECISION if precision is None else precision
    ctx = precision.ctx
    z = ctx.mpc(z)
    if check_region:
        label = classify_region(z, region)
        if label.zone is not Zone.OUTER_BAND or label.in_u_eps:
            raise RegionError(f"z={complex(z)} is not in the outer band outside u_eps")
    sp = sqrt_one_plus(z, precision)
    return sp / sqrt_principal_2pi(z, precision) * integer_power(1 + z, m, precision) \
        * q_outer(m, z, precision)


def local_asymptotic(m: int, z, precision: PrecisionConfig | None = None,
                     region: RegionParams | None = None, check_region: bool = True):
    """Leading-order approximation of ``pi_m(z)`` near the origin.

    Raises
    ------
    RegionError
        Unless ``Im z > 0``, ``z`` is in ``u_eps`` and in the inside-left
        zone or the outer band.
    """
    precision = DEFAULT_PRECISION if precision is None else precision
    ctx = precision.ctx
    z = ctx.mpc(z)
    if check_region:
        label = classify_region(z, region)
        if z.imag <= 0 or not label.in_u_eps or label.zone is Zone.ELSEWHERE:
            raise RegionError(f"z={complex(z)} is outside the local domain")
    xi = lambda_map(m, z, precision)
    sp = sqrt_one_plus(z, precision)
    sm = sqrt_one_minus(z, precision)
    eta_root = sqrt_principal_2pi(xi * ctx.expjpi(ctx.mpf(-1.25)), precision)
    pref = integer_power(1 + z, m, precision) * sp * eta_root \
        * ctx.exp(ctx.mpc(0, 1) * xi * xi / 4) / (2 * sqrt_principal_2pi(z, precision))
    return pref * (1 - 1 / (sm * sp)) * q_local(xi, precision)


@dataclass(frozen=True)
class AsymptoticSample:
    """Exact and predicted values of ``pi_m(z)``."""

    m: int
    z: object
    exact: object
    predicted: object
    rel_error: float


def exact_precision(m: int, z, base: PrecisionConfig | None = None) -> PrecisionConfig:
    """Precision for evaluating ``pi_m(z)`` with ample correct bits.

    Horner on ``pi_m`` loses about ``m log2((1+|z|)/|1+z|)`` bits to
    cancellation, which is added to the degree rule.
    """
    z = complex(z)
    loss = m * max(0.0, math.log2((1 + abs(z)) / max(abs(1 + z), 1e-300)))
    bits = max(PrecisionConfig.minimum_bits(m) + int(math.ceil(loss)) + 32,
               0 if base is None else base.mantissa_bits)
    return PrecisionConfig(round_up_bits(bits))


def _rel(ctx, a, b):
    return float(abs(a - b) / max(abs(a), abs(b), ctx.ldexp(1, -ctx.prec)))


def sample_outer(m: int, z, precision: PrecisionConfig | None = None,
                 region: RegionParams | None = None) -> AsymptoticSample:
    """Compare :func:`outer_asymptotic` with ``pi_m`` at ``z``."""
    prec = exact_precision(m, z, precision)
    exact = evaluate(build_pi(m), z, prec)
    pred = outer_asymptotic(m, z, prec, region)
    return AsymptoticSample(m, prec.ctx.mpc(z), exact, pred, _rel(prec.ctx, exact, pred))


def sample_local(m: int, z, precision: PrecisionConfig | None = None,
                 region: RegionParams | None = None) -> AsymptoticSample:
    """Compare :func:`local_asymptotic` with ``pi_m`` at ``z``."""
    prec = exact_precision(m, z, precision)
    exact = evaluate(build_pi(m), z, prec)
    pred = local_asymptotic(m, z, prec, region)
    return AsymptoticSample(m, prec.ctx.mpc(z), exact, pred, _rel(prec.ctx, exact, pred))


def loglog_slope(xs, ys) -> float:
    """Least-squares slope of ``log y`` against ``log x``."""
    lx = [math.log(x) for x in xs]
    ly = [math.log(y) for y in ys]
    n = len(lx)
    mx = sum(lx) / n
    my = sum(ly) / n
    sxx = sum((a - mx) ** 2 for a in lx)
    sxy = sum((a - mx) * (b - my) for a, b in zip(lx, ly))
    return sxy / sxx
