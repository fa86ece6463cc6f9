"""Configurable-precision complex arithmetic and branch-cut square roots.

Every function takes an optional :class:`PrecisionConfig`. Values are
mpmath numbers bound to a private context per precision, so no global
mpmath state is read or modified and calls are safe from several threads.

Branch conventions
------------------
``sqrt_one_plus``
    argument ``theta/2`` with ``theta = Arg(z + 1)`` in ``[0, 2 pi)``.
``sqrt_one_minus``
    argument ``(phi + pi)/2`` with ``phi = Arg(z - 1)`` in ``[0, 2 pi)``.
``sqrt_principal_2pi``
    argument ``Arg(z)/2`` with ``Arg(z)`` in ``[0, 2 pi)``.

All three differ from the principal square root only by a sign, which is
how they are computed.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Any

import mpmath
from mpmath import libmp

from .errors import OnCutError, PoleAtMinusOne, PrecisionTooLow, ZeroArgument

__all__ = [
    "PrecisionConfig",
    "BranchEvaluator",
    "DEFAULT_PRECISION",
    "round_up_bits",
    "sqrt_one_plus",
    "sqrt_one_minus",
    "w_tilde",
    "w_hat",
    "sqrt_principal_2pi",
    "integer_power",
    "to_complex",
    "mpf_to_pair",
    "pair_to_mpf",
]


def round_up_bits(bits: int, quantum: int = 64) -> int:
    """Round ``bits`` up to a multiple of ``quantum``."""
    return -(-int(bits) // quantum) * quantum


@lru_cache(maxsize=None)
def _context(bits: int) -> mpmath.ctx_mp.MPContext:
    ctx = mpmath.MPContext()
    ctx.prec = bits
    return ctx


@dataclass(frozen=True)
class PrecisionConfig:
    """Working precision in binary digits of the significand.

    Parameters
    ----------
    mantissa_bits : int
        Significand length, at least 64.
    """

    mantissa_bits: int = 128

    def __post_init__(self):
        if int(self.mantissa_bits) != self.mantissa_bits or self.mantissa_bits < 64:
            raise ValueError("mantissa_bits must be an integer >= 64")

    @property
    def ctx(self):
        """mpmath context bound to this precision."""
        return _context(self.mantissa_bits)

    @property
    def eps(self):
        """Unit roundoff ``2**-mantissa_bits`` as an mpf."""
        return self.ctx.ldexp(1, -self.mantissa_bits)

    @staticmethod
    def minimum_bits(m: int) -> int:
        """Smallest precision allowed for degree ``m`` work (``2m + 64``)."""
        return 2 * int(m) + 64

    @classmethod
    def for_degree(cls, m: int) -> "PrecisionConfig":
        """Minimum rule ``2m + 64`` rounded up to a multiple of 64."""
        return cls(round_up_bits(cls.minimum_bits(m)))

    @classmethod
    def for_roots(cls, m: int) -> "PrecisionConfig":
        """Precision for root finding, ``3m + 64`` rounded up to 64.

        The zeros of ``pi_m`` closest to ``-sqrt(2)`` lose about ``2.5 m``
        bits to ill-conditioning, so the plain degree rule leaves too few
        correct bits there.
        """
        return cls(round_up_bits(3 * int(m) + 64))

    def check_degree(self, m: int) -> None:
        """Raise :class:`PrecisionTooLow` if ``m`` needs more bits."""
        need = self.minimum_bits(m)
        if self.mantissa_bits < need:
            raise PrecisionTooLow(
                f"degree {m} needs at least {need} bits, got {self.mantissa_bits}"
            )

    def mpc(self, z: Any):
        """Convert ``z`` to a complex number of this context."""
        return self.ctx.mpc(z)

    def mpf(self, x: Any):
        """Convert ``x`` to a real number of this context."""
        return self.ctx.mpf(x)


DEFAULT_PRECISION = PrecisionConfig(128)


def _prec(precision: PrecisionConfig | None) -> PrecisionConfig:
    return DEFAULT_PRECISION if precision is None else precision


def to_complex(z: Any, precision: PrecisionConfig | None = None):
    """Return ``z`` as an mpc of the given precision's context."""
    return _prec(precision).ctx.mpc(z)


def sqrt_one_plus(z, precision: PrecisionConfig | None = None):
    """Square root of ``1 + z`` with the cut along ``(-1, +inf)``.

    The argument of the result is ``theta/2`` where ``theta = Arg(z + 1)``
    is taken in ``[0, 2 pi)``.

    Parameters
    ----------
    z : complex-like
    precision : PrecisionConfig, optional

    Returns
    -------
    mpc

    Examples
    --------
    >>> complex(sqrt_one_plus(-1e-6j))  # doctest: +ELLIPSIS
    (-0.99999...
    """
    ctx = _prec(precision).ctx
    u = ctx.mpc(z) + 1
    s = ctx.sqrt(u)
    return s if u.imag >= 0 else -s


def sqrt_one_minus(z, precision: PrecisionConfig | None = None):
    """Square root of ``1 - z`` with the cut along ``(1, +inf)``.

    The argument of the result is ``(phi + pi)/2`` where ``phi = Arg(z - 1)``
    is taken in ``[0, 2 pi)``. Off the cut this is minus the principal root.
    """
    ctx = _prec(precision).ctx
    z = ctx.mpc(z)
    s = ctx.sqrt(1 - z)
    if z.imag == 0 and z.real > 1:
        # phi = 0 gives argument pi/2, which is the principal value here
        return s
    return -s


def w_tilde(z, precision: PrecisionConfig | None = None):
    """Quotient ``(1 - z)^(1/2) / (1 + z)^(1/2)``, analytic off ``[-1, 1]``.

    Raises
    ------
    PoleAtMinusOne
        If ``z == -1``.
    """
    ctx = _prec(precision).ctx
    z = ctx.mpc(z)
    if z == -1:
        raise PoleAtMinusOne("w_tilde has a pole at z = -1")
    return sqrt_one_minus(z, precision) / sqrt_one_plus(z, precision)


def w_hat(z, precision: PrecisionConfig | None = None):
    """``w_tilde`` on the closed upper half plane, ``-w_tilde`` below.

    The result is continuous across ``(-1, 1)``; points on the real axis
    are evaluated with the upper-half-plane formula.

    Raises
    ------
    OnCutError
        For real ``z`` with ``|z| >= 1``.
    """
    ctx = _prec(precision).ctx
    z = ctx.mpc(z)
    if z.imag == 0 and abs(z.real) >= 1:
        raise OnCutError("w_hat is cut along (-inf, -1] and [1, +inf)")
    v = w_tilde(z, precision)
    return v if z.imag >= 0 else -v


def sqrt_principal_2pi(z, precision: PrecisionConfig | None = None):
    """Square root whose argument ``Arg(z)/2`` lies in ``[0, pi)``.

    Raises
    ------
    ZeroArgument
        At ``z == 0``.
    """
    ctx = _prec(precision).ctx
    z = ctx.mpc(z)
    if z == 0:
        raise ZeroArgument("sqrt_principal_2pi is undefined at 0")
    s = ctx.sqrt(z)
    return s if z.imag >= 0 else -s


def integer_power(z, m: int, precision: PrecisionConfig | None = None):
    """``z**m`` for an integer ``m >= 0`` by binary exponentiation."""
    if m < 0:
        raise ValueError("m must be non-negative")
    ctx = _prec(precision).ctx
    base = ctx.mpc(z)
    result = ctx.mpc(1)
    while m:
        if m & 1:
            result *= base
        m >>= 1
        if m:
            base *= base
    return result


@dataclass(frozen=True)
class BranchEvaluator:
    """Bundle of the branch-cut evaluators at a fixed precision."""

    precision: PrecisionConfig = DEFAULT_PRECISION

    def sqrt_one_plus(self, z):
        return sqrt_one_plus(z, self.precision)

    def sqrt_one_minus(self, z):
        return sqrt_one_minus(z, self.precision)

    def w_tilde(self, z):
        return w_tilde(z, self.precision)

    def w_hat(self, z):
        return w_hat(z, self.precision)

    def sqrt_principal_2pi(self, z):
        return sqrt_principal_2pi(z, self.precision)

    def integer_power(self, z, m):
        return integer_power(z, m, self.precision)


def mpf_to_pair(x) -> tuple[int, int]:
    """Exact ``(mantissa, exponent)`` pair with a signed integer mantissa."""
    sign, man, exp, _ = x._mpf_
    if not man:
        if exp:  # inf or nan
            raise ValueError("non-finite value")
        return 0, 0
    man = int(man)
    return (-man if sign else man), int(exp)


def pair_to_mpf(ctx, pair: tuple[int, int]):
    """Inverse of :func:`mpf_to_pair`; exact, no rounding."""
    man, exp = pair
    return ctx.make_mpf(libmp.from_man_exp(int(man), int(exp)))
