"""Exception types raised across the package."""


class JacobiZerosError(Exception):
    """Base class for all package errors."""


class PrecisionTooLow(JacobiZerosError, ValueError):
    """Working precision is below the minimum required for a degree."""


class PoleAtMinusOne(JacobiZerosError, ZeroDivisionError):
    """A quotient with denominator (1+z)^(1/2) was evaluated at z = -1."""


class OnCutError(JacobiZerosError, ValueError):
    """A function was evaluated on one of its branch cuts."""


class ZeroArgument(JacobiZerosError, ValueError):
    """A square root with a direction-dependent branch was evaluated at 0."""


class DomainError(JacobiZerosError, ValueError):
    """Argument outside the convergence domain of a series or map."""


class RegionError(JacobiZerosError, ValueError):
    """Point outside the region where an asymptotic formula applies."""


class RadiusTooSmall(JacobiZerosError, ValueError):
    """Quadrature circle does not enclose the interval [-1, 1]."""


class GammaPole(JacobiZerosError, ZeroDivisionError):
    """Gamma function evaluated at a non-positive integer."""


class NoConvergence(JacobiZerosError, RuntimeError):
    """An iteration did not converge.

    Parameters
    ----------
    message : str
        Human readable description.
    stalled : sequence of int, optional
        Indices of the unknowns that failed to converge.
    """

    def __init__(self, message, stalled=()):
        super().__init__(message)
        self.stalled = tuple(stalled)


class CertificationFailed(JacobiZerosError):
    """A computed zero set failed one of the certification clauses."""

    def __init__(self, clause, message):
        super().__init__(f"{clause}: {message}")
        self.clause = clause


class UnmatchedZeros(JacobiZerosError):
    """Predicted and computed zero counts differ by more than allowed."""


class AccuracyLoss(UserWarning):
    """Two evaluation regimes of the same function disagree."""
