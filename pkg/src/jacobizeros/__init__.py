"""Zeros, asymptotics and contour orthogonality of the Jacobi polynomials
``P_m^(m+1/2, -m-1/2)`` in arbitrary precision."""

from .numerics import PrecisionConfig
from .jacobi import build_P, build_pi, evaluate

__version__ = "0.1.0"

__all__ = ["PrecisionConfig", "build_P", "build_pi", "evaluate", "__version__"]
