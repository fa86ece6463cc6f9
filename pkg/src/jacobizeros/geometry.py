"""Lemniscates ``|1 - z^2| = rho``, region labels and quadrature circles."""

from __future__ import annotations

import csv
import enum
import math
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .errors import RadiusTooSmall
from .io import atomic_open, fmt
from .numerics import DEFAULT_PRECISION, PrecisionConfig

__all__ = [
    "CurveKind",
    "LemniscateCurve",
    "RegionParams",
    "Zone",
    "RegionLabel",
    "QuadratureContour",
    "sample_lemniscate",
    "classify_region",
    "distance_to_left_lemniscate",
    "build_gamma_contour",
    "integrate",
    "write_curve_csv",
]


class CurveKind(str, enum.Enum):
    LEFT = "left"
    RIGHT = "right"
    SCALED_LEFT = "scaled-left"


@dataclass(frozen=True)
class LemniscateCurve:
    """Ordered samples of a lemniscate half.

    Attributes
    ----------
    kind : CurveKind
    rho : mpf
        Level of ``|1 - z^2|`` (``|1 - 3 z^2 / 2|`` for the right curve).
    thetas : tuple of mpf
        Parameter values, ``1 - z^2 = rho e^{i theta}``.
    samples : tuple of mpc
    """

    kind: CurveKind
    rho: object
    thetas: tuple
    samples: tuple


def sample_lemniscate(kind, rho=1, N: int = 256, precision: PrecisionConfig | None = None,
                      include_endpoint: bool = False) -> LemniscateCurve:
    """Sample a lemniscate half at ``N`` equally spaced parameter values.

    ``left`` and ``scaled-left`` solve ``1 - z^2 = rho e^{i theta}`` with
    ``Re z <= 0``; ``right`` solves ``1 - (3/2) z^2 = e^{i theta}`` with
    ``Re z >= 0`` (``rho`` is ignored). ``theta`` runs over ``[0, 2 pi)``,
    or ``[0, 2 pi]`` when ``include_endpoint`` is set.

    Parameters
    ----------
    kind : {"left", "right", "scaled-left"}
    rho : real, optional
    N : int
        Number of samples, at least 16.
    precision : PrecisionConfig, optional
    include_endpoint : bool
    """
    kind = CurveKind(kind)
    if N < 16:
        raise ValueError("N must be at least 16")
    precision = DEFAULT_PRECISION if precision is None else precision
    ctx = precision.ctx
    rho = ctx.mpf(1 if kind is CurveKind.RIGHT else rho)
    if rho <= 0:
        raise ValueError("rho must be positive")
    denom = N - 1 if include_endpoint else N
    thetas = []
    pts = []
    for j in range(N):
        theta = 2 * ctx.pi * j / denom
        u = 1 - rho * ctx.expj(theta)
        if kind is CurveKind.RIGHT:
            z = ctx.sqrt(u / ctx.mpf(1.5))
        else:
            z = -ctx.sqrt(u)
        thetas.append(theta)
        pts.append(z)
    return LemniscateCurve(kind, rho, tuple(thetas), tuple(pts))


@dataclass(frozen=True)
class RegionParams:
    """Operational region parameters.

    Attributes
    ----------
    epsilon : float
        Radius of the disk ``u_eps`` around the origin.
    band_outer : float
        Outer bound of ``|1 - z^2|`` for the band just outside the left
        lemniscate.
    """

    epsilon: float = 0.25
    band_outer: float = 1.35

    def __post_init__(self):
        if not 0 < self.epsilon < 0.5:
            raise ValueError("epsilon must lie in (0, 0.5)")
        if not self.band_outer > 1:
            raise ValueError("band_outer must exceed 1")


class Zone(str, enum.Enum):
    INSIDE_LEFT = "inside-left"
    OUTER_BAND = "outer-band"
    ELSEWHERE = "elsewhere"


class RegionLabel(NamedTuple):
    zone: Zone
    in_u_eps: bool


def classify_region(z, params: RegionParams | None = None) -> RegionLabel:
    """Label ``z`` by zone (inside-left, outer band, elsewhere) and ``u_eps``.

    >>> classify_region(-0.5)
    RegionLabel(zone=<Zone.INSIDE_LEFT: 'inside-left'>, in_u_eps=False)
    """
    params = RegionParams() if params is None else params
    z = complex(z)
    level = abs(1 - z * z)
    if z.real <= 0 and level < 1:
        zone = Zone.INSIDE_LEFT
    elif z.real <= 0 and 1 < level < params.band_outer:
        zone = Zone.OUTER_BAND
    else:
        zone = Zone.ELSEWHERE
    return RegionLabel(zone, abs(z) < params.epsilon)


def _curve_points(theta: np.ndarray) -> np.ndarray:
    # left lobe of |1 - w^2| = 1 for theta in [0, 2 pi]
    return -np.sqrt(1 - np.exp(1j * theta))


def distance_to_left_lemniscate(z, samples: int = 4096) -> float:
    """Euclidean distance from ``z`` to the lemniscate ``|1 - w^2| = 1``.

    Both lobes are considered; by symmetry the right lobe is handled by
    reflecting ``z`` to the left half plane. A dense parameter scan is
    refined by golden-section search.
    """
    z = complex(z)
    if z.real > 0:
        z = -z.real + 1j * z.imag
    theta = np.linspace(0.0, 2 * math.pi, samples + 1)
    d = np.abs(_curve_points(theta) - z)
    i = int(np.argmin(d))
    best = float(d[i])
    lo = theta[max(i - 1, 0)]
    hi = theta[min(i + 1, samples)]

    def f(t):
        return abs(-np.sqrt(1 - np.exp(1j * t)) - z)

    g = (math.sqrt(5) - 1) / 2
    a, b = lo, hi
    c = b - g * (b - a)
    e = a + g * (b - a)
    fc, fe = f(c), f(e)
    for _ in range(200):
        if b - a < 1e-15:
            break
        if fc < fe:
            b, e, fe = e, c, fc
            c = b - g * (b - a)
            fc = f(c)
        else:
            a, c, fc = c, e, fe
            e = a + g * (b - a)
            fe = f(e)
    return float(min(best, fc, fe, f(lo), f(hi)))


@dataclass(frozen=True)
class QuadratureContour:
    """Trapezoid rule on a counterclockwise circle.

    Attributes
    ----------
    center, radius : mpc, mpf
    nodes : tuple of mpc
        ``center + R e^{2 pi i j / N}``.
    weights : tuple of mpc
        ``2 pi i R e^{2 pi i j / N} / N``.
    """

    center: object
    radius: object
    nodes: tuple
    weights: tuple

    @property
    def N(self) -> int:
        return len(self.nodes)


def build_gamma_contour(radius=2, N: int = 1024, precision: PrecisionConfig | None = None,
                        center=0) -> QuadratureContour:
    """Circle enclosing ``[-1, 1]`` with trapezoid nodes and weights.

    Raises
    ------
    RadiusTooSmall
        If the circle meets or fails to enclose ``[-1, 1]``.
    """
    precision = DEFAULT_PRECISION if precision is None else precision
    ctx = precision.ctx
    radius = ctx.mpf(radius)
    center = ctx.mpc(center)
    if radius <= 1 + abs(center):
        raise RadiusTooSmall("circle must enclose [-1, 1] without touching it")
    if N < 8 or N % 2:
        raise ValueError("N must be even and at least 8")
    nodes = []
    weights = []
    for j in range(N):
        e = ctx.expj(2 * ctx.pi * j / N)
        nodes.append(center + radius * e)
        weights.append(2j * ctx.pi * radius * e / N)
    return QuadratureContour(center, radius, tuple(nodes), tuple(weights))


def integrate(f, contour: QuadratureContour, precision: PrecisionConfig | None = None):
    """Trapezoid approximation of the contour integral of ``f``."""
    precision = DEFAULT_PRECISION if precision is None else precision
    ctx = precision.ctx
    return ctx.fsum(w * f(t) for t, w in zip(contour.nodes, contour.weights))


def write_curve_csv(path, curve: LemniscateCurve, digits: int = 20) -> None:
    """Write one curve as ``theta, re, im`` rows."""
    with atomic_open(path) as fh:
        w = csv.writer(fh)
        w.writerow(["theta", "re", "im"])
        for t, z in zip(curve.thetas, curve.samples):
            w.writerow([fmt(t, digits), fmt(z.real, digits), fmt(z.imag, digits)])
