"""Zeros of ``pi_m``: computation, certification and comparison with
the zeros of the outer function ``q(m, z)`` and the local function ``q_l``.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

from . import kernels
from .asymptotics import lambda_map, q_outer
from .errors import CertificationFailed, NoConvergence, UnmatchedZeros
from .geometry import RegionParams, distance_to_left_lemniscate
from .jacobi import ExactPolynomial, build_pi, evaluate_derivative
from .numerics import PrecisionConfig, mpf_to_pair, pair_to_mpf
from .pcf import q_local

__all__ = [
    "ZeroSet",
    "CertificationReport",
    "PredictedZero",
    "PredictedZeroSet",
    "PairingReport",
    "RoucheBox",
    "LemniscateRow",
    "aberth_solve",
    "durand_kerner_oracle",
    "solve_pi",
    "certify",
    "predicted_zeros_outer",
    "rouche_box",
    "pair_zeros",
    "real_zero_census",
    "lemniscate_convergence",
    "local_zero_candidates",
    "local_pairing",
    "matching_distance",
]


# --------------------------------------------------------------------------
# zero sets


@dataclass(frozen=True)
class ZeroSet:
    """Approximate zeros of a polynomial with per-root diagnostics.

    Attributes
    ----------
    m : int
        Degree.
    roots : tuple of mpc
    residuals : tuple of mpf
        ``|p(z_k)|`` at the working precision.
    radii : tuple of mpf
        Inclusion radius ``m max(|p|, floor) / |p'|`` per root, where
        ``floor`` is the rounding level of the Horner sum.
    newton : tuple of mpf
        Newton step ``|p / p'|`` per root.
    min_separation : mpf or None
    vieta : tuple of mpf
        Deviations ``|sum z + c_{m-1}|`` and ``|prod z - (-1)^m c_0|``.
    precision : PrecisionConfig
    sweeps : int
        Iterations used by the solver.
    method : str
    """

    m: int
    roots: tuple
    residuals: tuple
    radii: tuple
    newton: tuple
    min_separation: object
    vieta: tuple
    precision: PrecisionConfig
    sweeps: int = 0
    method: str = ""

    def __len__(self):
        return len(self.roots)

    def as_complex(self) -> np.ndarray:
        return np.array([complex(z) for z in self.roots], dtype=complex)


def _finalize(poly: ExactPolynomial, roots, precision: PrecisionConfig, sweeps: int,
              method: str) -> ZeroSet:
    ctx = precision.ctx
    m = poly.degree
    coeffs = poly.rounded(precision)
    absc = [abs(c) for c in coeffs]
    eta = ctx.ldexp(4 * (m + 1), -precision.mantissa_bits)
    residuals, radii, newton = [], [], []
    for z in roots:
        p, dp = evaluate_derivative(poly, z, precision)
        az = abs(z)
        floor = ctx.mpf(0)
        for c in reversed(absc):
            floor = floor * az + c
        floor *= eta
        ap, adp = abs(p), abs(dp)
        residuals.append(ap)
        if adp == 0:
            radii.append(ctx.inf)
            newton.append(ctx.inf)
        else:
            radii.append(m * max(ap, floor) / adp)
            newton.append(ap / adp)
    sep = None
    if m >= 2:
        sep = min(abs(roots[i] - roots[j]) for i in range(m) for j in range(i + 1, m))
    if m >= 1:
        total = ctx.fsum(roots)
        prod = ctx.mpc(1)
        for z in roots:
            prod *= z
        vieta = (abs(total + coeffs[m - 1]), abs(prod - (-1) ** m * coeffs[0]))
    else:
        vieta = (ctx.mpf(0), ctx.mpf(0))
    return ZeroSet(m, tuple(roots), tuple(residuals), tuple(radii), tuple(newton), sep,
                   vieta, precision, sweeps, method)


def _default_guesses(m: int, precision: PrecisionConfig):
    ctx = precision.ctx
    guesses = [e.z_star + ctx.mpf(1e-3) * ctx.expj(e.k)
               for e in predicted_zeros_outer(m, precision).entries]
    return guesses


def _fill_guesses(guesses, m, precision):
    # pad with points of the left lemniscate if fewer than m guesses are given
    ctx = precision.ctx
    guesses = [ctx.mpc(g) for g in guesses][:m]
    extra = m - len(guesses)
    for j in range(extra):
        theta = 2 * ctx.pi * (j + ctx.mpf(0.5)) / extra
        guesses.append(-ctx.sqrt(1 - ctx.expj(theta)) * ctx.mpf(0.98))
    return guesses


def aberth_solve(poly: ExactPolynomial, precision: PrecisionConfig | None = None,
                 tol: float | None = None, initial_guesses: Sequence | None = None,
                 max_iters: int = 500, backend: str | None = None) -> ZeroSet:
    """All zeros of a monic polynomial by Aberth-Ehrlich iteration.

    Parameters
    ----------
    poly : ExactPolynomial
        Monic, typically from :func:`build_pi`.
    precision : PrecisionConfig, optional
        Defaults to ``PrecisionConfig.for_roots(m)``.
    tol : float, optional
        Relative correction size at which a root is frozen; default
        ``2**(16 - bits)``. Roots are also frozen at the rounding floor.
    initial_guesses : sequence, optional
        Defaults to the zeros of ``q(m, z)`` shifted by ``1e-3 e^{ik}``.
    max_iters : int
    backend : {"cython", "python"}, optional
        Kernel to use; defaults to the one selected at import.

    Raises
    ------
    PrecisionTooLow
    NoConvergence
        With the indices of stalled roots in ``.stalled``.
    """
    if not poly.monic:
        raise ValueError("aberth_solve expects a monic polynomial")
    m = poly.degree
    precision = PrecisionConfig.for_roots(m) if precision is None else precision
    precision.check_degree(m)
    ctx = precision.ctx
    bits = precision.mantissa_bits
    if m == 0:
        return _finalize(poly, [], precision, 0, "aberth")
    if initial_guesses is None:
        guesses = _default_guesses(m, precision)
    else:
        guesses = _fill_guesses(initial_guesses, m, precision)
    tol_exp = 16 - bits if tol is None else int(math.floor(math.log2(tol)))
    impl = kernels.available_backends()[backend] if backend else kernels
    coeffs = [mpf_to_pair(c) for c in poly.rounded(precision)]
    start = [(mpf_to_pair(ctx.mpf(g.real)), mpf_to_pair(ctx.mpf(g.imag))) for g in guesses]
    out, sweeps, flags = impl.aberth(coeffs, start, bits, tol_exp, max_iters)
    if not all(flags):
        stalled = [i for i, f in enumerate(flags) if not f]
        raise NoConvergence(f"Aberth: {len(stalled)} roots stalled after {sweeps} sweeps",
                            stalled)
    roots = [ctx.mpc(pair_to_mpf(ctx, re), pair_to_mpf(ctx, im)) for re, im in out]
    return _finalize(poly, roots, precision, sweeps, "aberth")


def durand_kerner_oracle(poly: ExactPolynomial, precision: PrecisionConfig | None = None,
                         max_iters: int = 5000) -> ZeroSet:
    """Weierstrass (Durand-Kerner) iteration from generic starting points.

    Independent of :func:`aberth_solve` (different update, different start);
    intended as a test oracle for degrees up to 24.
    """
    if not poly.monic:
        raise ValueError("durand_kerner_oracle expects a monic polynomial")
    m = poly.degree
    if m > 24:
        raise ValueError("oracle is limited to degree 24")
    precision = PrecisionConfig(128) if precision is None else precision
    ctx = precision.ctx
    if m == 0:
        return _finalize(poly, [], precision, 0, "durand-kerner")
    coeffs = poly.rounded(precision)
    absc = [abs(c) for c in coeffs]
    eta = ctx.ldexp(4 * (m + 1), -precision.mantissa_bits)
    tol = ctx.ldexp(1, 16 - precision.mantissa_bits)
    seed = ctx.mpc(0.4, 0.9)
    z = [seed**k for k in range(m)]
    done = [False] * m
    for sweep in range(1, max_iters + 1):
        for i in range(m):
            if done[i]:
                continue
            zi = z[i]
            p = ctx.mpc(0)
            for c in reversed(coeffs):
                p = p * zi + c
            az = abs(zi)
            floor = ctx.mpf(0)
            for c in reversed(absc):
                floor = floor * az + c
            if abs(p) <= eta * floor:
                done[i] = True
                continue
            q = ctx.mpc(1)
            for j in range(m):
                if j != i:
                    q *= zi - z[j]
            step = p / q
            z[i] = zi - step
            if abs(step) <= tol * max(1, az):
                done[i] = True
        if all(done):
            return _finalize(poly, z, precision, sweep, "durand-kerner")
    raise NoConvergence("Durand-Kerner did not converge", [i for i, d in enumerate(done) if not d])


def solve_pi(m: int, precision: PrecisionConfig | None = None, **kwargs) -> ZeroSet:
    """Zeros of ``pi_m`` with the default Aberth settings."""
    return aberth_solve(build_pi(m), precision, **kwargs)


def matching_distance(a: Iterable, b: Iterable) -> float:
    """Largest distance in the optimal one-to-one matching of two point sets."""
    from scipy.optimize import linear_sum_assignment

    a = list(a)
    b = list(b)
    if len(a) != len(b):
        raise ValueError("sets must have equal size")
    if not a:
        return 0.0
    ca = np.array([complex(x) for x in a])
    cb = np.array([complex(x) for x in b])
    cost = np.abs(ca[:, None] - cb[None, :])
    rows, cols = linear_sum_assignment(cost)
    return max(abs(a[i] - b[j]) for i, j in zip(rows, cols))


# --------------------------------------------------------------------------
# certification


@dataclass(frozen=True)
class CertificationReport:
    """Outcome of the four certification clauses."""

    m: int
    tolerance: object
    residual_ok: bool
    vieta_ok: bool
    conjugation_ok: bool
    separation_ok: bool
    max_residual: object
    vieta: tuple
    details: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return self.residual_ok and self.vieta_ok and self.conjugation_ok and self.separation_ok


def certify(zs: ZeroSet, poly: ExactPolynomial, raise_on_failure: bool = True) -> CertificationReport:
    """Check residuals, Vieta identities, conjugate closure and separation.

    Tolerance for residuals and Vieta deviations is
    ``2**(-bits/2) * max|c_k|``.

    Raises
    ------
    CertificationFailed
        Naming the first violated clause, if ``raise_on_failure``.
    """
    precision = zs.precision
    ctx = precision.ctx
    m = zs.m
    scale = ctx.mpf(poly.max_abs_coeff().numerator) / poly.max_abs_coeff().denominator
    tol = ctx.ldexp(1, -precision.mantissa_bits // 2) * scale
    max_res = max(zs.residuals, default=ctx.mpf(0))
    residual_ok = len(zs.roots) == m and max_res < tol
    vieta_ok = zs.vieta[0] < tol and zs.vieta[1] < tol
    conj_fail = []
    for i, z in enumerate(zs.roots):
        target = ctx.conj(z)
        d = min(abs(target - w) for w in zs.roots)
        if d > zs.radii[i]:
            conj_fail.append(i)
    sep_fail = []
    for i, z in enumerate(zs.roots):
        for j in range(i + 1, m):
            limit = 10 * max(zs.newton[i], zs.newton[j])
            if abs(z - zs.roots[j]) <= limit:
                sep_fail.append((i, j))
    report = CertificationReport(
        m, tol, residual_ok, vieta_ok, not conj_fail, not sep_fail, max_res, zs.vieta,
        {"conjugation_failures": conj_fail, "separation_failures": sep_fail},
    )
    if raise_on_failure and not report.passed:
        for clause, ok in (("residual", residual_ok), ("vieta", vieta_ok),
                           ("conjugation", not conj_fail), ("separation", not sep_fail)):
            if not ok:
                raise CertificationFailed(clause, f"certification of degree {m} failed")
    return report


def real_zero_census(zs: ZeroSet):
    """Zeros whose imaginary part is below ten inclusion radii.

    Returns
    -------
    count : int
    reals : list of mpf
        Real parts of those zeros, ascending.
    """
    reals = [z.real for z, r in zip(zs.roots, zs.radii) if abs(z.imag) < 10 * r]
    return len(reals), sorted(reals)


# --------------------------------------------------------------------------
# zeros of q(m, z)


@dataclass(frozen=True)
class PredictedZero:
    k: int
    theta: object
    rho: object
    z_star: object


@dataclass(frozen=True)
class PredictedZeroSet:
    """Zeros of ``q(m, z)``: ``1 - z^2 = rho e^{i theta_k}``."""

    m: int
    entries: tuple
    convention: str = "corrected"

    def points(self):
        return [e.z_star for e in self.entries]


def _theta(m, k, convention, ctx):
    if convention == "corrected":
        num = -ctx.pi / 2 + 2 * ctx.pi * k
    elif convention == "literal":
        num = ctx.pi / 2 + 2 * ctx.pi * k
    else:
        raise ValueError("convention must be 'corrected' or 'literal'")
    theta = num / (m + ctx.mpf(0.5))
    return theta % (2 * ctx.pi)


def predicted_zeros_outer(m: int, precision: PrecisionConfig | None = None,
                          convention: str = "corrected") -> PredictedZeroSet:
    """Zeros ``z_k*`` of ``q(m, z)``, ``k = 1..m``, with ``Re z_k* <= 0``.

    ``rho = 2^{1/(2m+1)}`` and ``(m + 1/2) theta_k = -pi/2 + 2 pi k``. The
    ``"literal"`` convention uses ``+pi/2`` instead, which does not produce
    zeros of ``q`` with the branch conventions used here; it is kept for
    comparison only.
    """
    if m < 1:
        raise ValueError("m must be at least 1")
    precision = PrecisionConfig.for_roots(m) if precision is None else precision
    ctx = precision.ctx
    rho = ctx.power(2, ctx.mpf(1) / (2 * m + 1))
    entries = []
    for k in range(1, m + 1):
        theta = _theta(m, k, convention, ctx)
        z = -ctx.sqrt(1 - rho * ctx.expj(theta))
        entries.append(PredictedZero(k, theta, rho, z))
    return PredictedZeroSet(m, tuple(entries), convention)


@dataclass(frozen=True)
class RoucheBox:
    """Box around ``z_k*`` in the ``(rho, theta)`` coordinates of ``1 - z^2``."""

    m: int
    k: int
    rho_lo: float
    rho_hi: float
    theta_lo: float
    theta_hi: float

    def contains(self, z) -> bool:
        w = 1 - complex(z) ** 2
        r = abs(w)
        t = cmath.phase(w) % (2 * math.pi)
        mid = 0.5 * (self.theta_lo + self.theta_hi)
        dt = (t - mid + math.pi) % (2 * math.pi) - math.pi
        return self.rho_lo <= r <= self.rho_hi and abs(dt) <= 0.5 * (self.theta_hi - self.theta_lo)


def rouche_box(m: int, k: int, convention: str = "corrected") -> RoucheBox:
    """Box with sides ``|1-z^2| = 2^{(sqrt m -+ 1)/(sqrt m (2m+1))}`` and
    ``theta = theta_k -+ (ln 2 / sqrt m) / (m + 1/2)``."""
    sm = math.sqrt(m)
    lo = 2 ** ((sm - 1) / (sm * (2 * m + 1)))
    hi = 2 ** ((sm + 1) / (sm * (2 * m + 1)))
    base = -math.pi / 2 if convention == "corrected" else math.pi / 2
    theta = ((base + 2 * math.pi * k) / (m + 0.5)) % (2 * math.pi)
    half = (math.log(2) / sm) / (m + 0.5)
    return RoucheBox(m, k, lo, hi, theta - half, theta + half)


# --------------------------------------------------------------------------
# pairing


@dataclass(frozen=True)
class PairingReport:
    """Injective matching between predicted and computed zeros.

    ``pairs`` holds ``(predicted, computed, distance)`` triples.
    """

    pairs: tuple
    unmatched_predicted: tuple
    unmatched_computed: tuple
    max_distance: object
    m: int = 0

    @property
    def distances(self):
        return [d for _, _, d in self.pairs]


def _greedy_match(predicted, computed, spacing):
    # globally shortest edges first; accept only below half the local spacing
    cp = np.array([complex(z) for z in predicted], dtype=complex)
    cc = np.array([complex(z) for z in computed], dtype=complex)
    edges = []
    if len(cp) and len(cc):
        dist = np.abs(cp[:, None] - cc[None, :])
        ii, jj = np.nonzero(dist < 0.5 * np.asarray(spacing)[:, None])
        edges = sorted(zip(dist[ii, jj], ii, jj))
    used_p, used_c = set(), set()
    pairs = []
    for _, i, j in edges:
        if i in used_p or j in used_c:
            continue
        used_p.add(i)
        used_c.add(j)
        pairs.append((int(i), int(j)))
    return pairs


def _spacing(points):
    c = np.array([complex(z) for z in points], dtype=complex)
    if len(c) < 2:
        return np.full(len(c), np.inf)
    d = np.abs(c[:, None] - c[None, :])
    np.fill_diagonal(d, np.inf)
    return d.min(axis=1)


def pair_zeros(computed: ZeroSet, predicted: PredictedZeroSet,
               region: RegionParams | None = None, strict: bool = True) -> PairingReport:
    """Match zeros of ``q(m, z)`` with zeros of ``pi_m`` outside ``u_eps``.

    Each set is restricted by its own points' positions. Edges are taken in
    order of increasing length; an edge is accepted if both ends are free
    and it is shorter than half the distance from the predicted zero to its
    nearest predicted neighbour.

    Raises
    ------
    UnmatchedZeros
        If ``strict`` and the restricted counts differ by more than 2.
    """
    region = RegionParams() if region is None else region
    if computed.m != predicted.m:
        raise ValueError("zero sets are for different degrees")
    eps = region.epsilon
    all_pred = predicted.points()
    spacing_all = _spacing(all_pred)
    keep_p = [i for i, z in enumerate(all_pred) if abs(z) >= eps]
    pred = [all_pred[i] for i in keep_p]
    spacing = spacing_all[keep_p] if keep_p else np.array([])
    comp = [z for z in computed.roots if abs(z) >= eps]
    if strict and abs(len(pred) - len(comp)) > 2:
        raise UnmatchedZeros(
            f"m={computed.m}: {len(pred)} predicted vs {len(comp)} computed zeros outside u_eps")
    matches = _greedy_match(pred, comp, spacing)
    pairs = tuple((pred[i], comp[j], abs(pred[i] - comp[j])) for i, j in matches)
    mp = {i for i, _ in matches}
    mc = {j for _, j in matches}
    return PairingReport(
        pairs,
        tuple(z for i, z in enumerate(pred) if i not in mp),
        tuple(z for j, z in enumerate(comp) if j not in mc),
        max((d for _, _, d in pairs), default=0),
        computed.m,
    )


# --------------------------------------------------------------------------
# lemniscate statistics


@dataclass(frozen=True)
class LemniscateRow:
    m: int
    max_dist: float
    max_mod_plus1: float
    real_count: int


def lemniscate_convergence(ms: Sequence[int], region: RegionParams | None = None,
                           zero_sets: dict | None = None) -> list[LemniscateRow]:
    """Distance of zeros to ``|1 - z^2| = 1`` and ``max |z_k + 1|`` per ``m``.

    ``max_dist`` is taken over zeros outside ``u_eps``; ``max_mod_plus1``
    over all zeros. ``zero_sets`` may supply precomputed :class:`ZeroSet`
    objects keyed by ``m``.
    """
    region = RegionParams() if region is None else region
    if list(ms) != sorted(ms):
        raise ValueError("ms must be ascending")
    rows = []
    for m in ms:
        zs = zero_sets.get(m) if zero_sets else None
        if zs is None:
            zs = solve_pi(m)
        outside = [z for z in zs.roots if abs(z) >= region.epsilon]
        dmax = max((distance_to_left_lemniscate(z) for z in outside), default=0.0)
        mod = max((float(abs(z + 1)) for z in zs.roots), default=0.0)
        rows.append(LemniscateRow(m, dmax, mod, real_zero_census(zs)[0]))
    return rows


# --------------------------------------------------------------------------
# zeros of q_l and the local pairing


def _newton_fd(f, x0, ctx, max_iter=60):
    h = ctx.ldexp(1, -ctx.prec // 3)
    x = ctx.mpc(x0)
    for _ in range(max_iter):
        fx = f(x)
        d = (f(x + h) - f(x - h)) / (2 * h)
        if d == 0:
            return x, fx
        step = fx / d
        x -= step
        if abs(step) < ctx.ldexp(1, -ctx.prec // 2) * max(1, abs(x)):
            return x, f(x)
    return x, f(x)


def local_zero_candidates(R: float = 6.0, step: float = 0.25,
                          precision: PrecisionConfig | None = None) -> list:
    """Zeros of ``q_l`` in ``|xi| < R``.

    A double-precision grid of ``|q_l|`` (step ``step``) supplies seeds at
    its discrete local minima; each seed is polished by Newton's method with
    a central-difference derivative at ``precision``. Accepted zeros have
    ``|q_l| < 1e-8``, lie in the disk and are pairwise further than
    ``1e-4`` apart. Returned in order of increasing modulus.
    """
    if R > 8:
        raise ValueError("R must not exceed 8")
    precision = PrecisionConfig(128) if precision is None else precision
    ctx = precision.ctx
    n = int(math.ceil((R + step) / step))
    axis = np.arange(-n, n + 1) * step
    grid = np.log(kernels.q_local_abs_grid(axis, axis) + 1e-300)
    seeds = []
    for a in range(1, grid.shape[0] - 1):
        for b in range(1, grid.shape[1] - 1):
            v = grid[a, b]
            block = grid[a - 1:a + 2, b - 1:b + 2]
            if v <= block.min() and abs(complex(axis[b], axis[a])) < R + step:
                seeds.append(complex(axis[b], axis[a]))
    found = []
    for s in seeds:
        x, fx = _newton_fd(lambda t: q_local(t, precision), s, ctx)
        if abs(fx) >= 1e-8 or abs(x) >= R:
            continue
        if all(abs(x - y) > 1e-4 for y in found):
            found.append(x)
    found.sort(key=lambda t: (float(abs(t)), float(ctx.arg(t))))
    return found


def _in_valid_sector(xi) -> bool:
    a = cmath.phase(complex(xi))
    return math.pi / 4 < a < math.pi / 2


def local_pairing(m: int, R: float = 6.0, region: RegionParams | None = None,
                  precision: PrecisionConfig | None = None, zero_set: ZeroSet | None = None,
                  candidates: Sequence | None = None, half: str = "upper",
                  max_preimage: float = 0.7) -> PairingReport:
    """Match zeros of ``q_l`` with images ``lambda(z_k)`` of zeros of ``pi_m``.

    Parameters
    ----------
    m : int
    R : float
        Radius of the ``xi`` disk.
    region : RegionParams, optional
        Unused by the matching itself; accepted for interface symmetry.
    precision : PrecisionConfig, optional
        Used if ``zero_set`` must be computed; defaults to
        ``PrecisionConfig.for_degree(m)``.
    zero_set : ZeroSet, optional
    candidates : sequence, optional
        Zeros of ``q_l`` (from :func:`local_zero_candidates` by default).
    half : {"upper", "lower"}
        ``"upper"`` maps zeros with ``Im z > 0`` and keeps the candidates in
        the sector ``pi/4 < arg xi < pi/2``. ``"lower"`` maps zeros with
        ``Im z < 0`` and compares with the mirrored candidates
        ``-i conj(xi)``, the images of conjugate points.
    max_preimage : float
        Only zeros with ``|z| < max_preimage`` are mapped.
    """
    precision = PrecisionConfig.for_degree(m) if precision is None else precision
    if zero_set is None:
        zero_set = solve_pi(m, precision)
    if candidates is None:
        candidates = local_zero_candidates(R)
    ctx = zero_set.precision.ctx
    sector = [c for c in candidates if _in_valid_sector(c)]
    spacing_all = _spacing(candidates)
    spacing = np.array([spacing_all[i] for i, c in enumerate(candidates) if _in_valid_sector(c)])
    if half == "lower":
        sector = [-1j * ctx.conj(ctx.mpc(c)) for c in sector]
        chosen = [z for z in zero_set.roots if z.imag < 0 and abs(z) < max_preimage]
    elif half == "upper":
        chosen = [z for z in zero_set.roots if z.imag > 0 and abs(z) < max_preimage]
    else:
        raise ValueError("half must be 'upper' or 'lower'")
    mapped = [lambda_map(m, z, zero_set.precision) for z in chosen]
    mapped = [x for x in mapped if abs(x) < R + 1]
    matches = _greedy_match(sector, mapped, spacing)
    pairs = tuple((sector[i], mapped[j], abs(ctx.mpc(sector[i]) - mapped[j])) for i, j in matches)
    mp = {i for i, _ in matches}
    mc = {j for _, j in matches}
    return PairingReport(
        pairs,
        tuple(c for i, c in enumerate(sector) if i not in mp),
        tuple(x for j, x in enumerate(mapped) if j not in mc and abs(x) < R),
        max((d for _, _, d in pairs), default=0),
        m,
    )


def predicted_residual(m: int, predicted: PredictedZeroSet):
    """``max |q(m, z_k*)|`` over the predicted zeros."""
    return max(abs(q_outer(m, e.z_star)) for e in predicted.entries)
