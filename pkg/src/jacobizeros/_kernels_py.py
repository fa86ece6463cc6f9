"""Pure-Python kernels (mpmath and numpy).

Same interface and algorithms as the compiled ``_kernels`` extension.
Multiprecision numbers cross the boundary as exact ``(mantissa, exponent)``
integer pairs so both back ends see bit-identical inputs.
"""

from __future__ import annotations

import cmath
import math

import numpy as np

from .numerics import _context, pair_to_mpf, mpf_to_pair

BACKEND = "python"

_LN2 = math.log(2.0)
_SQRT_PI = math.sqrt(math.pi)
_SQRT2 = math.sqrt(2.0)


def aberth(coeffs, roots, prec, tol_exp, max_iters):
    """Simultaneous Aberth-Ehrlich iteration for a real polynomial.

    Parameters
    ----------
    coeffs : list of (int, int)
        Real coefficients in ascending order as exact mantissa/exponent pairs.
    roots : list of ((int, int), (int, int))
        Initial approximations, real and imaginary parts.
    prec : int
        Working precision in bits.
    tol_exp : int
        A root is frozen once its correction is below
        ``2**tol_exp * max(1, |z|)``.
    max_iters : int
        Maximum number of sweeps.

    Returns
    -------
    roots : list of ((int, int), (int, int))
    sweeps : int
    converged : list of bool

    Notes
    -----
    Sweeps are synchronous: every correction in a sweep uses the previous
    sweep's approximations. A root is also frozen when its residual drops to
    the rounding floor ``4 (n+1) 2**-prec * sum |c_k| |z|**k``.
    """
    ctx = _context(int(prec))
    c = [pair_to_mpf(ctx, p) for p in coeffs]
    n = len(c) - 1
    dc = [k * c[k] for k in range(1, n + 1)]
    absc = [abs(x) for x in c]
    z = [ctx.mpc(pair_to_mpf(ctx, re), pair_to_mpf(ctx, im)) for re, im in roots]
    eta = ctx.ldexp(4 * (n + 1), -int(prec))
    tol = ctx.ldexp(1, int(tol_exp))
    done = [False] * n
    sweeps = 0
    while sweeps < max_iters and not all(done):
        sweeps += 1
        new = list(z)
        for i in range(n):
            if done[i]:
                continue
            zi = z[i]
            p = ctx.mpc(c[n])
            dp = ctx.mpc(0)
            for k in range(n - 1, -1, -1):
                dp = dp * zi + p
                p = p * zi + c[k]
            az = abs(zi)
            bound = ctx.mpf(0)
            for k in range(n, -1, -1):
                bound = bound * az + absc[k]
            if abs(p) <= eta * bound:
                done[i] = True
                continue
            r = p / dp
            s = ctx.mpc(0)
            for j in range(n):
                if j != i:
                    s += 1 / (zi - z[j])
            corr = r / (1 - r * s)
            new[i] = zi - corr
            if abs(corr) <= tol * max(1, az):
                done[i] = True
        z = new
    out = [(mpf_to_pair(x.real), mpf_to_pair(x.imag)) for x in z]
    return out, sweeps, done


def _series_dmh(w: complex) -> complex:
    """Large-argument expansion of D_{-1/2}(w), optimally truncated."""
    w2 = w * w
    x = 2.0 * w2
    s1 = 1.0 + 0j
    t = 1.0 + 0j
    prev = 1.0
    s = 1
    while s < 200:
        t = -t * (2 * s - 1.5) * (2 * s - 0.5) / (s * x)
        at = abs(t)
        if at > prev or at < 1e-17 * abs(s1):
            break
        s1 += t
        prev = at
        s += 1
    val = cmath.exp(-w2 / 4) * (w ** -0.5) * s1
    arg = cmath.phase(w)
    if abs(arg) > math.pi / 2:
        s2 = 1.0 + 0j
        u = 1.0 + 0j
        prev = 1.0
        s = 1
        while s < 200:
            u = u * (2 * s - 1.5) * (2 * s - 0.5) / (s * x)
            au = abs(u)
            if au > prev or au < 1e-17 * abs(s2):
                break
            s2 += u
            prev = au
            s += 1
        phase = -1j if arg > 0 else 1j  # exp(+-i pi nu) at nu = -1/2
        val += -math.sqrt(2.0) * phase * cmath.exp(w2 / 4) * (w ** -0.5) * s2
    return val


def _dmh_right(ws: np.ndarray) -> np.ndarray:
    # valid for any w, accurate for Re w >= 0 where the sum does not cancel
    out = np.empty_like(ws)
    big = np.abs(ws) >= 8.0
    for idx in np.nonzero(big)[0]:
        out[idx] = _series_dmh(complex(ws[idx]))
    small = np.nonzero(~big)[0]
    if small.size:
        ws = ws[small]
        h = 1.25 * (53 * _LN2 + np.abs(ws) ** 2 / 2 + 10) ** -0.75
        total = np.full(ws.shape, 0.5 + 0j)
        peak = np.ones(ws.shape)
        active = np.ones(ws.shape, dtype=bool)
        k = 1
        while active.any():
            s2 = (k * h) ** 2
            term = np.exp(-ws * s2 - s2 * s2 / 2)
            term[~active] = 0
            total += term
            at = np.abs(term)
            peak = np.maximum(peak, at)
            stop = (k * h > 1) & (at < 1e-17 * peak)
            active &= ~stop
            k += 1
        out[small] = np.exp(-ws * ws / 4) * 2 * h * total / _SQRT_PI
    return out


def pcf_dmh_array(w):
    """D_{-1/2} on an array of complex arguments in double precision.

    Uses the trapezoid rule on the substituted integral
    ``D(w) = exp(-w^2/4)/sqrt(pi) * int_R exp(-w s^2 - s^4/2) ds``
    for ``|w| < 8`` and the asymptotic series otherwise. Arguments in the
    left half plane go through the connection formula
    ``D(w) = -+i D(-w) + sqrt2 e^{+-i pi/4} D(-+i w)`` (upper signs for
    ``Im w >= 0``), whose right-hand arguments have ``Re >= 0``.
    """
    w = np.asarray(w, dtype=complex)
    flat = w.ravel()
    out = np.empty_like(flat)
    left = flat.real < 0
    right = ~left
    out[right] = _dmh_right(flat[right])
    if left.any():
        wl = flat[left]
        s = np.where(wl.imag >= 0, 1.0, -1.0)
        out[left] = (-1j * s * _dmh_right(-wl)
                     + _SQRT2 * np.exp(0.25j * math.pi * s) * _dmh_right(-1j * s * wl))
    return out.reshape(w.shape)


def q_local_array(xi):
    """``q_l(xi) = e^{i pi/4} D(e^{-3 pi i/4} xi) - i sqrt2 D(e^{-5 pi i/4} xi)``."""
    xi = np.asarray(xi, dtype=complex)
    a = pcf_dmh_array(xi * cmath.exp(-0.75j * math.pi))
    b = pcf_dmh_array(xi * cmath.exp(-1.25j * math.pi))
    return cmath.exp(0.25j * math.pi) * a - 1j * math.sqrt(2.0) * b


def q_local_abs_grid(re, im):
    """``|q_l|`` on the tensor grid, shape ``(len(im), len(re))``."""
    re = np.asarray(re, dtype=float)
    im = np.asarray(im, dtype=float)
    xi = re[None, :] + 1j * im[:, None]
    return np.abs(q_local_array(xi))
