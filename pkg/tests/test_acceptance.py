"""Acceptance criteria 1-10, each at its stated tolerance and time budget.

A summary line ``criterion N: PASS|FAIL`` per criterion is printed at the
end of the pytest run.
"""

import csv
import math
import random
import time
from fractions import Fraction

import numpy as np
import pytest

from jacobizeros.asymptotics import (
    lambda_inverse,
    lambda_map,
    loglog_slope,
    sample_outer,
)
from jacobizeros.cli import OUTER_POINTS, main
from jacobizeros.geometry import RegionParams, build_gamma_contour
from jacobizeros.jacobi import build_P, build_pi, evaluate_exact, pochhammer
from jacobizeros.numerics import PrecisionConfig, integer_power
from jacobizeros.orthogonality import h_exact, verify_orthogonality
from jacobizeros.pcf import pcf_D_minus_half
from jacobizeros.zeros import (
    certify,
    durand_kerner_oracle,
    lemniscate_convergence,
    local_pairing,
    local_zero_candidates,
    matching_distance,
    pair_zeros,
    predicted_zeros_outer,
    real_zero_census,
    solve_pi,
    _in_valid_sector,
)

criterion = pytest.mark.criterion


class Budget:
    def __init__(self, seconds):
        self.seconds = seconds

    def __enter__(self):
        self.start = time.perf_counter()
        return self

    def __exit__(self, *exc):
        self.elapsed = time.perf_counter() - self.start
        if exc[0] is None:
            assert self.elapsed < self.seconds, f"took {self.elapsed:.1f} s"


@criterion(1, "exact construction of pi_1, pi_2 and P_m(1) for m <= 60")
def test_exact_construction():
    with Budget(5):
        assert build_pi(1).coeffs == (Fraction(3, 2), Fraction(1))
        assert build_pi(2).coeffs == (Fraction(7, 4), Fraction(5, 2), Fraction(1))
        for m in range(61):
            expected = pochhammer(Fraction(2 * m + 3, 2), m) / math.factorial(m)
            assert evaluate_exact(build_P(m), Fraction(1)) == expected


@criterion(2, "contour orthogonality for n, k <= 6 at 256 bits, N = 1024")
def test_orthogonality():
    with Budget(30):
        p = PrecisionConfig(256)
        contour = build_gamma_contour(2, 1024, p)
        reports = verify_orthogonality(6, 6, contour, p, tolerance=1e-15)
        assert len(reports) == 7 * 28
        worst = max(r.abs_error for r in reports)
        assert worst < 1e-15
        ctx = p.ctx
        assert abs(h_exact(0, 0, p) - 2 * ctx.pi) < 1e-70
        assert abs(h_exact(1, 1, p) - 5 * ctx.pi / 2) < 1e-70


@criterion(3, "real zero parity and |z_k + 1| < 1 for m <= 60")
def test_parity_and_disk(zero_set):
    with Budget(180):
        for m in range(1, 61):
            zs = zero_set(m)
            count, reals = real_zero_census(zs)
            assert count == m % 2, m
            assert all(x < -1 for x in reals), m
            assert max(abs(z + 1) for z in zs.roots) < 1, m


@criterion(4, "certified zeros: Aberth vs Durand-Kerner, Vieta, conjugation")
def test_certification(zero_set):
    for m in (10, 20, 50):
        zs = zero_set(m)
        report = certify(zs, build_pi(m))
        assert report.passed and report.vieta_ok and report.conjugation_ok
        if m <= 20:
            dk = durand_kerner_oracle(build_pi(m), PrecisionConfig(128))
            assert matching_distance(zs.roots, dk.roots) < 1e-20


@criterion(5, "outer pairing rate d(2m)/d(m) in [0.3, 0.7], slope in [-1.3, -0.7]")
def test_outer_pairing_rate(zero_set):
    with Budget(300):
        region = RegionParams(epsilon=0.25)
        ms = (20, 40, 80)
        d = []
        for m in ms:
            rep = pair_zeros(zero_set(m), predicted_zeros_outer(m), region)
            assert not rep.unmatched_predicted, m
            matched = [id(b) for _, b, _ in rep.pairs]
            assert len(set(matched)) == len(matched)
            d.append(float(rep.max_distance))
        print("d(m) =", d)
        assert d[2] < d[1] < d[0]
        for a, b in zip(d, d[1:]):
            assert 0.3 <= b / a <= 0.7, f"ratio {b / a:.3f}"
        slope = loglog_slope(ms, d)
        assert -1.3 <= slope <= -0.7, f"slope {slope:.3f}"


@criterion(6, "lemniscate distance decreasing, max |z_k + 1| increasing towards 1")
def test_lemniscate_and_modulus(zero_set):
    ms = (10, 20, 40, 80)
    rows = lemniscate_convergence(ms, RegionParams(epsilon=0.25),
                                  zero_sets={m: zero_set(m) for m in ms})
    dist = [r.max_dist for r in rows]
    mods = [r.max_mod_plus1 for r in rows]
    assert all(b < a for a, b in zip(dist, dist[1:])), dist
    assert all(b > a for a, b in zip(mods, mods[1:])), mods
    assert mods[-1] < 1
    assert mods[-1] - mods[0] >= 0.05


@criterion(7, "outer asymptotic error slope in [-1.4, -0.6] at 5 band points")
def test_outer_asymptotics():
    with Budget(120):
        ms = (20, 40, 80, 160)
        for z in OUTER_POINTS:
            errors = [sample_outer(m, z).rel_error for m in ms]
            slope = loglog_slope(ms, errors)
            assert -1.4 <= slope <= -0.6, (z, slope)


@criterion(8, "conformal map identity and inverse round trip at 256 bits")
def test_conformal_map():
    p = PrecisionConfig(256)
    ctx = p.ctx
    rng = random.Random(2024)
    points = []
    while len(points) < 20:
        z = complex(rng.uniform(-0.2, 0.2), rng.uniform(-0.2, 0.2))
        if abs(z) < 0.2:
            points.append(z)
    for m in (10, 30, 100):
        for z in points:
            xi = lambda_map(m, z, p)
            lhs = integer_power(1 - ctx.mpc(z) ** 2, m, p)
            assert abs(lhs - ctx.exp(-ctx.mpc(0, 1) * xi * xi / 2)) < 1e-25
            assert abs(lambda_inverse(m, xi, p) - z) < 1e-25


@criterion(9, "D_{-1/2}: value at 0, large argument, Weber equation")
def test_parabolic_cylinder():
    p = PrecisionConfig(128)
    ctx = p.ctx
    assert abs(pcf_D_minus_half(0, p) - 1.21628) < 1e-5
    big = pcf_D_minus_half(10, p) * ctx.exp(25) * ctx.sqrt(10)
    assert abs(big - (1 - ctx.mpf(3) / 800)) < 1e-4
    rng = random.Random(5)
    h = ctx.mpf(1e-6)
    for _ in range(10):
        r, t = 5 * math.sqrt(rng.random()), rng.uniform(-math.pi, math.pi)
        w = ctx.mpc(r * math.cos(t), r * math.sin(t))
        d0 = pcf_D_minus_half(w, p)
        d2 = (pcf_D_minus_half(w + h, p) - 2 * d0 + pcf_D_minus_half(w - h, p)) / h ** 2
        # y'' + (nu + 1/2 - w^2/4) y = 0 with nu = -1/2
        assert abs(d2 - w * w / 4 * d0) < 1e-6


@criterion(10, "local zeros pair injectively, distance non-increasing, figure overlay")
def test_local_zeros(tmp_path):
    with Budget(600):
        candidates = local_zero_candidates(6.0)
        sector = [x for x in candidates if _in_valid_sector(x)]
        assert len(sector) >= 3
        d = []
        for m in (50, 100, 200):
            zs = solve_pi(m, PrecisionConfig.for_degree(m))
            rep = local_pairing(m, 6.0, zero_set=zs, candidates=candidates)
            assert not rep.unmatched_predicted, m
            matched = [id(b) for _, b, _ in rep.pairs]
            assert len(set(matched)) == len(matched) == len(sector)
            d.append(float(rep.max_distance))
        print("local d(m) =", d)
        assert d[0] >= d[1] >= d[2]

    assert main(["figures", "--which", "10", "--m", "100", "--xi-R", "6",
                 "--output-dir", str(tmp_path)]) == 0
    with open(tmp_path / "fig10_grid_m100.csv", newline="") as fh:
        rows = list(csv.DictReader(fh))
    axis = sorted({float(r["re_xi"]) for r in rows})
    n = len(axis)
    assert n >= 200 and len(rows) == n * n
    grid = np.array([float(r["abs_q_local"]) for r in rows]).reshape(n, n)
    step = axis[1] - axis[0]
    with open(tmp_path / "fig10_overlay_m100.csv", newline="") as fh:
        overlay = list(csv.DictReader(fh))
    zeros = [complex(float(r["re_xi"]), float(r["im_xi"]))
             for r in overlay if r["kind"] == "q_local_zero"]
    mapped = [complex(float(r["re_xi"]), float(r["im_xi"]))
              for r in overlay if r["kind"] == "mapped_zero"]
    for x in zeros:
        # every zero sits in a valley: within a 9 x 9 patch the smallest
        # value lies next to the zero and well below the patch border
        i = int(round((x.imag + 6) / step))
        j = int(round((x.real + 6) / step))
        lo_i, lo_j = max(i - 4, 0), max(j - 4, 0)
        patch = grid[lo_i:i + 5, lo_j:j + 5]
        a, b = np.unravel_index(patch.argmin(), patch.shape)
        assert abs(lo_i + a - i) <= 1 and abs(lo_j + b - j) <= 1
        border = np.concatenate([patch[0], patch[-1], patch[:, 0], patch[:, -1]])
        assert patch.min() < 0.25 * border.min()
    for x in zeros:
        if _in_valid_sector(x):
            assert min(abs(x - y) for y in mapped) < 0.1
