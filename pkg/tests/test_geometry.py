import csv
import math
import random

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from jacobizeros.errors import RadiusTooSmall
from jacobizeros.geometry import (
    CurveKind,
    RegionParams,
    Zone,
    build_gamma_contour,
    classify_region,
    distance_to_left_lemniscate,
    integrate,
    sample_lemniscate,
    write_curve_csv,
)
from jacobizeros.numerics import PrecisionConfig

P = PrecisionConfig(128)


class TestSampleLemniscate:
    def test_left_examples(self):
        curve = sample_lemniscate("left", 1, 16, P)
        assert curve.kind is CurveKind.LEFT
        assert abs(complex(curve.samples[8]) + math.sqrt(2)) < 1e-30  # theta = pi
        assert complex(curve.samples[0]) == 0
        # just after theta = 0 the curve leaves the origin into Re z < 0
        near = sample_lemniscate("left", 1, 4096, P).samples[1]
        assert abs(near) < 0.05 and near.real <= 0

    def test_right_example(self):
        curve = sample_lemniscate("right", 1, 16, P)
        assert abs(complex(curve.samples[8]) - math.sqrt(4 / 3)) < 1e-30

    @pytest.mark.parametrize("rho", [1, 0.5, 2 ** (1 / 41), 1.3])
    def test_samples_on_curve(self, rho):
        curve = sample_lemniscate("scaled-left", rho, 64, P)
        for z in curve.samples:
            assert abs(abs(1 - z * z) - curve.rho) < 1e-20
            assert z.real <= 1e-20

    def test_right_samples_on_curve(self):
        for z in sample_lemniscate("right", 1, 64, P).samples:
            assert abs(abs(1 - 1.5 * z * z) - 1) < 1e-20 and z.real >= -1e-20

    def test_ordered_by_parameter(self):
        curve = sample_lemniscate("left", 1, 32, P, include_endpoint=True)
        th = [float(t) for t in curve.thetas]
        assert th == sorted(th) and abs(th[-1] - 2 * math.pi) < 1e-15
        for t, z in zip(curve.thetas, curve.samples):
            assert abs((1 - z * z) - P.ctx.expj(t)) < 1e-30

    def test_invalid(self):
        with pytest.raises(ValueError):
            sample_lemniscate("left", 1, 8)
        with pytest.raises(ValueError):
            sample_lemniscate("left", -1, 32)
        with pytest.raises(ValueError):
            sample_lemniscate("upper", 1, 32)

    def test_csv(self, tmp_path):
        path = tmp_path / "curve.csv"
        write_curve_csv(path, sample_lemniscate("left", 1, 16, P))
        rows = list(csv.reader(open(path)))
        assert rows[0] == ["theta", "re", "im"] and len(rows) == 17


class TestRegions:
    def test_params(self):
        with pytest.raises(ValueError):
            RegionParams(epsilon=0.5)
        with pytest.raises(ValueError):
            RegionParams(band_outer=1.0)

    def test_examples(self):
        assert classify_region(-0.5) == (Zone.INSIDE_LEFT, False)
        assert classify_region(-1.2, RegionParams(band_outer=1.35)).zone is Zone.INSIDE_LEFT
        assert classify_region(0.1j).in_u_eps
        assert classify_region(-1.45 + 0.1j).zone is Zone.OUTER_BAND
        assert classify_region(-3).zone is Zone.ELSEWHERE
        assert classify_region(0.5).zone is Zone.ELSEWHERE

    @settings(max_examples=200, deadline=None)
    @given(st.floats(-2, 2), st.floats(-2, 2))
    def test_conjugation_invariance(self, x, y):
        z = complex(x, y)
        assert classify_region(z) == classify_region(z.conjugate())


class TestDistance:
    def test_examples(self):
        assert distance_to_left_lemniscate(0) < 1e-8
        assert distance_to_left_lemniscate(-math.sqrt(2)) < 1e-8

    def test_minus_one_against_brute_force(self):
        theta = np.linspace(0, 2 * np.pi, 10**6 + 1)
        brute = np.abs(-np.sqrt(1 - np.exp(1j * theta)) + 1).min()
        assert abs(distance_to_left_lemniscate(-1) - brute) < 1e-8
        assert distance_to_left_lemniscate(-1) <= brute

    def test_zero_on_samples(self):
        for z in sample_lemniscate("left", 1, 40, P).samples:
            assert distance_to_left_lemniscate(z) < 1e-8

    def test_right_lobe_by_symmetry(self):
        assert abs(distance_to_left_lemniscate(1.2 + 0.3j)
                   - distance_to_left_lemniscate(-1.2 + 0.3j)) < 1e-12

    def test_scaled_curve_distance_positive(self):
        rng = random.Random(3)
        for z in sample_lemniscate("scaled-left", 1.2, 32, P).samples[1:]:
            d = distance_to_left_lemniscate(z)
            assert 0 < d < 0.3
        assert rng  # deterministic sampling, no randomness needed


class TestContour:
    def test_nodes(self):
        c = build_gamma_contour(2, 8, P)
        for j, t in enumerate(c.nodes):
            assert abs(t - 2 * P.ctx.expj(2 * P.ctx.pi * j / 8)) < 1e-35
        assert c.N == 8

    def test_residue(self):
        c = build_gamma_contour(2, 256, P)
        assert abs(integrate(lambda t: 1 / t, c, P) - 2j * P.ctx.pi) < 1e-30
        assert abs(integrate(lambda t: t, c, P)) < 1e-30

    def test_monomials(self):
        c = build_gamma_contour(2, 256, P)
        for k in range(-20, 21):
            if k == -1:
                continue
            assert abs(integrate(lambda t: t**k, c, P)) < 1e-25

    def test_invalid(self):
        with pytest.raises(RadiusTooSmall):
            build_gamma_contour(1, 64)
        with pytest.raises(RadiusTooSmall):
            build_gamma_contour(1.5, 64, center=0.6)
        with pytest.raises(ValueError):
            build_gamma_contour(2, 63)
        with pytest.raises(ValueError):
            build_gamma_contour(2, 6)
