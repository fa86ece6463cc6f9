import dataclasses
import math

import mpmath
import pytest

from jacobizeros.asymptotics import q_outer
from jacobizeros.errors import CertificationFailed, NoConvergence, PrecisionTooLow
from jacobizeros.geometry import RegionParams
from jacobizeros.jacobi import build_P, build_pi
from jacobizeros.numerics import PrecisionConfig
from jacobizeros.pcf import q_local
from jacobizeros.zeros import (
    ZeroSet,
    aberth_solve,
    certify,
    durand_kerner_oracle,
    lemniscate_convergence,
    local_pairing,
    local_zero_candidates,
    matching_distance,
    pair_zeros,
    predicted_residual,
    predicted_zeros_outer,
    real_zero_census,
    rouche_box,
    solve_pi,
)

P128 = PrecisionConfig(128)


@pytest.fixture(scope="module")
def candidates():
    return local_zero_candidates(6.0)


class TestAberth:
    def test_linear(self):
        zs = solve_pi(1)
        assert len(zs) == 1 and zs.roots[0] == -1.5

    def test_quadratic(self):
        zs = aberth_solve(build_pi(2), P128)
        ctx = P128.ctx
        exact = [ctx.mpc(-1.25, ctx.sqrt(3) / 4), ctx.mpc(-1.25, -ctx.sqrt(3) / 4)]
        assert matching_distance(zs.roots, exact) < 1e-35

    def test_constant(self):
        zs = solve_pi(0)
        assert zs.roots == () and zs.m == 0

    def test_count_and_residuals(self, zero_set):
        zs = zero_set(50)
        assert len(zs.roots) == 50
        assert isinstance(zs, ZeroSet) and zs.method == "aberth"
        assert max(zs.residuals) < 1e-40

    def test_rejects_non_monic(self):
        with pytest.raises(ValueError):
            aberth_solve(build_P(3), P128)

    def test_precision_rule(self):
        with pytest.raises(PrecisionTooLow):
            aberth_solve(build_pi(40), P128)

    def test_no_convergence_reports_stalled(self):
        with pytest.raises(NoConvergence) as info:
            aberth_solve(build_pi(12), P128, initial_guesses=[0.1 * k for k in range(12)],
                         max_iters=2)
        assert info.value.stalled

    def test_partial_guesses_are_padded(self, zero_set):
        zs = aberth_solve(build_pi(10), P128, initial_guesses=[-1.4, -1 + 0.7j])
        assert matching_distance(zs.roots, zero_set(10, 128).roots) < 1e-30

    def test_tolerance_argument(self):
        zs = aberth_solve(build_pi(8), P128, tol=1e-10)
        assert max(zs.residuals) < 1e-8


class TestOracle:
    def test_examples(self):
        assert durand_kerner_oracle(build_pi(1), P128).roots[0] == -1.5
        a = aberth_solve(build_pi(2), P128)
        b = durand_kerner_oracle(build_pi(2), P128)
        assert matching_distance(a.roots, b.roots) < 1e-25

    @pytest.mark.parametrize("m", [3, 10, 15, 20])
    def test_solver_equivalence(self, m):
        a = aberth_solve(build_pi(m), P128)
        b = durand_kerner_oracle(build_pi(m), P128)
        assert matching_distance(a.roots, b.roots) < 1e-20

    def test_against_mpmath_polyroots(self):
        with mpmath.workdps(40):
            coeffs = [mpmath.mpf(c.numerator) / c.denominator
                      for c in reversed(build_pi(9).coeffs)]
            ref = mpmath.polyroots(coeffs, maxsteps=200, extraprec=200)
        assert matching_distance(solve_pi(9).roots, ref) < 1e-30

    def test_degree_limit(self):
        with pytest.raises(ValueError):
            durand_kerner_oracle(build_pi(25), P128)


class TestCertify:
    def test_quadratic_vieta(self):
        zs = aberth_solve(build_pi(2), P128)
        rep = certify(zs, build_pi(2))
        assert rep.passed
        assert abs(zs.roots[0] + zs.roots[1] + 2.5) < 1e-35
        assert abs(zs.roots[0] * zs.roots[1] - 1.75) < 1e-35

    def test_linear(self):
        assert certify(solve_pi(1), build_pi(1)).passed

    def test_degree_50_at_256_bits(self, zero_set):
        rep = certify(zero_set(50, 256), build_pi(50))
        assert rep.passed and rep.residual_ok and rep.vieta_ok
        assert rep.conjugation_ok and rep.separation_ok

    def test_failure_names_clause(self, zero_set):
        zs = zero_set(10)
        bad = dataclasses.replace(
            zs, roots=(zs.roots[0] + 1e-3,) + zs.roots[1:],
            residuals=(zs.precision.ctx.mpf(1),) + zs.residuals[1:])
        with pytest.raises(CertificationFailed) as info:
            certify(bad, build_pi(10))
        assert info.value.clause == "residual"
        rep = certify(bad, build_pi(10), raise_on_failure=False)
        assert not rep.passed and not rep.residual_ok

    def test_conjugation_closure(self, zero_set):
        zs = zero_set(31)
        for z, r in zip(zs.roots, zs.radii):
            assert min(abs(z.conjugate() - w) for w in zs.roots) <= r


class TestCensus:
    @pytest.mark.parametrize("m", [1, 2, 3, 7, 8, 21, 30])
    def test_parity(self, zero_set, m):
        count, reals = real_zero_census(zero_set(m))
        assert count == m % 2
        assert all(x < -1 for x in reals)
        assert max(abs(z + 1) for z in zero_set(m).roots) < 1

    def test_linear(self):
        assert real_zero_census(solve_pi(1)) == (1, [-1.5])


class TestPredicted:
    def test_entries(self):
        m = 12
        pred = predicted_zeros_outer(m, PrecisionConfig(256))
        ctx = PrecisionConfig(256).ctx
        rho = ctx.power(2, ctx.mpf(1) / (2 * m + 1))
        assert len(pred.entries) == m and pred.convention == "corrected"
        for e in pred.entries:
            assert e.rho == rho
            phase = ((m + ctx.mpf(0.5)) * e.theta + ctx.pi / 2) / (2 * ctx.pi)
            assert abs(phase - ctx.nint(phase)) < 1e-60
            assert abs(abs(1 - e.z_star**2) - rho) < 1e-60
            assert e.z_star.real <= 0 and abs(e.z_star + 1) < 1

    @pytest.mark.parametrize("m", [2, 10, 40, 100])
    def test_exact_zeros_of_q(self, m):
        pred = predicted_zeros_outer(m, PrecisionConfig(256))
        assert predicted_residual(m, pred) < 1e-20

    def test_literal_angles_are_not_zeros(self):
        lit = predicted_zeros_outer(2, PrecisionConfig(256), convention="literal")
        e = lit.entries[0]
        assert abs(e.theta - PrecisionConfig(256).ctx.pi) < 1e-60
        assert abs(complex(e.z_star) + math.sqrt(1 + 2 ** 0.2)) < 1e-15
        assert abs(float(abs(q_outer(2, e.z_star))) - 2) < 1e-12

    def test_invalid(self):
        with pytest.raises(ValueError):
            predicted_zeros_outer(0)
        with pytest.raises(ValueError):
            predicted_zeros_outer(3, convention="other")


class TestPairing:
    def test_m40_complete(self, zero_set):
        rep = pair_zeros(zero_set(40), predicted_zeros_outer(40))
        eps = RegionParams().epsilon
        outside = [e for e in predicted_zeros_outer(40).entries if abs(e.z_star) >= eps]
        assert len(rep.pairs) == len(outside)
        assert not rep.unmatched_predicted and not rep.unmatched_computed
        comp = [complex(b) for _, b, _ in rep.pairs]
        assert len(set(comp)) == len(comp)
        assert rep.max_distance == max(rep.distances)

    def test_degenerate_m2(self):
        rep = pair_zeros(solve_pi(2), predicted_zeros_outer(2))
        comp = [complex(b) for _, b, _ in rep.pairs]
        assert len(set(comp)) == len(comp)

    def test_different_degrees(self, zero_set):
        with pytest.raises(ValueError):
            pair_zeros(zero_set(10), predicted_zeros_outer(11))

    @pytest.mark.parametrize("m", [20, 40, 80])
    def test_paired_zeros_lie_in_rouche_boxes(self, zero_set, m):
        pred = predicted_zeros_outer(m)
        index = {complex(e.z_star): e.k for e in pred.entries}
        rep = pair_zeros(zero_set(m), pred)
        for star, comp, _ in rep.pairs:
            assert rouche_box(m, index[complex(star)]).contains(comp)

    def test_boxes_disjoint(self):
        m = 30
        boxes = [rouche_box(m, k) for k in range(1, m + 1)]
        for e, box in zip(predicted_zeros_outer(m).entries, boxes):
            assert box.contains(e.z_star)
            assert sum(b.contains(e.z_star) for b in boxes) == 1


class TestLemniscate:
    def test_convergence(self, zero_set):
        ms = (10, 20, 40, 80)
        rows = lemniscate_convergence(ms, zero_sets={m: zero_set(m) for m in ms})
        dists = [r.max_dist for r in rows]
        mods = [r.max_mod_plus1 for r in rows]
        assert all(a > b for a, b in zip(dists, dists[1:]))
        assert all(a < b for a, b in zip(mods, mods[1:])) and mods[-1] < 1
        assert [r.real_count for r in rows] == [0, 0, 0, 0]

    def test_ascending_required(self):
        with pytest.raises(ValueError):
            lemniscate_convergence([20, 10])


class TestLocal:
    def test_candidates(self, candidates):
        assert len(candidates) >= 6
        for x in candidates:
            assert abs(q_local(x)) < 1e-8 and abs(x) < 6
        for i, a in enumerate(candidates):
            for b in candidates[i + 1:]:
                assert abs(a - b) > 1e-4

    def test_grid_refinement_stable(self, candidates):
        finer = local_zero_candidates(6.0, step=0.125)
        assert len(finer) == len(candidates)
        assert matching_distance(finer, candidates) < 1e-6

    def test_symmetry(self, candidates):
        # the zero set is invariant under xi -> -i conj(xi)
        for x in candidates:
            assert min(abs(-1j * x.conjugate() - y) for y in candidates) < 1e-8

    def test_radius_limit(self):
        with pytest.raises(ValueError):
            local_zero_candidates(9)

    def test_pairing_m100(self, zero_set, candidates):
        rep = local_pairing(100, zero_set=zero_set(100, 320), candidates=candidates)
        assert len(rep.pairs) == 3 and not rep.unmatched_predicted
        lower = local_pairing(100, zero_set=zero_set(100, 320), candidates=candidates,
                              half="lower")
        assert len(lower.pairs) == 3 and not lower.unmatched_predicted
        assert abs(lower.max_distance - rep.max_distance) < 1e-20

    def test_pairing_decreases(self, zero_set, candidates):
        d = [local_pairing(m, zero_set=zero_set(m), candidates=candidates).max_distance
             for m in (50, 100, 200)]
        assert d[0] > d[1] > d[2]
