import random
from fractions import Fraction
from math import comb

import mpmath
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from jacobizeros.errors import PrecisionTooLow
from jacobizeros.jacobi import (
    ExactPolynomial,
    binomial,
    build_P,
    build_pi,
    evaluate,
    evaluate_derivative,
    evaluate_exact,
    evaluate_hypergeometric,
    from_json,
    jacobi_coefficients,
    kappa,
    pochhammer,
    to_json,
)
from jacobizeros.numerics import PrecisionConfig

F = Fraction
P128 = PrecisionConfig(128)


def explicit_sum(n, alpha, beta):
    """Direct expansion of the binomial sum, quadratic work per term."""
    coeffs = [F(0)] * (n + 1)
    for k in range(n + 1):
        a = binomial(n + alpha, n - k) * binomial(n + beta, k)
        # (x-1)^k (x+1)^(n-k)
        poly = [F(1)]
        for _ in range(k):
            poly = [(poly[i - 1] if i else 0) - (poly[i] if i < len(poly) else 0)
                    for i in range(len(poly) + 1)]
        for _ in range(n - k):
            poly = [(poly[i - 1] if i else 0) + (poly[i] if i < len(poly) else 0)
                    for i in range(len(poly) + 1)]
        for i, c in enumerate(poly):
            coeffs[i] += a * c
    return [c / 2**n for c in coeffs]


class TestHelpers:
    def test_binomial_half_integer(self):
        assert binomial(F(5, 2), 2) == F(15, 8)
        assert binomial(F(-1, 2), 3) == F(-5, 16)
        assert binomial(F(7), 3) == 35

    def test_pochhammer(self):
        assert pochhammer(F(1), 5) == 120
        assert pochhammer(F(5, 2), 2) == F(35, 4)
        assert pochhammer(F(3), 0) == 1

    def test_kappa(self):
        assert kappa(0) == 1
        assert kappa(1) == 1
        assert kappa(2) == F(3, 2)
        for m in range(30):
            assert kappa(m) == F(comb(2 * m, m), 2**m)


class TestBuild:
    def test_small_cases(self):
        assert build_P(0).coeffs == (F(1),)
        assert build_P(1).coeffs == (F(3, 2), F(1))
        assert build_P(2).coeffs == (F(21, 8), F(15, 4), F(3, 2))
        assert build_pi(1).coeffs == (F(3, 2), F(1))
        assert build_pi(2).coeffs == (F(7, 4), F(5, 2), F(1))
        assert build_pi(2).kappa == F(3, 2)

    def test_parameters(self):
        p = build_P(7)
        assert p.alpha == F(15, 2) and p.beta == F(-15, 2)
        assert p.m == 7 and len(p.coeffs) == 8

    @pytest.mark.parametrize("m", [3, 8, 15])
    def test_recursion_matches_direct_sum(self, m):
        alpha = F(2 * m + 1, 2)
        assert jacobi_coefficients(m, alpha, -alpha) == explicit_sum(m, alpha, -alpha)

    def test_generic_parameters(self):
        a, b = F(7, 2), F(-3, 2)
        assert jacobi_coefficients(5, a, b) == explicit_sum(5, a, b)

    def test_leading_coefficient_and_value_at_one(self):
        for m in range(61):
            p = build_P(m)
            assert p.coeffs[-1] == kappa(m)
            assert evaluate_exact(p, F(1)) == pochhammer(F(2 * m + 3, 2), m) / pochhammer(F(1), m)

    def test_monic_is_exact_quotient(self):
        for m in (5, 17, 40):
            p, q = build_P(m), build_pi(m)
            assert q.coeffs[-1] == 1 and q.monic
            assert all(a / p.kappa == b for a, b in zip(p.coeffs, q.coeffs))

    def test_invalid(self):
        with pytest.raises(ValueError):
            build_P(-1)
        with pytest.raises(ValueError):
            ExactPolynomial(1, (F(1),), F(0), F(0), F(1))
        with pytest.raises(ValueError):
            ExactPolynomial(1, (F(1), F(0)), F(0), F(0), F(1))
        with pytest.raises(ValueError):
            ExactPolynomial(1, (F(1), F(2)), F(0), F(0), F(1), monic=True)

    def test_immutable(self):
        with pytest.raises(Exception):
            build_P(3).degree = 4


class TestEvaluate:
    def test_examples(self):
        assert evaluate(build_pi(1), 1, P128) == 2.5
        for m in range(1, 11):
            expected = pochhammer(F(2 * m + 3, 2), m) / pochhammer(F(1), m)
            val = evaluate(build_P(m), 1, P128)
            assert abs(val - P128.ctx.mpf(expected.numerator) / expected.denominator) \
                < abs(val) * 1e-35
        root = P128.ctx.mpc(-1.25, P128.ctx.sqrt(3) / 4)
        assert abs(evaluate(build_pi(2), root, P128)) < 1e-35

    def test_precision_rule(self):
        with pytest.raises(PrecisionTooLow):
            evaluate(build_pi(40), 0.5, PrecisionConfig(128))
        evaluate(build_pi(32), 0.5, PrecisionConfig(128))

    def test_derivative(self):
        p = build_pi(9)
        z = P128.ctx.mpc(0.3, -0.7)
        v, d = evaluate_derivative(p, z, P128)
        assert v == evaluate(p, z, P128)
        assert abs(d - P128.ctx.diff(lambda t: evaluate(p, t, P128), z)) < 1e-20


class TestHypergeometric:
    def test_examples(self):
        assert abs(evaluate_hypergeometric(1, 1, P128) - 2.5) < 1e-35
        assert abs(evaluate_hypergeometric(2, 0, P128) - 2.625) < 1e-35
        z = P128.ctx.mpc(0.3, 0.4)
        assert abs(evaluate_hypergeometric(5, z, P128) - evaluate(build_P(5), z, P128)) < 1e-25

    def test_against_mpmath_hyp2f1(self):
        ctx = P128.ctx
        for m in (3, 12):
            z = ctx.mpc(-0.8, 0.6)
            ref = ctx.rf(m + ctx.mpf(1.5), m) / ctx.factorial(m) \
                * ctx.hyp2f1(-m, m + 1, m + ctx.mpf(1.5), (1 - z) / 2)
            assert abs(ref - evaluate(build_P(m), z, P128)) < abs(ref) * 1e-30

    def test_random_agreement(self):
        rng = random.Random(11)
        prec = PrecisionConfig(128)
        tol = mpmath.ldexp(1, -64)
        for m in range(0, 21):
            for _ in range(50):
                r, t = 2 * rng.random() ** 0.5, rng.uniform(0, 6.3)
                z = prec.ctx.mpc(mpmath.rect(r, t))
                a = evaluate(build_P(m), z, prec)
                b = evaluate_hypergeometric(m, z, prec)
                assert abs(a - b) / (1 + abs(a)) < tol


@settings(max_examples=30, deadline=None)
@given(st.integers(min_value=0, max_value=40))
def test_json_round_trip(m):
    for poly in (build_P(m), build_pi(m)):
        back = from_json(to_json(poly))
        assert back.coeffs == poly.coeffs
        assert back.kappa == poly.kappa and back.monic == poly.monic


def test_json_shape():
    import json

    rec = json.loads(to_json(build_pi(2)))
    assert rec == {"m": 2, "monic": True, "kappa": "3/2", "coeffs": ["7/4", "5/2", "1/1"]}
