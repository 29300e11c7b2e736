import math
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hyperlab.combinatorics import TheoryParams
from hyperlab.enumeration import (
    RationalSeries,
    b_s,
    brute_force_Bs,
    enum_report,
    exp_reciprocal_bounds,
    expected_Cs_lower_reference,
    expected_Rs_upper,
    f_s,
    lambert_power_coefficients,
    laplace_sum_check,
    predicted_L1,
    predicted_M1,
    tj_series_fixed_point,
    unicycle_bound,
    wheel_bound,
    wheel_bound_exact,
    wheel_constant,
)
from hyperlab.errors import ResourceLimitError, ValidationError
from hyperlab.hypergraph import brute_force_wheel_census


class TestRationalSeries:
    def test_mul_truncates(self):
        a = RationalSeries([0, 1, 1], 4)
        assert (a * a).coeffs == [Fraction(x) for x in (0, 0, 1, 2, 1)]

    def test_exp_requires_zero_constant(self):
        with pytest.raises(ValidationError):
            RationalSeries([1, 1], 3).exp()

    def test_exp_of_z(self):
        e = RationalSeries.z(5).exp()
        assert e.coeffs == [Fraction(1, math.factorial(i)) for i in range(6)]

    @given(
        a=st.lists(st.integers(min_value=-3, max_value=3), min_size=1, max_size=5),
        b=st.lists(st.integers(min_value=-3, max_value=3), min_size=1, max_size=5),
    )
    @settings(max_examples=60, deadline=None)
    def test_exp_homomorphism(self, a, b):
        order = 6
        sa = RationalSeries([0] + a, order)
        sb = RationalSeries([0] + b, order)
        assert (sa + sb).exp() == sa.exp() * sb.exp()


class TestLambert:
    def test_first_power_series(self):
        w = lambert_power_coefficients(1, 3)
        assert w.coeffs == [Fraction(0), Fraction(1), Fraction(-1), Fraction(3, 2)]

    def test_square_at_two(self):
        assert lambert_power_coefficients(2, 4).coefficient(2) == 1

    def test_zero_below_r(self):
        w3 = lambert_power_coefficients(3, 6)
        assert all(w3.coefficient(i) == 0 for i in range(3))

    def test_powers_match_products(self):
        order = 12
        w = lambert_power_coefficients(1, order)
        acc = w
        for r in range(2, 5):
            acc = acc * w
            assert acc.coeffs == lambert_power_coefficients(r, order).coeffs

    def test_functional_inverse_identity(self):
        # W(z) * exp(W(z)) == z, exactly, up to the truncation order
        order = 14
        w = lambert_power_coefficients(1, order)
        assert (w * w.exp()).coeffs == RationalSeries.z(order).coeffs


class TestTjSeries:
    def test_c0_one(self):
        t = tj_series_fixed_point(1, 3)
        assert t.coefficient(1) == 1
        assert t.coefficient(2) == Fraction(3, 2)

    def test_c0_two(self):
        t = tj_series_fixed_point(2, 2)
        assert t.coefficient(1) == 1
        assert t.coefficient(2) == Fraction(5, 2)

    @pytest.mark.parametrize("c0", [1, 2, 3, 4, 5, 6])
    def test_linear_coefficient_always_one(self, c0):
        assert tj_series_fixed_point(c0, 2).coefficient(1) == 1

    def test_fixed_point_property(self):
        # the result actually satisfies T = exp(z (1+T)^c0) - 1 to its order
        for c0 in (1, 2, 3):
            order = 10
            t = tj_series_fixed_point(c0, order)
            rhs = (RationalSeries.z(order) * t.shift_const(1).pow(c0)).exp().shift_const(-1)
            assert t == rhs

    def test_lambert_substitution_route(self):
        # exp(-W(-c0 z)/c0) - 1 reproduces the fixed point series
        for c0 in (1, 2, 3):
            order = 10
            w = lambert_power_coefficients(1, order)
            inner = w.scale_arg(-c0).scale(Fraction(-1, c0))
            assert inner.exp().shift_const(-1) == tj_series_fixed_point(c0, order)


class TestTreeCounts:
    def test_base_values(self):
        assert f_s(1, 1) == 1
        assert f_s(1, 2) == Fraction(3, 2)

    def test_series_oracle_small(self):
        for c0 in (1, 2, 3, 5):
            t = tj_series_fixed_point(c0, 12)
            for s in range(1, 13):
                assert f_s(c0, s) == t.coefficient(s)

    def test_b_s_graph_case(self):
        for n in (4, 7, 11):
            params = TheoryParams(n, 2, 1, 0.3)
            assert b_s(params, 1) == n * (n - 1)

    def test_b_s_k3_j2(self):
        params = TheoryParams(5, 3, 2, 0.3)
        assert b_s(params, 1) == 30

    def test_bracket_small_grid(self):
        for c0 in range(1, 7):
            bracket = exp_reciprocal_bounds(c0, 42)
            for s in range(1, 41):
                fs = f_s(c0, s)
                lower = Fraction(c0 ** (s - 1) * s ** (s - 1), math.factorial(s))
                assert lower <= fs <= lower * bracket[1]
                # strictness: the truncated series alone already dominates
                assert fs <= lower * bracket[0]

    def test_exp_bracket_nesting_and_float_sanity(self):
        for c0 in range(1, 7):
            lo30, hi30 = exp_reciprocal_bounds(c0, 30)
            lo60, hi60 = exp_reciprocal_bounds(c0, 60)
            # longer truncations give nested, tighter rational brackets
            assert lo30 <= lo60 < hi60 <= hi30
            assert float(lo30) == pytest.approx(math.exp(1 / c0), rel=1e-12)

    def test_enum_report_fields(self):
        params = TheoryParams(10, 3, 2, 0.3)
        rep = enum_report(params, 3)
        assert rep.s == 3
        assert rep.bounds_hold
        assert rep.lower <= rep.f_s <= rep.upper
        assert rep.b_s == math.comb(10, 2) * 8**3 * rep.f_s


class TestBruteForceBs:
    def test_single_edge_graph_case(self):
        assert brute_force_Bs(4, 2, 1, 1) == (12, 12)

    def test_two_edges_graph_case(self):
        # chains: 4 roots * 3 first edges * 3 second edges = 36 (repeats allowed)
        # cherries: 4 roots * C(3,2) unordered distinct pairs = 12
        # distinct-label trees drop second edges that reuse the first: 24 + 12
        assert brute_force_Bs(4, 2, 1, 2) == (48, 36)

    def test_hypertree_at_most_total(self):
        for n in (4, 5):
            total, hyper = brute_force_Bs(n, 2, 1, 2)
            assert hyper <= total

    def test_weighted_formula_overcounts_sibling_collisions(self):
        # the closed-form count weighs unordered sibling repeats by 1/2,
        # so it exceeds the plain census when labels can collide
        params = TheoryParams(4, 2, 1, 0.3)
        assert b_s(params, 2) == Fraction(54)
        assert brute_force_Bs(4, 2, 1, 2)[0] == 48

    def test_distinct_fraction_grows_with_n(self):
        fractions = []
        for n in (6, 8, 10):
            total, hyper = brute_force_Bs(n, 2, 1, 2)
            fractions.append(Fraction(hyper, total))
        assert fractions[0] < fractions[1] < fractions[2] < 1

    def test_guard(self):
        with pytest.raises(ResourceLimitError):
            brute_force_Bs(12, 3, 2, 2)  # C(12,3) = 220 > 50
        with pytest.raises(ResourceLimitError):
            brute_force_Bs(4, 2, 1, 5)


class TestWheelBound:
    def test_constant_graph_case(self):
        assert wheel_constant(2, 1) == 1

    def test_constant_k3_j2(self):
        assert wheel_constant(3, 2) == 1

    def test_constant_k4_j2(self):
        assert wheel_constant(4, 2) == Fraction(5, 3)

    def test_bound_value(self):
        cw, bound = wheel_bound(8, 3, 2, 3)
        assert cw == 1
        assert bound == pytest.approx(8 * (2 * 6) ** 2 / 3)

    def test_census_below_bound_tiny(self):
        for n, k, j, ell in [(6, 3, 2, 2), (6, 3, 2, 3), (6, 2, 1, 3), (5, 2, 1, 3)]:
            census = brute_force_wheel_census(n, k, j, ell)
            _, bound = wheel_bound_exact(n, k, j, ell)
            assert census <= bound

    def test_rejects_short_wheels(self):
        with pytest.raises(ValidationError):
            wheel_bound(8, 3, 2, 1)


class TestLaplace:
    def test_reference_points(self):
        assert laplace_sum_check(1, 256).holds
        assert laplace_sum_check(3, 2304).holds
        assert laplace_sum_check(2, 100_000).holds

    def test_a1_sum_is_exactly_s(self):
        # sum_{i<=s} i * falling(s,i) / s^i telescopes to s
        chk = laplace_sum_check(1, 512)
        assert chk.lhs == pytest.approx(512.0, rel=1e-9)

    def test_below_threshold_rejected(self):
        with pytest.raises(ValidationError):
            laplace_sum_check(2, (16 * 2) ** 2 - 1)


class TestProbabilityBounds:
    def test_rs_degenerate_exponent(self):
        # n = k = 2: the (1-p) exponent is zero and the bound is B_1 * p
        params = TheoryParams(2, 2, 1, 0.4)
        assert (1 + params.c0) * params.supersets_per_jset - (1 + params.c0) == 0
        assert expected_Rs_upper(params, 1) == pytest.approx(float(b_s(params, 1)) * params.p)

    def test_rs_monotone_decreasing_tail(self):
        params = TheoryParams(200, 3, 2, 0.3)
        values = [expected_Rs_upper(params, s) for s in range(50, 301)]
        assert all(a > b for a, b in zip(values, values[1:]))

    def test_rs_below_one_certifies_tail_rarity(self):
        # once the bound drops below 1, Markov gives rarity of larger sizes
        params = TheoryParams(250, 3, 2, 0.3)
        s = round(predicted_L1(params)) + 60
        assert expected_Rs_upper(params, s) < 1.0

    def test_cs_over_rs_bookkeeping_identity(self):
        params = TheoryParams(60, 3, 2, 0.3)
        for s in (1, 5, 20):
            ratio = expected_Cs_lower_reference(params, s) / expected_Rs_upper(params, s)
            assert ratio == pytest.approx((1 - params.p) ** (s * (1 + params.c0)), rel=1e-9)

    def test_cs_closed_form_at_one(self):
        params = TheoryParams(30, 3, 2, 0.3)
        expected = (
            math.comb(30, 2)
            * 28
            * params.p
            * (1 - params.p) ** ((1 + params.c0) * 28)
        )
        assert expected_Cs_lower_reference(params, 1) == pytest.approx(expected, rel=1e-9)

    def test_cs_compatible_with_decay_shape(self):
        params = TheoryParams(200, 3, 2, 0.3)
        s = round(predicted_L1(params))
        reference = math.comb(200, 2) * math.exp(-s * params.delta) * s**-1.5
        ratio = expected_Cs_lower_reference(params, s) / reference
        assert 1e-2 <= ratio <= 1e2

    def test_unicycle_log_scales_by_constant(self):
        params = TheoryParams(60, 3, 2, 0.3)
        b1 = unicycle_bound(params, 2048, constant=244.0)
        b2 = unicycle_bound(params, 2048, constant=488.0)
        # log magnitudes are ~1e4, so the difference carries ~1e-8 noise
        assert b2 - b1 == pytest.approx(math.log(2), abs=1e-7)

    def test_unicycle_graph_case_reduction(self):
        params = TheoryParams(200, 2, 1, 0.3)
        s = 4096
        expected = (
            math.log(244.0)
            + math.log(float(wheel_constant(2, 1)))
            + math.log(200)
            + (s - 1) * math.log(199)
            + (s + 0.5) * math.log(s)
            - math.lgamma(s + 1)
        )
        assert unicycle_bound(params, s) == pytest.approx(expected, rel=1e-12)

    def test_unicycle_finite_at_ten_thousand(self):
        params = TheoryParams(200, 3, 2, 0.3)
        assert math.isfinite(unicycle_bound(params, 10_000))

    def test_unicycle_threshold(self):
        params = TheoryParams(200, 3, 2, 0.3)
        with pytest.raises(ValidationError):
            unicycle_bound(params, 1023)


class TestPrediction:
    def test_reference_value(self):
        params = TheoryParams(250, 3, 2, 0.3)
        # frozen from a direct evaluation of (log lam - 2.5 log log lam)/delta
        assert predicted_L1(params) == pytest.approx(34.68872011220124, rel=1e-12)

    def test_companion_order(self):
        params = TheoryParams(250, 3, 2, 0.3)
        assert predicted_M1(params) == pytest.approx(2 * predicted_L1(params))

    def test_delta_increasing_in_epsilon(self):
        small = TheoryParams(250, 3, 2, 0.2)
        large = TheoryParams(250, 3, 2, 0.4)
        assert large.delta > small.delta

    def test_lambda_guard(self):
        params = TheoryParams(5, 3, 2, 0.3)  # lam = 0.027 * 10 < e
        with pytest.raises(ValidationError):
            predicted_L1(params)
