"""Exponent-level comparison bounds and the shared scalar optimizer."""

import math

import numpy as np
import pytest

import lpcb
from lpcb.exponents import DivergenceRate, ExponentPair
from lpcb.numerics import golden_section_min, parabolic_polish_min


def wide_grid(hi=1e6, points=800):
    return 1.0 + np.geomspace(1e-6, hi - 1.0, points)


def polished_min(f, lo, hi):
    """Golden section plus a parabolic vertex step (argmin to ~1e-10)."""
    x, _ = golden_section_min(f, lo, hi, tol=1e-14)
    x = parabolic_polish_min(f, x, 1e-5 * max(abs(x), 1.0))
    return x, f(x)


class TestRatioPlusLinear:
    def test_symmetric(self):
        opt = lpcb.optimize_ratio_plus_linear(1.0, 1.0)
        assert opt.alpha_star == pytest.approx(2.0)
        assert opt.minimum == pytest.approx(4.0)
        assert not opt.boundary

    def test_four_to_one(self):
        opt = lpcb.optimize_ratio_plus_linear(4.0, 1.0)
        assert (opt.alpha_star, opt.minimum) == pytest.approx((3.0, 9.0))
        a_num, v_num = polished_min(lambda a: 4 * a / (a - 1) + a,
                                    1.0 + 1e-9, 30.0)
        assert opt.alpha_star == pytest.approx(a_num, rel=1e-8)
        assert opt.minimum == pytest.approx(v_num, rel=1e-10)

    def test_degenerate_ratio_term(self):
        opt = lpcb.optimize_ratio_plus_linear(0.0, 3.0)
        assert opt.boundary
        assert opt.minimum == pytest.approx(3.0)
        # grid confirmation: the objective decreases toward the boundary
        grid = 1.0 + np.geomspace(1e-8, 10.0, 200)
        vals = grid * 3.0
        assert vals.min() >= opt.minimum - 1e-9

    def test_invalid_inputs(self):
        with pytest.raises(ValueError):
            lpcb.optimize_ratio_plus_linear(1.0, 0.0)
        with pytest.raises(ValueError):
            lpcb.optimize_ratio_plus_linear(-1.0, 1.0)

    def test_matches_golden_section_sweep(self):
        rng = np.random.default_rng(23)
        for _ in range(100):
            u = float(rng.uniform(1e-2, 100))
            v = float(rng.uniform(1e-2, 100))
            opt = lpcb.optimize_ratio_plus_linear(u, v)
            a_num, v_num = polished_min(
                lambda a: a / (a - 1) * u + a * v,
                1.0 + 1e-9, 10 * opt.alpha_star)
            assert opt.alpha_star == pytest.approx(a_num, rel=1e-8)
            assert opt.minimum == pytest.approx(v_num, rel=1e-8)


class TestTwoSidedBounds:
    def test_zero_divergence_collapse(self):
        e = ExponentPair.of(1.3)
        lower, upper = lpcb.two_sided_exponent_bounds(
            e, DivergenceRate.zero(), DivergenceRate.zero(), wide_grid())
        assert lower.value == pytest.approx(1.3, abs=1e-4)
        assert upper.value == pytest.approx(1.3, abs=1e-4)
        assert lower.value <= upper.value

    def test_linear_divergence_against_cubic_oracle(self):
        # with rate 0.1*(a-1), the lower stationarity condition reduces to
        # the cubic 0.2 a^3 - 0.2 a^2 - 1 = 0 (independent derivation)
        roots = np.roots([0.2, -0.2, 0.0, -1.0])
        a_star = float(roots[np.isreal(roots)].real.max())
        expected = (a_star - 1) / a_star - 0.1 * (a_star - 1) ** 2
        rate = DivergenceRate(lambda a: 0.1 * (a - 1.0))
        lower, _ = lpcb.two_sided_exponent_bounds(
            ExponentPair.of(1.0), rate, rate)
        assert lower.value == pytest.approx(expected, abs=1e-6)
        assert lower.alpha_star == pytest.approx(a_star, rel=1e-4)
        # upper stationarity: -1/(a-1)^2 + 0.2 a - 0.1 = 0
        roots_u = np.roots([0.2, -0.5, 0.4, -1.1])
        a_up = float(roots_u[np.isreal(roots_u)].real.max())
        expected_up = a_up / (a_up - 1) + 0.1 * a_up * (a_up - 1)
        _, upper = lpcb.two_sided_exponent_bounds(
            ExponentPair.of(1.0), rate, rate)
        assert upper.value == pytest.approx(expected_up, abs=1e-6)

    def test_lower_below_upper_random(self):
        rng = np.random.default_rng(29)
        for _ in range(50):
            e = float(rng.uniform(0.1, 3.0))
            coef = float(rng.uniform(0.01, 0.5))
            rate = DivergenceRate(lambda a, c=coef: c * (a - 1.0))
            lower, upper = lpcb.two_sided_exponent_bounds(
                ExponentPair.of(e), rate, rate)
            assert lower.value <= upper.value + 1e-12

    def test_monotone_in_divergence(self):
        e = ExponentPair.of(1.0)
        small = DivergenceRate(lambda a: 0.01 * (a - 1.0))
        big = DivergenceRate(lambda a: 0.2 * (a - 1.0))
        lo_s, up_s = lpcb.two_sided_exponent_bounds(e, small, small)
        lo_b, up_b = lpcb.two_sided_exponent_bounds(e, big, big)
        assert lo_b.value <= lo_s.value + 1e-12
        assert up_b.value >= up_s.value - 1e-12

    def test_empty_grid_flags_infeasible(self):
        rate = DivergenceRate(lambda a: 0.0, domain=(1.0, 1.5))
        lower, upper = lpcb.two_sided_exponent_bounds(
            ExponentPair.of(1.0), rate, rate, np.array([2.0, 3.0]))
        assert not lower.feasible and not upper.feasible

    def test_exponent_pair_ordering(self):
        with pytest.raises(ValueError):
            ExponentPair(2.0, 1.0)


class TestPerturbationBound:
    def test_no_perturbation(self):
        assert lpcb.perturbation_upper_bound(1.7, 0.0) == pytest.approx(1.7)

    def test_quarter_case(self):
        assert lpcb.perturbation_upper_bound(1.0, 0.5) == pytest.approx(2.25)
        opt = lpcb.optimize_ratio_plus_linear(1.0, 0.25)
        assert opt.minimum == pytest.approx(2.25)

    def test_consistent_with_two_sided(self):
        # i.i.d. scaling: the block divergence rate is the single-letter
        # second-moment bound eps2/2, constant in the order
        e, eps2 = 0.8, 0.02
        rate = DivergenceRate(lambda a: eps2 / 2.0)
        _, upper = lpcb.two_sided_exponent_bounds(
            ExponentPair.of(e), rate, rate, wide_grid(1e4, 600))
        assert upper.value == pytest.approx(
            lpcb.perturbation_upper_bound(e, eps2), rel=1e-6)


class TestIteratedLowerBound:
    def test_zero_penalty(self):
        res = lpcb.iterated_lower_bound(1.4, lambda b: 0.0, wide_grid())
        assert res.value == pytest.approx(1.4, abs=1e-4)

    def test_truncated_gaussian_limit(self):
        z = 0.9545
        res = lpcb.iterated_lower_bound(1.0, lambda b: math.log(1.0 / z) / b,
                                        wide_grid())
        assert res.value == pytest.approx(1.0 + math.log(z), abs=1e-4)

    def test_monotone_approach_from_below(self):
        z = 0.9
        limit = 1.0 + math.log(z)
        prev = -math.inf
        for hi in (10.0, 100.0, 1e3, 1e6):
            res = lpcb.iterated_lower_bound(
                1.0, lambda b: math.log(1.0 / z) / b, wide_grid(hi, 300))
            assert prev - 1e-12 <= res.value <= limit + 1e-12
            prev = res.value
