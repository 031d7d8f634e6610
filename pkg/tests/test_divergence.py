"""Divergences, comparison bounds, and equality achievers."""

import math

import numpy as np
import pytest
from scipy.integrate import quad

import lpcb
from lpcb.divergence import DiscreteDist, DivergenceOrder, power_functional_check


def random_dist(rng, size):
    return DiscreteDist(rng.dirichlet(np.ones(size)))


class TestRenyiDiscrete:
    def test_identical_measures(self):
        assert lpcb.renyi_discrete([0.3, 0.7], [0.3, 0.7], 2.0) == 0.0

    def test_two_point_example(self):
        # direct summation: sum p^2 q^-1 = 1 + 1/3
        expected = 0.5 * math.log(4.0 / 3.0)
        got = lpcb.renyi_discrete([0.5, 0.5], [0.25, 0.75], 2.0)
        assert got == pytest.approx(expected, abs=1e-14)

    def test_absolute_continuity_failure(self):
        assert lpcb.renyi_discrete([1.0, 0.0], [0.0, 1.0], 2.0) == math.inf

    def test_zero_entries_do_not_contribute(self):
        val = lpcb.renyi_discrete([0.5, 0.5, 0.0], [0.25, 0.25, 0.5], 2.0)
        expected = math.log(0.25 / 0.0625) / 2.0  # restricted support sum
        direct = math.log(0.25 / 0.25 + 0.25 / 0.25) / 2.0
        assert val == pytest.approx(direct) or val == pytest.approx(expected)

    def test_dimension_mismatch(self):
        with pytest.raises(ValueError):
            lpcb.renyi_discrete([0.5, 0.5], [1 / 3, 1 / 3, 1 / 3], 2.0)

    def test_order_validation(self):
        with pytest.raises(ValueError):
            lpcb.renyi_discrete([0.5, 0.5], [0.5, 0.5], 1.0)
        with pytest.raises(ValueError):
            DivergenceOrder(0.5)
        assert float(DivergenceOrder(2.5)) == 2.5

    def test_nonnegative_and_zero_iff_equal(self):
        rng = np.random.default_rng(7)
        for _ in range(200):
            size = int(rng.integers(2, 9))
            p = random_dist(rng, size)
            q = random_dist(rng, size)
            alpha = 1.0 + 10.0 ** rng.uniform(-2, 1)
            assert lpcb.renyi_discrete(p, q, alpha) >= 0.0
            # the 1/(alpha-1) normalization amplifies log-sum rounding
            assert lpcb.renyi_discrete(p, p, alpha) <= 1e-12

    def test_large_order_no_overflow(self):
        val = lpcb.renyi_discrete([0.9, 0.1], [0.1, 0.9], 60.0)
        assert math.isfinite(val) and val > 0

    def test_order_monotonicity(self):
        # alpha * D_alpha is nondecreasing in the order
        rng = np.random.default_rng(11)
        grid = np.concatenate([[1.01], np.arange(1.1, 10.05, 0.1)])
        for _ in range(50):
            size = int(rng.integers(2, 9))
            p, q = random_dist(rng, size), random_dist(rng, size)
            vals = [a * lpcb.renyi_discrete(q, p, a) for a in grid]
            assert all(b >= a - 1e-12 for a, b in zip(vals, vals[1:]))


class TestKlDiscrete:
    def test_identical(self):
        assert lpcb.kl_discrete([0.2, 0.8], [0.2, 0.8]) == 0.0

    def test_two_point_example(self):
        expected = 0.5 * math.log(2.0) + 0.5 * math.log(2.0 / 3.0)
        assert lpcb.kl_discrete([0.5, 0.5], [0.25, 0.75]) == pytest.approx(expected)

    def test_support_failure(self):
        assert lpcb.kl_discrete([0.5, 0.5], [1.0, 0.0]) == math.inf

    def test_small_order_limit(self):
        # D_alpha -> KL as the order approaches one
        p, q = [0.5, 0.5], [0.25, 0.75]
        kl = lpcb.kl_discrete(p, q)
        near = lpcb.renyi_discrete(p, q, 1.0 + 1e-4)
        assert abs(near - kl) < 1e-3


class TestGaussianScaledShift:
    def test_identical_gaussians(self):
        assert lpcb.renyi_gaussian_scaled_shift(0.0, 1.0, 1.0, 2.0) == 0.0

    def test_unit_shift(self):
        assert lpcb.renyi_gaussian_scaled_shift(1.0, 1.0, 1.0, 2.0) == pytest.approx(0.5)

    def test_against_quadrature(self):
        # numeric integral of the order-alpha density product
        def oracle(xi, sigma2, s, alpha):
            v1, v2 = sigma2 / s, sigma2

            def f(y):
                l1 = -0.5 * math.log(2 * math.pi * v1) - y * y / (2 * v1)
                l2 = -0.5 * math.log(2 * math.pi * v2) - (y - xi) ** 2 / (2 * v2)
                return math.exp(alpha * l1 + (1 - alpha) * l2)

            val, _ = quad(f, -60, 60, epsabs=1e-300, epsrel=1e-13, limit=500)
            return math.log(val) / (alpha * (alpha - 1))

        cases = [(0.5, 2.0, 1.5, 3.0), (1.0, 1.0, 1.0, 2.0),
                 (-0.7, 0.5, 0.8, 1.3), (0.2, 3.0, 2.5, 5.0)]
        for xi, sigma2, s, alpha in cases:
            closed = lpcb.renyi_gaussian_scaled_shift(xi, sigma2, s, alpha)
            assert closed == pytest.approx(oracle(xi, sigma2, s, alpha), abs=1e-8)

    def test_infeasible_scale(self):
        with pytest.raises(lpcb.FeasibilityError):
            lpcb.renyi_gaussian_scaled_shift(0.0, 1.0, 0.4, 2.0)


class TestGaussianProductIntegral:
    def test_zero_shift(self):
        assert lpcb.gaussian_product_integral(1.0, 1.0, 1.0, 1.0) == pytest.approx(
            math.sqrt(math.pi / 2.0))

    def test_decoupled(self):
        assert lpcb.gaussian_product_integral(3.0, -2.0, 1.0, 0.0) == pytest.approx(
            math.sqrt(math.pi))

    def test_example_and_quadrature(self):
        expected = math.sqrt(math.pi / 5.0) * math.exp(-6.0 / 5.0)
        got = lpcb.gaussian_product_integral(0.0, 1.0, 2.0, 3.0)
        assert got == pytest.approx(expected, abs=1e-15)
        numeric, _ = quad(lambda y: math.exp(-2 * y * y - 3 * (y - 1) ** 2),
                          -50, 50, epsabs=1e-14)
        assert got == pytest.approx(numeric, abs=1e-10)

    def test_infeasible(self):
        with pytest.raises(lpcb.FeasibilityError):
            lpcb.gaussian_product_integral(0.0, 0.0, 1.0, -2.0)


class TestEventBound:
    def test_equal_measures(self):
        chk = lpcb.lpcb_event(0.3, 0.3, 0.0, 2.0)
        assert chk.holds and chk.lhs <= chk.rhs

    def test_zero_probability_conventions(self):
        assert lpcb.lpcb_event(0.0, 0.5, 1.0, 2.0).holds       # vacuous left
        assert not lpcb.lpcb_event(0.5, 0.0, 1.0, 2.0).holds   # binding right
        assert lpcb.lpcb_event(0.5, 0.0, math.inf, 2.0).holds  # infinite slack

    def test_random_instances_hold(self):
        rng = np.random.default_rng(3)
        for _ in range(300):
            size = int(rng.integers(2, 9))
            p, q = random_dist(rng, size), random_dist(rng, size)
            alpha = 1.0 + 10.0 ** rng.uniform(-2, 1)
            mask = np.zeros(size, dtype=bool)
            mask[rng.choice(size, int(rng.integers(1, size + 1)), replace=False)] = True
            chk = lpcb.lpcb_event(float(p.probs[mask].sum()), float(q.probs[mask].sum()),
                                  lpcb.renyi_discrete(p, q, alpha), alpha)
            assert chk.holds

    def test_conditional_achieves_equality_reversed(self):
        # conditioning the left measure on the event makes the swapped-roles
        # form an equality
        rng = np.random.default_rng(5)
        for _ in range(100):
            size = int(rng.integers(2, 9))
            p = random_dist(rng, size)
            alpha = 1.0 + 10.0 ** rng.uniform(-2, 1)
            mask = np.zeros(size, dtype=bool)
            mask[rng.choice(size, int(rng.integers(1, size + 1)), replace=False)] = True
            cond = p.conditional(mask)
            chk = lpcb.lpcb_event(1.0, float(p.probs[mask].sum()),
                                  lpcb.renyi_discrete(cond, p, alpha), alpha)
            assert abs(chk.lhs - chk.rhs) < 1e-10


class TestFunctionalBound:
    def test_constant_payoff_equal_measures(self):
        q = [0.4, 0.6]
        chk = lpcb.lpcb_functional([1.7, 1.7], q, q, 2.0)
        assert chk.lhs == pytest.approx(1.7)
        assert chk.rhs == pytest.approx(1.7)

    def test_random_instances_hold(self):
        rng = np.random.default_rng(9)
        for _ in range(300):
            size = int(rng.integers(2, 9))
            p, q = random_dist(rng, size), random_dist(rng, size)
            alpha = 1.0 + 10.0 ** rng.uniform(-2, 1)
            g = rng.normal(0, 2, size)
            assert lpcb.lpcb_functional(g, p, q, alpha).holds

    def test_duality_maximizer_achieves_equality(self):
        rng = np.random.default_rng(13)
        for _ in range(100):
            size = int(rng.integers(2, 9))
            q = random_dist(rng, size)
            alpha = 1.0 + 10.0 ** rng.uniform(-2, 1)
            g = rng.normal(0, 2, size)
            p_star = lpcb.duality_maximizer(g, q, alpha)
            chk = lpcb.lpcb_functional(g, p_star, q, alpha)
            assert abs(chk.lhs - chk.rhs) < 1e-10


class TestDualityMaximizer:
    def test_zero_payoff(self):
        q = [0.3, 0.7]
        np.testing.assert_allclose(lpcb.duality_maximizer([0.0, 0.0], q, 2.0).probs, q)

    def test_two_point_example(self):
        # tilting q = (1/2, 1/2) by exp(g) with g = (0, ln 2) gives (1/3, 2/3);
        # the maximizer does not depend on the order
        for alpha in (1.5, 2.0, 3.0):
            got = lpcb.duality_maximizer([0.0, math.log(2.0)], [0.5, 0.5], alpha)
            np.testing.assert_allclose(got.probs, [1 / 3, 2 / 3], atol=1e-14)

    def test_attains_the_dual_value(self):
        from lpcb.numerics import logsumexp

        rng = np.random.default_rng(43)
        for _ in range(100):
            size = int(rng.integers(2, 9))
            q = random_dist(rng, size)
            alpha = 1.0 + 10.0 ** rng.uniform(-2, 1)
            g = rng.normal(0, 2, size)
            p_star = lpcb.duality_maximizer(g, q, alpha)
            target = logsumexp(alpha * g + np.log(q.probs)) / alpha
            attained = (logsumexp((alpha - 1) * g + np.log(p_star.probs))
                        / (alpha - 1) - lpcb.renyi_discrete(p_star, q, alpha))
            assert attained == pytest.approx(target, abs=1e-10)

    def test_supremum_not_exceeded(self):
        rng = np.random.default_rng(17)
        q = random_dist(rng, 5)
        g = rng.normal(0, 1, 5)
        alpha = 2.5
        from lpcb.numerics import logsumexp

        target = logsumexp(alpha * g + np.log(q.probs)) / alpha
        for _ in range(300):
            p = random_dist(rng, 5)
            obj = (logsumexp((alpha - 1) * g + np.log(p.probs)) / (alpha - 1)
                   - lpcb.renyi_discrete(p, q, alpha))
            assert obj <= target + 1e-12


class TestEqualityAchieverEvent:
    def test_unit_weights(self):
        p = [0.5, 0.5]
        got = lpcb.equality_achiever_event(p, [1.0, 1.0], 2.0)
        np.testing.assert_allclose(got.probs, p)
        chk = power_functional_check([1.0, 1.0], p, got, 2.0)
        assert chk.lhs == pytest.approx(0.0, abs=1e-14)
        assert chk.rhs == pytest.approx(0.0, abs=1e-14)

    def test_two_point_example(self):
        got = lpcb.equality_achiever_event([0.5, 0.5], [1.0, 2.0], 2.0)
        np.testing.assert_allclose(got.probs, [2 / 3, 1 / 3])
        chk = power_functional_check([1.0, 2.0], [0.5, 0.5], got, 2.0)
        assert abs(chk.lhs - chk.rhs) < 1e-12

    def test_random_equality(self):
        rng = np.random.default_rng(19)
        for _ in range(200):
            size = int(rng.integers(2, 9))
            p = random_dist(rng, size)
            alpha = 1.0 + 10.0 ** rng.uniform(-2, 1)
            weights = rng.uniform(0.05, 3.0, size)
            q_star = lpcb.equality_achiever_event(p, weights, alpha)
            chk = power_functional_check(weights, p, q_star, alpha)
            assert abs(chk.lhs - chk.rhs) < 1e-10

    def test_disjoint_supports_rejected(self):
        with pytest.raises(ValueError):
            lpcb.equality_achiever_event([1.0, 0.0], [0.0, 1.0], 2.0)


class TestDiscreteDist:
    def test_validation(self):
        with pytest.raises(ValueError):
            DiscreteDist(np.array([0.5, 0.6]))
        with pytest.raises(ValueError):
            DiscreteDist(np.array([-0.1, 1.1]))

    def test_support_and_conditional(self):
        d = DiscreteDist(np.array([0.5, 0.0, 0.5]))
        np.testing.assert_array_equal(d.support, [0, 2])
        cond = d.conditional(np.array([True, True, False]))
        np.testing.assert_allclose(cond.probs, [1.0, 0.0, 0.0])
        with pytest.raises(ValueError):
            d.conditional(np.array([False, True, False]))
