"""Interference, mismatch and ISI channel bounds."""

import math

import numpy as np
import pytest

import lpcb
from lpcb.gaussian import (ChannelScene, IsiScene, ReferenceFamilyDiscrete,
                           interference_capacity_lower, interference_objective,
                           interference_upper_s1, isi_inner_objective,
                           very_noisy_ref_exponent_fn, zero_ref_exponent)
from lpcb.numerics import golden_section_min


def const_ref(value):
    return lambda rate, s: value


class TestSingleLetterDivergence:
    def test_matched_channels(self):
        q = np.array([[0.9, 0.1], [0.1, 0.9]])
        got = lpcb.mismatch_single_letter_divergence(q, q, [0.5, 0.5], 2.0)
        assert got == pytest.approx(0.0, abs=1e-14)

    def test_bsc_pair_against_row_sum(self):
        q = np.array([[0.9, 0.1], [0.1, 0.9]])
        p = np.array([[0.8, 0.2], [0.2, 0.8]])
        alpha = 2.0
        rows = [lpcb.renyi_discrete(q[x], p[x], alpha) for x in range(2)]
        expected = alpha * (0.5 * rows[0] + 0.5 * rows[1])
        got = lpcb.mismatch_single_letter_divergence(q, p, [0.5, 0.5], alpha)
        assert got == pytest.approx(expected, abs=1e-14)

    def test_point_mass_composition(self):
        q = np.array([[0.9, 0.1], [0.3, 0.7]])
        p = np.array([[0.8, 0.2], [0.5, 0.5]])
        alpha = 1.7
        got = lpcb.mismatch_single_letter_divergence(q, p, [1.0, 0.0], alpha)
        assert got == pytest.approx(alpha * lpcb.renyi_discrete(q[0], p[0], alpha))

    def test_support_failure_propagates(self):
        q = np.array([[0.5, 0.5], [0.5, 0.5]])
        p = np.array([[1.0, 0.0], [0.5, 0.5]])
        assert lpcb.mismatch_single_letter_divergence(q, p, [0.5, 0.5], 2.0) == math.inf


class TestMemorylessMismatchUpper:
    metric = np.array([[0.0, 1.0], [1.0, 0.0]])

    def family_grid(self):
        thetas = np.linspace(0.2, 3.0, 12)
        psi = np.array([0.5, 0.5])
        return [(t, psi) for t in thetas]

    def test_matched_member_collapses_to_reference(self):
        theta0 = 1.5
        p = ReferenceFamilyDiscrete(theta0, lpcb.uniform(2), self.metric).conditional()
        e_ref = 0.7
        res = lpcb.memoryless_mismatch_upper(
            p, [0.5, 0.5], self.metric, lambda q: e_ref,
            self.family_grid() + [(theta0, np.array([0.5, 0.5]))],
            1.0 + np.geomspace(1e-4, 1e6, 400))
        assert e_ref <= res.value <= e_ref * (1.0 + 1e-4)
        assert res.aux_params["theta"] == pytest.approx(theta0)

    def test_small_order_limit_recovers_kl_form(self):
        # with a zero reference exponent the bound collapses, as the order
        # drops to one, to the composition-weighted KL to the nearest
        # family member
        p = np.array([[0.7, 0.3], [0.4, 0.6]])
        mu = np.array([0.5, 0.5])
        grid = self.family_grid()
        res = lpcb.memoryless_mismatch_upper(
            p, mu, self.metric, lambda q: 0.0, grid,
            np.array([1.0 + 1e-7, 1.0 + 1e-6, 1.0 + 1e-5]))
        expected = min(
            sum(mu[x] * lpcb.kl_discrete(
                ReferenceFamilyDiscrete(t, lpcb.uniform(2), self.metric)
                .conditional()[x], p[x]) for x in range(2))
            for t, _ in grid)
        assert res.value == pytest.approx(expected, abs=1e-4)

    def test_grid_refinement_stability(self):
        rng = np.random.default_rng(31)
        p = rng.dirichlet(np.ones(3), size=2)
        metric = rng.uniform(0, 2, size=(2, 3))
        mu = np.array([0.4, 0.6])
        e_sl = lambda q: 0.25

        def run(n_theta, n_alpha):
            thetas = np.linspace(0.1, 4.0, n_theta)
            grid = [(t, np.ones(3) / 3) for t in thetas]
            return lpcb.memoryless_mismatch_upper(
                p, mu, metric, e_sl, grid,
                1.0 + np.geomspace(1e-4, 1e3, n_alpha)).value

        coarse, fine = run(40, 200), run(160, 800)
        assert coarse == pytest.approx(fine, abs=1e-6)


class TestInterferenceUpper:
    def test_no_interference_limit(self):
        scene = ChannelScene(rate=0.1, power=1.0, noise_var=1.0,
                             interference_bound=0.0, ref_exponent=const_ref(0.5))
        res = lpcb.interference_upper(
            scene, alpha_grid=1.0 + np.geomspace(1e-4, 1e6, 300),
            s_grid=np.array([1.0]))
        assert res.value == pytest.approx(0.5, abs=1e-4)

    def test_s1_slice_closed_form(self):
        scene = ChannelScene(rate=0.1, power=1.0, noise_var=1.0,
                             interference_bound=1.0, ref_exponent=const_ref(0.5))
        res = lpcb.interference_upper(scene, s_grid=np.array([1.0]))
        closed = interference_upper_s1(0.5, 1.0, 1.0)
        assert closed.value == pytest.approx(2.0)
        assert res.value == pytest.approx(2.0, abs=1e-6)
        a_num, v_num = golden_section_min(
            lambda a: a / (a - 1) * 0.5 + a * 0.5, 1.0 + 1e-9, 50.0, tol=1e-14)
        assert closed.alpha_star == pytest.approx(a_num, rel=1e-8)
        assert closed.value == pytest.approx(v_num, rel=1e-10)

    def test_s1_objective_identity(self):
        # at s = 1 the two-parameter objective reduces to the ratio-plus-
        # linear form for every order
        rng = np.random.default_rng(37)
        for _ in range(50):
            e_sl = float(rng.uniform(0, 3))
            gamma = float(rng.uniform(0, 2))
            sigma2 = float(rng.uniform(0.2, 4))
            alpha = 1.0 + 10 ** rng.uniform(-2, 1.5)
            scene = ChannelScene(rate=0.0, power=1.0, noise_var=sigma2,
                                 interference_bound=gamma,
                                 ref_exponent=const_ref(e_sl))
            lhs = interference_objective(scene, alpha, 1.0)
            rhs = alpha / (alpha - 1) * e_sl + alpha * gamma ** 2 / (2 * sigma2)
            assert lhs == pytest.approx(rhs, rel=1e-12)

    def test_two_dim_optimum_not_above_s1_slice(self):
        scene = ChannelScene(rate=0.05, power=1.0, noise_var=2.0,
                             interference_bound=0.7,
                             ref_exponent=very_noisy_ref_exponent_fn(1.0, 2.0))
        full = lpcb.interference_upper(scene)
        slice1 = lpcb.interference_upper(scene, s_grid=np.array([1.0]))
        assert full.value <= slice1.value + 1e-9


class TestVeryNoisy:
    def test_reference_exponent_branches(self):
        assert lpcb.very_noisy_reference_exponent(1.0, 0.0) == pytest.approx(0.5)
        assert lpcb.very_noisy_reference_exponent(1.0, 1.0) == 0.0
        assert lpcb.very_noisy_reference_exponent(1.0, 0.5) == pytest.approx(
            (1.0 - math.sqrt(0.5)) ** 2)
        assert lpcb.very_noisy_reference_exponent(1.0, 2.0) == 0.0

    def test_upper_e1_continuity_and_endpoint(self):
        scene = ChannelScene(rate=0.0, power=1.0, noise_var=10.0,
                             interference_bound=0.4,
                             ref_exponent=zero_ref_exponent)
        e1 = lpcb.very_noisy_upper_e1(scene)
        for r_break in (e1.c_q / 4.0, e1.c_q):
            below = e1(r_break * (1 - 1e-9))
            above = e1(r_break * (1 + 1e-9))
            assert below == pytest.approx(above, abs=1e-7)
        assert e1(e1.c_total) == 0.0
        assert e1(e1.c_q) == pytest.approx(
            scene.interference_bound ** 2 / (2 * scene.noise_var))

    def test_zero_interference_degenerates(self):
        scene = ChannelScene(rate=0.0, power=1.0, noise_var=10.0,
                             interference_bound=0.0,
                             ref_exponent=zero_ref_exponent)
        e1 = lpcb.very_noisy_upper_e1(scene)
        for r in np.linspace(0, 2 * e1.c_q, 30):
            assert e1(float(r)) == pytest.approx(
                lpcb.very_noisy_reference_exponent(e1.c_q, float(r)))


class TestInterferenceLowerAndBand:
    def test_no_interference(self):
        assert lpcb.interference_lower(1.3, 0.0, 1.0) == pytest.approx(1.3)

    def test_threshold(self):
        assert lpcb.interference_lower(0.5, 1.0, 1.0) == 0.0

    def test_example_against_grid(self):
        got = lpcb.interference_lower(2.0, 1.0, 1.0)
        assert got == pytest.approx(0.5)
        grid = 1.0 + np.geomspace(1e-6, 1e3, 4000)
        vals = (grid - 1) / grid * 2.0 - (grid - 1) * 0.5
        assert got == pytest.approx(float(vals.max()), abs=1e-6)

    def test_band(self):
        lo, hi = lpcb.robust_band(1.0, math.sqrt(0.5), 1.0)
        assert (lo, hi) == pytest.approx((0.25, 1.0))
        rng = np.random.default_rng(41)
        for _ in range(100):
            e = float(rng.uniform(0, 3))
            gamma = float(rng.uniform(0, 2))
            lo, hi = lpcb.robust_band(e, gamma, 1.0)
            assert lo <= hi

    def test_capacity_lower_estimate(self):
        c_q = 0.8
        e_of_r = lambda r: lpcb.very_noisy_reference_exponent(c_q, r)
        gamma, sigma2 = 0.3, 1.0
        target = gamma ** 2 / (2 * sigma2)
        got = interference_capacity_lower(e_of_r, gamma, sigma2)
        # analytic crossing on the middle branch
        expected = (math.sqrt(c_q) - math.sqrt(target)) ** 2
        assert got == pytest.approx(expected, abs=1e-9)


class TestZeroRateAndCapacity:
    def test_zero_rate_values(self):
        assert lpcb.zero_rate_optimum(1.0, 1.0, 0.0) == pytest.approx(0.25)
        assert lpcb.zero_rate_optimum(1.0, 1.0, 1.0) == pytest.approx(
            (1.0 + math.sqrt(2.0)) ** 2 / 4.0)

    def test_matches_s1_formula_with_reference_half_capacity(self):
        power, sigma2, gamma = 2.0, 3.0, 0.5
        c_q = power / (2 * sigma2)
        closed = interference_upper_s1(c_q / 2.0, gamma, sigma2)
        assert closed.value == pytest.approx(
            lpcb.zero_rate_optimum(power, sigma2, gamma))

    def test_capacity_upper(self):
        assert lpcb.capacity_upper(1.0, 1.0, 0.0) == pytest.approx(
            0.5 * math.log(2.0))
        assert lpcb.capacity_upper(1.0, 1.0, 1.0) == pytest.approx(
            0.5 * math.log(5.0))
        gammas = np.linspace(0, 3, 40)
        vals = [lpcb.capacity_upper(1.0, 1.0, g) for g in gammas]
        assert all(b > a for a, b in zip(vals, vals[1:]))


class TestIsiBand:
    def test_no_isi(self):
        band = lpcb.isi_zero_rate_band(IsiScene(power=2.0, noise_var=1.0,
                                                r1=0.0, r2=0.0))
        assert band.lower == pytest.approx(0.5)
        assert band.upper == pytest.approx(0.5)
        assert band.tau_star == pytest.approx(1.0)

    def test_example_scene(self):
        scene = IsiScene(power=1.0, noise_var=1.0, r1=0.2, r2=0.1)
        assert scene.a == pytest.approx(0.06)
        assert scene.b == pytest.approx(1.44)
        band = lpcb.isi_zero_rate_band(scene)
        assert band.lower == pytest.approx(0.25 * (1.2 - math.sqrt(0.06)) ** 2)
        assert band.upper == pytest.approx(0.25 * (1.2 + math.sqrt(0.06)) ** 2)
        assert 0 < band.tau_star < 1
        assert band.theta_star == pytest.approx(0.5)
        assert band.phi2_star == pytest.approx((1.2 + math.sqrt(0.06)) ** 2)

    def test_lower_matches_inner_grid(self):
        scene = IsiScene(power=1.0, noise_var=1.0, r1=0.2, r2=0.1)
        band = lpcb.isi_zero_rate_band(scene)
        taus = np.linspace(1e-4, 1 - 1e-4, 200)
        best = max(
            max(isi_inner_objective(float(al), float(t), 1.0, 1.0,
                                    scene.a, scene.b)
                for al in 1.0 / (1.0 - taus))
            for t in taus)
        assert best == pytest.approx(band.lower, rel=1e-4)
        assert best <= band.lower + 1e-12

    def test_vacuous_lower(self):
        band = lpcb.isi_zero_rate_band(IsiScene(power=1.0, noise_var=1.0,
                                                r1=-0.9, r2=1.0))
        assert band.lower == 0.0 and band.lower_vacuous

    def test_invalid_correlations(self):
        with pytest.raises(ValueError):
            IsiScene(power=1.0, noise_var=1.0, r1=0.5, r2=0.1)


class TestChannelSceneValidation:
    def test_ref_exponent_must_be_nonincreasing(self):
        with pytest.raises(ValueError):
            ChannelScene(rate=0.5, power=1.0, noise_var=1.0,
                         interference_bound=0.0, ref_exponent=lambda r, s: r)
