"""Gaussian-channel exponent bounds: bounded interference with unlimited
memory, mismatched memoryless decoding, the very-noisy regime, and the
zero-rate band for the intersymbol-interference channel.

The channel of interest adds a bounded interference signal to a Gaussian
noise channel; the reference model is the same channel without
interference and with noise variance scaled by a free parameter ``s``.
Comparing the two through the order-``alpha`` divergence and optimizing
over ``(alpha, s)`` yields computable upper bounds; the reversed direction
yields lower bounds.  The reference reliability function enters only as a
caller-supplied function E_sl(R, s) (straight-line bound, very-noisy
closed form, or a constant-zero stub).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Iterable, Sequence

import numpy as np

from .divergence import DiscreteDist, _as_dist, _as_order, renyi_discrete
from .errors import FeasibilityError
from .exponents import BoundResult
from .numerics import (default_alpha_grid, golden_section_max,
                       golden_section_min, grid_min_refine)

RefExponent = Callable[[float, float], float]


@dataclass(frozen=True)
class ChannelScene:
    """Shared symbols of the interference bounds.

    ``ref_exponent(R, s)`` supplies the reference-channel exponent bound
    for noise variance ``noise_var / s``; it must be nonincreasing in the
    rate (checked on a coarse grid at construction).
    """

    rate: float
    power: float
    noise_var: float
    interference_bound: float
    ref_exponent: RefExponent

    def __post_init__(self):
        if self.rate < 0:
            raise ValueError("rate must be nonnegative")
        if not (self.power > 0 and self.noise_var > 0):
            raise ValueError("power and noise variance must be positive")
        if self.interference_bound < 0:
            raise ValueError("interference bound must be nonnegative")
        r_probe = np.linspace(0.0, 2.0 * max(self.rate, 1.0), 9)
        vals = [self.ref_exponent(float(r), 1.0) for r in r_probe]
        if any(b > a + 1e-9 for a, b in zip(vals, vals[1:])):
            raise ValueError("ref_exponent must be nonincreasing in the rate")


def very_noisy_reference_exponent(c_q: float, rate: float) -> float:
    """Reliability function of the very noisy reference channel.

    Piecewise in the reference capacity ``c_q``: ``c_q/2 - R`` below
    ``c_q/4``, ``(sqrt(c_q)-sqrt(R))^2`` up to ``c_q``, zero beyond.
    """
    if c_q < 0 or rate < 0:
        raise ValueError("capacity and rate must be nonnegative")
    if rate < c_q / 4.0:
        return c_q / 2.0 - rate
    if rate < c_q:
        return (math.sqrt(c_q) - math.sqrt(rate)) ** 2
    return 0.0


def very_noisy_ref_exponent_fn(power: float, noise_var: float) -> RefExponent:
    """Default pluggable reference exponent for the very-noisy regime.

    Scaling the noise by 1/s multiplies the reference capacity
    S/(2*sigma^2) by s.
    """
    c_q = power / (2.0 * noise_var)
    return lambda rate, s: very_noisy_reference_exponent(s * c_q, rate)


def zero_ref_exponent(rate: float, s: float) -> float:
    """Constant-zero reference exponent (capacity-threshold studies)."""
    return 0.0


def interference_objective(scene: ChannelScene, alpha: float, s: float) -> float:
    """Inner objective of the interference upper bound at one (alpha, s).

    Infinite outside the feasibility region ``s > 1 - 1/alpha``.
    """
    alpha = _as_order(alpha)
    if not (s > 0):
        raise ValueError("scale s must be positive")
    denom = 1.0 + alpha * (s - 1.0)
    if denom <= 1e-12:
        return math.inf
    gamma, sig2 = scene.interference_bound, scene.noise_var
    e_sl = scene.ref_exponent(scene.rate, s)
    return (alpha * e_sl / (alpha - 1.0)
            + alpha * math.log(s) / (2.0 * (alpha - 1.0))
            - math.log(denom) / (2.0 * (alpha - 1.0))
            + alpha * s * gamma ** 2 / (2.0 * sig2 * denom))


def _default_s_grid() -> np.ndarray:
    return np.unique(np.concatenate([np.geomspace(0.2, 5.0, 81), [1.0]]))


def interference_upper(scene: ChannelScene,
                       alpha_grid: np.ndarray | None = None,
                       s_grid: np.ndarray | None = None) -> BoundResult:
    """Upper exponent bound for bounded interference of unlimited memory.

    Minimizes :func:`interference_objective` over the (alpha, s) grid with
    local golden refinement in each coordinate.  Ties resolve to the
    smallest alpha, then the smallest s.
    """
    if alpha_grid is None:
        alpha_grid = default_alpha_grid()
    if s_grid is None:
        s_grid = _default_s_grid()
    alpha_grid = np.asarray(alpha_grid, dtype=float)
    s_grid = np.sort(np.asarray(s_grid, dtype=float))
    alpha_grid = alpha_grid[alpha_grid > 1.0]
    if alpha_grid.size == 0 or s_grid.size == 0:
        return BoundResult.infeasible()

    best = (math.inf, -1, -1)
    for i, a in enumerate(alpha_grid):
        for j, s in enumerate(s_grid):
            if 1.0 + a * (s - 1.0) <= 1e-12:
                continue
            val = interference_objective(scene, float(a), float(s))
            if val < best[0]:
                best = (val, i, j)
    if not math.isfinite(best[0]):
        return BoundResult.infeasible()

    # coordinate-wise golden refinement confined to the grid neighbour
    # brackets (a single-point grid pins its coordinate exactly)
    val, i, j = best
    a_star, s_star = float(alpha_grid[i]), float(s_grid[j])
    a_lo = float(alpha_grid[max(i - 1, 0)])
    a_hi = float(alpha_grid[min(i + 1, alpha_grid.size - 1)])
    s_lo = float(s_grid[max(j - 1, 0)])
    s_hi = float(s_grid[min(j + 1, s_grid.size - 1)])
    for _ in range(2):
        if a_hi > a_lo:
            a_best, v = golden_section_min(
                lambda a: interference_objective(scene, a, s_star)
                if 1.0 + a * (s_star - 1.0) > 1e-12 else math.inf,
                a_lo, a_hi)
            if v < val:
                val, a_star = v, a_best
        if s_hi > s_lo:
            s_best, v = golden_section_min(
                lambda s: interference_objective(scene, a_star, s)
                if 1.0 + a_star * (s - 1.0) > 1e-12 else math.inf,
                s_lo, s_hi)
            if v < val:
                val, s_star = v, s_best

    return BoundResult(
        value=val, alpha_star=a_star,
        feasible_interval=(float(alpha_grid.min()), float(alpha_grid.max())),
        aux_params={"s": s_star},
    )


def interference_upper_s1(e_sl: float, gamma: float, sigma2: float
                          ) -> BoundResult:
    """Closed form of the s = 1 slice of the interference upper bound.

    The objective collapses to a/(a-1)*E_sl + a*Gamma^2/(2*sigma^2) with
    optimum (sqrt(E_sl) + Gamma/(sqrt(2)*sigma))^2 at
    a* = 1 + sigma*sqrt(2*E_sl)/Gamma.
    """
    if e_sl < 0:
        raise ValueError("reference exponent must be nonnegative")
    if not (sigma2 > 0):
        raise ValueError("noise variance must be positive")
    if gamma < 0:
        raise ValueError("interference bound must be nonnegative")
    floor = gamma ** 2 / (2.0 * sigma2)
    value = (math.sqrt(e_sl) + gamma / math.sqrt(2.0 * sigma2)) ** 2
    if gamma == 0.0:
        return BoundResult(value=e_sl, alpha_star=math.inf,
                           feasible_interval=(1.0, math.inf),
                           aux_params={"s": 1.0})
    alpha_star = 1.0 + math.sqrt(2.0 * e_sl * sigma2) / gamma
    return BoundResult(value=value, alpha_star=alpha_star,
                       feasible_interval=(1.0, math.inf),
                       aux_params={"s": 1.0, "floor": floor})


def interference_lower(e_r_q1: float, gamma: float, sigma2: float) -> float:
    """Lower exponent bound (sqrt(E(R,Q1)) - Gamma/(sqrt(2)sigma))^2.

    Zero when the reference exponent does not exceed the interference
    floor Gamma^2/(2*sigma^2).
    """
    if e_r_q1 < 0:
        raise ValueError("reference exponent must be nonnegative")
    threshold = gamma ** 2 / (2.0 * sigma2)
    if e_r_q1 <= threshold:
        return 0.0
    return (math.sqrt(e_r_q1) - gamma / math.sqrt(2.0 * sigma2)) ** 2


def interference_capacity_lower(e_of_r: Callable[[float], float],
                                gamma: float, sigma2: float,
                                r_max: float | None = None) -> float:
    """Capacity lower estimate: the rate at which the reference exponent
    drops to the interference floor Gamma^2/(2*sigma^2).

    ``e_of_r`` must be nonincreasing; the crossing is located by bisection.
    """
    target = gamma ** 2 / (2.0 * sigma2)
    if e_of_r(0.0) <= target:
        return 0.0
    if r_max is None:
        r_max = 1.0
        for _ in range(60):
            if e_of_r(r_max) < target:
                break
            r_max *= 2.0
        else:
            raise ValueError("reference exponent never drops below the floor")
    lo, hi = 0.0, r_max
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        if e_of_r(mid) > target:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def robust_band(e_r_q1: float, gamma: float, sigma2: float
                ) -> tuple[float, float]:
    """Two-sided band on the minimax exponent over all channels whose
    interference is bounded by gamma, under the decoder matched to the
    reference."""
    return interference_lower(e_r_q1, gamma, sigma2), e_r_q1


def zero_rate_optimum(power: float, noise_var: float, gamma: float) -> float:
    """Fully optimized zero-rate upper bound (sqrt(S)+Gamma*sqrt(2))^2/(4 sigma^2).

    Also optimal over the extended reference family with a free gain
    factor; the extra parameter does not improve the rate-zero value.
    """
    if not (power > 0 and noise_var > 0):
        raise ValueError("power and noise variance must be positive")
    if gamma < 0:
        raise ValueError("interference bound must be nonnegative")
    return (math.sqrt(power) + gamma * math.sqrt(2.0)) ** 2 / (4.0 * noise_var)


def capacity_upper(power: float, noise_var: float, gamma: float) -> float:
    """Capacity upper bound 0.5*ln(1 + (sqrt(S)+Gamma)^2/sigma^2)."""
    if not (power > 0 and noise_var > 0):
        raise ValueError("power and noise variance must be positive")
    if gamma < 0:
        raise ValueError("interference bound must be nonnegative")
    return 0.5 * math.log1p((math.sqrt(power) + gamma) ** 2 / noise_var)


@dataclass(frozen=True)
class VeryNoisyUpperBound:
    """Rate-dependent upper bound for the very noisy interference channel.

    Combines the interference-shifted reliability function with the
    straight line through (c_q, floor) and (c_total, 0).  Degenerates to
    the plain reference exponent when the interference bound is zero.
    """

    c_q: float
    c_total: float
    gamma: float
    sigma2: float

    def __call__(self, rate: float) -> float:
        if rate < 0:
            raise ValueError("rate must be nonnegative")
        if self.gamma == 0.0:
            return very_noisy_reference_exponent(self.c_q, rate)
        if rate < self.c_q / 4.0:
            return (math.sqrt(self.c_q / 2.0 - rate)
                    + self.gamma / math.sqrt(2.0 * self.sigma2)) ** 2
        if rate < self.c_q:
            return (math.sqrt(self.c_total) - math.sqrt(rate)) ** 2
        if rate < self.c_total:
            floor = self.gamma ** 2 / (2.0 * self.sigma2)
            return floor * (self.c_total - rate) / (self.c_total - self.c_q)
        return 0.0


def very_noisy_upper_e1(scene: ChannelScene) -> VeryNoisyUpperBound:
    """Very-noisy regime upper bound E_1 as a piecewise function of rate."""
    c_q = scene.power / (2.0 * scene.noise_var)
    c_total = (math.sqrt(scene.power) + scene.interference_bound) ** 2 \
        / (2.0 * scene.noise_var)
    return VeryNoisyUpperBound(c_q=c_q, c_total=c_total,
                               gamma=scene.interference_bound,
                               sigma2=scene.noise_var)


# ---------------------------------------------------------------------------
# Mismatched decoding on memoryless channels
# ---------------------------------------------------------------------------


def _check_conditional(mat: np.ndarray, name: str) -> np.ndarray:
    mat = np.asarray(mat, dtype=float)
    if mat.ndim != 2:
        raise ValueError(f"{name} must be a 2-D array of conditionals")
    if np.any(mat < 0):
        raise ValueError(f"{name} must be nonnegative")
    if np.any(np.abs(mat.sum(axis=1) - 1.0) > 1e-9):
        raise ValueError(f"rows of {name} must sum to 1")
    return mat


@dataclass(frozen=True)
class ReferenceFamilyDiscrete:
    """Exponential-tilt reference channel matched to a decoding metric.

    The conditional q(y|x) is proportional to psi(y)*exp(-theta*d(x, y)),
    so the metric is the maximum-likelihood rule for every member of the
    family.
    """

    theta: float
    psi: DiscreteDist
    metric: np.ndarray

    def __post_init__(self):
        if self.theta < 0:
            raise ValueError("theta must be nonnegative")
        metric = np.asarray(self.metric, dtype=float)
        if metric.ndim != 2 or np.any(metric < 0):
            raise ValueError("metric must be a nonnegative 2-D matrix")
        if metric.shape[1] != len(self.psi):
            raise ValueError("metric columns must match the output alphabet")
        object.__setattr__(self, "metric", metric)

    def conditional(self) -> np.ndarray:
        """Row-stochastic q(y|x) matrix of the tilted family member."""
        logits = np.log(np.where(self.psi.probs > 0, self.psi.probs, 1.0))
        logits = logits[None, :] - self.theta * self.metric
        logits = np.where(self.psi.probs[None, :] > 0, logits, -np.inf)
        logits -= logits.max(axis=1, keepdims=True)
        q = np.exp(logits)
        return q / q.sum(axis=1, keepdims=True)


def mismatch_single_letter_divergence(q_cond, p_cond, mu, a) -> float:
    """Composition-weighted single-letter divergence rate.

    For constant-composition inputs with empirical distribution ``mu`` the
    block divergence rate between two memoryless channels single-letterizes
    to alpha * sum_x mu(x) * D_alpha(q(.|x) || p(.|x)).
    """
    alpha = _as_order(a)
    q_cond = _check_conditional(q_cond, "q_cond")
    p_cond = _check_conditional(p_cond, "p_cond")
    mu = _as_dist(mu)
    if q_cond.shape != p_cond.shape or q_cond.shape[0] != len(mu):
        raise ValueError("conditional shapes do not match the composition")
    total = 0.0
    for x in mu.support:
        d = renyi_discrete(q_cond[x], p_cond[x], alpha)
        if math.isinf(d):
            return math.inf
        total += mu.probs[x] * d
    return alpha * total


def memoryless_mismatch_upper(p_cond, mu, metric,
                              e_sl: Callable[[np.ndarray], float],
                              theta_psi_grid: Iterable[tuple[float, Sequence[float]]],
                              alpha_grid: np.ndarray | None = None
                              ) -> BoundResult:
    """Mismatched-decoding upper bound via the tilted reference family.

    Takes the infimum over the supplied (theta, psi) grid and over the
    divergence order of

        alpha/(alpha-1) * E_sl(q) + alpha * sum_x mu(x) D_alpha(q(.|x)||p(.|x))

    where q is the tilted channel for (theta, psi).  ``e_sl`` maps a
    conditional matrix to the reference exponent value.
    """
    p_cond = _check_conditional(p_cond, "p_cond")
    mu = _as_dist(mu)
    if alpha_grid is None:
        alpha_grid = default_alpha_grid()
    alpha_grid = np.asarray(alpha_grid, dtype=float)
    alpha_grid = alpha_grid[alpha_grid > 1.0]

    pairs = [(float(theta), _as_dist(psi)) for theta, psi in theta_psi_grid]

    def family_value(theta: float, psi: DiscreteDist) -> tuple[float, float]:
        q = ReferenceFamilyDiscrete(theta=theta, psi=psi,
                                    metric=metric).conditional()
        e_ref = float(e_sl(q))

        def objective(a: float) -> float:
            div = mismatch_single_letter_divergence(q, p_cond, mu, a)
            if math.isinf(div):
                return math.inf
            return a / (a - 1.0) * e_ref + div

        try:
            return grid_min_refine(objective, alpha_grid)
        except ValueError:
            return math.nan, math.inf

    best = (math.inf, math.nan)
    best_k = -1
    for k, (theta, psi) in enumerate(pairs):
        a_star, val = family_value(theta, psi)
        if val < best[0]:
            best = (val, a_star)
            best_k = k
    if not math.isfinite(best[0]):
        return BoundResult.infeasible()

    # local tilt refinement between the neighbouring grid values sharing
    # the optimizing output weights
    theta_star, psi_star = pairs[best_k]
    siblings = sorted(t for t, psi in pairs
                      if np.array_equal(psi.probs, psi_star.probs))
    pos = siblings.index(theta_star)
    t_lo = siblings[max(pos - 1, 0)]
    t_hi = siblings[min(pos + 1, len(siblings) - 1)]
    if t_hi > t_lo:
        t_best, v = golden_section_min(
            lambda t: family_value(t, psi_star)[1], t_lo, t_hi, tol=1e-10)
        if v < best[0]:
            best = (v, family_value(t_best, psi_star)[0])
            theta_star = t_best

    return BoundResult(
        value=best[0], alpha_star=best[1],
        feasible_interval=(float(alpha_grid.min()), float(alpha_grid.max())),
        aux_params={"theta": theta_star, "psi_index": float(best_k)},
    )


# ---------------------------------------------------------------------------
# Zero-rate band for the intersymbol interference channel
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class IsiScene:
    """Zero-rate ISI scene: per-symbol power, noise variance, and the
    empirical signal/interference correlations r1 (cross) and r2 (power).

    Cauchy-Schwarz forces r2 >= r1^2; the derived quantities are
    a = r2 - r1^2 and b = (1 + r1)^2.
    """

    power: float
    noise_var: float
    r1: float
    r2: float

    def __post_init__(self):
        if not (self.power > 0 and self.noise_var > 0):
            raise ValueError("power and noise variance must be positive")
        if self.r2 < self.r1 ** 2:
            raise ValueError("r2 must be at least r1^2")

    @property
    def a(self) -> float:
        return self.r2 - self.r1 ** 2

    @property
    def b(self) -> float:
        return (1.0 + self.r1) ** 2


def isi_inner_objective(alpha: float, tau: float, power: float,
                        noise_var: float, a: float, b: float) -> float:
    """Inner maximand of the ISI lower bound over (alpha, tau).

    The first term is nonpositive and vanishes exactly at
    alpha = 1/(1-tau), leaving the tau-only trade-off between the
    interference penalty and the gain term.
    """
    if not (0.0 < tau < 1.0):
        raise ValueError("tau must lie in (0, 1)")
    alpha = _as_order(alpha)
    phi_term = ((alpha - 1.0) * math.log(tau * alpha / (alpha - 1.0))
                + math.log(alpha * (1.0 - tau))) / (2.0 * alpha)
    gain = power / (2.0 * noise_var) * (-a * tau / (1.0 - tau)
                                        + b * tau / (1.0 + tau))
    return phi_term + gain


@dataclass(frozen=True)
class IsiBand:
    """Zero-rate minimax band for the ISI channel with the optimizing
    reference-model parameters."""

    lower: float
    upper: float
    tau_star: float
    theta_star: float
    phi2_star: float
    lower_vacuous: bool = False

    def to_dict(self) -> dict:
        return {
            "lower": self.lower, "upper": self.upper,
            "tau_star": self.tau_star, "theta_star": self.theta_star,
            "phi2_star": self.phi2_star, "lower_vacuous": self.lower_vacuous,
        }


def isi_zero_rate_band(scene: IsiScene) -> IsiBand:
    """Zero-rate band S/(4 sigma^2) * (sqrt(b) -+ sqrt(a))^2 for the ISI
    channel, with the optimizing tau, noise parameter theta = 1/(2 sigma^2)
    and squared gain (sqrt(b)+sqrt(a))^2.

    When a >= b the lower end is vacuous (zero, flagged); the upper end
    remains valid.
    """
    a, b = scene.a, scene.b
    scale = scene.power / (4.0 * scene.noise_var)
    upper = scale * (math.sqrt(b) + math.sqrt(a)) ** 2
    theta_star = 1.0 / (2.0 * scene.noise_var)
    phi2_star = (math.sqrt(b) + math.sqrt(a)) ** 2
    if a >= b:
        return IsiBand(lower=0.0, upper=upper, tau_star=0.0,
                       theta_star=theta_star, phi2_star=phi2_star,
                       lower_vacuous=True)
    lower = scale * (math.sqrt(b) - math.sqrt(a)) ** 2
    tau_star = 1.0 if a == 0.0 else (math.sqrt(b) - math.sqrt(a)) ** 2 / (b - a)
    return IsiBand(lower=lower, upper=upper, tau_star=tau_star,
                   theta_star=theta_star, phi2_star=phi2_star)
