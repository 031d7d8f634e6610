"""Source-coding applications: rate-distortion exponent bands under
bounded interference, the separate-encoding pair bound, and the
guessing-moment lower bound.

The Gaussian source contaminated by an energy-bounded interference admits
a closed band around the clean-source exponent Phi(R - R_G(d)); the
binary variants share the tilt bracket delta(alpha) with the erasure
channel.  Single-source exponents (Marton-type) are caller-supplied
functions throughout.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Iterable, Sequence

import numpy as np

from .divergence import DiscreteDist, _as_dist, _as_order, kl_discrete, renyi_discrete
from .erasure import delta_alpha, log_delta_alpha  # noqa: F401  (shared tilt bracket)
from .errors import FeasibilityError
from .exponents import BoundResult
from .numerics import default_alpha_grid, golden_section_max, grid_max_refine, grid_min_refine


@dataclass(frozen=True)
class RdScene:
    """Rate-distortion scene for the interfered Gaussian source.

    Exponential decay requires R > R_G(d) = 0.5*ln(source_var/d); the
    interference bound A limits the per-block energy of the contamination.
    """

    rate: float
    distortion: float
    source_var: float
    interference: float

    def __post_init__(self):
        if self.rate < 0:
            raise ValueError("rate must be nonnegative")
        if not (self.distortion > 0 and self.source_var > 0):
            raise ValueError("distortion and source variance must be positive")
        if self.interference < 0:
            raise ValueError("interference bound must be nonnegative")

    @property
    def r_gaussian(self) -> float:
        """Rate-distortion function of the clean Gaussian source."""
        return 0.5 * math.log(self.source_var / self.distortion)


def phi(u: float) -> float:
    """Clean-Gaussian excess-distortion exponent (e^(2u) - 1)/2 - u."""
    return 0.5 * math.expm1(2.0 * u) - u


def gaussian_rd_band(scene: RdScene) -> tuple[float, float]:
    """(lower, upper) exponent band for the interfered Gaussian source.

    With u = R - R_G(d) the band is (sqrt(Phi(u)) -+ A/(sqrt(2) sigma))^2,
    the lower end clamped at zero.  Below R_G(d) the excess-distortion
    probability does not decay and the scene is rejected.
    """
    u = scene.rate - scene.r_gaussian
    if u < 0:
        raise FeasibilityError(
            "rate below the Gaussian rate-distortion function: exponent is zero")
    root = math.sqrt(phi(u))
    shift = scene.interference / math.sqrt(2.0 * scene.source_var)
    upper = (root + shift) ** 2
    lower = max(0.0, root - shift) ** 2
    return lower, upper


def _tilt_bracket_log(p: float, alpha: float) -> float:
    """ln of the symmetric bracket p^a(1-p)^(1-a) + (1-p)^a p^(1-a).

    The bracket is invariant under p -> 1-p, so it reduces to the erasure
    tilt factor evaluated at min(p, 1-p).
    """
    if not (0.0 < p < 1.0):
        raise ValueError("source parameter must lie in (0, 1)")
    return log_delta_alpha(min(p, 1.0 - p), alpha) if p != 0.5 else 0.0


def binary_rd_upper(marton_exponent: float | Callable[[float, float], float],
                    p: float, interference: float,
                    alpha_grid: np.ndarray | None = None,
                    rate: float = 0.0, distortion: float = 0.0
                    ) -> BoundResult:
    """Upper bound for the interfered binary source.

    ``marton_exponent`` is the clean-source exponent, either a constant or
    a function of (rate, distortion); the bound is the order-infimum of
    a/(a-1)*F + A*ln(bracket(p, a))/(a-1).
    """
    f_val = (float(marton_exponent(rate, distortion))
             if callable(marton_exponent) else float(marton_exponent))
    if f_val < 0:
        raise ValueError("source exponent must be nonnegative")
    if interference < 0:
        raise ValueError("interference bound must be nonnegative")
    if not (0.0 < p < 1.0):
        raise ValueError("source parameter must lie strictly inside (0, 1)")
    if alpha_grid is None:
        alpha_grid = default_alpha_grid()
    grid = np.asarray(alpha_grid, dtype=float)
    grid = grid[grid > 1.0]
    if grid.size == 0:
        return BoundResult.infeasible()

    def objective(a: float) -> float:
        return (a * f_val + interference * _tilt_bracket_log(p, a)) / (a - 1.0)

    a_star, val = grid_min_refine(objective, grid)
    return BoundResult(value=val, alpha_star=a_star,
                       feasible_interval=(float(grid.min()), float(grid.max())))


def pair_sources_upper(joint: np.ndarray,
                       fx: Callable[[np.ndarray, float, float], float],
                       fy: Callable[[np.ndarray, float, float], float],
                       rate_x: float, rate_y: float,
                       dist_x: float, dist_y: float,
                       product_grid: Iterable[tuple[Sequence[float], Sequence[float]]],
                       alpha_grid: np.ndarray | None = None) -> BoundResult:
    """Upper bound for separate encoding of a correlated pair.

    Passes to independent reference sources (Q_X, Q_Y): the bound is the
    infimum over the supplied product grid and the order of

        a/(a-1) * [Fx(Q_X) + Fy(Q_Y)] + a * D_a(Q_X x Q_Y || P_XY).

    ``fx``/``fy`` map (marginal, rate, distortion) to the single-source
    exponents of the reference marginals.
    """
    joint = np.asarray(joint, dtype=float)
    if joint.ndim != 2:
        raise ValueError("joint must be a 2-D probability table")
    p_flat = DiscreteDist(joint.ravel())
    if alpha_grid is None:
        alpha_grid = default_alpha_grid()
    grid = np.asarray(alpha_grid, dtype=float)
    grid = grid[grid > 1.0]

    best = (math.inf, math.nan)
    best_aux: dict[str, float] = {}
    for k, (qx, qy) in enumerate(product_grid):
        qx, qy = _as_dist(qx), _as_dist(qy)
        if (len(qx), len(qy)) != joint.shape:
            raise ValueError("product-grid marginals do not match the joint shape")
        product = DiscreteDist(np.outer(qx.probs, qy.probs).ravel())
        f_sum = float(fx(qx.probs, rate_x, dist_x)) + float(fy(qy.probs, rate_y, dist_y))

        def objective(a: float) -> float:
            div = renyi_discrete(product, p_flat, a)
            if math.isinf(div):
                return math.inf
            return a / (a - 1.0) * f_sum + a * div

        try:
            a_star, val = grid_min_refine(objective, grid)
        except ValueError:
            continue
        if val < best[0]:
            best = (val, a_star)
            best_aux = {"pair_index": float(k)}
    if not math.isfinite(best[0]):
        return BoundResult.infeasible()
    return BoundResult(value=best[0], alpha_star=best[1],
                       feasible_interval=(float(grid.min()), float(grid.max())),
                       aux_params=best_aux)


def binary_entropy(q: float) -> float:
    """Entropy of a Bernoulli(q) in nats."""
    if not (0.0 <= q <= 1.0):
        raise ValueError("probability out of range")
    if q in (0.0, 1.0):
        return 0.0
    return -q * math.log(q) - (1.0 - q) * math.log1p(-q)


def binary_rd_rate(distortion: float, q: float) -> float:
    """Rate-distortion function of a Bernoulli(q) source under Hamming
    distortion: h(q) - h(d) for d < min(q, 1-q), zero otherwise."""
    if distortion < 0:
        raise ValueError("distortion must be nonnegative")
    if distortion < min(q, 1.0 - q):
        return binary_entropy(q) - binary_entropy(distortion)
    return 0.0


def _bernoulli_kl(q: float, p: float) -> float:
    return kl_discrete(DiscreteDist(np.array([q, 1.0 - q])),
                       DiscreteDist(np.array([p, 1.0 - p])))


def guessing_lower(rho: float, p: float, interference: float,
                   distortion: float,
                   qhat_grid: np.ndarray | None = None,
                   alpha_grid: np.ndarray | None = None) -> BoundResult:
    """Lower bound on the growth rate of the rho-th guessing moment.

    Supremum over the order and over Bernoulli reference sources qhat of

        rho*R(d, qhat) - a/(a-1)*D(qhat||p) - A*ln(bracket(p, a))/(a-1),

    clamped at zero (the moment of a positive guessing count cannot decay).
    """
    if not (rho > 0):
        raise ValueError("moment order must be positive")
    if not (0.0 < p < 1.0):
        raise ValueError("source parameter must lie in (0, 1)")
    if interference < 0:
        raise ValueError("interference bound must be nonnegative")
    if qhat_grid is None:
        qhat_grid = np.linspace(1e-4, 1.0 - 1e-4, 201)
    if alpha_grid is None:
        alpha_grid = default_alpha_grid()
    qhat_grid = np.asarray(qhat_grid, dtype=float)
    alpha_grid = np.asarray(alpha_grid, dtype=float)
    alpha_grid = alpha_grid[alpha_grid > 1.0]

    def objective(a: float, q: float) -> float:
        return (rho * binary_rd_rate(distortion, q)
                - a / (a - 1.0) * _bernoulli_kl(q, p)
                - interference * _tilt_bracket_log(p, a) / (a - 1.0))

    best = (-math.inf, math.nan, math.nan)
    for a in alpha_grid:
        for q in qhat_grid:
            val = objective(float(a), float(q))
            if val > best[0]:
                best = (val, float(a), float(q))
    raw, a_star, q_star = best
    if math.isfinite(raw):
        q_refined, v = golden_section_max(
            lambda q: objective(a_star, q),
            max(1e-9, q_star - 0.01), min(1.0 - 1e-9, q_star + 0.01))
        if v > raw:
            raw, q_star = v, q_refined
        a_refined, v = golden_section_max(
            lambda a: objective(a, q_star) if a > 1.0 else -math.inf,
            max(1.0 + 1e-12, a_star * 0.5), a_star * 2.0)
        if v > raw:
            raw, a_star = v, a_refined
    return BoundResult(value=max(0.0, raw), alpha_star=a_star,
                       feasible_interval=(float(alpha_grid.min()),
                                          float(alpha_grid.max())),
                       aux_params={"qhat": q_star, "raw": raw})
