"""Exponent-level comparison bounds and the shared ratio-plus-linear optimizer.

The two-sided bound relates the decay exponent under a model of interest to
the exponent under a reference model through the divergence rate between
their n-block laws:

    (a-1)/a * E_*(Q) - (a-1)*Delta_a(P,Q)  <=  E_*(P)
    E^*(P)  <=  a/(a-1) * E^*(Q) + a*Delta_a(Q,P)

optimized over the order ``a`` on a grid with local golden refinement.
The recurring scalar problem min over a>1 of a/(a-1)*u + a*v has the
closed solution a* = sqrt(u/v)+1 with minimum (sqrt(u)+sqrt(v))^2; it is
exposed here and reused by several channel bounds.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Mapping, NamedTuple

import numpy as np

from .numerics import default_alpha_grid, grid_max_refine, grid_min_refine


@dataclass(frozen=True)
class ExponentPair:
    """Limsup exponent ``e_star`` and liminf exponent ``e_upper_star``.

    The limsup of the log-probability is at least its liminf, so after
    negation ``e_star <= e_upper_star``.
    """

    e_star: float
    e_upper_star: float

    def __post_init__(self):
        if not (0.0 <= self.e_star <= self.e_upper_star):
            raise ValueError(
                f"need 0 <= e_star <= e_upper_star, got ({self.e_star}, {self.e_upper_star})"
            )

    @classmethod
    def of(cls, e: float) -> "ExponentPair":
        """Pair for a model whose limit exists."""
        return cls(e, e)


@dataclass(frozen=True)
class DivergenceRate:
    """Normalized block-divergence rate as a function of the order.

    ``domain`` is the half-open interval (lo, hi] of orders on which the
    rate is finite.
    """

    rate: Callable[[float], float]
    domain: tuple[float, float] = (1.0, math.inf)

    def __call__(self, alpha: float) -> float:
        return float(self.rate(alpha))

    def contains(self, alpha: float) -> bool:
        lo, hi = self.domain
        return lo < alpha <= hi

    @classmethod
    def zero(cls) -> "DivergenceRate":
        return cls(lambda a: 0.0)


@dataclass(frozen=True)
class BoundResult:
    """An optimized bound value together with its optimizing parameters."""

    value: float
    alpha_star: float
    feasible_interval: tuple[float, float]
    feasible: bool = True
    aux_params: Mapping[str, float] = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {
            "value": self.value,
            "alpha_star": self.alpha_star,
            "feasible_interval": list(self.feasible_interval),
            "feasible": self.feasible,
            "aux_params": dict(self.aux_params),
        }

    @classmethod
    def infeasible(cls) -> "BoundResult":
        return cls(value=math.nan, alpha_star=math.nan,
                   feasible_interval=(math.nan, math.nan), feasible=False)


class RatioLinearOptimum(NamedTuple):
    """Solution of min over a>1 of a/(a-1)*u + a*v."""

    alpha_star: float
    minimum: float
    boundary: bool


def optimize_ratio_plus_linear(u: float, v: float) -> RatioLinearOptimum:
    """Closed-form minimizer of a/(a-1)*u + a*v over a in (1, inf).

    For u > 0 the minimum (sqrt(u)+sqrt(v))^2 is attained at
    a* = sqrt(u/v)+1.  For u = 0 the infimum v is approached at the
    boundary a -> 1+, reported with ``boundary=True``.
    """
    if not (v > 0):
        raise ValueError("linear coefficient v must be positive")
    if u < 0:
        raise ValueError("ratio coefficient u must be nonnegative")
    if u == 0.0:
        return RatioLinearOptimum(alpha_star=1.0, minimum=v, boundary=True)
    alpha_star = math.sqrt(u / v) + 1.0
    minimum = (math.sqrt(u) + math.sqrt(v)) ** 2
    return RatioLinearOptimum(alpha_star, minimum, False)


def perturbation_upper_bound(e_q_star: float, eps2_bar: float) -> float:
    """Second-moment perturbation bound (leading term only).

    For a reference model perturbed multiplicatively by a zero-mean field
    with second moment ``eps2_bar``, the liminf exponent is bounded by
    (sqrt(E^*(Q)) + sqrt(eps2_bar/2))^2 up to a cubic remainder that is
    not modeled here.
    """
    if eps2_bar < 0:
        raise ValueError("eps2_bar must be nonnegative")
    if e_q_star < 0:
        raise ValueError("reference exponent must be nonnegative")
    return (math.sqrt(e_q_star) + math.sqrt(eps2_bar / 2.0)) ** 2


def _feasible_subgrid(grid: np.ndarray, rate: DivergenceRate) -> np.ndarray:
    grid = np.asarray(grid, dtype=float)
    mask = np.array([a > 1.0 and rate.contains(a) for a in grid])
    return grid[mask]


def two_sided_exponent_bounds(e_q: ExponentPair, delta_pq: DivergenceRate,
                              delta_qp: DivergenceRate,
                              alpha_grid: np.ndarray | None = None
                              ) -> tuple[BoundResult, BoundResult]:
    """Optimized two-sided comparison of decay exponents.

    Returns (lower, upper) bounds on the exponent of the model of interest
    in terms of the reference exponents ``e_q`` and the divergence rates in
    the two directions.  The lower bound is clamped at zero since
    exponents are nonnegative; ``aux_params['raw']`` retains the
    pre-clamp value so a vacuous bound can be told apart from a zero one.
    """
    if alpha_grid is None:
        alpha_grid = default_alpha_grid()

    lower_grid = _feasible_subgrid(alpha_grid, delta_pq)
    upper_grid = _feasible_subgrid(alpha_grid, delta_qp)

    if lower_grid.size == 0:
        lower = BoundResult.infeasible()
    else:
        def f_low(a: float) -> float:
            return (a - 1.0) / a * e_q.e_star - (a - 1.0) * delta_pq(a)

        a_lo, raw = grid_max_refine(f_low, lower_grid)
        lower = BoundResult(
            value=max(0.0, raw), alpha_star=a_lo,
            feasible_interval=(float(lower_grid.min()), float(lower_grid.max())),
            aux_params={"raw": raw},
        )

    if upper_grid.size == 0:
        upper = BoundResult.infeasible()
    else:
        def f_up(a: float) -> float:
            return a / (a - 1.0) * e_q.e_upper_star + a * delta_qp(a)

        a_up, val = grid_min_refine(f_up, upper_grid)
        upper = BoundResult(
            value=val, alpha_star=a_up,
            feasible_interval=(float(upper_grid.min()), float(upper_grid.max())),
        )

    return lower, upper


def iterated_lower_bound(e_l: float, delta_beta: Callable[[float], float],
                         beta_grid: np.ndarray | None = None) -> BoundResult:
    """Lower bound after a second change of measure.

    Maximizes (b-1)/b * e_l - (b-1)*delta(b) over the order ``b`` of the
    second comparison step, clamped at zero.  Useful when the model of
    interest is reached from the reference in two hops (e.g. non-Gaussian
    noise related to the Gaussian model by a single-letter divergence).
    """
    if e_l < 0:
        raise ValueError("e_l must be nonnegative")
    if beta_grid is None:
        beta_grid = default_alpha_grid()
    beta_grid = np.asarray(beta_grid, dtype=float)
    beta_grid = beta_grid[beta_grid > 1.0]
    if beta_grid.size == 0:
        return BoundResult.infeasible()

    def f(b: float) -> float:
        d = float(delta_beta(b))
        if d < 0:
            raise ValueError("delta(beta) must be nonnegative")
        return (b - 1.0) / b * e_l - (b - 1.0) * d

    b_star, raw = grid_max_refine(f, beta_grid)
    return BoundResult(
        value=max(0.0, raw), alpha_star=b_star,
        feasible_interval=(float(beta_grid.min()), float(beta_grid.max())),
        aux_params={"raw": raw},
    )
