"""Binary channel with hidden-Markov erasures.

The erasure pattern is driven by a function of an irreducible Markov
chain; the divergence rate between the erased and unerased channels is
controlled by the large deviations of the erasure frequency.  The scaled
cumulant generating function of that frequency is the log Perron root of
a tilted transition matrix, its Legendre transform is the rate function,
and the exponent bounds take a Varadhan supremum that convex duality
collapses back to a single Perron root evaluation.

The binary tilt factor delta(alpha) = p((1-p)/p)^a + (1-p)(p/(1-p))^a is
shared with the binary source-coding bounds and re-exported there.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np
from scipy.special import logsumexp as _lse

from .divergence import _as_order
from .exponents import BoundResult
from .kernels import log_power_radius
from .numerics import default_alpha_grid, golden_section_max, grid_max_refine, grid_min_refine

_ROW_SUM_TOL = 1e-12


def _is_irreducible(transition: np.ndarray) -> bool:
    d = transition.shape[0]
    reach = np.eye(d, dtype=bool) | (transition > 0)
    for _ in range(d - 1):
        reach = reach | (reach @ reach)
    return bool(reach.all())


@dataclass(frozen=True)
class MarkovErasure:
    """Hidden-Markov erasure scene.

    ``transition`` is the irreducible chain on {1..d}; ``labels`` maps each
    state to 0/1 where label 0 means the symbol is erased at that state;
    ``crossover`` is the binary noise parameter, at most 1/2.
    """

    transition: np.ndarray
    labels: np.ndarray
    crossover: float

    def __post_init__(self):
        pi = np.asarray(self.transition, dtype=float)
        if pi.ndim != 2 or pi.shape[0] != pi.shape[1]:
            raise ValueError("transition must be a square matrix")
        if np.any(pi < 0) or np.any(np.abs(pi.sum(axis=1) - 1.0) > _ROW_SUM_TOL):
            raise ValueError("transition rows must be probability vectors")
        if not _is_irreducible(pi):
            raise ValueError("transition matrix must be irreducible")
        labels = np.asarray(self.labels, dtype=int)
        if labels.shape != (pi.shape[0],) or not np.isin(labels, (0, 1)).all():
            raise ValueError("labels must be a 0/1 vector, one per state")
        if not (0.0 < self.crossover <= 0.5):
            raise ValueError("crossover must lie in (0, 1/2]")
        object.__setattr__(self, "transition", pi)
        object.__setattr__(self, "labels", labels)

    @property
    def d(self) -> int:
        return self.transition.shape[0]

    @property
    def fbar(self) -> np.ndarray:
        """Indicator of erasure states (label 0)."""
        return 1 - self.labels

    def stationary(self) -> np.ndarray:
        """Stationary distribution of the chain."""
        vals, vecs = np.linalg.eig(self.transition.T)
        k = int(np.argmin(np.abs(vals - 1.0)))
        pi = np.real(vecs[:, k])
        pi = np.abs(pi)
        return pi / pi.sum()

    def stationary_erasure_mean(self) -> float:
        return float(self.stationary() @ self.fbar)


@dataclass(frozen=True)
class RateFunction:
    """Large-deviations rate function of the erasure frequency."""

    evaluator: Callable[[float], float]
    lambda_range: tuple[float, float]

    def __call__(self, x: float) -> float:
        return self.evaluator(x)


def delta_alpha(p: float, a) -> float:
    """Binary tilt factor p((1-p)/p)^a + (1-p)(p/(1-p))^a, always >= 1."""
    if not (0.0 < p <= 0.5):
        raise ValueError("crossover must lie in (0, 1/2]")
    return math.exp(log_delta_alpha(p, a))


def log_delta_alpha(p: float, a) -> float:
    """ln delta(alpha), evaluated in log space (safe for large orders)."""
    if not (0.0 < p <= 0.5):
        raise ValueError("crossover must lie in (0, 1/2]")
    alpha = _as_order(a)
    u = math.log((1.0 - p) / p)
    val = float(_lse([math.log(p) + alpha * u, math.log1p(-p) - alpha * u]))
    return max(0.0, val)


def _log_tilted(transition: np.ndarray, fbar: np.ndarray, lam: float
                ) -> np.ndarray:
    """Entrywise log of the tilted matrix pi(i,j)*exp(lam*fbar(j))."""
    with np.errstate(divide="ignore"):
        logpi = np.log(transition)
    return logpi + lam * np.asarray(fbar, dtype=float)[None, :]


def _log_spectral_radius(log_mat: np.ndarray, tol: float = 1e-13,
                         max_iter: int = 100_000) -> float:
    """log of the Perron root of exp(log_mat), by power iteration in log
    domain on the diagonally shifted matrix (the shift breaks periodicity;
    the root shifts by exactly one)."""
    d = log_mat.shape[0]
    log_b = log_mat.copy()
    idx = np.arange(d)
    log_b[idx, idx] = np.logaddexp(log_b[idx, idx], 0.0)
    est = log_power_radius(log_b, tol, max_iter)
    # est = ln(1 + rho); undo the unit shift without losing precision
    if est > 33.0:
        return est + math.log1p(-math.exp(-est))
    if est <= 0.0:
        return -math.inf
    return math.log(math.expm1(est))


def log_perron_root(transition: np.ndarray, fbar: np.ndarray, lam: float
                    ) -> float:
    """ln of the Perron root of the tilted transition matrix.

    Stable for arbitrarily large |lam|: the tilt lives entirely in log
    space, so the cumulant generating function of the erasure frequency is
    computable far beyond the overflow range of the matrix entries.
    """
    transition = np.asarray(transition, dtype=float)
    if not _is_irreducible(transition):
        raise ValueError("transition matrix must be irreducible")
    return _log_spectral_radius(_log_tilted(transition, fbar, lam))


def perron_root(transition: np.ndarray, fbar: np.ndarray, lam: float) -> float:
    """Perron root (spectral radius) of pi(i,j)*exp(lam*fbar(j))."""
    return math.exp(log_perron_root(transition, fbar, lam))


def rate_function(me: MarkovErasure, x: float,
                  lambda_cap: float = 2.0 ** 20) -> float:
    """Rate function I(x) = sup over lam of [lam*x - ln rho(tilted chain)].

    The bracket for the concave inner problem grows until either the
    maximizer is interior, the boundary value has plateaued (frequencies at
    the edge of the achievable range), or the cap is hit with the value
    still increasing, which signals I(x) = +inf.
    """
    if not (0.0 <= x <= 1.0):
        raise ValueError("erasure frequency must lie in [0, 1]")
    log_mat = _log_tilted(me.transition, me.fbar, 0.0)
    fbar = me.fbar.astype(float)

    def h(lam: float) -> float:
        return lam * x - _log_spectral_radius(log_mat + lam * fbar[None, :])

    span = 1.0
    best = -math.inf
    while span <= lambda_cap:
        lam_star, val = golden_section_max(h, -span, span)
        if abs(lam_star) <= 0.95 * span:
            return max(0.0, val)
        if val - best <= 1e-11 * max(1.0, abs(val)):
            return max(0.0, val)
        best = val
        span *= 4.0
    return math.inf


def build_rate_function(me: MarkovErasure,
                        lambda_cap: float = 2.0 ** 20) -> RateFunction:
    return RateFunction(evaluator=lambda x: rate_function(me, x, lambda_cap),
                        lambda_range=(-lambda_cap, lambda_cap))


def varadhan_sup(me: MarkovErasure, a) -> float:
    """sup over x of [x*ln(delta(alpha)) - I(x)].

    By convex duality between the rate function and the scaled cumulant
    generating function this equals ln rho of the chain tilted by
    lam0 = ln delta(alpha); the grid Legendre transform stays available as
    a test oracle.
    """
    lam0 = log_delta_alpha(me.crossover, a)
    if lam0 == 0.0:
        return 0.0
    return log_perron_root(me.transition, me.fbar, lam0)


def erasure_bound_values(me: MarkovErasure, e_q: float, alpha: float
                         ) -> tuple[float, float]:
    """Per-order raw (lower, upper) bounds for the hidden-Markov scene."""
    alpha = _as_order(alpha)
    v = varadhan_sup(me, alpha)
    upper = alpha / (alpha - 1.0) * e_q + v / (alpha - 1.0)
    lower = (alpha - 1.0) / alpha * e_q - v / alpha
    return lower, upper


def erasure_bounds(me: MarkovErasure, e_q: float,
                   alpha_grid: np.ndarray | None = None
                   ) -> tuple[BoundResult, BoundResult]:
    """Optimized (lower, upper) exponent bounds for hidden-Markov erasure.

    The lower bound is clamped at zero with the raw optimum recorded in
    ``aux_params``.
    """
    if e_q < 0:
        raise ValueError("reference exponent must be nonnegative")
    if alpha_grid is None:
        alpha_grid = default_alpha_grid()
    grid = np.asarray(alpha_grid, dtype=float)
    grid = grid[grid > 1.0]
    if grid.size == 0:
        return BoundResult.infeasible(), BoundResult.infeasible()
    interval = (float(grid.min()), float(grid.max()))

    a_lo, raw = grid_max_refine(lambda a: erasure_bound_values(me, e_q, a)[0], grid)
    lower = BoundResult(value=max(0.0, raw), alpha_star=a_lo,
                        feasible_interval=interval, aux_params={"raw": raw})
    a_up, val = grid_min_refine(lambda a: erasure_bound_values(me, e_q, a)[1], grid)
    upper = BoundResult(value=val, alpha_star=a_up, feasible_interval=interval)
    return lower, upper


def bounded_fraction_values(z: float, p: float, e_q: float, alpha: float
                            ) -> tuple[float, float]:
    """Per-order raw (lower, upper) bounds when the erasure fraction is
    hard-limited by z."""
    alpha = _as_order(alpha)
    term = z * log_delta_alpha(p, alpha)
    upper = alpha / (alpha - 1.0) * e_q + term / (alpha - 1.0)
    lower = (alpha - 1.0) / alpha * e_q - term / alpha
    return lower, upper


def bounded_fraction_bounds(z: float, p: float, e_q: float,
                            alpha_grid: np.ndarray | None = None
                            ) -> tuple[BoundResult, BoundResult]:
    """Optimized (lower, upper) bounds under a hard bound z on the
    fraction of erasures."""
    if not (0.0 <= z <= 1.0):
        raise ValueError("erasure fraction must lie in [0, 1]")
    if e_q < 0:
        raise ValueError("reference exponent must be nonnegative")
    if alpha_grid is None:
        alpha_grid = default_alpha_grid()
    grid = np.asarray(alpha_grid, dtype=float)
    grid = grid[grid > 1.0]
    if grid.size == 0:
        return BoundResult.infeasible(), BoundResult.infeasible()
    interval = (float(grid.min()), float(grid.max()))

    a_lo, raw = grid_max_refine(
        lambda a: bounded_fraction_values(z, p, e_q, a)[0], grid)
    lower = BoundResult(value=max(0.0, raw), alpha_star=a_lo,
                        feasible_interval=interval, aux_params={"raw": raw})
    a_up, val = grid_min_refine(
        lambda a: bounded_fraction_values(z, p, e_q, a)[1], grid)
    upper = BoundResult(value=val, alpha_star=a_up, feasible_interval=interval)
    return lower, upper
