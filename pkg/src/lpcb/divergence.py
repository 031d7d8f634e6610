"""Renyi and KL divergences, the probability comparison bounds, and their
equality achievers.

Conventions
-----------
The divergence of order ``alpha > 1`` carries the ``1/(alpha*(alpha-1))``
normalization:

    D_a(p || q) = ln( sum_i p_i^a q_i^(1-a) ) / (a*(a-1))

so that ``alpha*D_alpha`` is the familiar order-``alpha`` Renyi divergence
and ``D_alpha -> KL`` as ``alpha -> 1``.  Absolute continuity is checked
exactly on the zero pattern: a point with ``p_i > 0`` and ``q_i == 0``
makes the divergence ``+inf``, which is a representable value here, not an
error.  Sums are evaluated in log space so that orders up to the ~1e3
range used by the optimizer sweeps do not overflow.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple, Sequence

import numpy as np

from .errors import FeasibilityError
from .numerics import logsumexp

#: slack used by the boolean "holds" verdicts of the comparison bounds
HOLDS_TOL = 1e-12

_PROB_SUM_TOL = 1e-12


@dataclass(frozen=True)
class DiscreteDist:
    """Finite probability vector with an exact support mask.

    probs must be nonnegative and sum to 1 within 1e-12; the support is the
    exact set of strictly positive entries.
    """

    probs: np.ndarray
    labels: tuple[str, ...] | None = None

    def __post_init__(self):
        probs = np.asarray(self.probs, dtype=float)
        if probs.ndim != 1 or probs.size == 0:
            raise ValueError("probs must be a nonempty 1-D vector")
        if np.any(probs < 0) or not np.all(np.isfinite(probs)):
            raise ValueError("probs must be finite and nonnegative")
        if abs(float(probs.sum()) - 1.0) > _PROB_SUM_TOL:
            raise ValueError(f"probs sum to {probs.sum()!r}, not 1")
        if self.labels is not None and len(self.labels) != probs.size:
            raise ValueError("labels length does not match probs")
        object.__setattr__(self, "probs", probs)

    def __len__(self) -> int:
        return self.probs.size

    @property
    def support(self) -> np.ndarray:
        """Indices of strictly positive entries."""
        return np.flatnonzero(self.probs > 0)

    def conditional(self, event: np.ndarray) -> "DiscreteDist":
        """Distribution conditioned on a boolean event mask."""
        event = np.asarray(event, dtype=bool)
        if event.shape != self.probs.shape:
            raise ValueError("event mask shape mismatch")
        mass = float(self.probs[event].sum())
        if mass <= 0:
            raise ValueError("conditioning event has zero probability")
        out = np.where(event, self.probs, 0.0) / mass
        return DiscreteDist(out, self.labels)


@dataclass(frozen=True)
class DivergenceOrder:
    """Order of a Renyi divergence; strictly greater than 1.

    Order one is represented only by the dedicated KL operation.
    """

    alpha: float

    def __post_init__(self):
        a = float(self.alpha)
        if not math.isfinite(a) or a <= 1.0:
            raise ValueError(f"divergence order must satisfy alpha > 1, got {a}")
        object.__setattr__(self, "alpha", a)

    def __float__(self) -> float:
        return self.alpha


@dataclass(frozen=True)
class GaussianScalar:
    """Scalar Gaussian with strictly positive variance."""

    mean: float
    variance: float

    def __post_init__(self):
        if not (self.variance > 0):
            raise ValueError("variance must be positive")

    def log_density(self, y: np.ndarray) -> np.ndarray:
        y = np.asarray(y, dtype=float)
        return (-0.5 * math.log(2.0 * math.pi * self.variance)
                - (y - self.mean) ** 2 / (2.0 * self.variance))


class LpcbCheck(NamedTuple):
    """One evaluated comparison inequality: lhs <= rhs up to HOLDS_TOL."""

    lhs: float
    rhs: float
    holds: bool


def _as_dist(p) -> DiscreteDist:
    return p if isinstance(p, DiscreteDist) else DiscreteDist(np.asarray(p, dtype=float))


def _as_order(a) -> float:
    alpha = float(a)
    if not math.isfinite(alpha) or alpha <= 1.0:
        raise ValueError(f"divergence order must satisfy alpha > 1, got {alpha}")
    return alpha


def _check_same_length(p: DiscreteDist, q: DiscreteDist):
    if len(p) != len(q):
        raise ValueError(f"dimension mismatch: {len(p)} vs {len(q)}")


def renyi_discrete(p, q, a) -> float:
    """Order-``a`` divergence of ``p`` from ``q`` (normalized by 1/(a(a-1))).

    Returns ``+inf`` when ``p`` is not absolutely continuous with respect
    to ``q``.  Entries with ``p_i == 0`` contribute nothing regardless of
    ``q_i``.
    """
    p, q = _as_dist(p), _as_dist(q)
    alpha = _as_order(a)
    _check_same_length(p, q)
    sup = p.probs > 0
    if np.any(q.probs[sup] == 0):
        return math.inf
    terms = alpha * np.log(p.probs[sup]) + (1.0 - alpha) * np.log(q.probs[sup])
    val = logsumexp(terms) / (alpha * (alpha - 1.0))
    return max(0.0, val)


def kl_discrete(p, q) -> float:
    """KL divergence sum(p*ln(p/q)) with 0*ln0 = 0; +inf off support."""
    p, q = _as_dist(p), _as_dist(q)
    _check_same_length(p, q)
    sup = p.probs > 0
    if np.any(q.probs[sup] == 0):
        return math.inf
    val = float(np.sum(p.probs[sup] * np.log(p.probs[sup] / q.probs[sup])))
    return max(0.0, val)


def renyi_gaussian_scaled_shift(xi: float, sigma2: float, s: float, a) -> float:
    """Divergence of N(x, sigma2/s) from N(x+xi, sigma2), any x.

    Valid for ``s > 1 - 1/alpha`` (equivalently ``1 + alpha*(s-1) > 0``);
    outside that region the divergence is infinite and a
    :class:`FeasibilityError` is raised.
    """
    alpha = _as_order(a)
    if not (sigma2 > 0):
        raise ValueError("sigma2 must be positive")
    if not (s > 0):
        raise ValueError("scale s must be positive")
    denom = 1.0 + alpha * (s - 1.0)
    if denom <= 0:
        raise FeasibilityError(
            f"divergence is infinite for s <= 1 - 1/alpha (s={s}, alpha={alpha})"
        )
    return (math.log(s) / (2.0 * (alpha - 1.0))
            - math.log(denom) / (2.0 * alpha * (alpha - 1.0))
            + s * xi * xi / (2.0 * sigma2 * denom))


def gaussian_product_integral(u: float, v: float, a: float, b: float) -> float:
    """integral of exp(-a(y-u)^2 - b(y-v)^2) dy over the real line.

    Equals sqrt(pi/(a+b)) * exp(-a*b*(u-v)^2/(a+b)) whenever a+b > 0.
    """
    if not (a + b > 0):
        raise FeasibilityError(f"need a + b > 0, got {a + b}")
    return math.sqrt(math.pi / (a + b)) * math.exp(-a * b * (u - v) ** 2 / (a + b))


def _safe_log(x: float) -> float:
    if x < 0:
        raise ValueError(f"probability out of range: {x}")
    return math.log(x) if x > 0 else -math.inf


def lpcb_event(p_event: float, q_event: float, div_pq: float, a) -> LpcbCheck:
    """Probability comparison bound for one event.

    Checks ln(P(A))/(a-1) <= ln(Q(A))/a + D_a(P||Q).  With the convention
    ln 0 = -inf the inequality is vacuous when P(A) = 0 and binding on the
    right when Q(A) = 0 (unless the divergence is infinite).
    """
    alpha = _as_order(a)
    if not (-1e-12 <= p_event <= 1.0 + 1e-12
            and -1e-12 <= q_event <= 1.0 + 1e-12):
        raise ValueError("event probabilities must lie in [0, 1]")
    p_event = min(max(p_event, 0.0), 1.0)
    q_event = min(max(q_event, 0.0), 1.0)
    if not (div_pq >= 0.0):
        raise ValueError("divergence must be nonnegative")
    lhs = _safe_log(p_event) / (alpha - 1.0)
    log_q = _safe_log(q_event)
    if math.isinf(div_pq):
        rhs = math.inf
    else:
        rhs = log_q / alpha + div_pq
    return LpcbCheck(lhs, rhs, lhs <= rhs + HOLDS_TOL)


def lpcb_functional(g, p, q, a) -> LpcbCheck:
    """Risk-sensitive functional comparison bound for a finite payoff g.

    Checks ln(E_p e^{(a-1)g})/(a-1) <= ln(E_q e^{a g})/a + D_a(p||q).
    """
    p, q = _as_dist(p), _as_dist(q)
    alpha = _as_order(a)
    g = np.asarray(g, dtype=float)
    if g.shape != p.probs.shape:
        raise ValueError("payoff vector shape mismatch")
    if not np.all(np.isfinite(g)):
        raise ValueError("payoff vector must be finite")
    _check_same_length(p, q)
    sup_p = p.probs > 0
    sup_q = q.probs > 0
    lhs = logsumexp((alpha - 1.0) * g[sup_p] + np.log(p.probs[sup_p])) / (alpha - 1.0)
    div = renyi_discrete(p, q, alpha)
    if math.isinf(div):
        rhs = math.inf
    else:
        rhs = logsumexp(alpha * g[sup_q] + np.log(q.probs[sup_q])) / alpha + div
    return LpcbCheck(lhs, rhs, lhs <= rhs + HOLDS_TOL)


def duality_maximizer(g, q, a) -> DiscreteDist:
    """The measure attaining the variational dual of the exponential moment.

    Returns the tilted measure p with p_i proportional to exp(g_i)*q_i.
    Substituting it into :func:`lpcb_functional` turns the inequality into
    an equality; under the 1/(a(a-1)) divergence normalization used here
    the maximizer does not depend on the order (and reduces to the Gibbs
    measure of the classical exponential-integral duality as a -> 1).
    """
    q = _as_dist(q)
    _as_order(a)
    g = np.asarray(g, dtype=float)
    if g.shape != q.probs.shape:
        raise ValueError("payoff vector shape mismatch")
    if q.support.size == 0:
        raise ValueError("q has empty support")
    logw = np.full(len(q), -math.inf)
    sup = q.probs > 0
    logw[sup] = g[sup] + np.log(q.probs[sup])
    norm = logsumexp(logw[sup])
    out = np.zeros(len(q))
    out[sup] = np.exp(logw[sup] - norm)
    out /= out.sum()
    return DiscreteDist(out, q.labels)


def equality_achiever_event(p, g, a) -> DiscreteDist:
    """Reference measure that makes the power-mean comparison bound tight.

    For a nonnegative weight vector g with sum(g*p) > 0 the measure
    q_i = p_i / (g_i * Z) on the common support of p and g achieves
    equality (for every order) in the bound relating
    ln(sum g^{a-1} p)/(a-1) to ln(sum g^a q)/a + D_a(p||q).
    """
    p = _as_dist(p)
    _as_order(a)
    g = np.asarray(g, dtype=float)
    if g.shape != p.probs.shape:
        raise ValueError("weight vector shape mismatch")
    if np.any(g < 0) or not np.all(np.isfinite(g)):
        raise ValueError("weights must be finite and nonnegative")
    if not float(np.sum(g * p.probs)) > 0:
        raise ValueError("weights must have positive mean under p")
    sup = (p.probs > 0) & (g > 0)
    if not sup.any():
        raise ValueError("supports of p and g do not intersect")
    out = np.zeros(len(p))
    out[sup] = p.probs[sup] / g[sup]
    out /= out.sum()
    return DiscreteDist(out, p.labels)


def power_functional_check(g_weights, p, q, a) -> LpcbCheck:
    """Comparison bound in its nonnegative-weight form.

    Evaluates ln(sum g^{a-1} p)/(a-1) against ln(sum g^a q)/a + D_a(p||q)
    for g >= 0 (the log-payoff form with g replaced by exp of itself).
    Used to verify :func:`equality_achiever_event`.
    """
    p, q = _as_dist(p), _as_dist(q)
    alpha = _as_order(a)
    g = np.asarray(g_weights, dtype=float)
    if np.any(g < 0):
        raise ValueError("weights must be nonnegative")
    with np.errstate(divide="ignore"):
        logg = np.log(g)
    sup_p = (p.probs > 0) & (g > 0)
    sup_q = (q.probs > 0) & (g > 0)
    lhs = logsumexp((alpha - 1.0) * logg[sup_p] + np.log(p.probs[sup_p])) / (alpha - 1.0)
    div = renyi_discrete(p, q, alpha)
    if math.isinf(div):
        rhs = math.inf
    else:
        rhs = logsumexp(alpha * logg[sup_q] + np.log(q.probs[sup_q])) / alpha + div
    return LpcbCheck(lhs, rhs, lhs <= rhs + HOLDS_TOL)


def uniform(n: int, labels: Sequence[str] | None = None) -> DiscreteDist:
    """Uniform distribution on n points."""
    if n < 1:
        raise ValueError("n must be positive")
    return DiscreteDist(np.full(n, 1.0 / n),
                        tuple(labels) if labels is not None else None)
