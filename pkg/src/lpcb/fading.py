"""Fading-channel exponent bounds driven by the spectral density of the
fading process.

Discrete time: for a stationary Gaussian fading process with spectral
density S(w) on [0, 2pi] and tilt c(alpha) = alpha*(alpha-1)*amp^2/(2
sigma^2), the divergence rate between the faded and unfaded channels is
controlled by the log-integral of 1 - 2*c*S(w), finite while
2*c*sup S < 1.  Continuous time replaces the integral by one over the
whole line with 1 - 4*pi*c*S(w).  Autoregressive fading admits a residue
closed form; Ornstein-Uhlenbeck and flat band-limited spectra have closed
integrals, and the OU case also has closed-form optimal orders.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple, Union

import numpy as np

from .divergence import _as_order
from .errors import FeasibilityError
from .exponents import BoundResult
from .numerics import (composite_gauss_legendre, default_alpha_grid,
                       grid_max_refine, grid_min_refine)


@dataclass(frozen=True)
class ArSpectrum:
    """First-order autoregressive fading, theta_t = a*theta_{t-1} + b*W_t.

    Spectral density b^2 / (1 - 2a cos w + a^2) on [0, 2pi); requires
    |a| < 1 for stationarity.  Discrete-time model.
    """

    a: float
    b: float

    def __post_init__(self):
        if not (abs(self.a) < 1.0):
            raise ValueError("AR coefficient must satisfy |a| < 1")
        if not (self.b >= 0.0):
            raise ValueError("innovation scale must be nonnegative")

    def density(self, omega: np.ndarray) -> np.ndarray:
        omega = np.asarray(omega, dtype=float)
        return self.b ** 2 / (1.0 - 2.0 * self.a * np.cos(omega) + self.a ** 2)

    def sup(self) -> float:
        return self.b ** 2 / (1.0 - abs(self.a)) ** 2

    @property
    def variance(self) -> float:
        return self.b ** 2 / (1.0 - self.a ** 2)


@dataclass(frozen=True)
class FlatSpectrum:
    """Band-limited flat spectrum: sigma0 on [-B, B], zero outside.

    Continuous-time model.
    """

    sigma0: float
    bandwidth: float

    def __post_init__(self):
        if not (self.sigma0 > 0 and self.bandwidth > 0):
            raise ValueError("sigma0 and bandwidth must be positive")

    def density(self, omega: np.ndarray) -> np.ndarray:
        omega = np.asarray(omega, dtype=float)
        return np.where(np.abs(omega) <= self.bandwidth, self.sigma0, 0.0)

    def sup(self) -> float:
        return self.sigma0


@dataclass(frozen=True)
class OuSpectrum:
    """Stationary Ornstein-Uhlenbeck fading, dtheta = -a theta dt + b dW.

    Spectral density (1/pi) * b^2 / (a^2 + w^2).  Continuous-time model.
    """

    a: float
    b: float

    def __post_init__(self):
        if not (self.a > 0 and self.b > 0):
            raise ValueError("OU parameters must be positive")

    def density(self, omega: np.ndarray) -> np.ndarray:
        omega = np.asarray(omega, dtype=float)
        return self.b ** 2 / (math.pi * (self.a ** 2 + omega ** 2))

    def sup(self) -> float:
        return self.b ** 2 / (math.pi * self.a ** 2)


@dataclass(frozen=True)
class TabulatedSpectrum:
    """Sampled spectral density, linearly interpolated, zero outside its
    sampled range.  ``periodic=True`` marks a discrete-time density on
    [0, 2pi]."""

    omega: np.ndarray
    values: np.ndarray
    periodic: bool = False

    def __post_init__(self):
        omega = np.asarray(self.omega, dtype=float)
        values = np.asarray(self.values, dtype=float)
        if omega.ndim != 1 or omega.size < 2 or omega.shape != values.shape:
            raise ValueError("need matching 1-D omega/value samples")
        if np.any(np.diff(omega) <= 0):
            raise ValueError("omega samples must be strictly increasing")
        if np.any(values < 0):
            raise ValueError("spectral density must be nonnegative")
        object.__setattr__(self, "omega", omega)
        object.__setattr__(self, "values", values)

    def density(self, omega: np.ndarray) -> np.ndarray:
        omega = np.asarray(omega, dtype=float)
        return np.interp(omega, self.omega, self.values, left=0.0, right=0.0)

    def sup(self) -> float:
        return float(self.values.max())


SpectralModel = Union[ArSpectrum, FlatSpectrum, OuSpectrum, TabulatedSpectrum]


@dataclass(frozen=True)
class FadingScene:
    """Bounded-amplitude input, Gaussian noise, and a fading spectrum.

    ``e_q`` is the caller-supplied exponent of the unfaded reference
    channel; it is not bound to any particular code family here.
    """

    amplitude: float
    noise_var: float
    e_q: float
    spectral: SpectralModel

    def __post_init__(self):
        if not (self.amplitude > 0 and self.noise_var > 0):
            raise ValueError("amplitude and noise variance must be positive")
        if self.e_q < 0:
            raise ValueError("reference exponent must be nonnegative")

    @property
    def p(self) -> float:
        """Tilt strength amp^2 / (2 sigma^2)."""
        return self.amplitude ** 2 / (2.0 * self.noise_var)

    def c(self, alpha: float) -> float:
        return alpha * (alpha - 1.0) * self.p


def _alpha_endpoint(k: float) -> float:
    """Positive root of alpha*(alpha-1) = k (right end of feasibility)."""
    if not math.isfinite(k):
        return math.inf
    return 0.5 * (1.0 + math.sqrt(1.0 + 4.0 * k))


# ---------------------------------------------------------------------------
# Discrete time
# ---------------------------------------------------------------------------


def dt_spectral_log_integral(spectral: SpectralModel, c: float,
                             panels: int = 128) -> float:
    """integral over [0, 2pi] of ln(1 - 2c S(w)) dw by composite quadrature."""
    if 2.0 * c * spectral.sup() >= 1.0:
        raise FeasibilityError("2*c*sup(S) must be below 1")
    if c == 0.0:
        return 0.0
    return composite_gauss_legendre(
        lambda w: np.log1p(-2.0 * c * spectral.density(w)),
        0.0, 2.0 * math.pi, panels=panels)


def dt_feasible_alpha_max(scene: FadingScene) -> float:
    """Largest order with 2*c(alpha)*sup(S) < 1 (open right endpoint)."""
    s_max = scene.spectral.sup()
    if s_max == 0.0:
        return math.inf
    return _alpha_endpoint(1.0 / (2.0 * scene.p * s_max))


def dt_bound_values(scene: FadingScene, alpha: float
                    ) -> tuple[float, float, bool]:
    """Per-order (lower, upper, feasible) for the discrete-time channel.

    Values are raw (the lower bound is not clamped here).
    """
    alpha = _as_order(alpha)
    c = scene.c(alpha)
    if 2.0 * c * scene.spectral.sup() >= 1.0:
        return math.nan, math.nan, False
    j = dt_spectral_log_integral(scene.spectral, c)
    upper = alpha / (alpha - 1.0) * scene.e_q - j / (4.0 * math.pi * (alpha - 1.0))
    lower = (alpha - 1.0) / alpha * scene.e_q + j / (4.0 * math.pi * alpha)
    return lower, upper, True


def _optimize_band(lower_at, upper_at, grid: np.ndarray,
                   interval: tuple[float, float]
                   ) -> tuple[BoundResult, BoundResult]:
    """Shared grid-and-refine optimization of a (lower, upper) bound pair."""
    if grid.size == 0:
        return BoundResult.infeasible(), BoundResult.infeasible()
    a_lo, raw = grid_max_refine(lower_at, grid)
    lower = BoundResult(value=max(0.0, raw), alpha_star=a_lo,
                        feasible_interval=interval, aux_params={"raw": raw})
    a_up, val = grid_min_refine(upper_at, grid)
    upper = BoundResult(value=val, alpha_star=a_up, feasible_interval=interval)
    return lower, upper


def dt_fading_bounds(scene: FadingScene,
                     alpha_grid: np.ndarray | None = None
                     ) -> tuple[BoundResult, BoundResult]:
    """Optimized (lower, upper) exponent bounds for discrete-time fading.

    The grid is filtered to the feasibility region 2*c(alpha)*sup(S) < 1;
    the analytic right endpoint of that region is exposed through
    ``feasible_interval``.  The lower bound is clamped at zero with the
    raw value kept in ``aux_params``.
    """
    if alpha_grid is None:
        alpha_grid = default_alpha_grid()
    alpha_grid = np.asarray(alpha_grid, dtype=float)
    alpha_end = dt_feasible_alpha_max(scene)
    grid = alpha_grid[(alpha_grid > 1.0) & (alpha_grid < alpha_end)]
    interval = (1.0, alpha_end)

    def lower_at(a: float) -> float:
        lo, _, ok = dt_bound_values(scene, a)
        return lo if ok else -math.inf

    def upper_at(a: float) -> float:
        _, up, ok = dt_bound_values(scene, a)
        return up if ok else math.inf

    return _optimize_band(lower_at, upper_at, grid, interval)


# ---------------------------------------------------------------------------
# Autoregressive closed form
# ---------------------------------------------------------------------------


class ArBound(NamedTuple):
    upper: float
    lower: float
    xi: float
    feasible: bool


def ar_feasibility(a: float, b: float, c: float) -> bool:
    """Residue form is valid iff (1-|a|)^2 > 2*c*b^2."""
    return (1.0 - abs(a)) ** 2 > 2.0 * c * b ** 2


def ar_log_argument(a: float, b: float, c: float) -> float:
    """Argument of the logarithm in the AR closed form.

    Equals (xi - sqrt(xi^2 - 4a^2)) / (2a^2) with xi = 1 - 2cb^2 + a^2;
    the a -> 0 limit is 1/(1 - 2cb^2).  The retained root r2 of the
    factorization satisfies |r2| < 1 under feasibility; this is guarded
    numerically.
    """
    if not ar_feasibility(a, b, c):
        raise FeasibilityError("(1-|a|)^2 must exceed 2*c*b^2")
    xi = 1.0 - 2.0 * c * b ** 2 + a ** 2
    if a == 0.0:
        return 1.0 / (1.0 - 2.0 * c * b ** 2)
    disc = xi * xi - 4.0 * a * a
    root = xi - math.sqrt(disc)
    r2 = root / (2.0 * a)
    if not (abs(r2) < 1.0):
        raise ArithmeticError(f"AR root selection failed: |r2| = {abs(r2)} >= 1")
    return root / (2.0 * a * a)


def ar_residue_log_term(a: float, b: float, c: float) -> float:
    """(1/(4 pi)) * integral over [0, 2pi] of ln(1 - 2c S_ar(w)) dw, in
    closed form via the residue factorization."""
    return -0.5 * math.log(ar_log_argument(a, b, c))


def ar_closed_form(scene: FadingScene, alpha) -> ArBound:
    """Closed-form discrete-time bounds for AR fading at one order.

    Returns raw upper/lower values, the auxiliary quantity
    xi = 1 - 2cb^2 + a^2, and the feasibility verdict for this order.
    """
    alpha = _as_order(alpha)
    if not isinstance(scene.spectral, ArSpectrum):
        raise ValueError("ar_closed_form requires an AR spectral model")
    a, b = scene.spectral.a, scene.spectral.b
    c = scene.c(alpha)
    xi = 1.0 - 2.0 * c * b ** 2 + a ** 2
    if not ar_feasibility(a, b, c):
        return ArBound(math.nan, math.nan, xi, False)
    log_term = math.log(ar_log_argument(a, b, c))
    upper = alpha / (alpha - 1.0) * scene.e_q + log_term / (2.0 * (alpha - 1.0))
    lower = (alpha - 1.0) / alpha * scene.e_q - log_term / (2.0 * alpha)
    return ArBound(upper, lower, xi, True)


def ar_feasible_alpha_max(scene: FadingScene) -> float:
    """Right endpoint of the feasible order range for AR fading."""
    if not isinstance(scene.spectral, ArSpectrum):
        raise ValueError("requires an AR spectral model")
    a, b = scene.spectral.a, scene.spectral.b
    if b == 0.0:
        return math.inf
    return _alpha_endpoint((1.0 - abs(a)) ** 2 / (2.0 * scene.p * b ** 2))


def small_fading_upper(scene: FadingScene, delta: float,
                       alpha_grid: np.ndarray | None = None) -> BoundResult:
    """Second-order upper bound for weak discrete-time fading.

    Valid on orders with 2*c(alpha)*sup(S) <= delta; uses the fading
    variance r0 and the quadratic log-inequality constant
    kappa = 1/(2*(1-delta)^2).
    """
    if not (0.0 < delta < 1.0):
        raise ValueError("delta must lie in (0, 1)")
    if isinstance(scene.spectral, ArSpectrum):
        r0 = scene.spectral.variance
    elif isinstance(scene.spectral, TabulatedSpectrum) and scene.spectral.periodic:
        r0 = composite_gauss_legendre(scene.spectral.density,
                                      0.0, 2.0 * math.pi) / (2.0 * math.pi)
    else:
        raise ValueError("small-fading bound applies to discrete-time spectra")
    kappa = 1.0 / (2.0 * (1.0 - delta) ** 2)
    s_max = scene.spectral.sup()
    if alpha_grid is None:
        alpha_grid = default_alpha_grid()
    alpha_grid = np.asarray(alpha_grid, dtype=float)
    if s_max == 0.0:
        alpha_end = math.inf
    else:
        alpha_end = _alpha_endpoint(delta / (2.0 * scene.p * s_max))
    grid = alpha_grid[(alpha_grid > 1.0) & (alpha_grid <= alpha_end)]
    if grid.size == 0:
        return BoundResult.infeasible()

    def objective(a: float) -> float:
        if a <= 1.0 or 2.0 * scene.c(a) * s_max > delta:
            return math.inf
        return (a / (a - 1.0) * scene.e_q
                + a * scene.amplitude ** 2 * r0 / (2.0 * scene.noise_var)
                + kappa * delta ** 2 / (2.0 * (a - 1.0)))

    a_star, val = grid_min_refine(objective, grid)
    return BoundResult(value=val, alpha_star=a_star,
                       feasible_interval=(1.0, alpha_end),
                       aux_params={"r0": r0, "kappa": kappa})


# ---------------------------------------------------------------------------
# Continuous time
# ---------------------------------------------------------------------------


def ou_spectral_log_integral(a: float, b: float, c: float) -> float:
    """Closed form -(1/(4 pi)) integral ln(1 - 4 pi c S_ou) dw
    = a/2 - sqrt(a^2 - 4 b^2 c)/2, valid for c < a^2/(4 b^2)."""
    if not (a > 0 and b > 0):
        raise ValueError("OU parameters must be positive")
    disc = a * a - 4.0 * b * b * c
    if disc < 0:
        raise FeasibilityError("requires c < a^2/(4 b^2)")
    return 0.5 * a - 0.5 * math.sqrt(disc)


def ct_spectral_log_integral(spectral: SpectralModel, c: float,
                             panels: int = 128) -> float:
    """(1/(4 pi)) * integral over R of ln(1 - 4 pi c S(w)) dw.

    Flat spectra integrate exactly; OU uses symmetric quadrature on
    [0, 1e3*max(a,1)] plus the analytic first-order tail (the residual
    beyond the correction is O(T^-3)); tabulated spectra integrate over
    their sampled range.
    """
    if 4.0 * math.pi * c * spectral.sup() >= 1.0:
        raise FeasibilityError("4*pi*c*sup(S) must be below 1")
    if c == 0.0:
        return 0.0
    if isinstance(spectral, FlatSpectrum):
        return (spectral.bandwidth / (2.0 * math.pi)
                * math.log1p(-4.0 * math.pi * c * spectral.sigma0))
    if isinstance(spectral, OuSpectrum):
        t_cut = 1e3 * max(spectral.a, 1.0)
        w_mid = min(50.0 * max(spectral.a, 1.0), t_cut)

        def integrand(w):
            return np.log1p(-4.0 * math.pi * c * spectral.density(w))

        # the integrand concentrates on the scale of a; give the head its
        # own panels before the slowly decaying tail
        body = composite_gauss_legendre(integrand, 0.0, w_mid, panels=panels)
        body += composite_gauss_legendre(integrand, w_mid, t_cut, panels=panels)
        tail_mass = (2.0 * spectral.b ** 2 / (math.pi * spectral.a)
                     * (math.pi / 2.0 - math.atan(t_cut / spectral.a)))
        return 2.0 * body / (4.0 * math.pi) - c * tail_mass
    if isinstance(spectral, TabulatedSpectrum):
        body = composite_gauss_legendre(
            lambda w: np.log1p(-4.0 * math.pi * c * spectral.density(w)),
            float(spectral.omega[0]), float(spectral.omega[-1]), panels=panels)
        return body / (4.0 * math.pi)
    raise ValueError("continuous-time integral needs a Flat/OU/Tabulated model")


def ct_feasible_alpha_max(scene: FadingScene) -> float:
    s_max = scene.spectral.sup()
    if s_max == 0.0:
        return math.inf
    return _alpha_endpoint(1.0 / (4.0 * math.pi * scene.p * s_max))


def ct_bound_values(scene: FadingScene, alpha: float
                    ) -> tuple[float, float, bool]:
    """Per-order (lower, upper, feasible) for the continuous-time channel."""
    alpha = _as_order(alpha)
    c = scene.c(alpha)
    if 4.0 * math.pi * c * scene.spectral.sup() >= 1.0:
        return math.nan, math.nan, False
    integral = ct_spectral_log_integral(scene.spectral, c)
    upper = alpha / (alpha - 1.0) * scene.e_q - integral / (alpha - 1.0)
    lower = (alpha - 1.0) / alpha * scene.e_q + integral / alpha
    return lower, upper, True


def ct_fading_bounds(scene: FadingScene,
                     alpha_grid: np.ndarray | None = None
                     ) -> tuple[BoundResult, BoundResult]:
    """Optimized (lower, upper) exponent bounds for continuous-time fading.

    Requires p = amp^2/(2 sigma^2) < 1/(4 pi sup(S)) so that at least a
    neighbourhood of alpha = 1 is feasible.
    """
    s_max = scene.spectral.sup()
    if s_max > 0 and scene.p >= 1.0 / (4.0 * math.pi * s_max):
        raise FeasibilityError(
            "requires amp^2/(2*sigma^2) < 1/(4*pi*sup(S))")
    if alpha_grid is None:
        alpha_grid = default_alpha_grid()
    alpha_grid = np.asarray(alpha_grid, dtype=float)
    alpha_end = ct_feasible_alpha_max(scene)
    grid = alpha_grid[(alpha_grid > 1.0) & (alpha_grid < alpha_end)]
    interval = (1.0, alpha_end)

    def lower_at(a: float) -> float:
        lo, _, ok = ct_bound_values(scene, a)
        return lo if ok else -math.inf

    def upper_at(a: float) -> float:
        _, up, ok = ct_bound_values(scene, a)
        return up if ok else math.inf

    return _optimize_band(lower_at, upper_at, grid, interval)


# ---------------------------------------------------------------------------
# Ornstein-Uhlenbeck closed-form optimum
# ---------------------------------------------------------------------------


class OuOptimalBounds(NamedTuple):
    e_upper: float
    alpha_star: float
    e_lower: float
    alpha_hat: float
    alpha_max: float


def ou_upper_curve(a: float, b: float, p: float, e_q: float,
                   alpha: float) -> float:
    """Upper bound curve with the alpha^2-relaxed OU integral, valid on
    (1, a/(2 b sqrt(p)))."""
    gamma2 = 2.0 * b * math.sqrt(p)
    disc = a * a - gamma2 ** 2 * alpha ** 2
    if alpha <= 1.0 or disc < 0:
        return math.inf
    return (2.0 * alpha * e_q + a - math.sqrt(disc)) / (2.0 * (alpha - 1.0))


def ou_lower_curve(a: float, b: float, p: float, e_q: float,
                   alpha: float) -> float:
    """Lower bound curve matching :func:`ou_upper_curve` (raw, unclamped)."""
    gamma2 = 2.0 * b * math.sqrt(p)
    disc = a * a - gamma2 ** 2 * alpha ** 2
    if alpha <= 1.0 or disc < 0:
        return -math.inf
    return (2.0 * (alpha - 1.0) * e_q - a + math.sqrt(disc)) / (2.0 * alpha)


def ou_optimal_bounds(a: float, b: float, p: float, e_q: float
                      ) -> OuOptimalBounds:
    """Closed-form optimized OU fading bounds and their optimizing orders.

    Requires a > 2*b*sqrt(p) so the order range (1, a/(2 b sqrt(p))) is
    nonempty.  The upper optimizer alpha* is the unique stationary point
    of the upper curve; the lower optimizer alpha_hat may fall at or below
    1 for strong fading, in which case the lower bound is reported as 0.
    """
    if not (a > 0 and b > 0 and p > 0):
        raise ValueError("a, b, p must be positive")
    if e_q < 0:
        raise ValueError("reference exponent must be nonnegative")
    gamma2 = 2.0 * b * math.sqrt(p)
    if not (a > gamma2):
        raise FeasibilityError(
            f"requires a > 2*b*sqrt(p): a={a}, 2*b*sqrt(p)={gamma2}")
    gamma1 = a + 2.0 * e_q
    alpha_max = a / gamma2
    alpha_star = ((a * a * gamma2
                   + a * gamma1 * math.sqrt(gamma1 ** 2 + gamma2 ** 2 - a * a))
                  / (gamma2 * (gamma1 ** 2 + gamma2 ** 2)))
    if not (1.0 < alpha_star < alpha_max):
        raise FeasibilityError(
            f"optimal order {alpha_star} escaped (1, {alpha_max})")
    e_upper = (2.0 * alpha_star * e_q + a
               - math.sqrt(a * a - gamma2 ** 2 * alpha_star ** 2)) \
        / (2.0 * (alpha_star - 1.0))
    alpha_hat = math.sqrt((a / gamma2) ** 2 - (a * a / (gamma1 * gamma2)) ** 2)
    if alpha_hat <= 1.0:
        e_lower = 0.0
    else:
        e_lower = (2.0 * gamma1 * (alpha_hat - 1.0) * e_q
                   - a * gamma1 + a * a) / (2.0 * gamma1 * alpha_hat)
        e_lower = max(0.0, e_lower)
    return OuOptimalBounds(e_upper, alpha_star, e_lower, alpha_hat, alpha_max)
