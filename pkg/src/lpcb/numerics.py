"""Shared numeric utilities: log-sum-exp, grids, golden section, quadrature.

Every optimizer in this package follows the same recipe: evaluate the
objective on a deterministic grid, then refine locally with golden section
around the grid arg-optimum.  The objectives are smooth and unimodal in
practice but not proven convex, so the grid stage guards against a wrong
basin and the refinement removes the grid resolution from the answer.
"""

from __future__ import annotations

import math
from functools import lru_cache
from typing import Callable

import numpy as np

_INV_PHI = (math.sqrt(5.0) - 1.0) / 2.0
_INV_PHI2 = (3.0 - math.sqrt(5.0)) / 2.0


def logsumexp(terms: np.ndarray) -> float:
    """log(sum(exp(terms))) with overflow protection; -inf for empty input."""
    terms = np.asarray(terms, dtype=float)
    if terms.size == 0:
        return -math.inf
    m = float(np.max(terms))
    if not math.isfinite(m):
        return m
    return m + math.log(float(np.sum(np.exp(terms - m))))


def geometric_grid(lo: float, hi: float, points: int) -> np.ndarray:
    if not (0 < lo < hi):
        raise ValueError(f"need 0 < lo < hi, got ({lo}, {hi})")
    if points < 2:
        raise ValueError("need at least 2 grid points")
    return np.geomspace(lo, hi, points)


def default_alpha_grid() -> np.ndarray:
    """Default divergence-order grid: 400 geometric points on (1+1e-4, 1e3]."""
    return 1.0 + geometric_grid(1e-4, 1e3 - 1.0, 400)


def golden_section_min(f: Callable[[float], float], lo: float, hi: float,
                       tol: float = 1e-12, max_iter: int = 200
                       ) -> tuple[float, float]:
    """Golden-section minimum of ``f`` on [lo, hi]; returns (x, f(x))."""
    if hi < lo:
        lo, hi = hi, lo
    a, b = lo, hi
    h = b - a
    if h <= tol:
        x = 0.5 * (a + b)
        return x, f(x)
    c = a + _INV_PHI2 * h
    d = a + _INV_PHI * h
    fc, fd = f(c), f(d)
    for _ in range(max_iter):
        if h <= tol * max(1.0, abs(a) + abs(b)):
            break
        if fc < fd:
            b, d, fd = d, c, fc
            h = b - a
            c = a + _INV_PHI2 * h
            fc = f(c)
        else:
            a, c, fc = c, d, fd
            h = b - a
            d = a + _INV_PHI * h
            fd = f(d)
    if fc < fd:
        return c, fc
    return d, fd


def golden_section_max(f: Callable[[float], float], lo: float, hi: float,
                       tol: float = 1e-12, max_iter: int = 200
                       ) -> tuple[float, float]:
    x, negfx = golden_section_min(lambda t: -f(t), lo, hi, tol, max_iter)
    return x, -negfx


def grid_min_refine(f: Callable[[float], float], grid: np.ndarray
                    ) -> tuple[float, float]:
    """Grid scan for the minimum of ``f`` plus local golden refinement.

    The refinement bracket is the pair of grid neighbours around the grid
    argmin; ties resolve to the smallest grid point (deterministic
    reduction order).
    """
    grid = np.asarray(grid, dtype=float)
    if grid.size == 0:
        raise ValueError("empty grid")
    vals = np.array([f(float(x)) for x in grid])
    finite = np.isfinite(vals)
    if not finite.any():
        raise ValueError("objective not finite anywhere on the grid")
    idx = int(np.flatnonzero(finite)[np.argmin(vals[finite])])
    lo = grid[max(idx - 1, 0)]
    hi = grid[min(idx + 1, grid.size - 1)]
    x_ref, f_ref = golden_section_min(f, float(lo), float(hi))
    if math.isfinite(f_ref) and f_ref < vals[idx]:
        return x_ref, f_ref
    return float(grid[idx]), float(vals[idx])


def grid_max_refine(f: Callable[[float], float], grid: np.ndarray
                    ) -> tuple[float, float]:
    x, negfx = grid_min_refine(lambda t: -f(t), grid)
    return x, -negfx


def parabolic_polish_min(f: Callable[[float], float], x: float,
                         h: float) -> float:
    """One parabolic-vertex step around a located minimum.

    Golden section localizes an argmin only to ~sqrt(eps) relative (the
    objective is flat to rounding there); a three-point parabola through
    x-h, x, x+h recovers the vertex to far higher accuracy when h is large
    enough that the curvature dominates rounding noise.
    """
    f_lo, f_mid, f_hi = f(x - h), f(x), f(x + h)
    denom = f_lo - 2.0 * f_mid + f_hi
    if not (denom > 0 and math.isfinite(denom)):
        return x
    step = 0.5 * h * (f_lo - f_hi) / denom
    return x + step if abs(step) <= h else x


@lru_cache(maxsize=16)
def _gl_nodes(order: int) -> tuple[np.ndarray, np.ndarray]:
    x, w = np.polynomial.legendre.leggauss(order)
    return x, w


def composite_gauss_legendre(f: Callable[[np.ndarray], np.ndarray],
                             a: float, b: float, panels: int = 128,
                             order: int = 8,
                             richardson_tol: float = 1e-9) -> float:
    """Composite Gauss-Legendre integral of a smooth vectorized integrand.

    A coarse pass with half the panels serves as a Richardson-style error
    check; if the two estimates disagree beyond ``richardson_tol`` the
    panel count is doubled (at most twice).  Integrands in this package are
    analytic under the feasibility conditions, so the check virtually never
    triggers.
    """
    if b <= a:
        raise ValueError("integration range is empty")

    def _integrate(n_panels: int) -> float:
        x, w = _gl_nodes(order)
        edges = np.linspace(a, b, n_panels + 1)
        half = 0.5 * (edges[1:] - edges[:-1])
        mid = 0.5 * (edges[1:] + edges[:-1])
        pts = mid[:, None] + half[:, None] * x[None, :]
        vals = f(pts.ravel()).reshape(n_panels, order)
        return float(np.sum(half[:, None] * w[None, :] * vals))

    coarse = _integrate(max(panels // 2, 1))
    fine = _integrate(panels)
    for _ in range(2):
        if abs(fine - coarse) <= richardson_tol * max(1.0, abs(fine)):
            break
        coarse, panels = fine, panels * 2
        fine = _integrate(panels)
    return fine
