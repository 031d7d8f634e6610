"""Hot numeric kernels with numba and pure-numpy implementations.

Two loops dominate the package's runtime: the Monte Carlo block-decision
simulation (millions of trials) and the log-domain power iteration for
tilted Perron roots (called hundreds of times per optimized erasure
bound).  Both implementations of each kernel are importable for
benchmarking; the module-level dispatchers pick one at import time
according to :mod:`lpcb.backend`.
"""

from __future__ import annotations

import math

import numpy as np

from . import backend


def count_antipodal_errors_numpy(noise: np.ndarray, signs: np.ndarray,
                                 mean_amp: float, sigma: float) -> int:
    """Count minimum-distance decision errors for the 2-codeword antipodal code.

    Parameters
    ----------
    noise : (trials, n) array
        Standard normal draws, one row per transmitted block.
    signs : (trials,) array
        +1/-1 message signs (codewords are ``signs*mean_amp`` repeated).
    mean_amp : float
        Per-symbol received mean amplitude (signal plus any coherent
        interference folded in).
    sigma : float
        Noise standard deviation.

    The decoder correlates against the all-plus codeword: decide +1 when
    the block sum is >= 0, else -1 (deterministic tie rule).
    """
    n = noise.shape[1]
    stat = signs * (n * mean_amp) + sigma * noise.sum(axis=1)
    errors = np.where(signs > 0, stat < 0.0, stat >= 0.0)
    return int(np.count_nonzero(errors))


def _count_antipodal_errors_loop(noise, signs, mean_amp, sigma):
    trials, n = noise.shape
    count = 0
    for i in range(trials):
        acc = 0.0
        for j in range(n):
            acc += noise[i, j]
        stat = signs[i] * (n * mean_amp) + sigma * acc
        if signs[i] > 0:
            if stat < 0.0:
                count += 1
        else:
            if stat >= 0.0:
                count += 1
    return count


def log_power_radius_numpy(log_b: np.ndarray, tol: float = 1e-13,
                           max_iter: int = 100_000) -> float:
    """ln of the spectral radius of exp(log_b) by power iteration carried
    out entirely in log space (entries of log_b may be -inf or very large).

    ``log_b`` must be the log of a nonnegative matrix whose diagonal is
    strictly positive (the callers add a unit shift first), so iterates
    stay strictly positive and the iteration converges for irreducible
    matrices regardless of periodicity.
    """
    d = log_b.shape[0]
    logv = np.full(d, -math.log(d))
    est = math.inf
    for _ in range(max_iter):
        t = log_b + logv[None, :]
        m = t.max(axis=1)
        logw = m + np.log(np.exp(t - m[:, None]).sum(axis=1))
        mw = logw.max()
        norm = mw + math.log(float(np.exp(logw - mw).sum()))
        logw -= norm
        if abs(norm - est) <= tol * max(1.0, abs(norm)) \
                and float(np.max(np.abs(logw - logv))) <= 1e3 * tol:
            return norm
        logv = logw
        est = norm
    return est


def _log_power_radius_loop(log_b, tol, max_iter):
    d = log_b.shape[0]
    logv = np.full(d, -math.log(d))
    logw = np.empty(d)
    est = math.inf
    for _ in range(max_iter):
        for i in range(d):
            m = -math.inf
            for j in range(d):
                t = log_b[i, j] + logv[j]
                if t > m:
                    m = t
            s = 0.0
            for j in range(d):
                s += math.exp(log_b[i, j] + logv[j] - m)
            logw[i] = m + math.log(s)
        mw = logw[0]
        for i in range(1, d):
            if logw[i] > mw:
                mw = logw[i]
        s = 0.0
        for i in range(d):
            s += math.exp(logw[i] - mw)
        norm = mw + math.log(s)
        vec_gap = 0.0
        for i in range(d):
            logw[i] -= norm
            gap = abs(logw[i] - logv[i])
            if gap > vec_gap:
                vec_gap = gap
        converged = abs(norm - est) <= tol * max(1.0, abs(norm)) \
            and vec_gap <= 1e3 * tol
        for i in range(d):
            logv[i] = logw[i]
        est = norm
        if converged:
            return est
    return est


if backend.NUMBA_ENABLED:
    import numba

    count_antipodal_errors_numba = numba.njit(cache=True)(
        _count_antipodal_errors_loop)
    log_power_radius_numba = numba.njit(cache=True)(_log_power_radius_loop)
    count_antipodal_errors = count_antipodal_errors_numba

    def log_power_radius(log_b, tol=1e-13, max_iter=100_000):
        return log_power_radius_numba(log_b, tol, max_iter)
else:
    count_antipodal_errors_numba = None
    log_power_radius_numba = None
    count_antipodal_errors = count_antipodal_errors_numpy
    log_power_radius = log_power_radius_numpy
