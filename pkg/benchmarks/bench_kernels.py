"""Benchmark the numba kernels against their pure-numpy fallbacks.

Run:
    python benchmarks/bench_kernels.py

The backends are imported side by side (bypassing the LPCB_BACKEND
switch), so one process measures both.
"""

import math
import time

import numpy as np

from lpcb import backend
from lpcb.kernels import (count_antipodal_errors_numba,
                          count_antipodal_errors_numpy,
                          log_power_radius_numba, log_power_radius_numpy)


def timeit(fn, repeats=5):
    best = math.inf
    for _ in range(repeats):
        t0 = time.perf_counter()
        out = fn()
        best = min(best, time.perf_counter() - t0)
    return best, out


def bench_mc():
    rng = np.random.default_rng(0)
    print("count_antipodal_errors (n=50)")
    print(f"{'trials':>10} {'numpy':>12} {'numba':>12} {'speedup':>9}")
    for trials in (10_000, 100_000, 1_000_000):
        noise = rng.standard_normal((trials, 50))
        signs = rng.integers(0, 2, trials).astype(np.float64) * 2.0 - 1.0
        t_np, c_np = timeit(lambda: count_antipodal_errors_numpy(
            noise, signs, 1.05, 5.0))
        if count_antipodal_errors_numba is None:
            print(f"{trials:>10} {t_np:>12.5f} {'n/a':>12}")
            continue
        count_antipodal_errors_numba(noise[:16], signs[:16], 1.05, 5.0)
        t_nb, c_nb = timeit(lambda: count_antipodal_errors_numba(
            noise, signs, 1.05, 5.0))
        assert c_np == c_nb, (c_np, c_nb)
        print(f"{trials:>10} {t_np:>12.5f} {t_nb:>12.5f} {t_np / t_nb:>8.1f}x")


def bench_perron():
    rng = np.random.default_rng(1)
    print("\nlog_power_radius (1000 tilted chains per size)")
    print(f"{'d':>10} {'numpy':>12} {'numba':>12} {'speedup':>9}")
    for d in (2, 4, 6):
        mats = []
        for _ in range(1000):
            raw = rng.random((d, d)) + 0.05
            pi = raw / raw.sum(axis=1, keepdims=True)
            lam = rng.uniform(0.0, 5.0)
            fbar = rng.integers(0, 2, d).astype(float)
            log_b = np.log(pi) + lam * fbar[None, :]
            idx = np.arange(d)
            log_b[idx, idx] = np.logaddexp(log_b[idx, idx], 0.0)
            mats.append(log_b)

        def run(fn):
            return sum(fn(m, 1e-13, 100_000) for m in mats)

        t_np, s_np = timeit(lambda: run(log_power_radius_numpy), repeats=3)
        if log_power_radius_numba is None:
            print(f"{d:>10} {t_np:>12.5f} {'n/a':>12}")
            continue
        log_power_radius_numba(mats[0], 1e-13, 100_000)
        t_nb, s_nb = timeit(lambda: run(log_power_radius_numba), repeats=3)
        assert abs(s_np - s_nb) < 1e-9 * max(1.0, abs(s_np))
        print(f"{d:>10} {t_np:>12.5f} {t_nb:>12.5f} {t_np / t_nb:>8.1f}x")


if __name__ == "__main__":
    print(f"active backend: {backend.backend_name()}")
    if count_antipodal_errors_numba is None:
        print("numba unavailable or disabled; timing numpy path only")
    bench_mc()
    bench_perron()
