"""Numeric backend selection for the hot kernels.

The Monte Carlo channel simulation is the only part of the package whose
runtime is dominated by a tight inner loop.  Its kernels live in
:mod:`lpcb.kernels` in two variants: a numba ``@njit`` build and a pure
numpy build.  Selection happens once at import time:

* ``LPCB_BACKEND=numpy`` forces the pure numpy path.
* ``LPCB_BACKEND=numba`` forces numba (import error surfaces loudly).
* unset: numba when importable, numpy otherwise.

``LPCB_THREADS`` caps worker parallelism.  With the numba backend active it
is forwarded to ``numba.set_num_threads``; the numpy path is single
threaded regardless.

Within one backend, results are bit-reproducible for a fixed seed.  Across
backends, error *counts* may differ for trials whose decision statistic
lands within rounding distance of the threshold (numpy reduces with
pairwise summation, the numba loop sequentially).
"""

from __future__ import annotations

import os

_CHOICE = os.environ.get("LPCB_BACKEND", "").strip().lower()
if _CHOICE not in ("", "numba", "numpy"):
    raise ValueError(
        f"LPCB_BACKEND must be 'numba' or 'numpy', got {_CHOICE!r}"
    )

if _CHOICE == "numpy":
    NUMBA_ENABLED = False
else:
    try:
        import numba  # noqa: F401

        NUMBA_ENABLED = True
    except ImportError:
        if _CHOICE == "numba":
            raise
        NUMBA_ENABLED = False

THREADS: int | None = None
_threads_env = os.environ.get("LPCB_THREADS", "").strip()
if _threads_env:
    THREADS = max(1, int(_threads_env))
    if NUMBA_ENABLED:
        import numba

        numba.set_num_threads(min(THREADS, numba.config.NUMBA_NUM_THREADS))


def backend_name() -> str:
    """Name of the active kernel backend, ``"numba"`` or ``"numpy"``."""
    return "numba" if NUMBA_ENABLED else "numpy"
