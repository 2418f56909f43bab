"""Numeric hot-loop kernels.

Each kernel is written once, in numba-compilable numpy style. When numba is
available (and ``EMOTIKON_PURE_NUMPY`` is not set) the public names are the
jit-compiled versions; otherwise the same function bodies run as plain numpy.
The jitted dispatchers keep the original under ``.py_func``, which is what the
parity tests and ``benchmarks/bench_kernels.py`` compare against.
"""

import os


def _pure_numpy_requested() -> bool:
    return os.environ.get("EMOTIKON_PURE_NUMPY", "").strip().lower() in ("1", "true", "yes")


if _pure_numpy_requested():
    NUMBA_ENABLED = False
else:
    try:
        import numba  # noqa: F401

        NUMBA_ENABLED = True
    except ImportError:
        NUMBA_ENABLED = False


def maybe_njit(**options):
    """Return numba.njit(**options) when enabled, else the identity decorator."""
    if NUMBA_ENABLED:
        import numba

        return numba.njit(**options)

    def passthrough(fn):
        return fn

    return passthrough


def python_impl(fn):
    """The pure-numpy implementation behind a (possibly jitted) kernel."""
    return getattr(fn, "py_func", fn)
