"""Numba switch.

Set ``BOOLIFT_NO_NUMBA=1`` to run every kernel on its pure numpy/Python path.
"""
import os

_flag = os.environ.get("BOOLIFT_NO_NUMBA", "").strip().lower()

try:
    import numba
except ImportError:  # pragma: no cover
    numba = None

USE_NUMBA = numba is not None and _flag not in ("1", "true", "yes", "on")


def jit(fn):
    """Compile ``fn`` in nopython mode when numba is enabled, else return it as is."""
    if USE_NUMBA:
        return numba.njit(cache=True)(fn)
    return fn


def backend():
    return "numba" if USE_NUMBA else "numpy"
