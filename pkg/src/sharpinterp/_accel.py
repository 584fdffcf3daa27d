"""Optional numba acceleration.

Set ``SHARPINTERP_NO_NUMBA=1`` to force the pure numpy/python code paths.
Results agree between the two backends to rounding.
"""
import os

try:
    import numba
except ImportError:  # pragma: no cover
    numba = None

USE_NUMBA = numba is not None and os.environ.get("SHARPINTERP_NO_NUMBA", "") in ("", "0")


def jit(fn):
    """Compile ``fn`` with numba when enabled, else return it unchanged."""
    if USE_NUMBA:
        return numba.njit(cache=True)(fn)
    return fn


def backend() -> str:
    return "numba" if USE_NUMBA else "numpy"
