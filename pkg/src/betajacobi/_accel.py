"""Backend selection for the compiled kernels.

Set ``BETAJACOBI_NUMBA=0`` in the environment before import to run every
kernel on its pure-numpy/Python path.
"""
import os

try:
    import numba
except ImportError:  # pragma: no cover - numba is a declared dependency
    numba = None

NUMBA_ENABLED = numba is not None and os.environ.get(
    "BETAJACOBI_NUMBA", "1"
).strip().lower() not in ("0", "false", "no", "off")

BACKEND = "numba" if NUMBA_ENABLED else "numpy"


def jit(fn):
    """``numba.njit(cache=True)`` when enabled, identity otherwise."""
    if not NUMBA_ENABLED:
        return fn
    return numba.njit(cache=True)(fn)
