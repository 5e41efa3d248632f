"""JIT switch.

Set ``BOOLSLEP_DISABLE_JIT=1`` to force the pure-numpy kernels. The flag is
read once at import time; numba missing from the environment has the same
effect.
"""

import os

DISABLE_JIT = os.environ.get("BOOLSLEP_DISABLE_JIT", "0").strip().lower() not in ("", "0", "false", "no")

try:
    import numba
except ImportError:  # pragma: no cover - numba is a declared dependency
    numba = None

HAVE_NUMBA = numba is not None
USE_JIT = HAVE_NUMBA and not DISABLE_JIT


def njit(func):
    """``numba.njit(cache=True)`` when numba is importable, identity otherwise."""
    if not HAVE_NUMBA:
        return func
    return numba.njit(cache=True)(func)
