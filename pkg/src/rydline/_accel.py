"""Optional numba acceleration.

Set ``RYDLINE_DISABLE_NUMBA=1`` before import to force the pure-numpy path.
The flag is read once, at import time.
"""

import os

try:
    import numba
except ImportError:  # pragma: no cover - numba is an optional extra
    numba = None

DISABLED_BY_ENV = os.environ.get("RYDLINE_DISABLE_NUMBA", "").strip().lower() in {"1", "true", "yes", "on"}
NUMBA_ENABLED = numba is not None and not DISABLED_BY_ENV


def maybe_njit(func):
    """Compile ``func`` with numba.njit when enabled, else return it unchanged."""
    if NUMBA_ENABLED:
        return numba.njit(cache=True)(func)
    return func
