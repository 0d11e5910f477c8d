"""Optional numba acceleration for the hot kernels.

Set ``TURAN_FOREST_DISABLE_NUMBA=1`` before import to run every kernel as
plain Python over numpy arrays.  The kernels are written once in the
restricted subset numba accepts, so both paths execute the same code.
"""

import os

DISABLE_ENV = "TURAN_FOREST_DISABLE_NUMBA"

try:
    import numba
except ImportError:  # pragma: no cover - numba is a declared dependency
    numba = None


def _disabled_by_env():
    return os.environ.get(DISABLE_ENV, "").strip().lower() in {"1", "true", "yes", "on"}


USE_NUMBA = numba is not None and not _disabled_by_env()
BACKEND = "numba" if USE_NUMBA else "python"


def njit(*args, **kwargs):
    """``numba.njit(cache=True)`` when enabled, identity otherwise.

    Usable both bare (``@njit``) and with options (``@njit(nogil=True)``).
    """
    if args and callable(args[0]) and len(args) == 1 and not kwargs:
        fn = args[0]
        return numba.njit(cache=True)(fn) if USE_NUMBA else fn

    def wrap(fn):
        if not USE_NUMBA:
            return fn
        return numba.njit(cache=True, **kwargs)(fn)

    return wrap
