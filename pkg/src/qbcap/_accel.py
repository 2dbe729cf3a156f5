"""Optional numba acceleration.

Set ``QBCAP_DISABLE_NUMBA=1`` to run every kernel as plain numpy code.
The flag is read once, at import time.
"""

import os

_FLAG = "QBCAP_DISABLE_NUMBA"

NUMBA_REQUESTED = os.environ.get(_FLAG, "").strip().lower() not in ("1", "true", "yes", "on")

try:
    if not NUMBA_REQUESTED:
        raise ImportError("disabled by " + _FLAG)
    import numba as _numba
except ImportError:
    _numba = None

NUMBA_ENABLED = _numba is not None


def maybe_njit(func=None, **options):
    """``numba.njit`` when available and enabled, identity otherwise."""
    options.setdefault("cache", True)

    def wrap(f):
        if NUMBA_ENABLED:
            return _numba.njit(**options)(f)
        return f

    if func is None:
        return wrap
    return wrap(func)


def python_impl(func):
    """The undecorated python function behind a kernel."""
    return getattr(func, "py_func", func)
