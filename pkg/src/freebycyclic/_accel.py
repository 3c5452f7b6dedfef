"""Optional numba acceleration.

Kernels are written as plain loops over numpy arrays. When numba is importable
and ``FREEBYCYCLIC_DISABLE_NUMBA`` is unset (or "0"), they are compiled with
``numba.njit``; otherwise the same source runs in the interpreter.
"""
import os

_flag = os.environ.get("FREEBYCYCLIC_DISABLE_NUMBA", "").strip().lower()
DISABLED = _flag not in ("", "0", "false", "no")

try:
    if DISABLED:
        raise ImportError
    import numba
except ImportError:  # pragma: no cover - depends on environment
    numba = None

USING_NUMBA = numba is not None


def njit(fn):
    if numba is None:
        return fn
    return numba.njit(cache=True)(fn)


def python_version(fn):
    """The uncompiled function behind a kernel (itself when numba is off)."""
    return getattr(fn, "py_func", fn)
