"""Numba switch.

Kernels in :mod:`besselreps.kernels` exist twice: a scalar-loop version
compiled with ``numba.njit`` and a vectorised numpy version.  The compiled
path is used when numba imports cleanly and ``BESSELREPS_DISABLE_NUMBA`` is
unset (or ``0``/``false``).
"""

from __future__ import annotations

import os

_FLAG = "BESSELREPS_DISABLE_NUMBA"


def _env_disabled() -> bool:
    return os.environ.get(_FLAG, "").strip().lower() not in ("", "0", "false", "no")


try:
    import numba as _numba

    HAVE_NUMBA = True
except ImportError:  # pragma: no cover - numba is a declared dependency
    _numba = None
    HAVE_NUMBA = False

USE_NUMBA = HAVE_NUMBA and not _env_disabled()


def njit(func):
    """Compile ``func`` with numba when available, else return it unchanged.

    Compilation happens regardless of the env flag so that tests and the
    benchmark can compare both paths in one process.
    """
    if not HAVE_NUMBA:
        return func
    return _numba.njit(cache=True, nogil=True)(func)
