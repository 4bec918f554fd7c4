"""Backend selection for the integer kernels.

Set ``TORICLCT_BACKEND=numpy`` to force the pure-numpy path; the default is
``numba`` whenever it imports.
"""

import os

try:
    from numba import njit as _njit
    HAS_NUMBA = True
except ImportError:  # pragma: no cover - numba is a hard dependency in CI
    HAS_NUMBA = False
    _njit = None

_VALID = ("numba", "numpy")


def backend():
    name = os.environ.get("TORICLCT_BACKEND", "numba").strip().lower()
    if name not in _VALID:
        raise ValueError(f"TORICLCT_BACKEND must be one of {_VALID}, got {name!r}")
    if name == "numba" and not HAS_NUMBA:
        return "numpy"
    return name


def njit(*args, **kwargs):
    """``numba.njit`` when available, identity otherwise."""
    if _njit is None:
        if args and callable(args[0]):
            return args[0]
        return lambda f: f
    return _njit(*args, **kwargs)
