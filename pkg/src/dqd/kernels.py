"""Backend selection for the hot kernels.

The compiled extension is preferred; the pure-Python fallback is used when it
is missing or when the environment sets ``DQD_PURE_PYTHON=1``.
"""
from __future__ import annotations

import os

from . import _fallback

BACKEND = "python"

if os.environ.get("DQD_PURE_PYTHON", "") not in ("1", "true", "yes"):
    try:
        from . import _kernels as _impl

        BACKEND = "cython"
    except ImportError:
        _impl = _fallback
else:
    _impl = _fallback

jacobi_eigh = _impl.jacobi_eigh
measured_entropy_grid = _impl.measured_entropy_grid
measured_entropy = _impl.measured_entropy

__all__ = ["BACKEND", "jacobi_eigh", "measured_entropy_grid", "measured_entropy"]
