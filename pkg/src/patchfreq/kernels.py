"""Kernel backend selection.

The compiled extension is used when it was built; setting the environment
variable PATCHFREQ_PURE=1 forces the NumPy implementation.
"""
from __future__ import annotations

import os

from . import _pykernels

BACKEND = "python"
_impl = _pykernels

if os.environ.get("PATCHFREQ_PURE", "") not in ("1", "true", "yes"):
    try:
        from . import _ckernels as _impl  # type: ignore[no-redef]
        BACKEND = "cython"
    except ImportError:
        _impl = _pykernels

lattice_points = _impl.lattice_points
classify_points = _impl.classify_points
count_matches = _impl.count_matches


def backends() -> dict:
    """Both implementations keyed by name (compiled one only if importable)."""
    out = {"python": _pykernels}
    try:
        from . import _ckernels
        out["cython"] = _ckernels
    except ImportError:
        pass
    return out
