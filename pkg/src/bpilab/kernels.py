"""Kernel dispatch: the compiled extension when available, numpy otherwise.

Set ``BPILAB_PURE=1`` to force the numpy path.
"""
from __future__ import annotations

import os

from . import _fallback

BACKEND = "numpy"
_impl = _fallback

if os.environ.get("BPILAB_PURE", "") not in ("1", "true", "yes"):
    try:
        from . import _speedups as _impl  # type: ignore[no-redef]

        BACKEND = "cython"
    except ImportError:  # extension not built
        _impl = _fallback

sift_ranks = _impl.sift_ranks
conjugacy_class_ids = _impl.conjugacy_class_ids
structure_constants = _impl.structure_constants

__all__ = ["BACKEND", "sift_ranks", "conjugacy_class_ids", "structure_constants"]
