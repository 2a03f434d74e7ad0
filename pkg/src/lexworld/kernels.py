"""Kernel selection: the compiled extension when importable, else pure Python.

Set ``LEXWORLD_PURE=1`` to force the fallback.
"""
import os

from . import _pykernels

BACKEND = "python"

if os.environ.get("LEXWORLD_PURE", "") not in ("", "0"):
    count_backtrack = _pykernels.count_backtrack
    balanced_count = _pykernels.balanced_count
else:
    try:
        from ._ckernels import balanced_count, count_backtrack

        BACKEND = "compiled"
    except ImportError:
        count_backtrack = _pykernels.count_backtrack
        balanced_count = _pykernels.balanced_count

__all__ = ["BACKEND", "balanced_count", "count_backtrack"]
