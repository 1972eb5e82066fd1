"""Selects the numeric kernel backend at import time.

The compiled extension is preferred; the pure-Python mirror is the
fallback. Set FUZZNEST_PURE_PYTHON=1 to force the fallback (used by the
benchmark and for debugging). Both produce bit-identical values.
"""

from __future__ import annotations

import os

if os.environ.get("FUZZNEST_PURE_PYTHON") == "1":
    from . import _kernels as impl

    BACKEND = "pure-python"
else:
    try:
        from . import _speedups as impl  # type: ignore[no-redef]

        BACKEND = "compiled"
    except ImportError:
        from . import _kernels as impl  # type: ignore[no-redef]

        BACKEND = "pure-python"

__all__ = ["impl", "BACKEND"]
