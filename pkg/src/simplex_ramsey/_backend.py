"""Kernel backend selection: compiled extension if present, else pure Python.

Set SIMPLEX_RAMSEY_PURE=1 to force the pure backend (used by the benchmark
and the differential tests).
"""

import os

if os.environ.get("SIMPLEX_RAMSEY_PURE") == "1":
    from . import _kernels_py as kernels

    BACKEND = "python"
else:
    try:
        from . import _kernels as kernels  # type: ignore[attr-defined]

        BACKEND = "compiled"
    except ImportError:
        from . import _kernels_py as kernels

        BACKEND = "python"

FOUND = kernels.FOUND
NONE = kernels.NONE
BUDGET = kernels.BUDGET
search_copy = kernels.search_copy
