"""Backend selection for the hot kernels.

The compiled Cython extension is used when it imported cleanly and the
``TURAN_CYCLES_PURE`` environment variable is not set; otherwise every caller
falls back to the pure-Python implementations.  Both paths are exercised by
the test suite and compared by ``bench/benchmark_kernels.py``.
"""

from __future__ import annotations

import os

try:
    from . import _fastkernels as fast
except ImportError:  # pragma: no cover - depends on build environment
    fast = None

FORCE_PURE = os.environ.get("TURAN_CYCLES_PURE") == "1"


def compiled_available() -> bool:
    return fast is not None and not FORCE_PURE


def backend_name() -> str:
    return "cython" if compiled_available() else "python"
