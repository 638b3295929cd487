"""Kernel backend selection.

The compiled extension is preferred when it imports cleanly; setting the
environment variable ``FSL_PURE_PYTHON=1`` forces the NumPy fallback (used
by the benchmark to compare both).  Both backends expose the same
functions with the same semantics.
"""

from __future__ import annotations

import os

from . import _kernels_np

if os.environ.get("FSL_PURE_PYTHON"):
    _impl = _kernels_np
else:
    try:
        from . import _kernels as _impl  # type: ignore[attr-defined]
    except ImportError:
        _impl = _kernels_np

HAVE_COMPILED = _impl.BACKEND == "cython"
BACKEND = _impl.BACKEND
SERIES_SWITCH = _impl.SERIES_SWITCH

cantor_products = _impl.cantor_products
bessel_j_int = _impl.bessel_j_int
