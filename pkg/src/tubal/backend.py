"""Kernel backend selection.

The compiled Cython kernels are used when the extension built; setting
the environment variable TUBAL_PURE_PYTHON=1 forces the numpy fallback.
Both backends expose the same functions and must agree numerically (the
test suite checks parity to 1e-12).
"""

from __future__ import annotations

import os

from . import _kernels_py

if os.environ.get("TUBAL_PURE_PYTHON", "") not in ("", "0"):
    _impl = _kernels_py
else:
    try:
        from . import _kernels as _impl  # type: ignore[no-redef]
    except ImportError:
        _impl = _kernels_py

svd_shrink_slices = _impl.svd_shrink_slices
soft_threshold = _impl.soft_threshold
soft_threshold_arr = _impl.soft_threshold_arr
circ_diff = _impl.circ_diff
circ_diff_adjoint = _impl.circ_diff_adjoint


def backend_name() -> str:
    """Which kernel implementation is active: 'compiled' or 'python'."""
    return _impl.BACKEND
