"""Pure numpy implementations of the hot inner kernels.

These mirror the compiled Cython kernels in `_kernels.pyx`; the backend
module picks whichever is available.  Shapes follow the slice-major
convention used internally by the proximal operators: a stack of m
complex matrices is an (m, n1, n2) array.
"""

from __future__ import annotations

import numpy as np

BACKEND = "python"


def svd_shrink_slices(slices: np.ndarray, thresh: np.ndarray):
    """Per-slice SVD shrinkage.

    For each slice A_k compute the SVD, replace each singular value s_i
    by max(s_i - thresh[k, i], 0), and reconstruct.  Returns the stack of
    reconstructions and the matrix of original singular values (m, mn).
    """
    slices = np.ascontiguousarray(slices, dtype=np.complex128)
    thresh = np.ascontiguousarray(thresh, dtype=np.float64)
    u, s, vh = np.linalg.svd(slices, full_matrices=False)
    shrunk = np.maximum(s - thresh, 0.0)
    out = np.matmul(u * shrunk[:, None, :], vh)
    return out, s


def soft_threshold(x: np.ndarray, tau: float) -> np.ndarray:
    """Entrywise sign(x) * max(|x| - tau, 0)."""
    return np.sign(x) * np.maximum(np.abs(x) - tau, 0.0)


def soft_threshold_arr(x: np.ndarray, thresh: np.ndarray) -> np.ndarray:
    """Entrywise soft threshold with a per-entry threshold array."""
    return np.sign(x) * np.maximum(np.abs(x) - thresh, 0.0)


def circ_diff(x: np.ndarray, axis: int) -> np.ndarray:
    """Circular forward difference x(i+1 mod n) - x(i) along `axis`."""
    return np.roll(x, -1, axis=axis) - x


def circ_diff_adjoint(g: np.ndarray, axis: int) -> np.ndarray:
    """Adjoint of `circ_diff`: g(i-1 mod n) - g(i) along `axis`."""
    return np.roll(g, 1, axis=axis) - g
