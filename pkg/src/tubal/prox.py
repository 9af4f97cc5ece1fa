"""Shrinkage operators: spectral SVT, soft thresholding, differences.

The spectral singular value thresholding operator maps each spectral
singular value s to max(s - tau, 0) and reconstructs; with tau = 0 it is
the identity.  Only half of the spectral slices are factored (conjugate
symmetry); results agree with the full computation to machine precision.
"""

from __future__ import annotations

import numpy as np

from . import backend, core, spectral, tprod

__all__ = [
    "tsvt",
    "weighted_tsvt",
    "reweighted_weights",
    "soft_threshold",
    "masked_soft_threshold",
    "diff",
    "diff_adjoint",
    "DIFF_AXES",
]

# named difference axes: y runs down the rows (mode 1), x across the
# columns (mode 2), t along the tubes (mode 3)
DIFF_AXES = {"y": 0, "x": 1, "t": 2}


def _shrink_spectral(y: np.ndarray, thresh_rows: np.ndarray, exploit_symmetry: bool):
    """Shared spectral shrinkage path.

    thresh_rows has shape (n3, min(n1, n2)) and must be identical on
    mirrored slice pairs (it is per-index in all public uses).  Returns
    (x, original singulars, shrunk singulars), the latter two (n3, mn).
    """
    n1, n2, n3 = y.shape
    mn = min(n1, n2)
    yf = np.fft.fft(y, axis=2)
    stack = np.ascontiguousarray(yf.transpose(2, 0, 1))
    try:
        if exploit_symmetry and n3 > 1:
            half = spectral.half_slice_count(n3)
            out_half, sing_half = backend.svd_shrink_slices(
                stack[:half], np.ascontiguousarray(thresh_rows[:half])
            )
            out = spectral.mirror_slices(out_half, n3)
            sing = np.empty((n3, mn))
            sing[:half] = sing_half
            for k in range(half, n3):
                sing[k] = sing_half[n3 - k]
        else:
            out, sing = backend.svd_shrink_slices(stack, thresh_rows)
    except np.linalg.LinAlgError as exc:
        raise spectral.SvdConvergenceError(str(exc)) from exc
    shrunk = np.maximum(sing - thresh_rows, 0.0)
    x = np.fft.ifft(out.transpose(1, 2, 0), axis=2).real
    return x, sing, shrunk


def tsvt_with_values(y: np.ndarray, tau: float, exploit_symmetry: bool = True):
    """tsvt plus the spectral singular values before and after shrinkage.

    Solvers use the shrunk values to track the nuclear objective without
    a second factorization.
    """
    y = core.as_tensor3(y)
    if not np.isfinite(tau) or tau < 0:
        raise ValueError(f"threshold must be finite and >= 0, got {tau}")
    n1, n2, n3 = y.shape
    thresh = np.full((n3, min(n1, n2)), float(tau))
    return _shrink_spectral(y, thresh, exploit_symmetry)


def tsvt(y: np.ndarray, tau: float, exploit_symmetry: bool = True) -> np.ndarray:
    """Spectral singular value thresholding: s -> max(s - tau, 0)."""
    x, _, _ = tsvt_with_values(y, tau, exploit_symmetry)
    return x


def weighted_tsvt(y: np.ndarray, w: np.ndarray, exploit_symmetry: bool = True) -> np.ndarray:
    """Per-index spectral shrinkage: s_{i,k} -> max(s_{i,k} - w[i], 0).

    w has length min(n1, n2); the same weight applies to index i in
    every spectral slice.  With w identically tau this equals tsvt.
    """
    y = core.as_tensor3(y)
    n1, n2, n3 = y.shape
    mn = min(n1, n2)
    w = np.asarray(w, dtype=np.float64)
    if w.ndim == 0:
        w = np.full(mn, float(w))
    if w.shape != (mn,):
        raise ValueError(f"expected {mn} weights, got shape {w.shape}")
    if not np.all(np.isfinite(w)) or np.any(w < 0):
        raise ValueError("weights must be finite and non-negative")
    thresh = np.tile(w, (n3, 1))
    x, _, _ = _shrink_spectral(y, thresh, exploit_symmetry)
    return x


def reweighted_weights(y: np.ndarray, c: float, eps: float = 1e-6) -> np.ndarray:
    """Weights w[i] = c / (sbar_i + eps) from the spectral singulars of y.

    sbar_i is the mean over slices of the i-th spectral singular value,
    so larger singulars get smaller weights (they shrink less).
    """
    if c <= 0:
        raise ValueError(f"c must be positive, got {c}")
    if eps <= 0:
        raise ValueError(f"eps must be positive, got {eps}")
    sbar = tprod._spectral_singulars(y).mean(axis=0)
    return c / (sbar + eps)


def soft_threshold(x: np.ndarray, tau: float) -> np.ndarray:
    """Entrywise sign(x) * max(|x| - tau, 0)."""
    if not np.isfinite(tau) or tau < 0:
        raise ValueError(f"threshold must be finite and >= 0, got {tau}")
    x = np.asarray(x, dtype=np.float64)
    return backend.soft_threshold(x, float(tau))


def masked_soft_threshold(x: np.ndarray, weights: np.ndarray, tau: float) -> np.ndarray:
    """Soft threshold with per-entry threshold tau * weights[i, j].

    weights is an (n1, n2) matrix in [0, 1], broadcast along the tubes;
    a zero weight leaves the entry untouched.
    """
    x = core.as_tensor3(x)
    if not np.isfinite(tau) or tau < 0:
        raise ValueError(f"threshold must be finite and >= 0, got {tau}")
    weights = np.asarray(weights, dtype=np.float64)
    if weights.shape != x.shape[:2]:
        raise ValueError(
            f"weights shape {weights.shape} does not match slice shape {x.shape[:2]}"
        )
    if np.any(weights < 0) or np.any(weights > 1) or not np.all(np.isfinite(weights)):
        raise ValueError("weights must lie in [0, 1]")
    thresh = np.ascontiguousarray(
        np.broadcast_to(tau * weights[:, :, None], x.shape), dtype=np.float64
    )
    return backend.soft_threshold_arr(x, thresh)


def _axis_dim(axis: str) -> int:
    if axis not in DIFF_AXES:
        raise ValueError(f"axis must be one of {sorted(DIFF_AXES)}, got {axis!r}")
    return DIFF_AXES[axis]


def diff(x: np.ndarray, axis: str) -> np.ndarray:
    """Circular forward difference along a named axis ('y', 'x', or 't')."""
    x = core.as_tensor3(x)
    return backend.circ_diff(x, _axis_dim(axis))


def diff_adjoint(g: np.ndarray, axis: str) -> np.ndarray:
    """Adjoint of `diff`: <diff(x), g> == <x, diff_adjoint(g)> exactly."""
    g = core.as_tensor3(g)
    return backend.circ_diff_adjoint(g, _axis_dim(axis))
