"""Dense third-order tensor containers, slices, and block rearrangements.

Tensors are plain float64 numpy arrays of shape (n1, n2, n3) indexed
[i, j, k]; masks are boolean arrays of the same shape.  All indices in
this package are 0-based.  On disk (see `tensorfile`) entries are laid
out frontal-slice-major: k outermost, then i, then j, so entry (i, j, k)
lives at offset k*n1*n2 + i*n2 + j.

Frontal slice k is the matrix X[:, :, k]; lateral slice j is X[:, j, :];
horizontal slice i is X[i, :, :].  A tube is the fiber X[i, j, :].
"""

from __future__ import annotations

import numpy as np

__all__ = [
    "as_tensor3",
    "as_mask3",
    "frontal_slice",
    "lateral_slice",
    "horizontal_slice",
    "slice3",
    "unfold",
    "fold",
    "bcirc",
    "bvec",
    "bvfold",
    "bdiag",
    "bdfold",
    "twist",
    "squeeze",
    "frobenius_norm",
    "l1_norm",
    "inner_product",
    "project_mask",
]


def as_tensor3(data) -> np.ndarray:
    """Validate and return a third-order tensor as a float64 array.

    Rejects inputs that are not 3-D, have an empty dimension, or carry
    non-finite entries.
    """
    arr = np.asarray(data, dtype=np.float64)
    if arr.ndim != 3:
        raise ValueError(f"expected a 3-D array, got ndim={arr.ndim}")
    if arr.size == 0:
        raise ValueError(f"all three dimensions must be positive, got {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise ValueError("tensor entries must be finite")
    return arr


def as_mask3(data) -> np.ndarray:
    """Validate and return a boolean mask of shape (n1, n2, n3)."""
    arr = np.asarray(data)
    if arr.ndim != 3:
        raise ValueError(f"expected a 3-D mask, got ndim={arr.ndim}")
    if arr.size == 0:
        raise ValueError(f"all three dimensions must be positive, got {arr.shape}")
    if arr.dtype != np.bool_:
        vals = np.unique(arr)
        if not np.all(np.isin(vals, (0, 1))):
            raise ValueError("mask entries must be boolean or 0/1")
        arr = arr.astype(bool)
    return arr


def _check_same_shape(a: np.ndarray, b: np.ndarray) -> None:
    if a.shape != b.shape:
        raise ValueError(f"shape mismatch: {a.shape} vs {b.shape}")


# ---------------------------------------------------------------------------
# slices

def frontal_slice(x: np.ndarray, k: int) -> np.ndarray:
    """Frontal slice X[:, :, k], an n1-by-n2 matrix."""
    x = as_tensor3(x)
    _check_index(k, x.shape[2], "frontal")
    return x[:, :, k].copy()


def lateral_slice(x: np.ndarray, j: int) -> np.ndarray:
    """Lateral slice X[:, j, :], an n1-by-n3 matrix."""
    x = as_tensor3(x)
    _check_index(j, x.shape[1], "lateral")
    return x[:, j, :].copy()


def horizontal_slice(x: np.ndarray, i: int) -> np.ndarray:
    """Horizontal slice X[i, :, :], an n2-by-n3 matrix."""
    x = as_tensor3(x)
    _check_index(i, x.shape[0], "horizontal")
    return x[i, :, :].copy()


def slice3(x: np.ndarray, axis: str, k: int) -> np.ndarray:
    """Extract a horizontal, lateral, or frontal slice by name."""
    funcs = {
        "horizontal": horizontal_slice,
        "lateral": lateral_slice,
        "frontal": frontal_slice,
    }
    if axis not in funcs:
        raise ValueError(f"axis must be one of {sorted(funcs)}, got {axis!r}")
    return funcs[axis](x, k)


def _check_index(k: int, extent: int, what: str) -> None:
    if not 0 <= k < extent:
        raise IndexError(f"{what} index {k} out of range [0, {extent})")


# ---------------------------------------------------------------------------
# unfold / fold

def unfold(x: np.ndarray, mode: int) -> np.ndarray:
    """Mode-l unfolding (l in {1,2,3}).

    Columns are the mode-l fibers ordered lexicographically by the
    remaining indices with the smaller mode varying fastest.
    """
    x = as_tensor3(x)
    if mode not in (1, 2, 3):
        raise ValueError(f"mode must be 1, 2, or 3, got {mode}")
    ax = mode - 1
    return np.reshape(np.moveaxis(x, ax, 0), (x.shape[ax], -1), order="F")


def fold(m: np.ndarray, mode: int, dims: tuple[int, int, int]) -> np.ndarray:
    """Inverse of `unfold`: rebuild the tensor of shape `dims`."""
    m = np.asarray(m, dtype=np.float64)
    if mode not in (1, 2, 3):
        raise ValueError(f"mode must be 1, 2, or 3, got {mode}")
    n1, n2, n3 = dims
    if n1 <= 0 or n2 <= 0 or n3 <= 0:
        raise ValueError(f"dims must be positive, got {dims}")
    ax = mode - 1
    rest = [d for i, d in enumerate(dims) if i != ax]
    if m.shape != (dims[ax], rest[0] * rest[1]):
        raise ValueError(
            f"matrix shape {m.shape} inconsistent with mode-{mode} unfolding of {dims}"
        )
    return np.moveaxis(np.reshape(m, (dims[ax], *rest), order="F"), 0, ax)


# ---------------------------------------------------------------------------
# block rearrangements

def bcirc(x: np.ndarray) -> np.ndarray:
    """Block-circulant matrix of shape (n1*n3, n2*n3).

    Block (r, c) holds frontal slice ((r - c) mod n3); the first block
    column stacks slices 0..n3-1 top to bottom.
    """
    x = as_tensor3(x)
    n1, n2, n3 = x.shape
    out = np.empty((n1 * n3, n2 * n3))
    for r in range(n3):
        for c in range(n3):
            out[r * n1:(r + 1) * n1, c * n2:(c + 1) * n2] = x[:, :, (r - c) % n3]
    return out


def bvec(x: np.ndarray) -> np.ndarray:
    """Stack frontal slices vertically into an (n1*n3)-by-n2 matrix."""
    x = as_tensor3(x)
    n1, n2, n3 = x.shape
    return x.transpose(2, 0, 1).reshape(n3 * n1, n2)


def bvfold(m: np.ndarray, dims: tuple[int, int, int]) -> np.ndarray:
    """Inverse of `bvec` for a tensor of shape `dims`."""
    m = np.asarray(m, dtype=np.float64)
    n1, n2, n3 = dims
    if m.shape != (n1 * n3, n2):
        raise ValueError(f"matrix shape {m.shape} inconsistent with bvec of {dims}")
    return m.reshape(n3, n1, n2).transpose(1, 2, 0)


def bdiag(x: np.ndarray) -> np.ndarray:
    """Block-diagonal matrix with the frontal slices on the diagonal."""
    x = as_tensor3(x)
    n1, n2, n3 = x.shape
    out = np.zeros((n1 * n3, n2 * n3))
    for k in range(n3):
        out[k * n1:(k + 1) * n1, k * n2:(k + 1) * n2] = x[:, :, k]
    return out


def bdfold(m: np.ndarray, dims: tuple[int, int, int]) -> np.ndarray:
    """Inverse of `bdiag`: extract the diagonal blocks into a tensor."""
    m = np.asarray(m, dtype=np.float64)
    n1, n2, n3 = dims
    if m.shape != (n1 * n3, n2 * n3):
        raise ValueError(f"matrix shape {m.shape} inconsistent with bdiag of {dims}")
    out = np.empty((n1, n2, n3))
    for k in range(n3):
        out[:, :, k] = m[k * n1:(k + 1) * n1, k * n2:(k + 1) * n2]
    return out


def twist(x: np.ndarray) -> np.ndarray:
    """Rotate an m-by-n-by-t tensor into m-by-t-by-n.

    Lateral slice k of the result equals frontal slice k of the input:
    twist(x)[i, k, j] == x[i, j, k].
    """
    x = as_tensor3(x)
    return np.transpose(x, (0, 2, 1)).copy()


def squeeze(x: np.ndarray) -> np.ndarray:
    """Inverse of `twist` (the same axis swap)."""
    x = as_tensor3(x)
    return np.transpose(x, (0, 2, 1)).copy()


# ---------------------------------------------------------------------------
# scalar reductions

def frobenius_norm(x: np.ndarray) -> float:
    x = as_tensor3(x)
    return float(np.linalg.norm(x.ravel()))


def l1_norm(x: np.ndarray) -> float:
    x = as_tensor3(x)
    return float(np.abs(x).sum())


def inner_product(x: np.ndarray, y: np.ndarray) -> float:
    """Entrywise inner product <X, Y> = sum_ijk X(i,j,k) Y(i,j,k)."""
    x = as_tensor3(x)
    y = as_tensor3(y)
    _check_same_shape(x, y)
    return float(np.vdot(x.ravel(), y.ravel()))


def project_mask(x: np.ndarray, mask: np.ndarray) -> np.ndarray:
    """Keep entries where mask is True, zero elsewhere."""
    x = as_tensor3(x)
    mask = as_mask3(mask)
    _check_same_shape(x, mask)
    return np.where(mask, x, 0.0)
