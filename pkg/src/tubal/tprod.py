"""t-product algebra: products, transpose, factorization, rank, norm.

The t-product of x (n1 x n2 x n3) and y (n2 x n4 x n3) multiplies
matching spectral slices after a tube-wise DFT, which is equivalent to
bvfold(bcirc(x) @ bvec(y)) but costs O(n1 n2 n4 n3) plus the transforms
instead of materializing the block circulant.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import core, spectral

__all__ = [
    "t_product",
    "t_transpose",
    "identity_tensor",
    "TSvdFactors",
    "t_svd",
    "multirank",
    "tnn",
    "is_unitary",
]


def t_product(x: np.ndarray, y: np.ndarray) -> np.ndarray:
    """t-product z = x * y via slice-wise products in the spectral domain."""
    x = core.as_tensor3(x)
    y = core.as_tensor3(y)
    n1, n2, n3 = x.shape
    m2, n4, m3 = y.shape
    if n2 != m2 or n3 != m3:
        raise ValueError(
            f"inner dimensions must agree: {x.shape} * {y.shape}"
        )
    xf = np.fft.fft(x, axis=2).transpose(2, 0, 1)
    yf = np.fft.fft(y, axis=2).transpose(2, 0, 1)
    zf = np.matmul(xf, yf)
    return np.fft.ifft(zf.transpose(1, 2, 0), axis=2).real


def t_transpose(x: np.ndarray) -> np.ndarray:
    """Transpose each frontal slice and reverse the order of slices 1..n3-1."""
    x = core.as_tensor3(x)
    n3 = x.shape[2]
    idx = np.concatenate(([0], np.arange(n3 - 1, 0, -1)))
    return np.ascontiguousarray(x.transpose(1, 0, 2)[:, :, idx])


def identity_tensor(n: int, n3: int) -> np.ndarray:
    """Identity for the t-product: frontal slice 0 is I_n, the rest zero."""
    if n <= 0 or n3 <= 0:
        raise ValueError(f"dimensions must be positive, got n={n}, n3={n3}")
    e = np.zeros((n, n, n3))
    e[:, :, 0] = np.eye(n)
    return e


@dataclass(frozen=True)
class TSvdFactors:
    """Factors of a t-SVD x = u * s * t_transpose(v).

    u is n1 x n1 x n3, s is n1 x n2 x n3 and f-diagonal, v is n2 x n2 x n3.
    spectral_singulars[k] holds the singular values of spectral slice k,
    non-negative and non-increasing.
    """

    u: np.ndarray
    s: np.ndarray
    v: np.ndarray
    spectral_singulars: np.ndarray


def t_svd(x: np.ndarray) -> TSvdFactors:
    """Full t-SVD computed slice-wise in the spectral domain.

    Only the first half of the spectral slices is factored; the mirrored
    slices are filled by conjugation, which keeps the inverse transform
    exactly real.
    """
    x = core.as_tensor3(x)
    n1, n2, n3 = x.shape
    mn = min(n1, n2)
    xf = np.fft.fft(x, axis=2)
    half = spectral.half_slice_count(n3)

    uf = np.empty((n1, n1, n3), dtype=np.complex128)
    vf = np.empty((n2, n2, n3), dtype=np.complex128)
    sing = np.empty((n3, mn))
    for k in range(half):
        a = xf[:, :, k]
        if k == 0 or (n3 % 2 == 0 and k == n3 // 2):
            # these slices are exactly real for real input; keep the
            # factors real so conjugate symmetry is exact
            a = a.real
        u, s, v = spectral.complex_svd(a, full_matrices=True)
        uf[:, :, k] = u
        vf[:, :, k] = v
        sing[k] = s
    for k in range(half, n3):
        uf[:, :, k] = np.conj(uf[:, :, n3 - k])
        vf[:, :, k] = np.conj(vf[:, :, n3 - k])
        sing[k] = sing[n3 - k]

    sf = np.zeros((n1, n2, n3), dtype=np.complex128)
    ii = np.arange(mn)
    for k in range(n3):
        sf[ii, ii, k] = sing[k]

    u = spectral.from_spectral(uf)
    s = spectral.from_spectral(sf)
    v = spectral.from_spectral(vf)
    return TSvdFactors(u=u, s=s, v=v, spectral_singulars=sing)


def _spectral_singulars(x: np.ndarray) -> np.ndarray:
    """Singular values of every spectral slice, shape (n3, min(n1, n2))."""
    x = core.as_tensor3(x)
    xf = np.fft.fft(x, axis=2).transpose(2, 0, 1)
    try:
        return np.linalg.svd(np.ascontiguousarray(xf), compute_uv=False)
    except np.linalg.LinAlgError as exc:
        raise spectral.SvdConvergenceError(
            f"SVD failed to converge on spectral slices of shape {x.shape}"
        ) from exc


def multirank(x: np.ndarray, tol: float = 1e-10) -> np.ndarray:
    """Per-slice spectral ranks: counts of singulars > tol * slice max."""
    if tol < 0:
        raise ValueError(f"tol must be non-negative, got {tol}")
    sing = _spectral_singulars(x)
    cut = tol * sing.max(axis=1, keepdims=True)
    return (sing > cut).sum(axis=1)


def tnn(x: np.ndarray) -> float:
    """Tensor nuclear norm: the sum of all spectral singular values.

    Equals the matrix nuclear norm of bcirc(x).
    """
    return float(_spectral_singulars(x).sum())


def is_unitary(u: np.ndarray, tol: float = 1e-10) -> bool:
    """Whether u^T * u and u * u^T both equal the identity tensor within tol."""
    u = core.as_tensor3(u)
    n1, n2, n3 = u.shape
    if n1 != n2:
        raise ValueError(f"unitary check requires square slices, got {u.shape}")
    eye = identity_tensor(n1, n3)
    ut = t_transpose(u)
    left = core.frobenius_norm(t_product(ut, u) - eye)
    right = core.frobenius_norm(t_product(u, ut) - eye)
    return bool(left <= tol and right <= tol)
