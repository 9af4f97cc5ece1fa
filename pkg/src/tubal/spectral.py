"""Tube-wise DFT, conjugate symmetry helpers, and complex SVD.

The forward transform applies an unnormalized DFT along mode 3 (the
tubes); the inverse carries the 1/n3 factor.  For a real tensor the
spectral slices satisfy slice(k) == conj(slice(n3 - k)) for k >= 1,
which lets downstream code factor only ceil((n3+1)/2) slices and mirror
the rest.
"""

from __future__ import annotations

import numpy as np

from . import core

__all__ = [
    "to_spectral",
    "from_spectral",
    "complex_svd",
    "half_slice_count",
    "mirror_slices",
    "SpectralSymmetryError",
    "SvdConvergenceError",
]


class SpectralSymmetryError(ValueError):
    """Spectral slices do not satisfy conjugate symmetry."""


class SvdConvergenceError(RuntimeError):
    """The underlying SVD iteration failed to converge."""


def to_spectral(x: np.ndarray) -> np.ndarray:
    """Unnormalized DFT along mode 3; returns a complex (n1, n2, n3) array."""
    x = core.as_tensor3(x)
    return np.fft.fft(x, axis=2)


def from_spectral(s: np.ndarray, tol: float = 1e-8) -> np.ndarray:
    """Inverse DFT along mode 3, returning a real tensor.

    Requires conjugate symmetry within `tol` (relative, Frobenius);
    raises SpectralSymmetryError otherwise.
    """
    s = np.asarray(s, dtype=np.complex128)
    if s.ndim != 3 or s.size == 0:
        raise ValueError(f"expected a nonempty 3-D spectral array, got {s.shape}")
    n3 = s.shape[2]
    mirror = np.conj(s[:, :, (-np.arange(n3)) % n3])
    scale = np.linalg.norm(s.ravel())
    err = np.linalg.norm((s - mirror).ravel())
    if err > tol * max(scale, np.finfo(np.float64).tiny):
        raise SpectralSymmetryError(
            f"conjugate symmetry violated: relative error {err / max(scale, 1e-300):.3e}"
        )
    return np.fft.ifft(s, axis=2).real


def half_slice_count(n3: int) -> int:
    """Number of spectral slices that must be computed explicitly."""
    return n3 // 2 + 1


def mirror_slices(slices: np.ndarray, n3: int) -> np.ndarray:
    """Extend the first half_slice_count(n3) slices to all n3 by conjugation.

    `slices` has shape (half, n1, n2) slice-major; returns (n3, n1, n2).
    """
    half = half_slice_count(n3)
    if slices.shape[0] != half:
        raise ValueError(f"expected {half} slices, got {slices.shape[0]}")
    out = np.empty((n3, *slices.shape[1:]), dtype=slices.dtype)
    out[:half] = slices
    for k in range(half, n3):
        out[k] = np.conj(slices[n3 - k])
    return out


def complex_svd(a: np.ndarray, full_matrices: bool = False):
    """SVD of a complex (or real) matrix with a deterministic phase.

    Returns (u, s, v) with a = u @ diag(s) @ v.conj().T, s real
    non-negative non-increasing.  Each column of u is rotated so that its
    largest-magnitude entry is real and non-negative (ties broken by the
    lowest row index, which is what argmax returns); the matching column
    of v gets the same rotation so the product is unchanged.
    """
    a = np.asarray(a)
    if a.ndim != 2:
        raise ValueError(f"expected a matrix, got ndim={a.ndim}")
    try:
        u, s, vh = np.linalg.svd(a, full_matrices=full_matrices)
    except np.linalg.LinAlgError as exc:
        raise SvdConvergenceError(
            f"SVD failed to converge on a {a.shape} matrix (|a|_F={np.linalg.norm(a):.3e})"
        ) from exc
    u = np.ascontiguousarray(u)
    v = np.ascontiguousarray(vh.conj().T)
    k = s.shape[0]
    for j in range(u.shape[1]):
        idx = int(np.argmax(np.abs(u[:, j])))
        mag = abs(u[idx, j])
        if mag == 0.0:
            continue
        phase = u[idx, j] / mag
        u[:, j] = u[:, j] * np.conj(phase)
        if j < k and j < v.shape[1]:
            v[:, j] = v[:, j] * np.conj(phase)
    if full_matrices:
        for j in range(k, v.shape[1]):
            idx = int(np.argmax(np.abs(v[:, j])))
            mag = abs(v[idx, j])
            if mag == 0.0:
                continue
            phase = v[idx, j] / mag
            v[:, j] = v[:, j] * np.conj(phase)
    return u, s, v
