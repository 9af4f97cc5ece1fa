"""Independent slow-path oracles used to pin expected values in tests.

Everything here is deliberately naive: direct O(n^2) DFT sums, the
materialized block-circulant product, Gram-matrix eigenvalues, and 1-D
grid searches.  None of it shares code with the package internals.
"""

import numpy as np

from tubal import core


def naive_dft3(x):
    """O(n3^2) forward DFT along the tubes, by the definition sum."""
    n1, n2, n3 = x.shape
    out = np.zeros((n1, n2, n3), dtype=np.complex128)
    for k in range(n3):
        for t in range(n3):
            out[:, :, k] += x[:, :, t] * np.exp(-2j * np.pi * k * t / n3)
    return out


def naive_idft3(s):
    """O(n3^2) inverse DFT along the tubes with the 1/n3 factor."""
    n1, n2, n3 = s.shape
    out = np.zeros((n1, n2, n3), dtype=np.complex128)
    for t in range(n3):
        for k in range(n3):
            out[:, :, t] += s[:, :, k] * np.exp(2j * np.pi * k * t / n3)
    return out / n3


def tprod_bcirc(a, b):
    """t-product via the materialized bcirc(a) @ bvec(b) definition."""
    return core.bvfold(core.bcirc(a) @ core.bvec(b), (a.shape[0], b.shape[1], a.shape[2]))


def bcirc_nuclear(x):
    """Nuclear norm of the materialized block circulant matrix."""
    return float(np.linalg.svd(core.bcirc(x), compute_uv=False).sum())


def gram_singulars(a):
    """Singular values of a complex matrix from eigenvalues of a^H a."""
    evals = np.linalg.eigvalsh(a.conj().T @ a)
    evals = np.clip(evals, 0.0, None)
    return np.sqrt(evals)[::-1]


def spectral_singulars_naive(x):
    """Per-spectral-slice singular values via the naive DFT, descending."""
    s = naive_dft3(x)
    return np.stack(
        [np.linalg.svd(s[:, :, k], compute_uv=False) for k in range(x.shape[2])]
    )


def prox_l1_grid(v, tau, span=10.0, steps=200001):
    """Brute-force minimizer of tau*|s| + 0.5*(s - v)^2 over a 1-D grid."""
    grid = np.linspace(-span, span, steps)
    costs = tau * np.abs(grid) + 0.5 * (grid - v) ** 2
    return grid[np.argmin(costs)]
