"""Clustering of images lying near a union of free submodules.

Images (n1 x n3 matrices) are stacked as lateral slices of a tensor and
self-represented through the t-product: Y ~= Y * Z with a nuclear
penalty on Z and a dissimilarity-masked l1 that discourages tubes
linking unalike images.  The tube norms of Z then feed a standard
normalized spectral clustering.
"""

from __future__ import annotations

import numpy as np

from . import core, prox, spectral, tprod
from .admm import SolverConfig, SolverReport, lagrangian_terms

__all__ = [
    "stack_images",
    "dissimilarity_matrix",
    "solve_representation",
    "affinity",
    "spectral_cluster",
]


def stack_images(images) -> np.ndarray:
    """Stack N images of shape (n1, n3) into an (n1, N, n3) tensor.

    Image j becomes lateral slice j, so squeeze-ing that slice returns
    the image.
    """
    mats = [np.asarray(im, dtype=np.float64) for im in images]
    if len(mats) < 2:
        raise ValueError(f"need at least two images, got {len(mats)}")
    shape = mats[0].shape
    if len(shape) != 2 or shape[0] == 0 or shape[1] == 0:
        raise ValueError(f"images must be nonempty matrices, got shape {shape}")
    for i, m in enumerate(mats):
        if m.shape != shape:
            raise ValueError(f"image {i} has shape {m.shape}, expected {shape}")
        if not np.all(np.isfinite(m)):
            raise ValueError(f"image {i} has non-finite entries")
    return np.stack(mats, axis=1)


def dissimilarity_matrix(y: np.ndarray) -> np.ndarray:
    """Pairwise dissimilarity 1 - |corr| between lateral slices.

    corr is the Pearson correlation of the vectorized images; a
    zero-variance image is maximally dissimilar (1) to every other.
    The result is symmetric with a zero diagonal, entries in [0, 1].
    """
    y = core.as_tensor3(y)
    n = y.shape[1]
    if n < 2:
        raise ValueError(f"need at least two images, got {n}")
    flat = y.transpose(1, 0, 2).reshape(n, -1)
    centered = flat - flat.mean(axis=1, keepdims=True)
    norms = np.linalg.norm(centered, axis=1)
    ok = norms > 0
    safe = np.where(ok, norms, 1.0)
    unit = centered / safe[:, None]
    corr = np.abs(unit @ unit.T)
    corr[~ok, :] = 0.0
    corr[:, ~ok] = 0.0
    m = 1.0 - np.clip(corr, 0.0, 1.0)
    m = 0.5 * (m + m.T)
    np.fill_diagonal(m, 0.0)
    return np.clip(m, 0.0, 1.0)


def _check_dissimilarity(m: np.ndarray, n: int) -> np.ndarray:
    m = np.asarray(m, dtype=np.float64)
    if m.shape != (n, n):
        raise ValueError(f"dissimilarity must be ({n}, {n}), got {m.shape}")
    if not np.all(np.isfinite(m)):
        raise ValueError("dissimilarity entries must be finite")
    if np.any(m < 0) or np.any(m > 1):
        raise ValueError("dissimilarity entries must lie in [0, 1]")
    if np.abs(m - m.T).max() > 1e-12:
        raise ValueError("dissimilarity must be symmetric")
    if np.abs(np.diag(m)).max() > 0:
        raise ValueError("dissimilarity diagonal must be zero")
    return m


def solve_representation(
    y: np.ndarray,
    m: np.ndarray,
    lam1: float,
    lam2: float,
    cfg: SolverConfig | None = None,
):
    """Self-representation Z for Y ~= Y * Z by ADMM.

    Minimizes the spectral nuclear penalty on Z plus
    lam1 * sum_k ||m .* Z^(k)||_1 plus lam2 * ||Y - Y*Z||_F^2 through
    splits Z = C (nuclear) and Z = Q (masked l1); the Z block solves a
    regularized least-squares system per spectral slice.  Returns
    (z, report).
    """
    y = core.as_tensor3(y)
    n1, n, n3 = y.shape
    m = _check_dissimilarity(m, n)
    if lam1 < 0 or lam2 < 0:
        raise ValueError("lam1 and lam2 must be non-negative")
    cfg = cfg or SolverConfig()

    yf = np.fft.fft(y, axis=2)
    half = n3 // 2 + 1
    grams = [yf[:, :, k].conj().T @ yf[:, :, k] for k in range(half)]
    eye = np.eye(n)

    z = np.zeros((n, n, n3))
    c = np.zeros_like(z)
    q = np.zeros_like(z)
    yc = np.zeros_like(z)
    yq = np.zeros_like(z)
    mu = cfg.mu0
    nuc_c = 0.0

    def data_term(zt):
        return float(((y - tprod.t_product(y, zt)) ** 2).sum())

    residuals, obj_trace, al_descent = [], [], []
    converged = False
    it = 0
    for it in range(1, cfg.max_iter + 1):
        def al_value(ztv):
            val = nuc_c + lam1 * float((np.abs(q) * m[:, :, None]).sum())
            val += lam2 * ztv
            val += lagrangian_terms(yc, z - c, mu)
            val += lagrangian_terms(yq, z - q, mu)
            return val

        al_pre = al_value(data_term(z))
        c, _, shrunk = prox.tsvt_with_values(z + yc / mu, 1.0 / mu)
        nuc_c = float(shrunk.sum()) / n3
        q = prox.masked_soft_threshold(z + yq / mu, m, lam1 / mu)

        cf = np.fft.fft(c, axis=2)
        qf = np.fft.fft(q, axis=2)
        ycf = np.fft.fft(yc, axis=2)
        yqf = np.fft.fft(yq, axis=2)
        zf_half = np.empty((half, n, n), dtype=np.complex128)
        for k in range(half):
            lhs = 2.0 * lam2 * grams[k] + 2.0 * mu * eye
            rhs = (
                2.0 * lam2 * grams[k]
                + mu * (cf[:, :, k] + qf[:, :, k])
                - (ycf[:, :, k] + yqf[:, :, k])
            )
            zf_half[k] = np.linalg.solve(lhs, rhs)
        zf = np.moveaxis(spectral.mirror_slices(zf_half, n3), 0, 2)
        z = np.fft.ifft(zf, axis=2).real

        rc = z - c
        rq = z - q
        al_post = al_value(data_term(z))
        al_descent.append(al_post - al_pre)
        obj = (
            nuc_c
            + lam1 * float((np.abs(q) * m[:, :, None]).sum())
            + lam2 * data_term(z)
        )
        obj_trace.append(float(obj))
        yc = yc + mu * rc
        yq = yq + mu * rq
        residuals.append(max(float(np.abs(rc).max()), float(np.abs(rq).max())))
        mu = min(cfg.rho * mu, cfg.mu_max)
        if residuals[-1] <= cfg.tol:
            converged = True
            break
    report = SolverReport(it, residuals, obj_trace[-1], converged, obj_trace, al_descent)
    return z, report


def affinity(z: np.ndarray) -> np.ndarray:
    """Symmetric affinity w[i, j] = ||z[i, j, :]|| + ||z[j, i, :]||."""
    z = core.as_tensor3(z)
    if z.shape[0] != z.shape[1]:
        raise ValueError(f"representation must have square slices, got {z.shape}")
    tubes = np.linalg.norm(z, axis=2)
    return tubes + tubes.T


def _kmeans_pp_init(points: np.ndarray, k: int, rng: np.random.Generator) -> np.ndarray:
    n = points.shape[0]
    centers = np.empty((k, points.shape[1]))
    idx = int(rng.integers(n))
    centers[0] = points[idx]
    d2 = ((points - centers[0]) ** 2).sum(axis=1)
    for j in range(1, k):
        total = d2.sum()
        if total <= 0:
            idx = int(rng.integers(n))
        else:
            idx = int(rng.choice(n, p=d2 / total))
        centers[j] = points[idx]
        d2 = np.minimum(d2, ((points - centers[j]) ** 2).sum(axis=1))
    return centers


def _kmeans(points: np.ndarray, k: int, rng: np.random.Generator,
            restarts: int = 20, iters: int = 100):
    best_labels = None
    best_inertia = np.inf
    for _ in range(restarts):
        centers = _kmeans_pp_init(points, k, rng)
        labels = np.zeros(points.shape[0], dtype=int)
        for _ in range(iters):
            dists = ((points[:, None, :] - centers[None, :, :]) ** 2).sum(axis=2)
            new_labels = dists.argmin(axis=1)
            for j in range(k):
                sel = new_labels == j
                if sel.any():
                    centers[j] = points[sel].mean(axis=0)
                else:
                    # re-seed an empty cluster at the farthest point
                    far = int(dists.min(axis=1).argmax())
                    centers[j] = points[far]
                    new_labels[far] = j
            if np.array_equal(new_labels, labels):
                labels = new_labels
                break
            labels = new_labels
        inertia = float(
            ((points - centers[labels]) ** 2).sum()
        )
        if inertia < best_inertia - 1e-12:
            best_inertia = inertia
            best_labels = labels.copy()
    return best_labels


def spectral_cluster(w: np.ndarray, n_clusters: int, seed: int = 0) -> np.ndarray:
    """Normalized spectral clustering of a symmetric affinity matrix.

    Embeds each node in the n_clusters smallest eigenvectors of the
    symmetric normalized Laplacian, row-normalizes, and runs k-means
    (k-means++ init, 20 restarts, fixed seed).  Returns integer labels
    in 1..n_clusters with every cluster nonempty.
    """
    w = np.asarray(w, dtype=np.float64)
    if w.ndim != 2 or w.shape[0] != w.shape[1] or w.size == 0:
        raise ValueError(f"affinity must be a nonempty square matrix, got {w.shape}")
    n = w.shape[0]
    if not (2 <= n_clusters <= n):
        raise ValueError(f"n_clusters must be in [2, {n}], got {n_clusters}")
    if np.any(w < 0) or not np.all(np.isfinite(w)):
        raise ValueError("affinity entries must be finite and non-negative")
    if np.abs(w - w.T).max() > 1e-10 * max(1.0, np.abs(w).max()):
        raise ValueError("affinity must be symmetric")
    if not np.any(w > 0):
        raise ValueError("affinity graph is empty (all weights zero)")

    deg = w.sum(axis=1)
    dinv = np.where(deg > 0, 1.0 / np.sqrt(np.where(deg > 0, deg, 1.0)), 0.0)
    lsym = np.eye(n) - dinv[:, None] * w * dinv[None, :]
    lsym = 0.5 * (lsym + lsym.T)
    _, vecs = np.linalg.eigh(lsym)
    embed = vecs[:, :n_clusters]
    norms = np.linalg.norm(embed, axis=1)
    embed = embed / np.where(norms > 0, norms, 1.0)[:, None]
    rng = np.random.default_rng(seed)
    return _kmeans(embed, n_clusters, rng) + 1
