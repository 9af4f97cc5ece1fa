"""Seeded synthetic data generators for the recovery experiments.

Every generator takes an integer seed and is deterministic for a fixed
seed.  Generators that build composite scenes return dicts holding the
observation together with its ground-truth parts.
"""

from __future__ import annotations

import numpy as np

from . import tprod

__all__ = [
    "low_tubal_rank",
    "sparse_spikes",
    "missing_mask",
    "surveillance_video",
    "rain_streaks",
    "hsi_cube",
    "submodule_images",
]


def _rng(seed: int) -> np.random.Generator:
    return np.random.default_rng(seed)


def _check_dims(*dims):
    for d in dims:
        if not (isinstance(d, (int, np.integer)) and d >= 1):
            raise ValueError(f"dimensions must be integers >= 1, got {dims}")


def low_tubal_rank(n1: int, n2: int, n3: int, r: int, seed: int = 0) -> np.ndarray:
    """Random tensor of tubal rank at most r with entries of unit scale.

    Built as a t-product of two Gaussian factor tensors, so every
    spectral slice has rank <= r.
    """
    _check_dims(n1, n2, n3)
    if not (1 <= r <= min(n1, n2)):
        raise ValueError(f"need 1 <= r <= {min(n1, n2)}, got r={r}")
    rng = _rng(seed)
    a = rng.standard_normal((n1, r, n3))
    b = rng.standard_normal((r, n2, n3))
    x = tprod.t_product(a, b)
    return x / np.sqrt(r * n3)


def sparse_spikes(
    dims: tuple[int, int, int],
    density: float,
    magnitude: float = 5.0,
    seed: int = 0,
):
    """Random-sign spikes of fixed magnitude on a Bernoulli support.

    Returns (spikes, support_mask).
    """
    _check_dims(*dims)
    if not 0.0 <= density <= 1.0:
        raise ValueError(f"density must be in [0, 1], got {density}")
    if magnitude < 0:
        raise ValueError(f"magnitude must be non-negative, got {magnitude}")
    rng = _rng(seed)
    support = rng.random(dims) < density
    signs = np.where(rng.random(dims) < 0.5, -1.0, 1.0)
    spikes = np.where(support, magnitude * signs, 0.0)
    return spikes, support


def missing_mask(dims: tuple[int, int, int], observe_frac: float, seed: int = 0) -> np.ndarray:
    """Bernoulli observation mask; guaranteed to observe at least one entry."""
    _check_dims(*dims)
    if not 0.0 < observe_frac <= 1.0:
        raise ValueError(f"observe_frac must be in (0, 1], got {observe_frac}")
    rng = _rng(seed)
    mask = rng.random(dims) < observe_frac
    if not mask.any():
        flat = rng.integers(int(np.prod(dims)))
        mask.ravel()[flat] = True
    return mask


def surveillance_video(
    n1: int = 32,
    n2: int = 32,
    n_frames: int = 20,
    block: int = 6,
    block_value: float = 0.8,
    ripple_amp: float = 0.3,
    ripple_period: float = 4.7,
    seed: int = 0,
) -> dict:
    """Static rank-1 background, a moving square, and a rippling band.

    The square of side `block` moves one pixel per frame along a
    diagonal (wrapping), the ripple oscillates sinusoidally in time on a
    fixed horizontal band.  The default period is deliberately not a
    divisor of the frame count, as real dynamic disturbances are not
    locked to the clip length.  Returns a dict with keys video,
    background, foreground, ripple, fg_mask.
    """
    _check_dims(n1, n2, n_frames)
    if not 1 <= block <= min(n1, n2):
        raise ValueError(f"block must be in [1, {min(n1, n2)}], got {block}")
    if ripple_period <= 0:
        raise ValueError(f"ripple_period must be positive, got {ripple_period}")
    rng = _rng(seed)
    u = 0.4 + 0.2 * rng.random(n1)
    v = 0.8 + 0.4 * rng.random(n2)
    background = np.repeat((u[:, None] * v[None, :])[:, :, None], n_frames, axis=2)

    foreground = np.zeros((n1, n2, n_frames))
    fg_mask = np.zeros((n1, n2, n_frames), dtype=bool)
    i0 = rng.integers(n1)
    j0 = rng.integers(n2)
    for k in range(n_frames):
        rows = (np.arange(block) + i0 + k) % n1
        cols = (np.arange(block) + j0 + k) % n2
        foreground[np.ix_(rows, cols, [k])] = block_value
        fg_mask[np.ix_(rows, cols, [k])] = True

    ripple = np.zeros((n1, n2, n_frames))
    band = slice(n1 - max(2, n1 // 8), n1)
    phase = 2.0 * np.pi * rng.random(n2)
    for k in range(n_frames):
        ripple[band, :, k] = (
            ripple_amp * np.sin(2.0 * np.pi * k / ripple_period + phase)[None, :]
        )

    video = background + foreground + ripple
    return {
        "video": video,
        "background": background,
        "foreground": foreground,
        "ripple": ripple,
        "fg_mask": fg_mask,
    }


def rain_streaks(
    n1: int = 32,
    n2: int = 32,
    n3: int = 10,
    density: float = 0.05,
    magnitude: float = 0.8,
    seed: int = 0,
) -> dict:
    """Smooth low-rank background plus bright vertical streak segments.

    Streaks are short vertical runs (constant along their length) added
    until roughly `density` of all pixels are covered.  Returns a dict
    with keys observed, background, rain, rain_mask.
    """
    _check_dims(n1, n2, n3)
    if not 0.0 <= density <= 1.0:
        raise ValueError(f"density must be in [0, 1], got {density}")
    if magnitude < 0:
        raise ValueError(f"magnitude must be non-negative, got {magnitude}")
    rng = _rng(seed)
    ii = np.arange(n1) / n1
    jj = np.arange(n2) / n2
    spatial = 0.5 + 0.2 * np.sin(2.0 * np.pi * ii[:, None] + 1.0) * np.cos(
        2.0 * np.pi * jj[None, :]
    )
    gain = 1.0 + 0.05 * np.sin(2.0 * np.pi * np.arange(n3) / max(n3, 2))
    background = spatial[:, :, None] * gain[None, None, :]

    rain = np.zeros((n1, n2, n3))
    rain_mask = np.zeros((n1, n2, n3), dtype=bool)
    target = density * n1 * n2 * n3
    while rain_mask.sum() < target:
        k = int(rng.integers(n3))
        j = int(rng.integers(n2))
        i = int(rng.integers(n1))
        length = int(rng.integers(3, max(4, n1 // 3)))
        rows = (i + np.arange(length)) % n1
        rain[rows, j, k] = magnitude
        rain_mask[rows, j, k] = True

    return {
        "observed": background + rain,
        "background": background,
        "rain": rain,
        "rain_mask": rain_mask,
    }


def hsi_cube(
    m: int = 32,
    n: int = 32,
    bands: int = 8,
    sigma: float = 0.1,
    impulse_frac: float = 0.05,
    stripes: int = 0,
    seed: int = 0,
) -> dict:
    """Piecewise-constant spectral cube with mixed noise.

    The spatial domain is cut into quadrant-style regions, each with its
    own random spectrum, so the clean cube is low tubal rank and has low
    spatial TV.  Noise: Gaussian (sigma), salt-and-pepper impulses
    replacing a fraction of entries with 0 or 1, and optional column
    stripes.  Returns a dict with keys noisy, clean, impulse_mask.
    """
    _check_dims(m, n, bands)
    if sigma < 0 or not 0.0 <= impulse_frac <= 1.0 or stripes < 0:
        raise ValueError("sigma >= 0, impulse_frac in [0, 1], stripes >= 0 required")
    rng = _rng(seed)
    cuts_i = sorted(rng.choice(np.arange(4, m - 4), size=1, replace=False)) if m > 8 else [m // 2]
    cuts_j = sorted(rng.choice(np.arange(4, n - 4), size=1, replace=False)) if n > 8 else [n // 2]
    region = np.zeros((m, n), dtype=int)
    region[cuts_i[0]:, :] += 1
    region[:, cuts_j[0]:] += 2
    n_regions = 4
    spectra = 0.2 + 0.6 * rng.random((n_regions, bands))
    clean = spectra[region]

    noisy = clean + sigma * rng.standard_normal(clean.shape)
    impulse_mask = rng.random(clean.shape) < impulse_frac
    salt = rng.random(clean.shape) < 0.5
    noisy = np.where(impulse_mask, np.where(salt, 1.0, 0.0), noisy)
    for _ in range(stripes):
        b = int(rng.integers(bands))
        j = int(rng.integers(n))
        noisy[:, j, b] += 0.2 * (1.0 if rng.random() < 0.5 else -1.0)
    return {"noisy": noisy, "clean": clean, "impulse_mask": impulse_mask}


def submodule_images(
    n1: int = 16,
    n3: int = 8,
    clusters: int = 3,
    per_cluster: int = 15,
    sub_rank: int = 2,
    seed: int = 0,
):
    """Images drawn from random free submodules of tubal dimension sub_rank.

    Each cluster gets a Gaussian basis tensor (n1 x sub_rank x n3);
    images are t-linear combinations of its lateral slices.  Returns
    (images tensor of shape (n1, clusters*per_cluster, n3), labels).
    """
    _check_dims(n1, n3)
    if clusters < 1 or per_cluster < 1 or sub_rank < 1:
        raise ValueError("clusters, per_cluster, and sub_rank must be >= 1")
    rng = _rng(seed)
    slices = []
    labels = []
    for c in range(clusters):
        basis = rng.standard_normal((n1, sub_rank, n3))
        for _ in range(per_cluster):
            coeff = rng.standard_normal((sub_rank, 1, n3))
            img = tprod.t_product(basis, coeff)[:, 0, :]
            img = img / max(np.linalg.norm(img), 1e-12)
            slices.append(img)
            labels.append(c + 1)
    y = np.stack(slices, axis=1)
    return y, np.asarray(labels)
