"""Matrix baselines: SVT, completion, robust PCA, and LR+TV upscaling.

These mirror the tensor solvers in the n3 = 1 limit and serve as the
degenerate-case reference implementations.  The super-resolution solver
recovers a high-resolution image X from Y = decimate(blur(X)) under a
nuclear norm plus anisotropic TV prior, with the data constraint handled
as an augmented-Lagrangian term.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import backend
from .admm import SolverConfig, SolverReport, default_sparse_weight, lagrangian_terms

__all__ = [
    "matrix_rank_tol",
    "nuclear_norm",
    "matrix_svt",
    "lrmc",
    "rpca",
    "DegradationOp",
    "lrtv_super_resolve",
]


def _as_matrix(a) -> np.ndarray:
    arr = np.asarray(a, dtype=np.float64)
    if arr.ndim != 2 or arr.size == 0:
        raise ValueError(f"expected a nonempty matrix, got shape {arr.shape}")
    return arr


def matrix_rank_tol(m: np.ndarray, tol: float = 1e-10) -> int:
    """Rank as the count of singular values above tol * largest."""
    m = _as_matrix(m)
    if not np.all(np.isfinite(m)):
        raise ValueError("matrix entries must be finite")
    if tol < 0:
        raise ValueError(f"tol must be non-negative, got {tol}")
    s = np.linalg.svd(m, compute_uv=False)
    if s[0] == 0.0:
        return 0
    return int((s > tol * s[0]).sum())


def nuclear_norm(m: np.ndarray) -> float:
    """Sum of the singular values."""
    m = _as_matrix(m)
    return float(np.linalg.svd(m, compute_uv=False).sum())


def matrix_svt(y: np.ndarray, tau: float) -> np.ndarray:
    """Singular value thresholding: each s becomes max(s - tau, 0)."""
    y = _as_matrix(y)
    if not np.isfinite(tau) or tau < 0:
        raise ValueError(f"threshold must be finite and >= 0, got {tau}")
    u, s, vh = np.linalg.svd(y, full_matrices=False)
    shrunk = np.maximum(s - tau, 0.0)
    return (u * shrunk) @ vh


def _svt_with_values(y: np.ndarray, tau: float):
    u, s, vh = np.linalg.svd(y, full_matrices=False)
    shrunk = np.maximum(s - tau, 0.0)
    return (u * shrunk) @ vh, shrunk


def lrmc(m: np.ndarray, mask: np.ndarray, cfg: SolverConfig | None = None):
    """Low-rank matrix completion by ADMM on the nuclear norm.

    Observed entries (mask True) are reproduced exactly in the output.
    Returns (x, report).
    """
    m = np.asarray(m, dtype=np.float64)
    mask = np.asarray(mask)
    if m.ndim != 2 or m.size == 0:
        raise ValueError(f"expected a nonempty matrix, got shape {m.shape}")
    if mask.shape != m.shape:
        raise ValueError(f"mask shape {mask.shape} does not match {m.shape}")
    mask = mask.astype(bool)
    if not mask.any():
        raise ValueError("mask must observe at least one entry")
    if not np.all(np.isfinite(m[mask])):
        raise ValueError("observed entries must be finite")
    cfg = cfg or SolverConfig()

    obs = np.where(mask, m, 0.0)
    x = obs.copy()
    z = np.zeros_like(m)
    dual = np.zeros_like(m)
    mu = cfg.mu0
    nuc_z = 0.0
    residuals, obj_trace, al_descent = [], [], []
    converged = False
    it = 0
    for it in range(1, cfg.max_iter + 1):
        al_pre = nuc_z + lagrangian_terms(dual, x - z, mu)
        z, shrunk = _svt_with_values(x + dual / mu, 1.0 / mu)
        nuc_z = float(shrunk.sum())
        x = np.where(mask, obs, z - dual / mu)
        r = x - z
        al_post = nuc_z + lagrangian_terms(dual, r, mu)
        al_descent.append(al_post - al_pre)
        obj_trace.append(nuc_z)
        dual = dual + mu * r
        residuals.append(float(np.abs(r).max()))
        mu = min(cfg.rho * mu, cfg.mu_max)
        if residuals[-1] <= cfg.tol:
            converged = True
            break
    x = np.where(mask, obs, z)
    report = SolverReport(it, residuals, obj_trace[-1], converged, obj_trace, al_descent)
    return x, report


def rpca(m: np.ndarray, lam: float | None = None, cfg: SolverConfig | None = None):
    """Robust PCA: split m into low-rank plus sparse by ADMM.

    Default lam is 1/sqrt(max(m, n)).  Returns (low, sparse, report).
    """
    m = _as_matrix(m)
    if not np.all(np.isfinite(m)):
        raise ValueError("matrix entries must be finite")
    if lam is None:
        lam = default_sparse_weight(m.shape[0], m.shape[1], 1)
    if lam <= 0:
        raise ValueError(f"lam must be positive, got {lam}")
    cfg = cfg or SolverConfig()

    low = np.zeros_like(m)
    sp = np.zeros_like(m)
    dual = np.zeros_like(m)
    mu = cfg.mu0
    nuc_low = 0.0
    residuals, obj_trace, al_descent = [], [], []
    converged = False
    it = 0
    for it in range(1, cfg.max_iter + 1):
        al_pre = nuc_low + lam * np.abs(sp).sum() + lagrangian_terms(dual, m - low - sp, mu)
        low, shrunk = _svt_with_values(m - sp + dual / mu, 1.0 / mu)
        nuc_low = float(shrunk.sum())
        sp = backend.soft_threshold(m - low + dual / mu, lam / mu)
        r = m - low - sp
        obj = nuc_low + lam * np.abs(sp).sum()
        al_post = obj + lagrangian_terms(dual, r, mu)
        al_descent.append(al_post - al_pre)
        obj_trace.append(float(obj))
        dual = dual + mu * r
        residuals.append(float(np.abs(r).max()))
        mu = min(cfg.rho * mu, cfg.mu_max)
        if residuals[-1] <= cfg.tol:
            converged = True
            break
    report = SolverReport(it, residuals, obj_trace[-1], converged, obj_trace, al_descent)
    return low, sp, report


# ---------------------------------------------------------------------------
# degradation operator and super-resolution

@dataclass(frozen=True)
class DegradationOp:
    """Circular blur followed by decimation by an integer factor.

    kernel: 2-D array with odd dimensions summing to 1 within 1e-12.
    factor: decimation step d >= 1 (keep every d-th row and column).
    """

    kernel: np.ndarray
    factor: int

    def __post_init__(self):
        k = np.asarray(self.kernel, dtype=np.float64)
        if k.ndim != 2 or k.shape[0] % 2 == 0 or k.shape[1] % 2 == 0:
            raise ValueError(f"kernel must be 2-D with odd dimensions, got {k.shape}")
        if not np.all(np.isfinite(k)):
            raise ValueError("kernel entries must be finite")
        if abs(k.sum() - 1.0) > 1e-12:
            raise ValueError(f"kernel must sum to 1, got {k.sum()!r}")
        if not (isinstance(self.factor, (int, np.integer)) and self.factor >= 1):
            raise ValueError(f"factor must be an integer >= 1, got {self.factor}")
        object.__setattr__(self, "kernel", k)

    def _kernel_fft(self, shape: tuple[int, int]) -> np.ndarray:
        kh, kw = self.kernel.shape
        if kh > shape[0] or kw > shape[1]:
            raise ValueError(f"kernel {self.kernel.shape} larger than image {shape}")
        pad = np.zeros(shape)
        pad[:kh, :kw] = self.kernel
        # center the kernel on the origin for circular convolution
        pad = np.roll(pad, (-(kh // 2), -(kw // 2)), axis=(0, 1))
        return np.fft.fft2(pad)

    def blur(self, x: np.ndarray) -> np.ndarray:
        x = _as_matrix(x)
        return np.fft.ifft2(np.fft.fft2(x) * self._kernel_fft(x.shape)).real

    def apply(self, x: np.ndarray) -> np.ndarray:
        """Blur then keep every factor-th row/column."""
        x = _as_matrix(x)
        if x.shape[0] % self.factor or x.shape[1] % self.factor:
            raise ValueError(
                f"image shape {x.shape} must be divisible by factor {self.factor}"
            )
        return self.blur(x)[:: self.factor, :: self.factor]

    def adjoint(self, y: np.ndarray) -> np.ndarray:
        """Exact adjoint: zero-fill upsample then correlate."""
        y = _as_matrix(y)
        d = self.factor
        up = np.zeros((y.shape[0] * d, y.shape[1] * d))
        up[::d, ::d] = y
        return np.fft.ifft2(np.fft.fft2(up) * np.conj(self._kernel_fft(up.shape))).real


def _cg(apply_op, rhs, x0, iters=60, rtol=1e-18):
    """Conjugate gradients on an SPD operator, warm-started at x0.

    rtol bounds the squared residual relative to ||rhs||^2, so the
    backward error of the solve sits near 1e-9; anything looser can
    freeze the enclosing ADMM above its constraint tolerance.  The
    quadratic it minimizes decreases monotonically from the warm start,
    which keeps the enclosing ADMM sweep a descent step even when the
    solve is truncated.
    """
    x = x0.copy()
    r = rhs - apply_op(x)
    p = r.copy()
    rs = float(np.vdot(r, r))
    stop = rtol * float(np.vdot(rhs, rhs))
    for _ in range(iters):
        if rs <= stop:
            break
        ap = apply_op(p)
        alpha = rs / float(np.vdot(p, ap))
        x += alpha * p
        r -= alpha * ap
        rs_new = float(np.vdot(r, r))
        p = r + (rs_new / rs) * p
        rs = rs_new
    return x


def lrtv_super_resolve(
    y: np.ndarray,
    op: DegradationOp,
    lam1: float = 1.0,
    lam2: float = 0.1,
    cfg: SolverConfig | None = None,
):
    """Upscale y by ADMM on lam1*||X||_* + lam2*TV(X) s.t. op.apply(X) = y.

    TV is the anisotropic l1 of circular forward differences along both
    image axes.  Returns (x, report) with x of shape y.shape * factor.
    """
    y = _as_matrix(y)
    if not np.all(np.isfinite(y)):
        raise ValueError("observed image must be finite")
    if lam1 < 0 or lam2 < 0:
        raise ValueError("lam1 and lam2 must be non-negative")
    cfg = cfg or SolverConfig()
    d = op.factor
    hr_shape = (y.shape[0] * d, y.shape[1] * d)

    # nearest-neighbour start
    x = np.repeat(np.repeat(y, d, axis=0), d, axis=1)
    z = np.zeros(hr_shape)
    g1 = np.zeros(hr_shape)
    g2 = np.zeros(hr_shape)
    dual_h = np.zeros_like(y)
    dual_z = np.zeros(hr_shape)
    dual_1 = np.zeros(hr_shape)
    dual_2 = np.zeros(hr_shape)
    mu = cfg.mu0
    nuc_z = 0.0

    def dy(a):
        return backend.circ_diff(a, 0)

    def dx(a):
        return backend.circ_diff(a, 1)

    def dy_t(a):
        return backend.circ_diff_adjoint(a, 0)

    def dx_t(a):
        return backend.circ_diff_adjoint(a, 1)

    def normal_op(a):
        return op.adjoint(op.apply(a)) + a + dy_t(dy(a)) + dx_t(dx(a))

    residuals, obj_trace, al_descent = [], [], []
    converged = False
    it = 0
    for it in range(1, cfg.max_iter + 1):
        def al_value(nuc, g1v, g2v, xv, zv):
            val = lam1 * nuc + lam2 * (np.abs(g1v).sum() + np.abs(g2v).sum())
            val += lagrangian_terms(dual_h, op.apply(xv) - y, mu)
            val += lagrangian_terms(dual_z, zv - xv, mu)
            val += lagrangian_terms(dual_1, g1v - dy(xv), mu)
            val += lagrangian_terms(dual_2, g2v - dx(xv), mu)
            return val

        al_pre = al_value(nuc_z, g1, g2, x, z)
        z, shrunk = _svt_with_values(x - dual_z / mu, lam1 / mu)
        nuc_z = float(shrunk.sum())
        if lam2 > 0:
            g1 = backend.soft_threshold(dy(x) - dual_1 / mu, lam2 / mu)
            g2 = backend.soft_threshold(dx(x) - dual_2 / mu, lam2 / mu)
        else:
            g1 = dy(x) - dual_1 / mu
            g2 = dx(x) - dual_2 / mu
        rhs = (
            op.adjoint(y - dual_h / mu)
            + (z + dual_z / mu)
            + dy_t(g1 + dual_1 / mu)
            + dx_t(g2 + dual_2 / mu)
        )
        x = _cg(normal_op, rhs, x)
        r_h = op.apply(x) - y
        r_z = z - x
        r_1 = g1 - dy(x)
        r_2 = g2 - dx(x)
        al_post = al_value(nuc_z, g1, g2, x, z)
        al_descent.append(al_post - al_pre)
        obj = lam1 * nuc_z + lam2 * (np.abs(g1).sum() + np.abs(g2).sum())
        obj_trace.append(float(obj))
        dual_h = dual_h + mu * r_h
        dual_z = dual_z + mu * r_z
        dual_1 = dual_1 + mu * r_1
        dual_2 = dual_2 + mu * r_2
        res = max(
            float(np.abs(r_h).max()),
            float(np.abs(r_z).max()),
            float(np.abs(r_1).max()),
            float(np.abs(r_2).max()),
        )
        residuals.append(res)
        mu = min(cfg.rho * mu, cfg.mu_max)
        if res <= cfg.tol:
            converged = True
            break
    report = SolverReport(it, residuals, obj_trace[-1], converged, obj_trace, al_descent)
    return x, report
