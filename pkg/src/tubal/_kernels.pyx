# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled spectral-shrink kernel.

The hot loop of every nuclear-norm solver is an SVD of each spectral
slice followed by singular-value shrinkage and reconstruction.  This
module runs that loop through LAPACK's divide-and-conquer driver with
buffers allocated once per batch.

A C-ordered (n1, n2) slice read column-major is the transpose of the
matrix it stores.  Shrinkage commutes with transposition, so the kernel
factors that transpose in place and writes the reconstruction straight
back in column-major order; no transposes are ever materialised and the
singular values come out identical either way.

The elementwise helpers at the bottom mirror `_kernels_py` exactly; they
exist so either backend exposes one interface.
"""

import numpy as np

from libc.string cimport memcpy
from scipy.linalg.cython_blas cimport zgemm
from scipy.linalg.cython_lapack cimport zgesdd

BACKEND = "compiled"


def svd_shrink_slices(slices, thresh):
    """Shrink the singular values of a stack of complex matrices.

    Parameters
    ----------
    slices : (m, n1, n2) complex128, C-contiguous
    thresh : (m, k) float64 with k = min(n1, n2), per-slice thresholds

    Returns
    -------
    out : (m, n1, n2) complex128, slice-wise u @ diag((s - thresh)+) @ vh
    sing : (m, k) float64, the unshrunk singular values, descending
    """
    slices = np.ascontiguousarray(slices, dtype=np.complex128)
    thresh = np.ascontiguousarray(thresh, dtype=np.float64)
    if slices.ndim != 3:
        raise ValueError("expected a (m, n1, n2) slice stack")
    cdef Py_ssize_t m = slices.shape[0]
    cdef Py_ssize_t n1 = slices.shape[1]
    cdef Py_ssize_t n2 = slices.shape[2]
    cdef Py_ssize_t kmin = min(n1, n2)
    if thresh.shape[0] != m or thresh.shape[1] != kmin:
        raise ValueError("threshold array must be (m, min(n1, n2))")

    out = np.empty((m, n1, n2), dtype=np.complex128)
    sing = np.empty((m, kmin), dtype=np.float64)
    if m == 0:
        return out, sing

    # column-major dimensions of the transposed slice
    cdef int mrow = <int> n2
    cdef int ncol = <int> n1
    cdef int k = <int> kmin
    cdef int info = 0
    cdef int lwork = -1
    cdef char jobz = b'S'

    cdef Py_ssize_t lrwork = max(
        1,
        5 * kmin * kmin + 7 * kmin,
        2 * max(n1, n2) * kmin + 2 * kmin * kmin + kmin,
    )
    a_buf = np.empty(n1 * n2, dtype=np.complex128)
    u_buf = np.empty(n2 * kmin, dtype=np.complex128)
    vt_buf = np.empty(kmin * n1, dtype=np.complex128)
    s_buf = np.empty(kmin, dtype=np.float64)
    rwork_buf = np.empty(lrwork, dtype=np.float64)
    iwork_buf = np.empty(8 * kmin, dtype=np.intc)

    cdef double complex[:, :, ::1] src = slices
    cdef double complex[:, :, ::1] dst = out
    cdef double[:, ::1] thr = thresh
    cdef double[:, ::1] sng = sing
    cdef double complex[::1] a = a_buf
    cdef double complex[::1] u = u_buf
    cdef double complex[::1] vt = vt_buf
    cdef double[::1] s = s_buf
    cdef double[::1] rwork = rwork_buf
    cdef int[::1] iwork = iwork_buf

    # workspace query
    cdef double complex wk_query
    zgesdd(&jobz, &mrow, &ncol, &a[0], &mrow, &s[0], &u[0], &mrow,
           &vt[0], &k, &wk_query, &lwork, &rwork[0], &iwork[0], &info)
    if info != 0:
        raise RuntimeError("workspace query failed (info=%d)" % info)
    lwork = <int> wk_query.real
    work_buf = np.empty(lwork, dtype=np.complex128)
    cdef double complex[::1] work = work_buf

    cdef double complex one = 1.0
    cdef double complex zero = 0.0
    cdef char no_trans = b'N'
    cdef Py_ssize_t i, j, r
    cdef Py_ssize_t slice_elems = n1 * n2
    cdef double sv
    cdef int bad = 0

    with nogil:
        for i in range(m):
            memcpy(&a[0], &src[i, 0, 0], slice_elems * sizeof(double complex))
            zgesdd(&jobz, &mrow, &ncol, &a[0], &mrow, &s[0], &u[0], &mrow,
                   &vt[0], &k, &work[0], &lwork, &rwork[0], &iwork[0], &info)
            if info != 0:
                bad = info
                break
            for j in range(kmin):
                sng[i, j] = s[j]
                sv = s[j] - thr[i, j]
                if sv < 0.0:
                    sv = 0.0
                for r in range(mrow):
                    u[j * mrow + r] = u[j * mrow + r] * sv
            zgemm(&no_trans, &no_trans, &mrow, &ncol, &k, &one, &u[0], &mrow,
                  &vt[0], &k, &zero, &dst[i, 0, 0], &mrow)
    if bad != 0:
        raise np.linalg.LinAlgError(
            "spectral slice SVD did not converge (info=%d)" % bad
        )
    return out, sing


def soft_threshold(x, tau):
    """Elementwise shrinkage sign(x) * max(|x| - tau, 0)."""
    return np.sign(x) * np.maximum(np.abs(x) - tau, 0.0)


def soft_threshold_arr(x, tau):
    """Shrinkage with an elementwise threshold array."""
    return np.sign(x) * np.maximum(np.abs(x) - tau, 0.0)


def circ_diff(x, axis):
    """Circular forward difference along one axis."""
    return np.roll(x, -1, axis=axis) - x


def circ_diff_adjoint(g, axis):
    """Adjoint of `circ_diff` (circular backward difference, negated)."""
    return np.roll(g, 1, axis=axis) - g
