# cython: boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled cyclic Jacobi sweeps for complex Hermitian matrices.

Works on float64 views of the complex arrays (real and imaginary parts
interleaved), so every update is plain real arithmetic.
"""

import numpy as np

from libc.math cimport sqrt, fabs, hypot


cdef inline double _offdiag_sq(double[:, ::1] a, Py_ssize_t n) noexcept nogil:
    cdef Py_ssize_t i, j
    cdef double s = 0.0
    for i in range(n):
        for j in range(i + 1, n):
            s += a[i, 2 * j] * a[i, 2 * j] + a[i, 2 * j + 1] * a[i, 2 * j + 1]
    return 2.0 * s


cdef inline void _rotate_cols(double[:, ::1] a, Py_ssize_t n, Py_ssize_t p, Py_ssize_t q,
                              double c, double s, double wr, double wi) noexcept nogil:
    # col_p <- c col_p - s w col_q ; col_q <- s col_p + c w col_q
    cdef Py_ssize_t k
    cdef double xr, xi, yr, yi, zr, zi
    for k in range(n):
        xr = a[k, 2 * p]
        xi = a[k, 2 * p + 1]
        yr = a[k, 2 * q]
        yi = a[k, 2 * q + 1]
        zr = wr * yr - wi * yi
        zi = wr * yi + wi * yr
        a[k, 2 * p] = c * xr - s * zr
        a[k, 2 * p + 1] = c * xi - s * zi
        a[k, 2 * q] = s * xr + c * zr
        a[k, 2 * q + 1] = s * xi + c * zi


cdef inline void _rotate_rows(double[:, ::1] a, Py_ssize_t n, Py_ssize_t p, Py_ssize_t q,
                              double c, double s, double wr, double wi) noexcept nogil:
    cdef Py_ssize_t k
    cdef double xr, xi, yr, yi, zr, zi
    for k in range(n):
        xr = a[p, 2 * k]
        xi = a[p, 2 * k + 1]
        yr = a[q, 2 * k]
        yi = a[q, 2 * k + 1]
        zr = wr * yr - wi * yi
        zi = wr * yi + wi * yr
        a[p, 2 * k] = c * xr - s * zr
        a[p, 2 * k + 1] = c * xi - s * zi
        a[q, 2 * k] = s * xr + c * zr
        a[q, 2 * k + 1] = s * xi + c * zi


cdef int _sweeps(double[:, ::1] a, double[:, ::1] v, Py_ssize_t n,
                 double off_tol, int max_sweeps) noexcept nogil:
    cdef Py_ssize_t p, q
    cdef int sweep
    cdef double r, theta, t, c, s, app, aqq, wr, wi
    cdef double tol_sq = off_tol * off_tol

    for sweep in range(max_sweeps):
        if _offdiag_sq(a, n) <= tol_sq:
            return sweep
        for p in range(n - 1):
            for q in range(p + 1, n):
                r = hypot(a[p, 2 * q], a[p, 2 * q + 1])
                if r < 1e-300:
                    continue
                # w = conj(a_pq) / |a_pq| rotates the pivot onto the real axis
                wr = a[p, 2 * q] / r
                wi = -a[p, 2 * q + 1] / r
                app = a[p, 2 * p]
                aqq = a[q, 2 * q]
                theta = (aqq - app) / (2.0 * r)
                if fabs(theta) > 1e150:
                    t = 0.5 / theta
                else:
                    t = 1.0 / (fabs(theta) + sqrt(theta * theta + 1.0))
                    if theta < 0.0:
                        t = -t
                c = 1.0 / sqrt(t * t + 1.0)
                s = t * c
                _rotate_cols(a, n, p, q, c, s, wr, wi)
                _rotate_rows(a, n, p, q, c, s, wr, -wi)
                a[p, 2 * q] = 0.0
                a[p, 2 * q + 1] = 0.0
                a[q, 2 * p] = 0.0
                a[q, 2 * p + 1] = 0.0
                a[p, 2 * p] = app - t * r
                a[p, 2 * p + 1] = 0.0
                a[q, 2 * q] = aqq + t * r
                a[q, 2 * q + 1] = 0.0
                _rotate_cols(v, n, p, q, c, s, wr, wi)
    if _offdiag_sq(a, n) <= tol_sq:
        return max_sweeps
    return -1


def jacobi_sweeps(a, v, double off_tol, int max_sweeps):
    """Diagonalize ``a`` in place, accumulating rotations into ``v``.

    Both arrays must be C-contiguous complex128. Stops when the off-diagonal
    Frobenius norm drops to ``off_tol``. Returns the number of sweeps
    performed, or -1 if ``max_sweeps`` ran out.
    """
    if a.dtype != np.complex128 or v.dtype != np.complex128:
        raise TypeError("jacobi_sweeps expects complex128 arrays")
    cdef double[:, ::1] ar = a.view(np.float64)
    cdef double[:, ::1] vr = v.view(np.float64)
    cdef Py_ssize_t n = a.shape[0]
    cdef int result
    with nogil:
        result = _sweeps(ar, vr, n, off_tol, max_sweeps)
    return result
