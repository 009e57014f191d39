# cython: language_level=3
"""Compiled kernels. Must stay numerically identical to ``_pykernels``."""
from libc.math cimport sqrt
import numpy as np


def jacobi_eigh(double complex[:, ::1] a, double tol, int max_sweeps):
    """Cyclic Jacobi on a Hermitian matrix, in place on ``a``.

    Returns ``(diag, vecs, sweeps, off)`` where ``vecs`` holds eigenvectors in
    columns (unsorted) and ``off`` is the final off-diagonal Frobenius norm.
    """
    cdef Py_ssize_t n = a.shape[0]
    cdef Py_ssize_t i, j, p, q
    cdef double norm = 0.0, off = 0.0, ab, theta, t, c, s
    cdef double complex e, gqp, gqq, xp, xq
    v_arr = np.eye(n, dtype=np.complex128)
    cdef double complex[:, ::1] v = v_arr
    cdef int sweep = 0

    for i in range(n):
        for j in range(n):
            norm += a[i, j].real * a[i, j].real + a[i, j].imag * a[i, j].imag

    norm = sqrt(norm)
    while True:
        off = 0.0
        for i in range(n):
            for j in range(n):
                if i != j:
                    off += a[i, j].real * a[i, j].real + a[i, j].imag * a[i, j].imag
        off = sqrt(off)
        if off <= tol * norm or sweep >= max_sweeps:
            break
        sweep += 1
        for p in range(n - 1):
            for q in range(p + 1, n):
                ab = sqrt(a[p, q].real * a[p, q].real + a[p, q].imag * a[p, q].imag)
                if ab == 0.0:
                    continue
                e = a[p, q] / ab
                theta = (a[q, q].real - a[p, p].real) / (2.0 * ab)
                if theta >= 0.0:
                    t = 1.0 / (theta + sqrt(theta * theta + 1.0))
                else:
                    t = -1.0 / (-theta + sqrt(theta * theta + 1.0))
                c = 1.0 / sqrt(t * t + 1.0)
                s = t * c
                gqp = -s * e.conjugate()
                gqq = c * e.conjugate()
                for i in range(n):
                    xp = a[i, p]
                    xq = a[i, q]
                    a[i, p] = c * xp + gqp * xq
                    a[i, q] = s * xp + gqq * xq
                    xp = v[i, p]
                    xq = v[i, q]
                    v[i, p] = c * xp + gqp * xq
                    v[i, q] = s * xp + gqq * xq
                for j in range(n):
                    xp = a[p, j]
                    xq = a[q, j]
                    a[p, j] = c * xp + gqp.conjugate() * xq
                    a[q, j] = s * xp + gqq.conjugate() * xq
                a[p, q] = 0.0
                a[q, p] = 0.0
                a[p, p] = a[p, p].real
                a[q, q] = a[q, q].real

    diag = np.empty(n, dtype=np.float64)
    for i in range(n):
        diag[i] = a[i, i].real
    return diag, v_arr, sweep, off


def partial_trace(const double complex[:, ::1] a, const Py_ssize_t[::1] kept, const Py_ssize_t[::1] traced):
    """``out[r, c] = sum_t a[kept[r] + traced[t], kept[c] + traced[t]]``."""
    cdef Py_ssize_t nk = kept.shape[0], nt = traced.shape[0]
    cdef Py_ssize_t r, c, t, i0, j0
    cdef double complex acc
    out_arr = np.empty((nk, nk), dtype=np.complex128)
    cdef double complex[:, ::1] out = out_arr
    for r in range(nk):
        i0 = kept[r]
        for c in range(nk):
            j0 = kept[c]
            acc = 0.0
            for t in range(nt):
                acc = acc + a[i0 + traced[t], j0 + traced[t]]
            out[r, c] = acc
    return out_arr
