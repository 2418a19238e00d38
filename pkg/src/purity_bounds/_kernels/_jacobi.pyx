# cython: boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled cyclic Jacobi eigensolver for dense complex Hermitian matrices.

Hot kernel behind ``purity_bounds._kernels``; see ``_jacobi_py`` for the
pure-Python twin with identical semantics.
"""

from libc.math cimport sqrt, fabs, hypot

import numpy as np


cdef double _offdiag_sq(double complex[:, ::1] a, Py_ssize_t n) noexcept:
    cdef Py_ssize_t i, j
    cdef double total = 0.0
    cdef double complex z
    for i in range(n):
        for j in range(n):
            if i != j:
                z = a[i, j]
                total += z.real * z.real + z.imag * z.imag
    return total


cdef (int, int, double) _eigh_one(double complex[:, ::1] a,
                                  double complex[:, ::1] v,
                                  bint want_vectors,
                                  double tol,
                                  int max_sweeps) noexcept:
    cdef Py_ssize_t n = a.shape[0]
    cdef Py_ssize_t i, p, q
    cdef int sweeps
    cdef double fro = 0.0, scale, thr2, skip
    cdef double off2, babs, app, aqq, tau, t, c, s
    cdef double complex b, sigma, sigc, zp, zq

    for p in range(n):
        for q in range(n):
            b = a[p, q]
            fro += b.real * b.real + b.imag * b.imag
    scale = sqrt(fro)
    if scale < 1.0:
        scale = 1.0
    thr2 = (tol * scale) * (tol * scale)
    skip = tol * scale / n if n > 0 else 0.0

    off2 = _offdiag_sq(a, n)
    for sweeps in range(max_sweeps + 1):
        if off2 <= thr2:
            return sweeps, 1, sqrt(off2)
        if sweeps == max_sweeps:
            return sweeps, 0, sqrt(off2)
        for p in range(n - 1):
            for q in range(p + 1, n):
                b = a[p, q]
                babs = hypot(b.real, b.imag)
                if babs <= skip:
                    continue
                app = a[p, p].real
                aqq = a[q, q].real
                tau = (aqq - app) / (2.0 * babs)
                t = 1.0 / (fabs(tau) + sqrt(1.0 + tau * tau))
                if tau < 0.0:
                    t = -t
                c = 1.0 / sqrt(1.0 + t * t)
                s = t * c
                sigma = (b / babs) * s
                sigc = sigma.conjugate()

                for i in range(n):
                    zp = a[i, p]
                    zq = a[i, q]
                    a[i, p] = c * zp - sigc * zq
                    a[i, q] = sigma * zp + c * zq
                for i in range(n):
                    zp = a[p, i]
                    zq = a[q, i]
                    a[p, i] = c * zp - sigma * zq
                    a[q, i] = sigc * zp + c * zq

                a[p, p] = app * c * c + aqq * s * s - 2.0 * s * c * babs
                a[q, q] = app * s * s + aqq * c * c + 2.0 * s * c * babs
                a[p, q] = 0.0
                a[q, p] = 0.0

                if want_vectors:
                    for i in range(n):
                        zp = v[i, p]
                        zq = v[i, q]
                        v[i, p] = c * zp - sigc * zq
                        v[i, q] = sigma * zp + c * zq
        off2 = _offdiag_sq(a, n)
    return max_sweeps, 0, sqrt(off2)  # unreachable


def eigh_inplace(double complex[:, ::1] a, double complex[:, ::1] v,
                 bint want_vectors, double tol, int max_sweeps):
    """Diagonalize Hermitian ``a`` in place; see ``_jacobi_py.eigh_inplace``."""
    cdef int sweeps, conv
    cdef double off
    sweeps, conv, off = _eigh_one(a, v, want_vectors, tol, max_sweeps)
    return sweeps, bool(conv), off


def eigh_batch(double complex[:, :, ::1] a, double tol, int max_sweeps):
    """Diagonalize a stack of Hermitian matrices; values only, unsorted."""
    cdef Py_ssize_t m = a.shape[0]
    cdef Py_ssize_t n = a.shape[1]
    cdef Py_ssize_t i, j
    cdef int sw, conv
    cdef double off
    vals_arr = np.empty((m, n), dtype=np.float64)
    sweeps_arr = np.empty(m, dtype=np.intp)
    conv_arr = np.empty(m, dtype=np.uint8)
    cdef double[:, ::1] vals = vals_arr
    cdef Py_ssize_t[::1] sweeps = sweeps_arr
    cdef unsigned char[::1] conv_view = conv_arr
    cdef double complex[:, ::1] dummy = np.zeros((1, 1), dtype=np.complex128)
    for i in range(m):
        sw, conv, off = _eigh_one(a[i], dummy, False, tol, max_sweeps)
        for j in range(n):
            vals[i, j] = a[i, j, j].real
        sweeps[i] = sw
        conv_view[i] = conv
    return vals_arr, sweeps_arr, conv_arr.astype(bool)
