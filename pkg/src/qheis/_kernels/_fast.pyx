# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernels: scalar loops over the same array contracts as _ref.

Shapes are pinned: quaternions (n, 4), Heisenberg points (n, 7), matrices
(3, 3, 4).  All arrays must be C-contiguous float64 (the dispatching layer
in qheis._kernels guarantees this).
"""

import numpy as np

cimport numpy as cnp
from libc.math cimport sqrt

cnp.import_array()


cdef inline void _qmul(const double* a, const double* b, double* out) nogil:
    out[0] = a[0]*b[0] - a[1]*b[1] - a[2]*b[2] - a[3]*b[3]
    out[1] = a[0]*b[1] + a[1]*b[0] + a[2]*b[3] - a[3]*b[2]
    out[2] = a[0]*b[2] - a[1]*b[3] + a[2]*b[0] + a[3]*b[1]
    out[3] = a[0]*b[3] + a[1]*b[2] - a[2]*b[1] + a[3]*b[0]


def quat_mul(const double[:, ::1] a, const double[:, ::1] b):
    cdef Py_ssize_t n = a.shape[0], i
    out_arr = np.empty((n, 4), dtype=np.float64)
    cdef double[:, ::1] out = out_arr
    with nogil:
        for i in range(n):
            _qmul(&a[i, 0], &b[i, 0], &out[i, 0])
    return out_arr


def gauge(const double[:, ::1] p):
    cdef Py_ssize_t n = p.shape[0], i
    cdef double zn2, vn2
    out_arr = np.empty(n, dtype=np.float64)
    cdef double[::1] out = out_arr
    with nogil:
        for i in range(n):
            zn2 = p[i, 0]**2 + p[i, 1]**2 + p[i, 2]**2 + p[i, 3]**2
            vn2 = p[i, 4]**2 + p[i, 5]**2 + p[i, 6]**2
            out[i] = sqrt(sqrt(zn2 * zn2 + vn2))
    return out_arr


cdef inline void _twist(const double* zp, const double* zq, double* im) nogil:
    # 2 Im(conj(zq) * zp) as conj(zq) zp - conj(zp) zq; the antisymmetrized
    # form cancels exactly when zp == zq
    cdef double a[4]
    cdef double b[4]
    cdef double c1[4]
    cdef double c2[4]
    a[0] = zq[0]; a[1] = -zq[1]; a[2] = -zq[2]; a[3] = -zq[3]
    b[0] = zp[0]; b[1] = -zp[1]; b[2] = -zp[2]; b[3] = -zp[3]
    _qmul(a, zp, c1)
    _qmul(b, zq, c2)
    im[0] = c1[1] - c2[1]
    im[1] = c1[2] - c2[2]
    im[2] = c1[3] - c2[3]


def compose(const double[:, ::1] p, const double[:, ::1] q):
    cdef Py_ssize_t n = p.shape[0], i, c
    cdef double im[3]
    out_arr = np.empty((n, 7), dtype=np.float64)
    cdef double[:, ::1] out = out_arr
    with nogil:
        for i in range(n):
            for c in range(4):
                out[i, c] = p[i, c] + q[i, c]
            _twist(&p[i, 0], &q[i, 0], im)
            for c in range(3):
                out[i, 4 + c] = p[i, 4 + c] + q[i, 4 + c] + im[c]
    return out_arr


def cygan(const double[:, ::1] p, const double[:, ::1] q):
    cdef Py_ssize_t n = p.shape[0], i
    cdef double im[3]
    cdef double dz0, dz1, dz2, dz3, m2, w0, w1, w2, wn2
    out_arr = np.empty(n, dtype=np.float64)
    cdef double[::1] out = out_arr
    with nogil:
        for i in range(n):
            dz0 = p[i, 0] - q[i, 0]
            dz1 = p[i, 1] - q[i, 1]
            dz2 = p[i, 2] - q[i, 2]
            dz3 = p[i, 3] - q[i, 3]
            m2 = dz0*dz0 + dz1*dz1 + dz2*dz2 + dz3*dz3
            _twist(&p[i, 0], &q[i, 0], im)
            w0 = p[i, 4] - q[i, 4] + im[0]
            w1 = p[i, 5] - q[i, 5] + im[1]
            w2 = p[i, 6] - q[i, 6] + im[2]
            wn2 = w0*w0 + w1*w1 + w2*w2
            out[i] = sqrt(sqrt(m2 * m2 + wn2))
    return out_arr


cdef inline void _qmat_mul(const double* a, const double* b, double* out) nogil:
    # 3x3 quaternionic matrix product on flat (3, 3, 4) buffers
    cdef Py_ssize_t i, j, k, c
    cdef double term[4]
    for i in range(3):
        for j in range(3):
            for c in range(4):
                out[(i*3 + j)*4 + c] = 0.0
            for k in range(3):
                _qmul(a + (i*3 + k)*4, b + (k*3 + j)*4, term)
                for c in range(4):
                    out[(i*3 + j)*4 + c] += term[c]


def qmat_mul(const double[:, :, ::1] a, const double[:, :, ::1] b):
    out_arr = np.empty((3, 3, 4), dtype=np.float64)
    cdef double[:, :, ::1] out = out_arr
    with nogil:
        _qmat_mul(&a[0, 0, 0], &b[0, 0, 0], &out[0, 0, 0])
    return out_arr


def word_deviation(const double[:, :, :, ::1] gens, const cnp.int64_t[:, ::1] words):
    """min(||W - I||, ||W + I||) per word; same contract as _ref."""
    cdef Py_ssize_t m = words.shape[0], length = words.shape[1]
    cdef Py_ssize_t w, step, i, j, c
    cdef double state[36]
    cdef double nxt[36]
    cdef double dm, dp, acc_m, acc_p, e, s
    out_arr = np.empty(m, dtype=np.float64)
    cdef double[::1] out = out_arr
    with nogil:
        for w in range(m):
            for i in range(36):
                state[i] = 0.0
            state[0*4 + 0] = 1.0      # (0,0) entry
            state[(1*3 + 1)*4 + 0] = 1.0
            state[(2*3 + 2)*4 + 0] = 1.0
            for step in range(length):
                _qmat_mul(state, &gens[words[w, step], 0, 0, 0], nxt)
                for i in range(36):
                    state[i] = nxt[i]
            dm = 0.0
            dp = 0.0
            for i in range(3):
                for j in range(3):
                    acc_m = 0.0
                    acc_p = 0.0
                    for c in range(4):
                        e = state[(i*3 + j)*4 + c]
                        s = 1.0 if (c == 0 and i == j) else 0.0
                        acc_m += (e - s) * (e - s)
                        acc_p += (e + s) * (e + s)
                    acc_m = sqrt(acc_m)
                    acc_p = sqrt(acc_p)
                    if acc_m > dm:
                        dm = acc_m
                    if acc_p > dp:
                        dp = acc_p
            out[w] = dm if dm < dp else dp
    return out_arr
