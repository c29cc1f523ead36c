# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled F_p kernels; same contracts as ``_pycore``."""
import numpy as np
cimport numpy as cnp
from libc.stdint cimport int64_t

cnp.import_array()


cdef inline int64_t _inv(int64_t x, int64_t p) noexcept nogil:
    cdef int64_t t = 0, nt = 1, r = p, nr = x, q, tmp
    while nr != 0:
        q = r // nr
        tmp = t - q * nt
        t = nt
        nt = tmp
        tmp = r - q * nr
        r = nr
        nr = tmp
    if t < 0:
        t += p
    return t


cdef int _rref_inplace(int64_t[:, ::1] a, int64_t p, int64_t[::1] piv) noexcept nogil:
    cdef Py_ssize_t rows = a.shape[0], cols = a.shape[1]
    cdef Py_ssize_t r = 0, c, i, j, k
    cdef int64_t inv, f, tmp
    for c in range(cols):
        if r == rows:
            break
        k = -1
        for i in range(r, rows):
            if a[i, c] != 0:
                k = i
                break
        if k < 0:
            continue
        if k != r:
            for j in range(cols):
                tmp = a[r, j]
                a[r, j] = a[k, j]
                a[k, j] = tmp
        inv = _inv(a[r, c], p)
        for j in range(c, cols):
            a[r, j] = (a[r, j] * inv) % p
        for i in range(rows):
            if i != r and a[i, c] != 0:
                f = a[i, c]
                for j in range(c, cols):
                    a[i, j] = (a[i, j] - f * a[r, j]) % p
                    if a[i, j] < 0:
                        a[i, j] += p
        piv[r] = c
        r += 1
    return r


def rref_modp(a, long long p):
    # the modulo allocates, so the caller's array is never touched
    cdef cnp.ndarray[int64_t, ndim=2] m = np.ascontiguousarray(np.asarray(a, dtype=np.int64) % p)
    cdef int64_t[::1] piv = np.zeros(min(m.shape[0], m.shape[1]) + 1, dtype=np.int64)
    cdef int rank
    cdef int64_t[:, ::1] mv = m
    with nogil:
        rank = _rref_inplace(mv, p, piv)
    return rank, [int(piv[i]) for i in range(rank)], m


def batch_rank_modp(a, long long p):
    cdef cnp.ndarray[int64_t, ndim=3] m = np.ascontiguousarray(np.asarray(a, dtype=np.int64) % p)
    cdef Py_ssize_t n = m.shape[0], i
    cdef cnp.ndarray[int64_t, ndim=1] out = np.empty(n, dtype=np.int64)
    cdef int64_t[::1] piv = np.zeros(min(m.shape[1], m.shape[2]) + 1, dtype=np.int64)
    cdef int64_t[:, :, ::1] mv = m
    cdef int64_t[::1] ov = out
    with nogil:
        for i in range(n):
            ov[i] = _rref_inplace(mv[i], p, piv)
    return out


def orbit_min_index(points, actions, weights, long long p):
    cdef int64_t[:, ::1] pts = np.ascontiguousarray(points, dtype=np.int64)
    cdef int64_t[:, :, ::1] act = np.ascontiguousarray(actions, dtype=np.int64)
    cdef int64_t[::1] w = np.ascontiguousarray(weights, dtype=np.int64)
    cdef Py_ssize_t npts = pts.shape[0], ng = act.shape[0], n = pts.shape[1]
    cdef cnp.ndarray[int64_t, ndim=1] out = np.empty(npts, dtype=np.int64)
    cdef int64_t[::1] ov = out
    cdef Py_ssize_t x, g, i, j
    cdef int64_t idx, best, s
    with nogil:
        for x in range(npts):
            best = -1
            for g in range(ng):
                idx = 0
                for i in range(n):
                    s = 0
                    for j in range(n):
                        s += act[g, i, j] * pts[x, j]
                    idx += (s % p) * w[i]
                if best < 0 or idx < best:
                    best = idx
            ov[x] = best
    return out


def orbit_indices(point, actions, weights, long long p):
    cdef int64_t[::1] pt = np.ascontiguousarray(point, dtype=np.int64)
    cdef int64_t[:, :, ::1] act = np.ascontiguousarray(actions, dtype=np.int64)
    cdef int64_t[::1] w = np.ascontiguousarray(weights, dtype=np.int64)
    cdef Py_ssize_t ng = act.shape[0], n = pt.shape[0], g, i, j
    cdef cnp.ndarray[int64_t, ndim=1] out = np.empty(ng, dtype=np.int64)
    cdef int64_t[::1] ov = out
    cdef int64_t idx, s
    with nogil:
        for g in range(ng):
            idx = 0
            for i in range(n):
                s = 0
                for j in range(n):
                    s += act[g, i, j] * pt[j]
                idx += (s % p) * w[i]
            ov[g] = idx
    return out
