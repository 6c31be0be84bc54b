# distutils: language = c++
"""Compiled versions of the hot kernels (same contracts as ``_kernels_py``).

Inputs arrive sorted, so both kernels are merges rather than hash builds:
``convolve_step`` merges the ``len(shifts)`` shifted copies of ``keys`` with a
binary heap, and ``join_count`` walks two sorted key arrays in step.
"""
import numpy as np
cimport numpy as cnp
from libcpp.vector cimport vector

cnp.import_array()

ctypedef long long i64


cdef inline void _sift_down(i64* hk, Py_ssize_t* hj, Py_ssize_t n, Py_ssize_t r) noexcept nogil:
    # min-heap on hk; hj carries the run index
    cdef i64 k = hk[r]
    cdef Py_ssize_t j = hj[r], c
    while True:
        c = 2 * r + 1
        if c >= n:
            break
        if c + 1 < n and hk[c + 1] < hk[c]:
            c += 1
        if hk[c] >= k:
            break
        hk[r] = hk[c]
        hj[r] = hj[c]
        r = c
    hk[r] = k
    hj[r] = j


def convolve_step(cnp.int64_t[::1] keys, cnp.int64_t[::1] counts,
                  cnp.int64_t[::1] shifts, cnp.int64_t[::1] weights):
    # keys strictly increasing; each shifted copy is then increasing too
    cdef Py_ssize_t nk = keys.shape[0], ns = shifts.shape[0], j, i, r, n = ns, m = -1
    out_keys = np.empty(nk * ns, dtype=np.int64)
    out_counts = np.empty(nk * ns, dtype=np.int64)
    cdef cnp.int64_t[::1] ok = out_keys
    cdef cnp.int64_t[::1] oc = out_counts
    cdef vector[Py_ssize_t] pos = vector[Py_ssize_t](ns, 0)
    cdef vector[i64] hk = vector[i64](ns, 0)
    cdef vector[Py_ssize_t] hj = vector[Py_ssize_t](ns, 0)
    cdef i64 key, c
    if nk == 0 or ns == 0:
        return out_keys[:0], out_counts[:0]
    with nogil:
        for j in range(ns):
            hk[j] = keys[0] + shifts[j]
            hj[j] = j
        for r in range(ns // 2 - 1, -1, -1):
            _sift_down(hk.data(), hj.data(), n, r)
        while n > 0:
            key = hk[0]
            j = hj[0]
            i = pos[j]
            c = counts[i] * weights[j]
            if m >= 0 and ok[m] == key:
                oc[m] += c
            else:
                m += 1
                ok[m] = key
                oc[m] = c
            i += 1
            pos[j] = i
            if i < nk:
                hk[0] = keys[i] + shifts[j]
            else:
                n -= 1
                hk[0] = hk[n]
                hj[0] = hj[n]
            _sift_down(hk.data(), hj.data(), n, 0)
    return out_keys[:m + 1].copy(), out_counts[:m + 1].copy()


def join_count(cnp.int64_t[::1] keys1, cnp.int64_t[::1] counts1,
               cnp.int64_t[::1] keys2, cnp.int64_t[::1] counts2):
    # both key arrays sorted and duplicate free
    cdef Py_ssize_t n1 = keys1.shape[0], n2 = keys2.shape[0], i = 0, j = 0
    cdef i64 total = 0
    with nogil:
        while i < n1 and j < n2:
            if keys1[i] < keys2[j]:
                i += 1
            elif keys1[i] > keys2[j]:
                j += 1
            else:
                total += counts1[i] * counts2[j]
                i += 1
                j += 1
    return int(total)


def diff_autocorrelation(cnp.int64_t[::1] values, cnp.int64_t[::1] counts, Py_ssize_t bound):
    cdef Py_ssize_t n = values.shape[0], i, j
    out = np.zeros(2 * bound + 1, dtype=np.int64)
    cdef cnp.int64_t[::1] o = out
    cdef i64 vi, ci
    with nogil:
        for i in range(n):
            vi = values[i] + bound
            ci = counts[i]
            for j in range(n):
                o[vi - values[j]] += ci * counts[j]
    return out
