# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled versions of the clustering inner loops (see ``_kernels_py``)."""
import numpy as np
cimport numpy as cnp
from libc.math cimport INFINITY

cnp.import_array()


def hac_merge(pairwise, Py_ssize_t target):
    cdef double[:, ::1] d_tab = np.ascontiguousarray(pairwise, dtype=np.float64)
    cdef Py_ssize_t n = d_tab.shape[0]
    cdef cnp.int64_t[::1] lab = np.arange(n, dtype=np.int64)
    cdef cnp.int64_t[::1] size = np.ones(n, dtype=np.int64)
    cdef cnp.int64_t[::1] fill = np.zeros(n, dtype=np.int64)
    cdef Py_ssize_t n_cl = n
    # members of cluster c, ascending, are order[start[c]:start[c + 1]]
    cdef cnp.int64_t[::1] order = np.arange(n, dtype=np.int64)
    cdef cnp.int64_t[::1] start = np.arange(n + 1, dtype=np.int64)
    cdef Py_ssize_t c, d, i, j, m, best_c, best_d
    cdef double s, mean, best
    cdef bint have
    history = []
    while n_cl > target:
        have = False
        best = INFINITY
        best_c = -1
        best_d = -1
        for c in range(n_cl):
            for d in range(c + 1, n_cl):
                s = 0.0
                for i in range(start[c], start[c + 1]):
                    m = order[i]
                    for j in range(start[d], start[d + 1]):
                        s += d_tab[m, order[j]]
                mean = s / (size[c] * size[d])
                if not have or mean < best:
                    have = True
                    best = mean
                    best_c = c
                    best_d = d
        for m in range(n):
            if lab[m] == best_d:
                lab[m] = best_c
            elif lab[m] > best_d:
                lab[m] -= 1
        size[best_c] += size[best_d]
        for c in range(best_d, n_cl - 1):
            size[c] = size[c + 1]
        n_cl -= 1
        # stable counting sort of samples by label keeps members ascending
        start[0] = 0
        for c in range(n_cl):
            start[c + 1] = start[c] + size[c]
        for c in range(n_cl):
            fill[c] = start[c]
        for m in range(n):
            order[fill[lab[m]]] = m
            fill[lab[m]] += 1
        history.append((int(best_c), int(best_d), best))
    return np.asarray(lab).copy(), history


def round_robin(dist, Py_ssize_t m):
    cdef double[:, ::1] dd = np.array(dist, dtype=np.float64, order="C")
    cdef Py_ssize_t n_rows = dd.shape[0]
    cdef Py_ssize_t n_cl = dd.shape[1]
    cdef cnp.uint8_t[::1] taken = np.zeros(n_rows, dtype=np.uint8)
    claims_arr = np.empty((n_cl, m), dtype=np.int64)
    cdef cnp.int64_t[:, ::1] claims = claims_arr
    cdef Py_ssize_t p, q, i, best_i
    cdef double best
    for p in range(m):
        for q in range(n_cl):
            best_i = -1
            best = INFINITY
            for i in range(n_rows):
                if taken[i]:
                    continue
                if best_i < 0 or dd[i, q] < best:
                    best = dd[i, q]
                    best_i = i
            claims[q, p] = best_i
            taken[best_i] = 1
    return claims_arr
