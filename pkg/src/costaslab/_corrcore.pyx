# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled correlation kernels: exhaustive family scans, tables, and the
distinct-differences check.  Mirrors the call surface of ``_corr_py``;
the heavy loops run without the GIL so callers can thread over pair blocks.
"""

from libc.stdlib cimport free, malloc
from libc.string cimport memset

import numpy as np

BACKEND = "cython"


def is_costas_kernel(const int[::1] f):
    """Distinct-differences check; assumes f is a valid permutation array."""
    cdef Py_ssize_t n = f.shape[0]
    cdef Py_ssize_t k, x, idx
    cdef bint ok = True
    cdef int* stamp = <int*> malloc(2 * n * sizeof(int))
    if stamp == NULL:
        raise MemoryError
    memset(stamp, 0, 2 * n * sizeof(int))
    with nogil:
        for k in range(1, n - 1):
            if not ok:
                break
            for x in range(n - k):
                idx = f[x + k] - f[x] + n - 1
                if stamp[idx] == k:
                    ok = False
                    break
                stamp[idx] = <int> k
    free(stamp)
    return bool(ok)


def corr_table(const int[::1] f1, const int[::1] f2):
    """Full cross-correlation table, shape (2n-1, 2n-1), index [u+n-1, v+n-1]."""
    cdef Py_ssize_t n = f1.shape[0]
    out = np.zeros((2 * n - 1, 2 * n - 1), dtype=np.int64)
    cdef long long[:, ::1] t = out
    cdef Py_ssize_t x, y
    with nogil:
        for x in range(n):
            for y in range(n):
                t[y - x + n - 1, f2[y] - f1[x] + n - 1] += 1
    return out


def autocorr_offpeak_max(const int[::1] f):
    """Max autocorrelation count over all shifts except (0, 0)."""
    cdef Py_ssize_t n = f.shape[0]
    cdef Py_ssize_t u, x, idx
    cdef int c, best = 0
    cdef int* buf = <int*> malloc(2 * n * sizeof(int))
    if buf == NULL:
        raise MemoryError
    memset(buf, 0, 2 * n * sizeof(int))
    with nogil:
        # u = 0 puts all mass on v = 0 (the excluded peak), so rows start at 1;
        # u < 0 mirrors u > 0 since C_{f,f}(-u,-v) = C_{f,f}(u,v).
        for u in range(1, n):
            for x in range(n - u):
                idx = f[x + u] - f[x] + n - 1
                c = buf[idx] + 1
                buf[idx] = c
                if c > best:
                    best = c
            for x in range(n - u):
                buf[f[x + u] - f[x] + n - 1] = 0
    free(buf)
    return int(best)


def family_scan(const int[:, ::1] perms, Py_ssize_t i0, Py_ssize_t i1,
                bint restrict, Py_ssize_t cap):
    """Scan ordered pairs (i, j), i in [i0, i1), j != i, shifts u >= 0.

    Returns (best, total, witnesses): the maximal count over the scan
    domain, the exact number of cells attaining it, and up to ``cap``
    witnesses (i, j, u, v) in lexicographic order.  With ``restrict`` the
    v < 0 half-plane is skipped (valid for inversion-closed families).
    """
    cdef Py_ssize_t m = perms.shape[0]
    cdef Py_ssize_t n = perms.shape[1]
    cdef long long best = 0, total = 0
    cdef Py_ssize_t wit_len = 0
    cdef Py_ssize_t i, j, u, x, L, idx, vlo, vhi
    cdef int v, c, rowmax
    cdef const int* f1
    cdef const int* f2
    cdef int* buf = <int*> malloc(2 * n * sizeof(int))
    cdef long long* wits = <long long*> malloc((cap if cap > 0 else 1) * 4 * sizeof(long long))
    if buf == NULL or wits == NULL:
        free(buf)
        free(wits)
        raise MemoryError
    memset(buf, 0, 2 * n * sizeof(int))
    cdef Py_ssize_t vmin_idx
    with nogil:
        for i in range(i0, i1):
            f1 = &perms[i, 0]
            for j in range(m):
                if j == i:
                    continue
                f2 = &perms[j, 0]
                for u in range(n):
                    L = n - u
                    rowmax = 0
                    vlo = 2 * n
                    vhi = -1
                    # v < 0 cells are accumulated too (branch-free) but only
                    # v >= 0 feeds the max when restrict is set.
                    for x in range(L):
                        v = f2[x + u] - f1[x]
                        idx = v + n - 1
                        c = buf[idx] + 1
                        buf[idx] = c
                        if c > rowmax:
                            if v >= 0 or not restrict:
                                rowmax = c
                        if idx < vlo:
                            vlo = idx
                        if idx > vhi:
                            vhi = idx
                    if rowmax > 0 and rowmax >= best:
                        if rowmax > best:
                            best = rowmax
                            total = 0
                            wit_len = 0
                        vmin_idx = vlo
                        if restrict and vmin_idx < n - 1:
                            vmin_idx = n - 1
                        for idx in range(vmin_idx, vhi + 1):
                            if buf[idx] == best:
                                total += 1
                                if wit_len < cap:
                                    wits[wit_len * 4 + 0] = i
                                    wits[wit_len * 4 + 1] = j
                                    wits[wit_len * 4 + 2] = u
                                    wits[wit_len * 4 + 3] = idx - (n - 1)
                                    wit_len += 1
                    if vhi >= vlo:
                        memset(buf + vlo, 0, (vhi - vlo + 1) * sizeof(int))
    out = np.empty((wit_len, 4), dtype=np.int64)
    cdef Py_ssize_t w
    for w in range(wit_len):
        out[w, 0] = wits[w * 4 + 0]
        out[w, 1] = wits[w * 4 + 1]
        out[w, 2] = wits[w * 4 + 2]
        out[w, 3] = wits[w * 4 + 3]
    free(buf)
    free(wits)
    return int(best), int(total), out
