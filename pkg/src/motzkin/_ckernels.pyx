# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernels.  Same contracts as ``_pykernels``; gluing here walks
paths through the middle row instead of merging components."""
import numpy as np
cimport numpy as cnp
from libc.stdlib cimport malloc, free

cnp.import_array()

NAME = "cython"


cdef int _walk(const int *a, const int *b, int n, int start, int from_top,
               char *seen) noexcept nogil:
    # Follow the path from an outer node; return the outer node it reaches
    # in product coordinates (top 0..n-1, bottom n..2n-1), or -1.
    cdef int p, m, q
    if from_top:
        p = a[start]
        if p < 0:
            return -1
        if p < n:
            return p
        m = p - n
    else:
        p = b[start + n]
        if p < 0:
            return -1
        if p >= n:
            return p
        m = p
        # arrived at middle node m from below: continue into a
        seen[m] = 1
        p = a[m + n]
        if p < 0:
            return -1
        if p < n:
            return p
        m = p - n
    while True:
        # at middle node m, arriving from a; continue into b
        seen[m] = 1
        q = b[m]
        if q < 0:
            return -1
        if q >= n:
            return q
        m = q
        seen[m] = 1
        p = a[m + n]
        if p < 0:
            return -1
        if p < n:
            return p
        m = p - n


cdef int _glue(const int *a, const int *b, int n, int *out, char *seen) noexcept nogil:
    cdef int i, m, q, p, loops = 0
    for i in range(n):
        seen[i] = 0
    for i in range(2 * n):
        out[i] = -2
    for i in range(n):
        if out[i] == -2:
            q = _walk(a, b, n, i, 1, seen)
            out[i] = q
            if q >= 0:
                out[q] = i
    for i in range(n):
        if out[n + i] == -2:
            q = _walk(a, b, n, i, 0, seen)
            out[n + i] = q
            if q >= 0:
                out[q] = n + i
    for i in range(n):
        if seen[i]:
            continue
        loops += 1
        m = i
        while True:
            seen[m] = 1
            q = b[m]
            if q < 0 or seen[q]:
                break
            m = q
            seen[m] = 1
            p = a[m + n]
            if p < 0 or seen[p - n]:
                break
            m = p - n
        m = i
        while True:
            p = a[m + n]
            if p < 0 or seen[p - n]:
                break
            m = p - n
            seen[m] = 1
            q = b[m]
            if q < 0 or seen[q]:
                break
            m = q
            seen[m] = 1
    return loops


def glue(a, b, int n):
    cdef int size = 2 * n
    cdef int *buf = <int *> malloc(sizeof(int) * (3 * size + 1))
    cdef char *seen = <char *> malloc(n + 1)
    cdef int i, loops
    try:
        for i in range(size):
            buf[i] = a[i]
            buf[size + i] = b[i]
        loops = _glue(buf, buf + size, n, buf + 2 * size, seen)
        return tuple([buf[2 * size + i] for i in range(size)]), loops
    finally:
        free(buf)
        free(seen)


cdef inline void _half_code(const int *links, int n, int row, int *code, int *through) noexcept nogil:
    cdef int base = row * n, i, p, d, c = 0, t = 0
    for i in range(base, base + n):
        p = links[i]
        if p < 0:
            d = 0
        elif (p < n) == (row == 0):
            d = 1 if p > i else 2
        else:
            d = 3
            t += 1
        c = c * 4 + d
    code[0] = c
    through[0] = t


def half_code(links, int n, int row):
    cdef int size = 2 * n, i, code, t
    cdef int *buf = <int *> malloc(sizeof(int) * (size + 1))
    try:
        for i in range(size):
            buf[i] = links[i]
        _half_code(buf, n, row, &code, &t)
        return code, t
    finally:
        free(buf)


def product_table(left, right, int n, code_index, offsets, sizes):
    cdef cnp.ndarray[cnp.int32_t, ndim=2] A = np.ascontiguousarray(left, dtype=np.int32)
    cdef cnp.ndarray[cnp.int32_t, ndim=2] B = np.ascontiguousarray(right, dtype=np.int32)
    cdef cnp.ndarray[cnp.int32_t, ndim=1] idx = np.ascontiguousarray(code_index, dtype=np.int32)
    cdef cnp.ndarray[cnp.int64_t, ndim=1] off = np.ascontiguousarray(offsets, dtype=np.int64)
    cdef cnp.ndarray[cnp.int64_t, ndim=1] sz = np.ascontiguousarray(sizes, dtype=np.int64)
    cdef Py_ssize_t rows = A.shape[0], cols = B.shape[0], i, j
    cdef cnp.ndarray[cnp.int32_t, ndim=2] table = np.empty((rows, cols), dtype=np.int32)
    cdef int size = 2 * n
    cdef int *out = <int *> malloc(sizeof(int) * (size + 1))
    cdef char *seen = <char *> malloc(n + 1)
    cdef int tc, bc, k, kk
    cdef int *ap = <int *> A.data
    cdef int *bp = <int *> B.data
    cdef int *ip = <int *> idx.data
    cdef long long *op = <long long *> off.data
    cdef long long *sp = <long long *> sz.data
    cdef int *tp = <int *> table.data
    try:
        with nogil:
            for i in range(rows):
                for j in range(cols):
                    _glue(ap + i * size, bp + j * size, n, out, seen)
                    _half_code(out, n, 0, &tc, &k)
                    _half_code(out, n, 1, &bc, &kk)
                    tp[i * cols + j] = <int> (op[k] + ip[tc] * sp[k] + ip[bc])
    finally:
        free(out)
        free(seen)
    return table


def idempotent_mask(links, int n):
    cdef cnp.ndarray[cnp.int32_t, ndim=2] L = np.ascontiguousarray(links, dtype=np.int32)
    cdef Py_ssize_t count = L.shape[0], i
    cdef cnp.ndarray[cnp.uint8_t, ndim=1] mask = np.zeros(count, dtype=np.uint8)
    cdef int size = 2 * n, j, same
    cdef int *out = <int *> malloc(sizeof(int) * (size + 1))
    cdef char *seen = <char *> malloc(n + 1)
    cdef int *lp = <int *> L.data
    cdef int *d
    try:
        with nogil:
            for i in range(count):
                d = lp + i * size
                _glue(d, d, n, out, seen)
                same = 1
                for j in range(size):
                    if out[j] != d[j]:
                        same = 0
                        break
                mask[i] = same
    finally:
        free(out)
        free(seen)
    return mask.astype(bool)


def rank_mod_p(mat, long long p):
    cdef cnp.ndarray[cnp.int64_t, ndim=2] a = np.ascontiguousarray(np.asarray(mat, dtype=np.int64) % p)
    cdef Py_ssize_t m = a.shape[0], ncols = a.shape[1] if a.ndim == 2 else 0
    cdef Py_ssize_t r = 0, c, i, j, piv
    cdef long long inv, f, base, e, t
    if m == 0 or ncols == 0:
        return 0
    for c in range(ncols):
        piv = -1
        for i in range(r, m):
            if a[i, c] != 0:
                piv = i
                break
        if piv < 0:
            continue
        if piv != r:
            for j in range(ncols):
                t = a[r, j]
                a[r, j] = a[piv, j]
                a[piv, j] = t
        # inverse by Fermat
        inv = 1
        base = a[r, c]
        e = p - 2
        while e > 0:
            if e & 1:
                inv = (inv * base) % p
            base = (base * base) % p
            e >>= 1
        for j in range(c, ncols):
            a[r, j] = (a[r, j] * inv) % p
        for i in range(r + 1, m):
            f = a[i, c]
            if f != 0:
                for j in range(c, ncols):
                    a[i, j] = (a[i, j] - f * a[r, j]) % p
                    if a[i, j] < 0:
                        a[i, j] += p
        r += 1
        if r == m:
            break
    return r
