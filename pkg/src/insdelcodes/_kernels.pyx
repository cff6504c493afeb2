# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled LCS kernels.  Same call signatures as ``_fallback``.

All arrays are C-contiguous int32 of nonnegative symbols.  Words of length at
most 64 use the bit-parallel LCS recurrence with a symbol -> position-mask
table; longer words use the row DP.  Inner loops run without the GIL so
callers may process chunks from a thread pool.
"""

import numpy as np

from libc.stdint cimport int32_t, uint64_t
from libc.stdlib cimport calloc, free, malloc

cdef extern from *:
    int __builtin_popcountll(unsigned long long) nogil


cdef inline int32_t _lcs_dp(const int32_t* a, Py_ssize_t la,
                            const int32_t* b, Py_ssize_t lb,
                            int32_t* row) noexcept nogil:
    # single-row DP; row[j] holds the previous row until overwritten
    cdef Py_ssize_t i, j
    cdef int32_t diag, up, x
    for j in range(lb + 1):
        row[j] = 0
    for i in range(la):
        x = a[i]
        diag = 0
        for j in range(1, lb + 1):
            up = row[j]
            if b[j - 1] == x:
                row[j] = diag + 1
            elif row[j - 1] > up:
                row[j] = row[j - 1]
            diag = up
    return row[lb]


cdef inline int32_t _lcs_bits(const uint64_t* table, Py_ssize_t tsize, uint64_t mask,
                              const int32_t* b, Py_ssize_t lb) noexcept nogil:
    # table[y] has bit p set iff a[p] == y; LCS = zero bits of v inside mask
    cdef uint64_t v = ~(<uint64_t> 0), u
    cdef Py_ssize_t t
    cdef int32_t y
    for t in range(lb):
        y = b[t]
        if y < tsize:
            u = v & table[y]
            v = (v + u) | (v - u)
    return __builtin_popcountll(~v & mask)


cdef inline void _fill(uint64_t* table, const int32_t* a, Py_ssize_t la, bint clear) noexcept nogil:
    cdef Py_ssize_t p
    for p in range(la):
        if clear:
            table[a[p]] = 0
        else:
            table[a[p]] |= (<uint64_t> 1) << p


cdef inline uint64_t _mask(Py_ssize_t la) noexcept nogil:
    if la >= 64:
        return ~(<uint64_t> 0)
    return ((<uint64_t> 1) << la) - 1


cdef Py_ssize_t _table_size(const int32_t[::1] a):
    cdef Py_ssize_t i, top = 0
    for i in range(a.shape[0]):
        if a[i] < 0:
            raise ValueError("symbols must be nonnegative")
        if a[i] + 1 > top:
            top = a[i] + 1
    return top


def lcs(const int32_t[::1] a, const int32_t[::1] b):
    cdef Py_ssize_t la = a.shape[0], lb = b.shape[0]
    if la == 0 or lb == 0:
        return 0
    cdef int32_t* row = <int32_t*> malloc((lb + 1) * sizeof(int32_t))
    cdef int32_t out
    if row == NULL:
        raise MemoryError()
    with nogil:
        out = _lcs_dp(&a[0], la, &b[0], lb, row)
    free(row)
    return int(out)


def lcs_many(const int32_t[::1] a, const int32_t[:, ::1] rows):
    """LCS of ``a`` against every row of ``rows``."""
    cdef Py_ssize_t m = rows.shape[0], n = rows.shape[1], la = a.shape[0], r
    out_arr = np.zeros(m, dtype=np.int32)
    cdef int32_t[::1] out = out_arr
    if m == 0 or n == 0 or la == 0:
        return out_arr
    cdef Py_ssize_t tsize = _table_size(a)
    cdef uint64_t mask = _mask(la)
    cdef uint64_t* table
    cdef int32_t* row
    if la <= 64:
        table = <uint64_t*> calloc(tsize, sizeof(uint64_t))
        if table == NULL:
            raise MemoryError()
        with nogil:
            _fill(table, &a[0], la, False)
            for r in range(m):
                out[r] = _lcs_bits(table, tsize, mask, &rows[r, 0], n)
        free(table)
    else:
        row = <int32_t*> malloc((n + 1) * sizeof(int32_t))
        if row == NULL:
            raise MemoryError()
        with nogil:
            for r in range(m):
                out[r] = _lcs_dp(&a[0], la, &rows[r, 0], n, row)
        free(row)
    return out_arr


def best_against(const int32_t[::1] a, const int32_t[:, ::1] rows,
                 Py_ssize_t skip, int cap):
    """First row (ascending) with the largest LCS against ``a``, skipping ``skip``.

    Stops as soon as the LCS reaches ``cap``.  Returns ``(best, index)``;
    ``(-1, -1)`` when no row was examined.
    """
    cdef Py_ssize_t m = rows.shape[0], n = rows.shape[1], la = a.shape[0], r
    cdef Py_ssize_t best_idx = -1
    cdef int32_t best = -1, v
    if m == 0:
        return -1, -1
    if la == 0 or la > 64:
        vals = lcs_many(a, rows).astype(np.int64)
        if 0 <= skip < m:
            vals[skip] = -1
        hit = np.flatnonzero(vals >= cap)
        if hit.size:
            return int(vals[hit[0]]), int(hit[0])
        r = int(np.argmax(vals))
        return (int(vals[r]), r) if vals[r] >= 0 else (-1, -1)
    cdef Py_ssize_t tsize = _table_size(a)
    cdef uint64_t mask = _mask(la)
    cdef uint64_t* table = <uint64_t*> calloc(tsize, sizeof(uint64_t))
    if table == NULL:
        raise MemoryError()
    with nogil:
        _fill(table, &a[0], la, False)
        for r in range(m):
            if r == skip:
                continue
            v = _lcs_bits(table, tsize, mask, &rows[r, 0], n)
            if v > best:
                best = v
                best_idx = r
                if best >= cap:
                    break
    free(table)
    return int(best), int(best_idx)


def best_pair(const int32_t[:, ::1] words, Py_ssize_t start, Py_ssize_t stop, int cap):
    """Lexicographically first pair ``i < j`` maximising the LCS, with ``start <= i < stop``.

    Stops as soon as the LCS reaches ``cap``.  Returns ``(best, i, j)``;
    ``(-1, -1, -1)`` when the range holds no pair.
    """
    cdef Py_ssize_t m = words.shape[0], n = words.shape[1], i, j
    cdef Py_ssize_t bi = -1, bj = -1
    cdef int32_t best = -1, v
    cdef bint done = False
    if m < 2 or n == 0:
        return -1, -1, -1
    cdef Py_ssize_t tsize = 0
    cdef uint64_t mask = _mask(n)
    cdef uint64_t* table = NULL
    cdef int32_t* row = NULL
    if n <= 64:
        for i in range(m):
            tsize = max(tsize, _table_size(words[i]))
        table = <uint64_t*> calloc(tsize, sizeof(uint64_t))
        if table == NULL:
            raise MemoryError()
    else:
        row = <int32_t*> malloc((n + 1) * sizeof(int32_t))
        if row == NULL:
            raise MemoryError()
    with nogil:
        for i in range(start, stop):
            if table != NULL:
                _fill(table, &words[i, 0], n, False)
            for j in range(i + 1, m):
                if table != NULL:
                    v = _lcs_bits(table, tsize, mask, &words[j, 0], n)
                else:
                    v = _lcs_dp(&words[i, 0], n, &words[j, 0], n, row)
                if v > best:
                    best = v
                    bi = i
                    bj = j
                    if best >= cap:
                        done = True
                        break
            if table != NULL:
                _fill(table, &words[i, 0], n, True)
            if done:
                break
    free(table)
    free(row)
    return int(best), int(bi), int(bj)
