# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernels; see ``_pykernels.py`` for the reference semantics."""

from libc.stdlib cimport malloc, free

ctypedef unsigned long long u64


cdef u64 _extend(int d, int n, const unsigned char* alpha, const unsigned char* beta,
                 int* ta, int* la, int* tb, int* lb):
    # ta[d*(n+1) + i], i < la[d]: starts still tight against alpha at depth d
    cdef u64 total = 0
    cdef int s, i, k, c, ok, na, nb
    cdef int row = d * (n + 1)
    cdef int nrow = (d + 1) * (n + 1)
    for s in range(2):
        ok = 1
        na = 0
        for i in range(la[d] + 1):
            k = ta[row + i] if i < la[d] else d
            c = alpha[d - k]
            if s > c:
                ok = 0
                break
            if s == c:
                ta[nrow + na] = k
                na += 1
        if not ok:
            continue
        nb = 0
        for i in range(lb[d] + 1):
            k = tb[row + i] if i < lb[d] else d
            c = beta[d - k]
            if s < c:
                ok = 0
                break
            if s == c:
                tb[nrow + nb] = k
                nb += 1
        if not ok:
            continue
        if d + 1 == n:
            total += 1
        else:
            la[d + 1] = na
            lb[d + 1] = nb
            total += _extend(d + 1, n, alpha, beta, ta, la, tb, lb)
    return total


def count_backtrack(bytes alpha, bytes beta, int n):
    if n <= 0:
        return 1
    if len(alpha) < n or len(beta) < n:
        raise ValueError("bound prefixes shorter than n")
    cdef int size = (n + 1) * (n + 1)
    cdef int* ta = <int*> malloc(size * sizeof(int))
    cdef int* tb = <int*> malloc(size * sizeof(int))
    cdef int* la = <int*> malloc((n + 1) * sizeof(int))
    cdef int* lb = <int*> malloc((n + 1) * sizeof(int))
    cdef u64 result
    if not ta or not tb or not la or not lb:
        free(ta); free(tb); free(la); free(lb)
        raise MemoryError()
    try:
        la[0] = 0
        lb[0] = 0
        result = _extend(0, n, alpha, beta, ta, la, tb, lb)
    finally:
        free(ta); free(tb); free(la); free(lb)
    return int(result)


def balanced_count(int p, int q):
    cdef int mask, i, m, s, lo, hi, good, count = 0
    cdef int ww[128]
    if q > 62:
        raise ValueError("q too large")
    for mask in range(1 << q):
        if bin(mask).count("1") != p:
            continue
        for i in range(q):
            ww[i] = (mask >> (q - 1 - i)) & 1
            ww[i + q] = ww[i]
        good = 1
        for m in range(2, q + 1):
            s = 0
            for i in range(m):
                s += ww[i]
            lo = s
            hi = s
            for i in range(1, 2 * q - m + 1):
                s += ww[i + m - 1] - ww[i - 1]
                if s < lo:
                    lo = s
                if s > hi:
                    hi = s
            if hi - lo > 1:
                good = 0
                break
        if good:
            count += 1
    return count
