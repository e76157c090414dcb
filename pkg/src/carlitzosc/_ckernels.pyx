# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled polynomial kernels over GF(q); mirrors ``_pykernels``."""

from libc.stdlib cimport malloc, free
from libc.string cimport memset


cdef long long* _to_c(list a) except NULL:
    cdef Py_ssize_t n = len(a), i
    cdef long long* buf = <long long*> malloc((n + 1) * sizeof(long long))
    if buf == NULL:
        raise MemoryError()
    for i in range(n):
        buf[i] = a[i]
    return buf


cdef list _from_c(long long* buf, Py_ssize_t n):
    while n > 0 and buf[n - 1] == 0:
        n -= 1
    return [buf[i] for i in range(n)]


def poly_mul(list a, list b, F):
    cdef Py_ssize_t la = len(a), lb = len(b), i, j
    if la == 0 or lb == 0:
        return []
    cdef int q = F.q
    cdef bytes _addt = F.add_tab
    cdef const unsigned char* addt = _addt
    cdef bytes _mult = F.mul_tab
    cdef const unsigned char* mult = _mult
    cdef long long* ca = _to_c(a)
    cdef long long* cb = _to_c(b)
    cdef Py_ssize_t n = la + lb - 1
    cdef long long* res = <long long*> malloc(n * sizeof(long long))
    cdef long long ai, acc
    cdef int row
    cdef list out
    memset(res, 0, n * sizeof(long long))
    try:
        if F.gamma == 1:
            for i in range(la):
                ai = ca[i]
                if ai:
                    for j in range(lb):
                        res[i + j] += ai * cb[j]
                # keep partial sums bounded
                if (i & 1023) == 1023:
                    for j in range(n):
                        res[j] %= q
            for j in range(n):
                res[j] %= q
        else:
            for i in range(la):
                ai = ca[i]
                if ai:
                    row = ai * q
                    for j in range(lb):
                        if cb[j]:
                            res[i + j] = addt[res[i + j] * q + mult[row + cb[j]]]
        out = _from_c(res, n)
    finally:
        free(ca)
        free(cb)
        free(res)
    return out


def poly_scale(list a, int c, F):
    cdef bytes _mult = F.mul_tab
    cdef const unsigned char* mult = _mult
    cdef int q = F.q
    cdef Py_ssize_t i, n = len(a)
    cdef int row = c * q
    cdef list out
    if c == 0:
        return []
    out = [0] * n
    for i in range(n):
        out[i] = mult[row + <int> a[i]]
    return out


cdef Py_ssize_t _divmod_c(long long* r, Py_ssize_t lr, long long* b, Py_ssize_t lb,
                          long long* quo, int q, int gamma, int inv,
                          const unsigned char* subt, const unsigned char* mult) nogil:
    # in place: r becomes the remainder (length lb - 1), quo gets lr - lb + 1 entries
    cdef Py_ssize_t db = lb - 1, k, j, off
    cdef long long c
    cdef int row
    for k in range(lr - 1, db - 1, -1):
        if gamma == 1:
            c = r[k] * inv % q
        else:
            c = mult[r[k] * q + inv]
        if quo != NULL:
            quo[k - db] = c
        if c:
            off = k - db
            if gamma == 1:
                for j in range(db):
                    r[off + j] = (r[off + j] - c * b[j]) % q
                    if r[off + j] < 0:
                        r[off + j] += q
            else:
                row = <int> c * q
                for j in range(db):
                    if b[j]:
                        r[off + j] = subt[r[off + j] * q + mult[row + b[j]]]
        r[k] = 0
    return db


def poly_divmod(list a, list b, F):
    cdef Py_ssize_t la = len(a), lb = len(b)
    if lb == 0:
        raise ZeroDivisionError("polynomial division by zero")
    if la < lb:
        return [], list(a)
    cdef int q = F.q, gamma = F.gamma
    cdef bytes _subt = F.sub_tab
    cdef const unsigned char* subt = _subt
    cdef bytes _mult = F.mul_tab
    cdef const unsigned char* mult = _mult
    cdef int inv = F.inv_tab[b[lb - 1]]
    cdef long long* ra = _to_c(a)
    cdef long long* cb = _to_c(b)
    cdef long long* quo = <long long*> malloc((la - lb + 1) * sizeof(long long))
    cdef list qq, rr
    try:
        with nogil:
            _divmod_c(ra, la, cb, lb, quo, q, gamma, inv, subt, mult)
        qq = _from_c(quo, la - lb + 1)
        rr = _from_c(ra, lb - 1)
    finally:
        free(ra)
        free(cb)
        free(quo)
    return qq, rr


def poly_gcd(list a, list b, F):
    """Monic gcd; gcd(0, 0) = 0."""
    cdef Py_ssize_t la = len(a), lb = len(b), tmpn
    cdef int q = F.q, gamma = F.gamma, inv
    cdef bytes _subt = F.sub_tab
    cdef const unsigned char* subt = _subt
    cdef bytes _mult = F.mul_tab
    cdef const unsigned char* mult = _mult
    cdef bytes _invt = F.inv_tab
    cdef const unsigned char* invt = _invt
    cdef long long* x = _to_c(a)
    cdef long long* y = _to_c(b)
    cdef long long* tmp
    cdef list out
    try:
        with nogil:
            while lb > 0:
                inv = invt[y[lb - 1]]
                if la >= lb:
                    _divmod_c(x, la, y, lb, NULL, q, gamma, inv, subt, mult)
                    la = lb - 1
                while la > 0 and x[la - 1] == 0:
                    la -= 1
                tmp = x
                x = y
                y = tmp
                tmpn = la
                la = lb
                lb = tmpn
        out = _from_c(x, la)
    finally:
        free(x)
        free(y)
    if not out:
        return out
    return poly_scale(out, F.inv_tab[out[len(out) - 1]], F)
