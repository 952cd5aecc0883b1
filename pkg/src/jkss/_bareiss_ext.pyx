# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled fraction-free elimination over Z[x, y].

Same contract as ``jkss._bareiss.bareiss_det``.  Polynomials are sorted
arrays of (key, coeff) terms with ``key = (a << 32) | b`` so that key order
is lex order on exponents.  Coefficients are int64; any overflow raises
OverflowError and the caller falls back to the Python kernel.
"""
from libc.stdlib cimport malloc, free, qsort, realloc
from libc.stdint cimport uint64_t
from libc.limits cimport LLONG_MIN, LLONG_MAX

cdef extern from *:
    """
    static int jk_mul_ovf(long long a, long long b, long long *r) {
        return __builtin_mul_overflow(a, b, r);
    }
    static int jk_add_ovf(long long a, long long b, long long *r) {
        return __builtin_add_overflow(a, b, r);
    }
    static int jk_sub_ovf(long long a, long long b, long long *r) {
        return __builtin_sub_overflow(a, b, r);
    }
    """
    int jk_mul_ovf(long long a, long long b, long long *r) nogil
    int jk_add_ovf(long long a, long long b, long long *r) nogil
    int jk_sub_ovf(long long a, long long b, long long *r) nogil


ctypedef struct Term:
    uint64_t key
    long long c

ctypedef struct Poly:
    Term *t
    Py_ssize_t n

cdef enum:
    OK = 0
    ERR_OVERFLOW = 1
    ERR_MEMORY = 2
    ERR_INEXACT = 3

cdef uint64_t LOW = 0xFFFFFFFFULL
cdef long MAX_EXP = 1 << 20


cdef int _cmp_term(const void *a, const void *b) noexcept nogil:
    cdef uint64_t ka = (<Term *> a).key
    cdef uint64_t kb = (<Term *> b).key
    return (ka > kb) - (ka < kb)


cdef inline void poly_clear(Poly *p) noexcept nogil:
    if p.t != NULL:
        free(p.t)
    p.t = NULL
    p.n = 0


cdef int poly_mul(Poly *p, Poly *q, Poly *out) noexcept nogil:
    cdef Py_ssize_t i, j, k, m
    cdef long long c
    cdef Term *buf
    out.t = NULL
    out.n = 0
    if p.n == 0 or q.n == 0:
        return OK
    buf = <Term *> malloc(p.n * q.n * sizeof(Term))
    if buf == NULL:
        return ERR_MEMORY
    k = 0
    for i in range(p.n):
        for j in range(q.n):
            if jk_mul_ovf(p.t[i].c, q.t[j].c, &c):
                free(buf)
                return ERR_OVERFLOW
            buf[k].key = p.t[i].key + q.t[j].key
            buf[k].c = c
            k += 1
    if p.n > 1 and q.n > 1:
        qsort(buf, k, sizeof(Term), _cmp_term)
    # combine runs of equal keys, dropping zeros
    m = 0
    i = 0
    while i < k:
        c = buf[i].c
        j = i + 1
        while j < k and buf[j].key == buf[i].key:
            if jk_add_ovf(c, buf[j].c, &c):
                free(buf)
                return ERR_OVERFLOW
            j += 1
        if c != 0:
            buf[m].key = buf[i].key
            buf[m].c = c
            m += 1
        i = j
    if m == 0:
        free(buf)
        return OK
    out.t = buf
    out.n = m
    return OK


cdef int poly_sub(Poly *p, Poly *q, Poly *out) noexcept nogil:
    """out = p - q (merge of sorted term arrays)."""
    cdef Py_ssize_t i = 0, j = 0, m = 0
    cdef long long c
    cdef Term *buf
    out.t = NULL
    out.n = 0
    if p.n + q.n == 0:
        return OK
    buf = <Term *> malloc((p.n + q.n) * sizeof(Term))
    if buf == NULL:
        return ERR_MEMORY
    while i < p.n or j < q.n:
        if j >= q.n or (i < p.n and p.t[i].key < q.t[j].key):
            buf[m] = p.t[i]
            m += 1
            i += 1
        elif i >= p.n or q.t[j].key < p.t[i].key:
            buf[m].key = q.t[j].key
            if q.t[j].c == LLONG_MIN:
                free(buf)
                return ERR_OVERFLOW
            buf[m].c = -q.t[j].c
            m += 1
            j += 1
        else:
            if jk_sub_ovf(p.t[i].c, q.t[j].c, &c):
                free(buf)
                return ERR_OVERFLOW
            if c != 0:
                buf[m].key = p.t[i].key
                buf[m].c = c
                m += 1
            i += 1
            j += 1
    if m == 0:
        free(buf)
        return OK
    out.t = buf
    out.n = m
    return OK


cdef int poly_exact_div(Poly *p, Poly *q, Poly *out) noexcept nogil:
    """out = p / q, which must be exact.  Leading term is the largest key."""
    cdef Py_ssize_t rn, i, j, m, qn = 0, qcap
    cdef Term *grown
    cdef Term *rem
    cdef Term *tmp
    cdef Term *quo
    cdef Term lead, lq
    cdef long long qc, prod, c
    cdef uint64_t shift
    out.t = NULL
    out.n = 0
    if p.n == 0:
        return OK
    lq = q.t[q.n - 1]
    rn = p.n
    rem = <Term *> malloc(p.n * sizeof(Term))
    qcap = p.n + 4
    quo = <Term *> malloc(qcap * sizeof(Term))
    tmp = NULL
    if rem == NULL or quo == NULL:
        free(rem)
        free(quo)
        return ERR_MEMORY
    for i in range(rn):
        rem[i] = p.t[i]
    while rn > 0:
        lead = rem[rn - 1]
        if (lead.key >> 32) < (lq.key >> 32) or (lead.key & LOW) < (lq.key & LOW) or lead.c % lq.c != 0:
            free(rem)
            free(quo)
            return ERR_INEXACT
        if lq.c == -1 and lead.c == LLONG_MIN:
            free(rem)
            free(quo)
            return ERR_OVERFLOW
        qc = lead.c // lq.c
        shift = lead.key - lq.key
        if qn >= qcap:
            qcap *= 2
            grown = <Term *> realloc(quo, qcap * sizeof(Term))
            if grown == NULL:
                free(rem)
                free(quo)
                return ERR_MEMORY
            quo = grown
        quo[qn].key = shift
        quo[qn].c = qc
        qn += 1
        # rem -= qc * shift * q; the leading terms cancel exactly
        tmp = <Term *> malloc((rn + q.n) * sizeof(Term))
        if tmp == NULL:
            free(rem)
            free(quo)
            return ERR_MEMORY
        i = 0
        j = 0
        m = 0
        rn -= 1
        while i < rn or j < q.n - 1:
            if j >= q.n - 1 or (i < rn and rem[i].key < q.t[j].key + shift):
                tmp[m] = rem[i]
                m += 1
                i += 1
            else:
                if jk_mul_ovf(qc, q.t[j].c, &prod):
                    free(tmp)
                    free(rem)
                    free(quo)
                    return ERR_OVERFLOW
                if i < rn and rem[i].key == q.t[j].key + shift:
                    if jk_sub_ovf(rem[i].c, prod, &c):
                        free(tmp)
                        free(rem)
                        free(quo)
                        return ERR_OVERFLOW
                    i += 1
                else:
                    if prod == LLONG_MIN:
                        free(tmp)
                        free(rem)
                        free(quo)
                        return ERR_OVERFLOW
                    c = -prod
                if c != 0:
                    tmp[m].key = q.t[j].key + shift
                    tmp[m].c = c
                    m += 1
                j += 1
        free(rem)
        rem = tmp
        rn = m
    free(rem)
    # quotient terms were produced in descending key order
    for i in range(qn // 2):
        lead = quo[i]
        quo[i] = quo[qn - 1 - i]
        quo[qn - 1 - i] = lead
    out.t = quo
    out.n = qn
    return OK


cdef int _load(dict d, Poly *out) except -1:
    cdef Py_ssize_t k = 0
    cdef long a, b
    out.t = NULL
    out.n = 0
    if not d:
        return 0
    out.t = <Term *> malloc(len(d) * sizeof(Term))
    if out.t == NULL:
        raise MemoryError()
    for (a, b), c in d.items():
        if a < 0 or b < 0 or a >= MAX_EXP or b >= MAX_EXP:
            free(out.t)
            out.t = NULL
            raise ValueError("exponents must lie in [0, 2**20)")
        if not (-LLONG_MAX <= c <= LLONG_MAX):
            free(out.t)
            out.t = NULL
            raise OverflowError("coefficient exceeds int64")
        out.t[k].key = (<uint64_t> a << 32) | <uint64_t> b
        out.t[k].c = c
        k += 1
    out.n = k
    qsort(out.t, k, sizeof(Term), _cmp_term)
    return 0


cdef dict _dump(Poly *p):
    cdef Py_ssize_t i
    return {(<long> (p.t[i].key >> 32), <long> (p.t[i].key & LOW)): p.t[i].c for i in range(p.n)}


cdef int _raise(int err) except -1:
    if err == ERR_OVERFLOW:
        raise OverflowError("int64 coefficient overflow")
    if err == ERR_MEMORY:
        raise MemoryError()
    if err == ERR_INEXACT:
        raise ArithmeticError("inexact division in fraction-free elimination")
    return 0


cdef int _eliminate(Poly *a, Py_ssize_t n, Poly *result, int *sign) noexcept nogil:
    cdef Py_ssize_t i, j, k, best, best_len
    cdef Poly prev, pivot, t1, t2, t3
    cdef Poly tmp_row
    cdef int err, prev_is_one
    cdef Poly *row_k
    cdef Poly *row_i
    cdef Term one_term
    one_term.key = 0
    one_term.c = 1
    prev.t = &one_term
    prev.n = 1
    prev_is_one = 1
    sign[0] = 1
    result.t = NULL
    result.n = 0
    for k in range(n - 1):
        best = -1
        best_len = 0
        for i in range(k, n):
            if a[i * n + k].n > 0 and (best < 0 or a[i * n + k].n < best_len):
                best = i
                best_len = a[i * n + k].n
        if best < 0:
            return OK
        if best != k:
            for j in range(n):
                tmp_row = a[k * n + j]
                a[k * n + j] = a[best * n + j]
                a[best * n + j] = tmp_row
            sign[0] = -sign[0]
        row_k = a + k * n
        pivot = row_k[k]
        for i in range(k + 1, n):
            row_i = a + i * n
            for j in range(k + 1, n):
                err = poly_mul(&pivot, &row_i[j], &t1)
                if err:
                    return err
                if row_i[k].n > 0 and row_k[j].n > 0:
                    err = poly_mul(&row_i[k], &row_k[j], &t2)
                    if err:
                        poly_clear(&t1)
                        return err
                    err = poly_sub(&t1, &t2, &t3)
                    poly_clear(&t1)
                    poly_clear(&t2)
                    if err:
                        return err
                    t1 = t3
                if t1.n > 0 and not prev_is_one:
                    err = poly_exact_div(&t1, &prev, &t3)
                    poly_clear(&t1)
                    if err:
                        return err
                    t1 = t3
                poly_clear(&row_i[j])
                row_i[j] = t1
            poly_clear(&row_i[k])
        # the previous pivot is still owned by its row and freed with the matrix
        prev = pivot
        prev_is_one = pivot.n == 1 and pivot.t[0].key == 0 and pivot.t[0].c == 1
    result[0] = a[(n - 1) * n + (n - 1)]
    a[(n - 1) * n + (n - 1)].t = NULL
    a[(n - 1) * n + (n - 1)].n = 0
    return OK


def bareiss_det(rows):
    """Determinant of a square matrix over Z[x, y] given as lists of dicts."""
    cdef Py_ssize_t n = len(rows), i, j
    cdef Poly *a
    cdef Poly result
    cdef int sign = 1, err
    if n == 0:
        return {(0, 0): 1}
    a = <Poly *> malloc(n * n * sizeof(Poly))
    if a == NULL:
        raise MemoryError()
    for i in range(n * n):
        a[i].t = NULL
        a[i].n = 0
    result.t = NULL
    result.n = 0
    try:
        for i in range(n):
            row = rows[i]
            if len(row) != n:
                raise ValueError("matrix is not square")
            for j in range(n):
                _load(row[j], &a[i * n + j])
        with nogil:
            err = _eliminate(a, n, &result, &sign)
        _raise(err)
        out = _dump(&result)
        if sign < 0:
            out = {key: -c for key, c in out.items()}
        return out
    finally:
        poly_clear(&result)
        for i in range(n * n):
            poly_clear(&a[i])
        free(a)
