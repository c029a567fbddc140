# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled term kernels; same contract as ``_pykernels``.

Multiplication takes an int64 accumulator path when every coefficient is a
Python ``int`` and the worst-case accumulated magnitude fits in 62 bits,
otherwise it accumulates Python objects.
"""

from fractions import Fraction

from libc.stdint cimport int64_t
from libc.stdlib cimport malloc, calloc, free

cdef object _Fraction = Fraction
cdef int64_t _LIMIT = (<int64_t>1) << 62


cdef inline object _canon(object c):
    if type(c) is _Fraction and c.denominator == 1:
        return c.numerator
    return c


cdef object _max_abs_int(list cs):
    # None when some coefficient is not a plain int
    cdef object best = 0
    cdef object c
    for c in cs:
        if type(c) is not int:
            return None
        if c < 0:
            c = -c
        if c > best:
            best = c
    return best


cdef tuple _mul_int64(list ea, list ca, list eb, list cb, long lo, long span):
    cdef Py_ssize_t m = len(ea), n = len(eb), i, j, k
    cdef int64_t *acc = <int64_t *> calloc(span, sizeof(int64_t))
    cdef long *xa = <long *> malloc(m * sizeof(long))
    cdef long *xb = <long *> malloc(n * sizeof(long))
    cdef int64_t *va = <int64_t *> malloc(m * sizeof(int64_t))
    cdef int64_t *vb = <int64_t *> malloc(n * sizeof(int64_t))
    cdef int64_t ci
    cdef long base
    if acc == NULL or xa == NULL or xb == NULL or va == NULL or vb == NULL:
        free(acc); free(xa); free(xb); free(va); free(vb)
        raise MemoryError()
    try:
        for i in range(m):
            xa[i] = <long> ea[i] - lo
            va[i] = <int64_t> ca[i]
        for j in range(n):
            xb[j] = <long> eb[j]
            vb[j] = <int64_t> cb[j]
        for i in range(m):
            base = xa[i]
            ci = va[i]
            for j in range(n):
                acc[base + xb[j]] += ci * vb[j]
        exps = []
        coeffs = []
        for k in range(span):
            if acc[k] != 0:
                exps.append(k + lo)
                coeffs.append(<object> acc[k])
        return exps, coeffs
    finally:
        free(acc); free(xa); free(xb); free(va); free(vb)


cdef tuple _mul_object(list ea, list ca, list eb, list cb, long lo, long span):
    cdef Py_ssize_t m = len(ea), n = len(eb), i, j
    cdef long k, base
    cdef list dense = [0] * span
    cdef list offs = [e - lo for e in eb]
    cdef object ci
    for i in range(m):
        base = ea[i]
        ci = ca[i]
        for j in range(n):
            k = base + <long> offs[j]
            dense[k] = dense[k] + ci * cb[j]
    exps = []
    coeffs = []
    for k in range(span):
        c = dense[k]
        if c:
            exps.append(k + lo)
            coeffs.append(_canon(c))
    return exps, coeffs


def mul_terms(ea, ca, eb, cb):
    cdef list la = list(ea), lb = list(eb), lca = list(ca), lcb = list(cb)
    cdef Py_ssize_t m = len(la), n = len(lb)
    if m == 0 or n == 0:
        return [], []
    cdef long lo = la[0] + lb[0]
    cdef long span = la[m - 1] + lb[n - 1] - lo + 1
    if span > 4 * m * n:
        # widely separated exponents: defer to the dict accumulator
        from qfermion._pykernels import mul_terms as _py_mul
        return _py_mul(la, lca, lb, lcb)
    amax = _max_abs_int(lca)
    if amax is not None:
        bmax = _max_abs_int(lcb)
        if bmax is not None and amax * bmax * min(m, n) < _LIMIT:
            return _mul_int64(la, lca, lb, lcb, lo, span)
    return _mul_object(la, lca, lb, lcb, lo, span)


def add_terms(ea, ca, eb, cb, int sign=1):
    cdef Py_ssize_t i = 0, j = 0, m = len(ea), n = len(eb)
    cdef long x, y
    exps = []
    coeffs = []
    while i < m and j < n:
        x = ea[i]
        y = eb[j]
        if x < y:
            exps.append(x)
            coeffs.append(ca[i])
            i += 1
        elif y < x:
            exps.append(y)
            coeffs.append(cb[j] if sign > 0 else -cb[j])
            j += 1
        else:
            c = ca[i] + cb[j] if sign > 0 else ca[i] - cb[j]
            if c:
                exps.append(x)
                coeffs.append(_canon(c))
            i += 1
            j += 1
    while i < m:
        exps.append(ea[i])
        coeffs.append(ca[i])
        i += 1
    while j < n:
        exps.append(eb[j])
        coeffs.append(cb[j] if sign > 0 else -cb[j])
        j += 1
    return exps, coeffs
