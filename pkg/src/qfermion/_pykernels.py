"""Pure-Python term kernels.

Both kernels take sparse polynomials as parallel sequences ``(exps, coeffs)``
with strictly ascending exponents and nonzero coefficients, and return the
result in the same canonical layout as two lists.
"""

from fractions import Fraction


def _canon(c):
    if type(c) is Fraction and c.denominator == 1:
        return c.numerator
    return c


def mul_terms(ea, ca, eb, cb):
    if not ea or not eb:
        return [], []
    lo = ea[0] + eb[0]
    span = ea[-1] + eb[-1] - lo + 1
    m, n = len(ea), len(eb)
    if span > 4 * m * n:
        acc = {}
        for i in range(m):
            ei, ci = ea[i], ca[i]
            for j in range(n):
                k = ei + eb[j]
                acc[k] = acc.get(k, 0) + ci * cb[j]
        exps, coeffs = [], []
        for k in sorted(acc):
            c = acc[k]
            if c:
                exps.append(k)
                coeffs.append(_canon(c))
        return exps, coeffs

    dense = [0] * span
    offs = [e - lo for e in eb]
    for i in range(m):
        base = ea[i]
        ci = ca[i]
        for j in range(n):
            k = base + offs[j]
            dense[k] += ci * cb[j]
    exps, coeffs = [], []
    for k in range(span):
        c = dense[k]
        if c:
            exps.append(k + lo)
            coeffs.append(_canon(c))
    return exps, coeffs


def add_terms(ea, ca, eb, cb, sign=1):
    """Merge ``a + sign*b``; ``sign`` is +1 or -1."""
    i = j = 0
    m, n = len(ea), len(eb)
    exps, coeffs = [], []
    while i < m and j < n:
        x, y = ea[i], eb[j]
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
