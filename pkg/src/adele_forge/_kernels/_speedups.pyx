# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernels for dense GF(p) polynomial and matrix arithmetic.

Mirror of ``pure.py``; same contracts, same representations.  Coefficients
are small (p < 2**15 in practice), so plain C long arithmetic never
overflows in the accumulations below.
"""

BACKEND = "cython"


cdef inline long _mod(long x, long p):
    x %= p
    return x + p if x < 0 else x


cdef long _inv_mod(long a, long p):
    return pow(a, p - 2, p)


cdef list _trim(list a):
    while a and a[len(a) - 1] == 0:
        a.pop()
    return a


def poly_trim(list a):
    return _trim(a)


def poly_add(list a, list b, long p):
    cdef Py_ssize_t i
    cdef long s
    if len(a) < len(b):
        a, b = b, a
    cdef list c = a[:]
    for i in range(len(b)):
        s = <long>c[i] + <long>b[i]
        if s >= p:
            s -= p
        c[i] = s
    return _trim(c)


def poly_sub(list a, list b, long p):
    cdef Py_ssize_t i
    cdef long s
    cdef list c = a[:] + [0] * (len(b) - len(a))
    for i in range(len(b)):
        s = <long>c[i] - <long>b[i]
        if s < 0:
            s += p
        c[i] = s
    return _trim(c)


def poly_neg(list a, long p):
    cdef Py_ssize_t i
    cdef long x
    cdef list c = a[:]
    for i in range(len(c)):
        x = <long>c[i]
        c[i] = 0 if x == 0 else p - x
    return c


def poly_scale(list a, long s, long p):
    cdef Py_ssize_t i
    s %= p
    if s < 0:
        s += p
    if s == 0:
        return []
    cdef list c = a[:]
    for i in range(len(c)):
        c[i] = (<long>c[i] * s) % p
    return _trim(c)


def poly_mul(list a, list b, long p):
    cdef Py_ssize_t i, j, na = len(a), nb = len(b)
    cdef long ai
    if na == 0 or nb == 0:
        return []
    cdef list c = [0] * (na + nb - 1)
    for i in range(na):
        ai = <long>a[i]
        if ai:
            for j in range(nb):
                c[i + j] = <long>c[i + j] + ai * <long>b[j]
    for i in range(len(c)):
        c[i] = <long>c[i] % p
    return _trim(c)


def poly_divmod(list a, list b, long p):
    cdef Py_ssize_t i, j, m, n
    cdef long inv, qi
    if len(b) and <long>b[len(b) - 1] == 0:
        b = _trim(b[:])
    n = len(b)
    if n == 0:
        raise ZeroDivisionError("polynomial division by zero")
    cdef list r = _trim(a[:])
    m = len(r)
    if m < n:
        return [], r
    inv = _inv_mod(<long>b[n - 1], p)
    cdef list q = [0] * (m - n + 1)
    for i in range(m - n, -1, -1):
        if len(r) == i + n:
            qi = (<long>r[len(r) - 1] * inv) % p
            q[i] = qi
            if qi:
                for j in range(n):
                    r[i + j] = _mod(<long>r[i + j] - qi * <long>b[j], p)
            _trim(r)
    return _trim(q), r


def poly_mod(list a, list b, long p):
    return poly_divmod(a, b, p)[1]


def poly_gcd(list a, list b, long p):
    cdef long inv
    cdef Py_ssize_t i
    a, b = a[:], b[:]
    while b:
        a, b = b, poly_mod(a, b, p)
    if a and <long>a[len(a) - 1] != 1:
        inv = _inv_mod(<long>a[len(a) - 1], p)
        for i in range(len(a)):
            a[i] = (<long>a[i] * inv) % p
    return a


def poly_invmod(list a, list m, long p):
    cdef list r0 = m[:], r1 = poly_mod(a, m, p)
    cdef list t0 = [], t1 = [1]
    cdef list q, r
    while r1:
        q, r = poly_divmod(r0, r1, p)
        r0, r1 = r1, r
        t0, t1 = t1, poly_sub(t0, poly_mul(q, t1, p), p)
    if len(r0) != 1:
        raise ZeroDivisionError("element not invertible")
    return poly_scale(t0, _inv_mod(<long>r0[0], p), p)


def poly_powmod(list a, e, list m, long p):
    cdef list result = [1]
    if e < 0:
        a = poly_invmod(a, m, p)
        e = -e
    a = poly_mod(a, m, p)
    while e:
        if e & 1:
            result = poly_mod(poly_mul(result, a, p), m, p)
        a = poly_mod(poly_mul(a, a, p), m, p)
        e >>= 1
    return result


def poly_eval(list a, long x, long p):
    cdef long y = 0
    cdef Py_ssize_t i
    for i in range(len(a) - 1, -1, -1):
        y = (y * x + <long>a[i]) % p
    return y


def mat_rref(list rows, long p):
    cdef Py_ssize_t r, i, j, col, ncols, nrows, pivot
    cdef long inv, f
    cdef list row, ri, pivots
    if not rows:
        return rows, []
    nrows = len(rows)
    ncols = len(rows[0])
    pivots = []
    r = 0
    for col in range(ncols):
        pivot = -1
        for i in range(r, nrows):
            if _mod(<long>(<list>rows[i])[col], p):
                pivot = i
                break
        if pivot < 0:
            continue
        rows[r], rows[pivot] = rows[pivot], rows[r]
        row = <list>rows[r]
        inv = _inv_mod(_mod(<long>row[col], p), p)
        for j in range(col, ncols):
            row[j] = (<long>row[j] * inv) % p
        for i in range(nrows):
            if i != r:
                ri = <list>rows[i]
                f = _mod(<long>ri[col], p)
                if f:
                    for j in range(col, ncols):
                        ri[j] = _mod(<long>ri[j] - f * <long>row[j], p)
        pivots.append(col)
        r += 1
        if r == nrows:
            break
    return rows, pivots
