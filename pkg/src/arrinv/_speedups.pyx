# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled elimination kernel for rank computations over Z/p.

Entries must be reduced to [0, p) with p < 2**31, so every product in the
elimination fits comfortably in a C int64.
"""


cdef long long _modinv(long long a, long long p):
    # extended Euclid; a is nonzero mod p
    cdef long long old_r = a, r = p
    cdef long long old_s = 1, s = 0
    cdef long long q, tmp
    while r != 0:
        q = old_r / r
        tmp = old_r - q * r
        old_r = r
        r = tmp
        tmp = old_s - q * s
        old_s = s
        s = tmp
    old_s %= p
    if old_s < 0:
        old_s += p
    return old_s


def modular_rank(long long[:, ::1] a, long long p):
    """Rank of the matrix ``a`` over Z/p.  ``a`` is clobbered."""
    cdef Py_ssize_t nrows = a.shape[0]
    cdef Py_ssize_t ncols = a.shape[1]
    cdef Py_ssize_t r = 0, i, j, c, piv
    cdef long long inv, factor, v

    for c in range(ncols):
        if r == nrows:
            break
        piv = -1
        for i in range(r, nrows):
            if a[i, c] != 0:
                piv = i
                break
        if piv < 0:
            continue
        if piv != r:
            for j in range(c, ncols):
                v = a[r, j]
                a[r, j] = a[piv, j]
                a[piv, j] = v
        inv = _modinv(a[r, c], p)
        for i in range(r + 1, nrows):
            if a[i, c] == 0:
                continue
            factor = (a[i, c] * inv) % p
            for j in range(c, ncols):
                v = (a[i, j] - factor * a[r, j]) % p
                if v < 0:
                    v += p
                a[i, j] = v
        r += 1
    return r
