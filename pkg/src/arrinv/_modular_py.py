"""Pure-Python (numpy) fallback for the compiled elimination kernel.

Same contract as ``arrinv._speedups``: entries reduced to [0, p), p < 2**31,
so products fit in int64.  Row updates are vectorised; the per-pivot Python
overhead is the price of not compiling.
"""

import numpy as np


def modular_rank(a, p):
    """Rank of the int64 matrix ``a`` over Z/p.  ``a`` is clobbered."""
    nrows, ncols = a.shape
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        nz = np.nonzero(a[r:, c])[0]
        if nz.size == 0:
            continue
        piv = r + int(nz[0])
        if piv != r:
            a[[r, piv], c:] = a[[piv, r], c:]
        inv = pow(int(a[r, c]), -1, int(p))
        row = (a[r, c:] * inv) % p
        a[r, c:] = row
        below = a[r + 1 :, c:]
        factors = a[r + 1 :, c]
        if factors.any():
            below -= np.outer(factors, row)
            below %= p
        r += 1
    return r
