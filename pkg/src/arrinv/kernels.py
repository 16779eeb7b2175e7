"""Backend selection for the modular rank kernel.

The compiled extension is preferred; the numpy implementation is the
fallback.  Set ``ARRINV_NO_EXT=1`` to force the fallback (used by the
benchmark and the backend-equivalence tests).
"""

import os

import numpy as np

if os.environ.get("ARRINV_NO_EXT"):
    from . import _modular_py as _impl

    BACKEND = "python"
else:
    try:
        from . import _speedups as _impl

        BACKEND = "compiled"
    except ImportError:
        from . import _modular_py as _impl

        BACKEND = "python"


def modular_rank(rows, p):
    """Rank over Z/p of a matrix given as int64 ndarray or list of int rows.

    Python-int rows are reduced mod p here; ndarray input must already be
    reduced to [0, p).
    """
    if isinstance(rows, np.ndarray):
        a = np.ascontiguousarray(rows, dtype=np.int64)
    else:
        if not rows or not len(rows[0]):
            return 0
        a = np.array([[x % p for x in row] for row in rows], dtype=np.int64)
    if a.size == 0:
        return 0
    return _impl.modular_rank(a, p)
