"""Exact linear algebra over the rationals.

Everything here is exact: matrices carry ``int`` / ``fractions.Fraction``
entries, ranks and kernels are computed by fraction-free elimination over the
integers after clearing row denominators.  Rows are kept primitive (content 1)
after every elimination step; a primitive row with a fixed pivot pattern has
entries dividing the corresponding minors of the input, so intermediate growth
never exceeds the determinant bound.

``rank_fast`` computes the rank modulo several random word-size primes and
returns the maximum.  A rank obtained mod p is always a lower bound for the
rank over Q (a unimodular minor mod p is a nonzero integer), so in certified
mode the modular answer is accepted only when it provably equals the true
rank (full-rank case); otherwise the exact elimination is used.
"""

from __future__ import annotations

import math
import random
from fractions import Fraction

from . import kernels

try:
    import gmpy2

    _gcd = gmpy2.gcd
    _mpz = gmpy2.mpz

    def _is_prime(n: int) -> bool:
        return bool(gmpy2.is_prime(n))

    HAVE_GMPY2 = True
except ImportError:  # pragma: no cover - gmpy2 is a declared dependency
    _gcd = math.gcd
    _mpz = int

    def _is_prime(n: int) -> bool:
        if n < 2:
            return False
        for q in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
            if n % q == 0:
                return n == q
        d, s = n - 1, 0
        while d % 2 == 0:
            d //= 2
            s += 1
        for a in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
            x = pow(a, d, n)
            if x in (1, n - 1):
                continue
            for _ in range(s - 1):
                x = x * x % n
                if x == n - 1:
                    break
            else:
                return False
        return True

    HAVE_GMPY2 = False

Rational = Fraction

#: primes are drawn from [2**30, 2**31) so that products of two reduced
#: entries fit in an int64 inside the elimination kernel
PRIME_LOW = 1 << 30
PRIME_HIGH = 1 << 31
DEFAULT_NUM_PRIMES = 3
_DEFAULT_SEED = 0x5EED


class RationalMatrix:
    """Dense matrix with exact rational entries (``int`` or ``Fraction``)."""

    __slots__ = ("rows", "cols", "data")

    def __init__(self, rows: int, cols: int, data):
        self.rows = rows
        self.cols = cols
        self.data = [list(r) for r in data]
        if len(self.data) != rows or any(len(r) != cols for r in self.data):
            raise ValueError("matrix shape does not match entry count")

    @classmethod
    def from_rows(cls, data) -> "RationalMatrix":
        data = [list(r) for r in data]
        rows = len(data)
        cols = len(data[0]) if data else 0
        return cls(rows, cols, data)

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "RationalMatrix":
        return cls(rows, cols, [[0] * cols for _ in range(rows)])

    @property
    def entries(self):
        """Row-major flat list of entries."""
        return [x for row in self.data for x in row]

    def transpose(self) -> "RationalMatrix":
        return RationalMatrix(
            self.cols, self.rows, [list(col) for col in zip(*self.data)] if self.data else []
        )

    def mul_vector(self, v):
        if len(v) != self.cols:
            raise ValueError("vector length does not match column count")
        return [sum(a * b for a, b in zip(row, v)) for row in self.data]

    def __eq__(self, other):
        if not isinstance(other, RationalMatrix):
            return NotImplemented
        if (self.rows, self.cols) != (other.rows, other.cols):
            return False
        return all(
            Fraction(a) == Fraction(b)
            for ra, rb in zip(self.data, other.data)
            for a, b in zip(ra, rb)
        )

    def __repr__(self):
        return f"RationalMatrix({self.rows}x{self.cols})"


# ---------------------------------------------------------------------------
# integer row machinery


def clear_denominators(row) -> list:
    """Scale a rational row to integer entries (row scaling preserves rank)."""
    lcm = 1
    for x in row:
        if isinstance(x, Fraction):
            d = x.denominator
            lcm = lcm // math.gcd(lcm, d) * d
    if lcm == 1:
        return [_mpz(int(x)) for x in row]
    out = []
    for x in row:
        if isinstance(x, Fraction):
            out.append(_mpz(x.numerator * (lcm // x.denominator)))
        else:
            out.append(_mpz(x * lcm))
    return out


def _content(row, start=0):
    g = 0
    for x in row[start:]:
        if x:
            g = _gcd(g, x)
            if g == 1:
                return 1
    return g


def _first_nonzero(row, start=0):
    for i in range(start, len(row)):
        if row[i]:
            return i
    return None


def _make_primitive(row, lead):
    g = _content(row, lead)
    if row[lead] < 0:
        g = -g
    if g != 1:
        for i in range(lead, len(row)):
            row[i] //= g
    return row


class IntEchelon:
    """Row-echelon basis over Z, rows primitive, keyed by pivot column.

    Supports incremental insertion (used both for ranks and for building
    graded subspace bases).  Insertion order does not affect the row space.
    """

    __slots__ = ("width", "pivots")

    def __init__(self, width: int):
        self.width = width
        self.pivots: dict[int, list] = {}

    @property
    def rank(self) -> int:
        return len(self.pivots)

    def reduce(self, row):
        """Eliminate ``row`` against the basis; primitive remainder or None."""
        lead = _first_nonzero(row)
        while lead is not None:
            piv = self.pivots.get(lead)
            if piv is None:
                return _make_primitive(row, lead)
            a, b = piv[lead], row[lead]
            g = _gcd(a, b)
            ma, mb = a // g, b // g
            for i in range(lead, self.width):
                row[i] = ma * row[i] - mb * piv[i]
            lead = _first_nonzero(row, lead + 1)
        return None

    def insert(self, row) -> bool:
        red = self.reduce(list(row))
        if red is None:
            return False
        self.pivots[_first_nonzero(red)] = red
        return True

    def contains(self, row) -> bool:
        return self.reduce(list(row)) is None

    def rref_rows(self):
        """Fully reduced rows (unique basis of the row space), by pivot column."""
        cols = sorted(self.pivots)
        rows = {c: list(self.pivots[c]) for c in cols}
        for c in reversed(cols):
            below = rows[c]
            for c2 in cols:
                if c2 >= c:
                    break
                r2 = rows[c2]
                if r2[c]:
                    a, b = below[c], r2[c]
                    g = _gcd(a, b)
                    ma, mb = a // g, b // g
                    for i in range(c2, self.width):
                        r2[i] = ma * r2[i] - mb * below[i]
                    _make_primitive(r2, c2)
        return [rows[c] for c in cols]


def _int_rows(M: RationalMatrix):
    return [clear_denominators(r) for r in M.data]


def rank(M: RationalMatrix) -> int:
    """Exact rank over Q."""
    if M.rows == 0 or M.cols == 0:
        return 0
    ech = IntEchelon(M.cols)
    for row in _int_rows(M):
        ech.insert(row)
    return ech.rank


def rank_of_rows(rows, width: int) -> int:
    """Exact rank of integer rows (internal fast path, no Fraction boxing)."""
    ech = IntEchelon(width)
    for row in rows:
        ech.insert([_mpz(x) for x in row])
    return ech.rank


def kernel_basis(M: RationalMatrix):
    """Basis of the right kernel {v : M v = 0}.

    Vectors are integer, content 1, first nonzero entry positive, ordered by
    their free column; this normalisation makes the output deterministic.
    """
    return kernel_of_rows(_int_rows(M), M.cols)


def kernel_of_rows(rows, width: int):
    ech = IntEchelon(width)
    for row in rows:
        ech.insert([_mpz(x) for x in row])
    return kernel_from_rref(ech.rref_rows(), width)


def kernel_from_rref(rref_rows, width: int):
    """Kernel vectors from a reduced row-echelon integer basis."""
    pivots = [(_first_nonzero(r), r) for r in rref_rows]
    pivot_cols = {p for p, _ in pivots}
    basis = []
    for j in range(width):
        if j in pivot_cols:
            continue
        hits = [(p, r) for p, r in pivots if r[j]]
        scale = 1
        for p, r in hits:
            a = int(r[p])
            scale = scale // math.gcd(scale, a) * a
        v = [0] * width
        v[j] = _mpz(scale)
        for p, r in hits:
            v[p] = -r[j] * (scale // r[p])
        lead = _first_nonzero(v)
        _make_primitive(v, lead)
        basis.append([int(x) for x in v])
    return basis


# ---------------------------------------------------------------------------
# modular path


def sample_primes(count: int, avoid_divisors=(), rng: random.Random | None = None):
    """Random primes in [2**30, 2**31) dividing none of ``avoid_divisors``."""
    rng = rng or random.Random(_DEFAULT_SEED)
    avoid = [int(d) for d in avoid_divisors if int(d) > 1]
    primes: list[int] = []
    while len(primes) < count:
        cand = rng.randrange(PRIME_LOW | 1, PRIME_HIGH, 2)
        if not _is_prime(cand) or cand in primes:
            continue
        if any(d % cand == 0 for d in avoid):
            continue
        primes.append(cand)
    return primes


def _mod_rows(M: RationalMatrix, p: int):
    out = []
    for row in M.data:
        r = []
        for x in row:
            if isinstance(x, Fraction):
                r.append(x.numerator % p * pow(x.denominator, -1, p) % p)
            else:
                r.append(x % p)
        out.append(r)
    return out


def modular_ranks(M: RationalMatrix, primes) -> list[int]:
    return [kernels.modular_rank(_mod_rows(M, p), p) for p in primes]


def rank_fast(
    M: RationalMatrix,
    *,
    certified: bool = False,
    num_primes: int = DEFAULT_NUM_PRIMES,
    seed: int | None = None,
) -> int:
    """Rank via several random primes; certified mode never returns a wrong rank.

    Primes dividing any entry denominator are skipped.  In certified mode the
    modular answer stands only when the matrix is provably full rank (modular
    rank is a lower bound); on any disagreement between primes, or a detected
    rank deficiency, the exact elimination is used instead.
    """
    if M.rows == 0 or M.cols == 0:
        return 0
    denoms = {x.denominator for row in M.data for x in row if isinstance(x, Fraction)}
    rng = random.Random(_DEFAULT_SEED if seed is None else seed)
    primes = sample_primes(max(num_primes, DEFAULT_NUM_PRIMES), denoms, rng)
    ranks = modular_ranks(M, primes)
    best = max(ranks)
    if not certified:
        return best
    if best == min(M.rows, M.cols) and all(r == best for r in ranks):
        return best
    return rank(M)
