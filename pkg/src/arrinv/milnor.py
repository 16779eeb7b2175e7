"""Graded invariants of a reduced plane curve C : f = 0.

Everything is derived from ranks of graded multiplication maps attached to
the partial derivatives (f_x, f_y, f_z): writing J for the ideal they
generate and M = S/J for the quotient algebra,

* ``milnor_dims[k]``  = dim M_k = dim S_k - rank of (u1,u2,u3) -> sum ui fi,
* ``ar_dims[r]``      = dim of the degree-r syzygies a f_x + b f_y + c f_z = 0,
* ``koszul_dims[r]``  = dim of the submodule spanned by the trivial syzygies
  (f_y, -f_x, 0), (f_z, 0, -f_x), (0, f_z, -f_y).

The total Tjurina number ``tau`` is the stable value of ``milnor_dims``
(reached for k > 3(d-2) when the singularities are isolated), ``mdr`` is the
first degree with a syzygy, ``mdr_e`` the first with a non-trivial one, and
the thresholds ``ct`` / ``st`` compare against the smooth reference and the
stable value.  The regularity of M is st-1, or st exactly on free curves.

Rank strategy.  In fast mode every rank is the maximum over several random
word-size primes (a certified lower bound that equals the true rank with
overwhelming probability).  In certified mode a modular rank is accepted only
with a matching certified upper bound: either the matrix is provably full
rank, or enough exact kernel vectors are exhibited (products of exact
syzygies found at lower degrees, or the trivial-syzygy block for the Koszul
map) to pin the nullity.  When neither certificate closes the gap, the exact
fraction-free elimination runs and its kernel is harvested as new syzygy
generators, so higher degrees certify cheaply.  Certified results therefore
always equal the exact rank, at a small multiple of fast-mode cost.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field

import numpy as np

from . import kernels
from .errors import InvariantViolationError, NonIsolatedSingularitiesError
from .graded import (
    HomogeneousPolynomial,
    dim_graded_piece,
    monomial_basis,
    monomial_index,
    multiplication_rows,
    partials,
)
from .ratlin import IntEchelon, kernel_of_rows, rank_of_rows, sample_primes

_dim = dim_graded_piece


@dataclass(frozen=True)
class EngineConfig:
    """Rank-kernel configuration shared by all graded computations."""

    certified: bool = False
    num_primes: int = 3
    seed: int = 0x5EED


DEFAULT_CONFIG = EngineConfig()

FREE = "free"
NEARLY_FREE = "nearly_free"
NEITHER = "neither"


def tau_bound_for_free(d: int, r: int) -> int:
    """Tjurina number forced on a free curve of degree d with mdr r:
    (d-1)^2 - r(d-1-r)."""
    return (d - 1) ** 2 - r * (d - 1 - r)


def smooth_milnor_dims(d: int, cap: int):
    """Quotient dimensions for the smooth reference of degree d.

    The ideal of a smooth Fermat-type form is spanned by the pure powers of
    degree d-1, so dim M_k counts degree-k monomials with every exponent at
    most d-2.
    """
    e = d - 2
    out = []
    for k in range(cap + 1):
        n = 0
        if e >= 0:
            for a in range(max(0, k - 2 * e), min(e, k) + 1):
                lo = max(0, k - a - e)
                hi = min(e, k - a)
                if hi >= lo:
                    n += hi - lo + 1
        out.append(n)
    return out


@dataclass
class HilbertTable:
    """Graded dimension profile of one curve, degrees 0..degree_cap."""

    d: int
    degree_cap: int
    milnor_dims: list[int]
    jacobian_dims: list[int]
    ar_dims: list[int]
    koszul_dims: list[int]
    tau: int


@dataclass
class SaturationProfile:
    saturated_dims: list[int]
    gap_dims: list[int]
    sat_degree: int
    algebraically_rigid: bool


@dataclass
class QuickProfile:
    d: int
    tau: int
    mdr: int
    classification: str
    exponents: tuple[int, int] | None


@dataclass
class InvariantReport:
    d: int
    tau: int
    mdr: int
    mdr_e: int | None
    ct: int | None
    st: int | None
    reg: int | None
    classification: str
    exponents: tuple[int, int] | None
    delta: int
    saturation_gap_dims: list[int]
    sat_degree: int
    algebraically_rigid: bool
    hilbert: HilbertTable
    classification_note: str | None = None

    def to_dict(self):
        return {
            "d": self.d,
            "tau": self.tau,
            "mdr": self.mdr,
            "mdr_e": self.mdr_e,
            "ct": self.ct,
            "st": self.st,
            "reg": self.reg,
            "classification": self.classification,
            "classification_note": self.classification_note,
            "exponents": list(self.exponents) if self.exponents else None,
            "delta": self.delta,
            "milnor_dims": list(self.hilbert.milnor_dims),
            "jacobian_dims": list(self.hilbert.jacobian_dims),
            "ar_dims": list(self.hilbert.ar_dims),
            "koszul_dims": list(self.hilbert.koszul_dims),
            "degree_cap": self.hilbert.degree_cap,
            "saturation_gap_dims": list(self.saturation_gap_dims),
            "sat_degree": self.sat_degree,
            "algebraically_rigid": self.algebraically_rigid,
        }


def default_cap(d: int) -> int:
    """Covers the stable range, the saturation window and all thresholds."""
    return max(3 * (d - 2) + 2, d, 0)


class Analyzer:
    """Shared state (matrices, ranks, harvested syzygies) for one curve."""

    def __init__(self, f: HomogeneousPolynomial, config: EngineConfig | None = None):
        if f.is_zero():
            raise ValueError("zero polynomial")
        self.config = config or DEFAULT_CONFIG
        self.f = f.primitive()
        self.d = f.degree
        self.fx, self.fy, self.fz = partials(self.f)
        self.primes = sample_primes(
            self.config.num_primes, (), random.Random(self.config.seed)
        )
        self._mult_cache: dict[int, tuple[list, int]] = {}
        self._rank_cache: dict[int, int] = {}
        self._koszul_cache: dict[int, int] = {}
        self._syzygies: list[tuple[int, tuple]] = []  # (degree, (a, b, c) polys)
        self._koszul_identity_checked = False

    # -- matrices ----------------------------------------------------------

    def _mult(self, k: int):
        if k not in self._mult_cache:
            self._mult_cache[k] = multiplication_rows([self.fx, self.fy, self.fz], k)
        return self._mult_cache[k]

    def _koszul_rows(self, r: int):
        """Matrix of (u, v, w) -> u(f_y,-f_x,0) + v(f_z,0,-f_x) + w(0,f_z,-f_y)
        from (S_{r-d+1})^3 into (S_r)^3."""
        mx, _ = multiplication_rows([self.fx], r)
        my, _ = multiplication_rows([self.fy], r)
        mz, _ = multiplication_rows([self.fz], r)
        n = _dim(r - self.d + 1)
        zero = [0] * n
        rows = []
        for i in range(_dim(r)):
            rows.append(my[i] + mz[i] + zero)
        for i in range(_dim(r)):
            rows.append([-v for v in mx[i]] + zero + mz[i])
        for i in range(_dim(r)):
            rows.append(zero + [-v for v in mx[i]] + [-v for v in my[i]])
        return rows, 3 * n

    # -- modular machinery ---------------------------------------------------

    def _modular_max_rank(self, rows, ncols: int) -> int:
        if not rows or ncols == 0:
            return 0
        try:
            base = np.array(rows, dtype=np.int64)
        except OverflowError:
            return max(kernels.modular_rank(rows, p) for p in self.primes)
        return max(kernels.modular_rank(base % p, p) for p in self.primes)

    def _syzygy_product_rows(self, r: int):
        """Exact kernel vectors of the degree-(r+d-1) multiplication map:
        all monomial multiples of the syzygies found so far."""
        width = 3 * _dim(r)
        rows = []
        for deg, (a, b, c) in self._syzygies:
            if deg > r:
                continue
            for mu in monomial_basis(r - deg):
                row = [0] * width
                for i, poly in enumerate((a, b, c)):
                    off = i * _dim(r)
                    for m, cf in poly.coeffs.items():
                        idx = monomial_index(
                            (m[0] + mu[0], m[1] + mu[1], m[2] + mu[2]), r
                        )
                        row[off + idx] = cf
                rows.append(row)
        return rows

    def _exhibited_nullity(self, r: int) -> int:
        rows = self._syzygy_product_rows(r)
        if not rows:
            return 0
        return self._modular_max_rank(rows, 3 * _dim(r))

    def _harvest_syzygies(self, r: int, kernel_vectors) -> None:
        """Keep the kernel vectors that enlarge the exhibited span."""
        width = 3 * _dim(r)
        base = self._syzygy_product_rows(r)
        p = self.primes[0]
        ech: dict[int, list] = {}

        def insert(vec) -> bool:
            row = [x % p for x in vec]
            lead = next((i for i, x in enumerate(row) if x), None)
            while lead is not None and lead in ech:
                piv = ech[lead]
                factor = row[lead] * pow(piv[lead], -1, p) % p
                row = [(x - factor * y) % p for x, y in zip(row, piv)]
                lead = next((i for i, x in enumerate(row) if x), None)
            if lead is None:
                return False
            ech[lead] = row
            return True

        for b in base:
            insert(b)
        n = _dim(r)
        for v in kernel_vectors:
            if insert(v):
                triple = tuple(
                    HomogeneousPolynomial.from_coefficient_vector(r, v[i * n : (i + 1) * n])
                    for i in range(3)
                )
                self._syzygies.append((r, triple))

    # -- certified ranks -----------------------------------------------------

    def mult_rank(self, k: int) -> int:
        """Rank of the multiplication map (S_{k-d+1})^3 -> S_k; exact in
        certified mode."""
        if k in self._rank_cache:
            return self._rank_cache[k]
        if k < self.d - 1:
            val = 0
        else:
            rows, ncols = self._mult(k)
            nrows = _dim(k)
            best = self._modular_max_rank(rows, ncols)
            if not self.config.certified or best == min(nrows, ncols):
                val = best
            else:
                r = k - self.d + 1
                if best == ncols - self._exhibited_nullity(r):
                    val = best
                else:
                    kern = kernel_of_rows(rows, ncols)
                    self._harvest_syzygies(r, kern)
                    val = ncols - len(kern)
        self._rank_cache[k] = val
        return val

    def milnor_dim(self, k: int) -> int:
        return _dim(k) - self.mult_rank(k)

    def ar_dim(self, r: int) -> int:
        if r < 0:
            return 0
        return 3 * _dim(r) - self.mult_rank(r + self.d - 1)

    def _check_koszul_identity(self):
        if self._koszul_identity_checked:
            return
        u, v, w = self.fz, self.fy.scale(-1), self.fx
        comps = (
            u * self.fy + v * self.fz,
            u.scale(-1) * self.fx + w * self.fz,
            v.scale(-1) * self.fx + w.scale(-1) * self.fy,
        )
        if any(not c.is_zero() for c in comps):
            raise InvariantViolationError("trivial syzygy identity failed")
        self._koszul_identity_checked = True

    def koszul_rank(self, r: int) -> int:
        """Rank of the trivial-syzygy multiplication map in degree r."""
        if r in self._koszul_cache:
            return self._koszul_cache[r]
        d = self.d
        if r < d - 1:
            val = 0
        else:
            rows, ncols = self._koszul_rows(r)
            best = self._modular_max_rank(rows, ncols)
            expected = 3 * _dim(r - d + 1) - _dim(r - 2 * d + 2)
            if not self.config.certified:
                val = best
            elif best == min(len(rows), ncols):
                val = best
            else:
                # certified upper bound: the kernel contains every monomial
                # multiple of (f_z, -f_y, f_x)
                self._check_koszul_identity()
                if best == expected:
                    val = best
                else:
                    val = rank_of_rows(rows, ncols)
            if val != expected:
                raise InvariantViolationError(
                    f"koszul rank {val} != {expected} in degree {r}; "
                    "curve not reduced or rank kernel failure"
                )
        self._koszul_cache[r] = val
        return val


# ---------------------------------------------------------------------------
# public operations


def hilbert_table(
    f: HomogeneousPolynomial,
    cap: int | None = None,
    config: EngineConfig | None = None,
    _analyzer: Analyzer | None = None,
) -> HilbertTable:
    an = _analyzer or Analyzer(f, config)
    d = an.d
    T = 3 * (d - 2)
    if cap is None:
        cap = default_cap(d)
    if cap < max(T + 1, 0):
        raise ValueError(f"cap must be at least {max(T + 1, 0)} for degree {d}")

    m = [an.milnor_dim(k) for k in range(cap + 1)]
    stable = m[max(T + 1, 0) :]
    if any(v != stable[0] for v in stable):
        raise NonIsolatedSingularitiesError(
            f"dim M_k does not stabilise past degree {max(T + 1, 0)}: "
            "the curve has a repeated factor"
        )
    tau = stable[0]

    ar = []
    for r in range(cap + 1):
        k = r + d - 1
        if k <= cap:
            ar.append(3 * _dim(r) - an.mult_rank(k))
        else:
            # k is in the stable range (k > 3(d-2)), so dim J_k = dim S_k - tau
            ar.append(3 * _dim(r) - (_dim(k) - tau))
    koszul = [an.koszul_rank(r) for r in range(cap + 1)]

    return HilbertTable(
        d=d,
        degree_cap=cap,
        milnor_dims=m,
        jacobian_dims=[_dim(k) - m[k] for k in range(cap + 1)],
        ar_dims=ar,
        koszul_dims=koszul,
        tau=tau,
    )


def tjurina(f, config: EngineConfig | None = None) -> int:
    """Total Tjurina number: the stable value of dim M_k."""
    return hilbert_table(f, config=config).tau


def mdr(f, config: EngineConfig | None = None, _analyzer: Analyzer | None = None) -> int:
    """Minimal degree of a relation among the partial derivatives."""
    an = _analyzer or Analyzer(f, config)
    for r in range(an.d):
        if an.ar_dim(r) > 0:
            return r
    raise InvariantViolationError("no syzygy found up to degree d-1")


def mdr_e(f, config: EngineConfig | None = None, _analyzer: Analyzer | None = None) -> int | None:
    """Minimal degree of an essential (non-trivial) relation; None when every
    relation is trivial (smooth curves)."""
    an = _analyzer or Analyzer(f, config)
    d = an.d
    r0 = mdr(f, _analyzer=an)
    for r in range(r0, max(2 * (d - 2), d - 1) + 1):
        if an.ar_dim(r) > an.koszul_rank(r):
            return r
    if hilbert_table(f, _analyzer=an).tau == 0:
        return None
    raise InvariantViolationError("singular curve with no essential relation in range")


def _thresholds(table: HilbertTable):
    """(ct, st) from the table; (None, None) below degree 3, ct None when the
    curve is smooth."""
    d = table.d
    if d < 3:
        return None, None
    smooth = smooth_milnor_dims(d, table.degree_cap)
    ct = None
    for k, (a, b) in enumerate(zip(table.milnor_dims, smooth)):
        if a != b:
            ct = k - 1
            break
    if ct is None and table.tau != 0:
        raise InvariantViolationError("singular curve matching the smooth profile")
    last_bad = -1
    for k, v in enumerate(table.milnor_dims):
        if v != table.tau:
            last_bad = k
    st = last_bad + 1
    return ct, st


def ct(f, config: EngineConfig | None = None) -> int | None:
    table = hilbert_table(f, config=config)
    value = _thresholds(table)[0]
    _cross_check_ct(f, table, value, config)
    return value


def st(f, config: EngineConfig | None = None) -> int | None:
    return _thresholds(hilbert_table(f, config=config))[1]


def _table_mdr(table: HilbertTable) -> int:
    for r, v in enumerate(table.ar_dims):
        if v > 0:
            return r
    raise InvariantViolationError("no syzygy within the degree cap")


def _table_mdr_e(table: HilbertTable) -> int | None:
    for r, (a, k) in enumerate(zip(table.ar_dims, table.koszul_dims)):
        if a > k:
            return r
    if table.tau != 0:
        raise InvariantViolationError("singular curve with no essential relation")
    return None


def _cross_check_ct(f, table, ct_value, config):
    e = _table_mdr_e(table)
    if table.d < 3:
        return
    if (ct_value is None) != (e is None):
        raise InvariantViolationError("coincidence threshold vs essential relation mismatch")
    if ct_value is not None and ct_value != e + table.d - 2:
        raise InvariantViolationError(
            f"ct={ct_value} but essential relation degree gives {e + table.d - 2}"
        )


def classify(
    f: HomogeneousPolynomial,
    cap: int | None = None,
    config: EngineConfig | None = None,
    assume_arrangement: bool = False,
) -> InvariantReport:
    """Full invariant profile with freeness classification.

    Every derived identity that must hold for the claimed class (resolution
    Hilbert function for free curves, threshold trichotomy, regularity
    formulas) is recomputed and any failure raises, so a report that comes
    back is internally consistent.
    """
    an = Analyzer(f, config)
    d = an.d
    table = hilbert_table(f, cap=cap, _analyzer=an)
    tau = table.tau
    r = _table_mdr(table)
    e = _table_mdr_e(table)
    ct_v, st_v = _thresholds(table)
    _cross_check_ct(f, table, ct_v, config)

    tau_free = tau_bound_for_free(d, r)
    note = None
    if tau == tau_free:
        cls, expo = FREE, (r, d - 1 - r)
    elif tau == tau_free - 1:
        cls, expo = NEARLY_FREE, (r, d - r)
        if not assume_arrangement:
            note = "nearly_free (numeric criterion)"
    else:
        cls, expo = NEITHER, None
    reg = None if st_v is None else st_v - 1 + (1 if cls == FREE else 0)

    _consistency_checks(table, cls, expo, r, e, ct_v, st_v, reg, assume_arrangement)

    sat = saturation_profile(f, cap=table.degree_cap, _analyzer=an, _table=table)

    return InvariantReport(
        d=d,
        tau=tau,
        mdr=r,
        mdr_e=e,
        ct=ct_v,
        st=st_v,
        reg=reg,
        classification=cls,
        exponents=expo,
        delta=tau_free - tau,
        saturation_gap_dims=sat.gap_dims,
        sat_degree=sat.sat_degree,
        algebraically_rigid=sat.algebraically_rigid,
        hilbert=table,
        classification_note=note,
    )


def _consistency_checks(table, cls, expo, r, e, ct_v, st_v, reg, assume_arrangement):
    d, tau = table.d, table.tau

    # semicontinuity: the smooth reference realises the generic (minimal)
    # value of every dim M_k, with equality up to the coincidence threshold
    smooth = smooth_milnor_dims(d, table.degree_cap)
    for k, (a, b) in enumerate(zip(table.milnor_dims, smooth)):
        if a < b:
            raise InvariantViolationError(f"dim M_{k} below the smooth reference")
        if ct_v is not None and k <= ct_v and a != b:
            raise InvariantViolationError(f"dim M_{k} differs from the smooth reference below ct")

    if cls == FREE:
        d1, d2 = expo
        for k in range(table.degree_cap + 1):
            want = _dim(k - d1) + _dim(k - d2)
            if table.ar_dims[k] != want:
                raise InvariantViolationError(
                    f"free curve fails the split syzygy module test in degree {k}"
                )
        if st_v is not None and reg != d2 + d - 3:
            raise InvariantViolationError("free curve regularity formula failed")
    if cls == NEARLY_FREE and st_v is not None:
        d1, d2 = expo
        if st_v != d2 + d - 2:
            raise InvariantViolationError("nearly free stability threshold formula failed")

    if d >= 3 and ct_v is not None:
        excess = ct_v + st_v - 3 * (d - 2)
        if cls == FREE and excess != 0:
            raise InvariantViolationError("free curve fails ct + st = 3(d-2)")
        if cls == NEARLY_FREE and excess != 2:
            raise InvariantViolationError("nearly free curve fails ct + st = 3(d-2) + 2")
        if cls == NEITHER and excess < 3:
            raise InvariantViolationError("unfree curve fails ct + st >= 3(d-2) + 3")

    if d >= 4 and e is not None and reg is not None:
        base = 2 * (d - 2) - e
        if cls == FREE and reg != base:
            raise InvariantViolationError("regularity vs essential-degree identity failed (free)")
        if cls == NEARLY_FREE and reg != base + 1:
            raise InvariantViolationError("regularity identity failed (nearly free)")
        if cls == NEITHER and reg < base + 2:
            raise InvariantViolationError("regularity bound failed (neither)")

    if assume_arrangement and d >= 2:
        if e != r:
            raise InvariantViolationError("arrangement with mdr != essential mdr")
        if r > d - 2:
            raise InvariantViolationError("arrangement with mdr above d-2")
        if r <= 2 and cls == NEITHER:
            raise InvariantViolationError("arrangement with mdr <= 2 must be free or nearly free")
        if cls == FREE and tau < tau_min_free(d):
            raise InvariantViolationError("free arrangement below the minimal Tjurina bound")


def tau_min_free(d: int) -> int:
    """Smallest Tjurina number a free arrangement of d >= 2 lines can have:
    3(d-1)^2/4, rounded up to the next integer when d is even."""
    if d % 2 == 1:
        return 3 * (d - 1) ** 2 // 4
    return 3 * (d - 1) ** 2 // 4 + 1


def quick_profile(
    f: HomogeneousPolynomial,
    config: EngineConfig | None = None,
    assume_arrangement: bool = True,
) -> QuickProfile:
    """tau + mdr + numeric classification without the full table.

    Used for parameter sweeps and large-degree spot checks where the full
    Hilbert/Koszul profile would dominate the runtime.  In certified mode the
    multiplication ranks are walked upward so the syzygy harvest keeps the
    stable-range ranks certifiable.
    """
    cfg = config or DEFAULT_CONFIG
    an = Analyzer(f, cfg)
    d = an.d
    T = 3 * (d - 2)
    k1, k2 = max(T + 1, d - 1), max(T + 2, d)
    if cfg.certified:
        for k in range(d - 1, k2 + 1):
            an.mult_rank(k)
    r = mdr(f, _analyzer=an)
    m1, m2 = an.milnor_dim(k1), an.milnor_dim(k2)
    if m1 != m2:
        raise NonIsolatedSingularitiesError("dim M_k not stable past 3(d-2)")
    tau = m1
    tau_free = tau_bound_for_free(d, r)
    if tau == tau_free:
        cls, expo = FREE, (r, d - 1 - r)
        for rr in range(r, min(r + 3, d)):
            want = _dim(rr - expo[0]) + _dim(rr - expo[1])
            if an.ar_dim(rr) != want:
                raise InvariantViolationError("free profile spot check failed")
    elif tau == tau_free - 1:
        cls, expo = NEARLY_FREE, (r, d - r)
    else:
        cls, expo = NEITHER, None
    if assume_arrangement and r <= 2 and cls == NEITHER:
        raise InvariantViolationError("arrangement with mdr <= 2 must be free or nearly free")
    return QuickProfile(d=d, tau=tau, mdr=r, classification=cls, exponents=expo)


# ---------------------------------------------------------------------------
# saturation


def _column_space_echelon(an: Analyzer, k: int) -> IntEchelon:
    """Echelon basis of the degree-k piece of the ideal (f_x, f_y, f_z)."""
    ech = IntEchelon(_dim(k))
    if k >= an.d - 1:
        rows, ncols = an._mult(k)
        cols = zip(*rows) if ncols else ()
        for col in cols:
            ech.insert(list(col))
    return ech


def _shift_index_map(k: int, var: int):
    """Index map of multiplication by x, y or z from S_k into S_{k+1}."""
    shift = [0, 0, 0]
    shift[var] = 1
    return [
        monomial_index((m[0] + shift[0], m[1] + shift[1], m[2] + shift[2]), k + 1)
        for m in monomial_basis(k)
    ]


def _residual_functionals(rref_rows, width: int):
    """Integer functionals whose common kernel is the row space span."""
    pivots = [(next(i for i, x in enumerate(r) if x), r) for r in rref_rows]
    pivot_cols = {p for p, _ in pivots}
    out = []
    for j in range(width):
        if j in pivot_cols:
            continue
        hits = [(p, r) for p, r in pivots if r[j]]
        scale = 1
        for p, r in hits:
            a = int(r[p])
            scale = scale // math.gcd(scale, a) * a
        phi = [0] * width
        phi[j] = scale
        for p, r in hits:
            phi[p] = -int(r[j]) * (scale // int(r[p]))
        g = 0
        for x in phi:
            g = math.gcd(g, x)
            if g == 1:
                break
        if g > 1:
            phi = [x // g for x in phi]
        out.append(phi)
    return out


def _members_killed_by(upper: IntEchelon, k: int) -> IntEchelon:
    """{g in S_k : x g, y g, z g all lie in the span described by upper}."""
    nk, nk1 = _dim(k), _dim(k + 1)
    ech = IntEchelon(nk)
    if upper.rank == nk1:
        for i in range(nk):
            row = [0] * nk
            row[i] = 1
            ech.insert(row)
        return ech
    funcs = _residual_functionals(upper.rref_rows(), nk1)
    constraints = []
    for var in range(3):
        tmap = _shift_index_map(k, var)
        for phi in funcs:
            constraints.append([phi[tmap[c]] for c in range(nk)])
    for v in kernel_of_rows(constraints, nk):
        ech.insert(v)
    return ech


def saturation_profile(
    f: HomogeneousPolynomial,
    cap: int | None = None,
    config: EngineConfig | None = None,
    _analyzer: Analyzer | None = None,
    _table: HilbertTable | None = None,
) -> SaturationProfile:
    """Degree-by-degree saturation of the ideal of partials.

    Sweeps the window with the membership rule I_k = {g : xg, yg, zg in
    I_{k+1}} until stable, starting from the degree B past which the ideal is
    already saturated (B = max(3(d-2) - ct, st); every gap degree is below
    it).  Processing degrees downward makes the first sweep exact and the
    second a confirmation.
    """
    an = _analyzer or Analyzer(f, config)
    d = an.d
    if cap is None:
        cap = default_cap(d)
    table = _table or hilbert_table(f, cap=cap, _analyzer=an)
    if table.degree_cap < cap:
        raise ValueError("table cap below requested saturation cap")
    T = 3 * (d - 2)
    ct_v, st_v = _thresholds(table)
    if d < 3:
        top = cap
    else:
        top = st_v if ct_v is None else max(T - ct_v, st_v)
        top = max(0, min(top, cap))

    jac = {k: _column_space_echelon(an, k) for k in range(min(top, cap) + 1)}
    for k, ech in jac.items():
        if ech.rank != table.jacobian_dims[k]:
            raise InvariantViolationError(
                f"ideal basis dimension mismatch in degree {k} "
                f"({ech.rank} vs {table.jacobian_dims[k]}); rank kernel failure"
            )

    sat: dict[int, IntEchelon] = {top: jac[top]}
    for sweep in range(cap + 2):
        changed = False
        for k in range(top - 1, -1, -1):
            new = _members_killed_by(sat[k + 1], k)
            old = sat.get(k)
            if old is None or sorted(old.pivots) != sorted(new.pivots) or any(
                list(map(int, old.pivots[c])) != list(map(int, new.pivots[c]))
                for c in new.pivots
            ):
                changed = True
            sat[k] = new
        if not changed:
            break
    else:
        raise NonIsolatedSingularitiesError("saturation sweep failed to stabilise")

    sat_dims = []
    gaps = []
    for k in range(cap + 1):
        if k < top:
            ik = sat[k].rank
            for row in jac[k].pivots.values():
                if not sat[k].contains(row):
                    raise InvariantViolationError(
                        f"ideal piece not inside its saturation in degree {k}"
                    )
        else:
            ik = table.jacobian_dims[k]
        sat_dims.append(ik)
        gaps.append(ik - table.jacobian_dims[k])
    if any(g < 0 for g in gaps):
        raise InvariantViolationError("negative saturation gap")

    nonzero = [k for k, g in enumerate(gaps) if g]
    sat_degree = (nonzero[-1] + 1) if nonzero else 0
    rigid = d > cap or gaps[d] == 0
    return SaturationProfile(
        saturated_dims=sat_dims,
        gap_dims=gaps,
        sat_degree=sat_degree,
        algebraically_rigid=rigid,
    )


def saturation_profile_naive(f: HomogeneousPolynomial, cap: int) -> SaturationProfile:
    """Reference implementation: full-window sweeps from the ideal itself.

    Exponentially dumber but independent of the windowed start; kept as the
    oracle for the production routine on small inputs.
    """
    an = Analyzer(f)
    table = hilbert_table(f, cap=max(cap, default_cap(an.d)), _analyzer=an)
    jac = {k: _column_space_echelon(an, k) for k in range(cap + 2)}
    current = dict(jac)
    for sweep in range(cap + 3):
        changed = False
        nxt = {cap + 1: current[cap + 1]}
        for k in range(cap, -1, -1):
            new = _members_killed_by(current[k + 1], k)
            if sorted(new.pivots) != sorted(current[k].pivots) or any(
                list(map(int, new.pivots[c])) != list(map(int, current[k].pivots[c]))
                for c in new.pivots
            ):
                changed = True
            nxt[k] = new
        current = nxt
        if not changed:
            break
    gaps = [current[k].rank - jac[k].rank for k in range(cap + 1)]
    nonzero = [k for k, g in enumerate(gaps) if g]
    return SaturationProfile(
        saturated_dims=[current[k].rank for k in range(cap + 1)],
        gap_dims=gaps,
        sat_degree=(nonzero[-1] + 1) if nonzero else 0,
        algebraically_rigid=an.d > cap or gaps[an.d] == 0,
    )
