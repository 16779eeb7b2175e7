"""Realization-space geometry of a lattice type.

The ordered arrangements with a prescribed lattice form a subvariety of the
2d-dimensional space of d-tuples of lines, cut out by one 3x3 determinant
per concurrency condition.  ``local_stratum_dim`` measures that subvariety at
a given (exactly verified) realization by the rank of the Jacobian of the
determinant system on an affine chart; the value is the stratum dimension
wherever the realization is a smooth point.

``orbit_dim`` is the dimension of the coordinate-change orbit of the
arrangement: 8 minus the number of independent linear syzygies.

``census`` replays the complete d = 4, 5, 6 stratum tables from the embedded
data files (plus the d = 11 pencil-type arrangement showing that a Tjurina
number above the free minimum no longer forces freeness or near-freeness)
and reports a pass/fail verdict per cell.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from importlib import resources
from itertools import combinations

from . import milnor
from .errors import InvariantViolationError
from .lattice import (
    Arrangement,
    Lattice,
    NamedLattice,
    canonical_form,
    intersection_lattice,
    is_isomorphic,
    max_multiplicity,
    realize,
    tau_of_lattice,
)
from .ratlin import RationalMatrix, rank


@dataclass(frozen=True)
class IncidenceSystem:
    """Determinant equations cutting out a lattice's realizations.

    Each equation is the index triple (u, v, w) of three lines required to be
    concurrent: the determinant of their coefficient rows must vanish.  The
    sparse variant emits k-2 equations for a point of multiplicity k, the
    full variant all C(k, 3).
    """

    lattice: Lattice
    variant: str
    equations: tuple[tuple[int, int, int], ...]

    @property
    def num_variables(self) -> int:
        return 3 * self.lattice.d

    def inequations(self):
        """Triples whose determinant must NOT vanish (lazy)."""
        concurrent = set()
        for pt in self.lattice.points:
            for trip in combinations(pt, 3):
                concurrent.add(trip)
        for trip in combinations(range(self.lattice.d), 3):
            if trip not in concurrent:
                yield trip


def incidence_equations(lat: Lattice, variant: str = "E") -> IncidenceSystem:
    if variant not in ("E", "Eprime"):
        raise ValueError("variant must be 'E' or 'Eprime'")
    eqs = []
    for pt in lat.points_ge3():
        if variant == "E":
            i1, i2 = pt[0], pt[1]
            for j in pt[2:]:
                eqs.append((i1, i2, j))
        else:
            eqs.extend(combinations(pt, 3))
    return IncidenceSystem(lattice=lat, variant=variant, equations=tuple(eqs))


def codim_bound(lat: Lattice) -> int:
    """Upper bound sum (m_p - 2) for the stratum codimension."""
    return sum(m - 2 for m in lat.multiplicities)


def codim_bound_is_strict_regime(lat: Lattice) -> bool:
    """The bound exceeds the ambient dimension 2d, so it cannot be attained."""
    return codim_bound(lat) > 2 * lat.d


def _det3(r0, r1, r2):
    return (
        r0[0] * (r1[1] * r2[2] - r1[2] * r2[1])
        - r0[1] * (r1[0] * r2[2] - r1[2] * r2[0])
        + r0[2] * (r1[0] * r2[1] - r1[1] * r2[0])
    )


def _cross(u, v):
    return (
        u[1] * v[2] - u[2] * v[1],
        u[2] * v[0] - u[0] * v[2],
        u[0] * v[1] - u[1] * v[0],
    )


def local_stratum_dim(arr: Arrangement, variant: str = "E") -> int:
    """Dimension of the lattice stratum at this realization.

    Equals 2d minus the rank of the Jacobian of the concurrency system on the
    affine chart fixing, for each line, its largest-magnitude coordinate.
    The value is local and assumes the realization is a smooth point of the
    stratum closure.
    """
    lat = intersection_lattice(arr)
    system = incidence_equations(lat, variant)
    coords = arr.primitive_triples()
    for (u, v, w) in system.equations:
        if _det3(coords[u], coords[v], coords[w]) != 0:
            raise InvariantViolationError(
                f"realization does not satisfy concurrency of lines {u}, {v}, {w}"
            )
    fixed = [max(range(3), key=lambda i: abs(c[i])) for c in coords]
    free_cols = {}
    for line in range(arr.d):
        for i in range(3):
            if i != fixed[line]:
                free_cols[(line, i)] = len(free_cols)
    rows = []
    for (u, v, w) in system.equations:
        row = [0] * len(free_cols)
        for line, grad in (
            (u, _cross(coords[v], coords[w])),
            (v, _cross(coords[w], coords[u])),
            (w, _cross(coords[u], coords[v])),
        ):
            for i in range(3):
                if i != fixed[line]:
                    row[free_cols[(line, i)]] = grad[i]
        rows.append(row)
    if not rows:
        return 2 * arr.d
    jac_rank = rank(RationalMatrix.from_rows(rows))
    if jac_rank > len(system.equations):
        raise InvariantViolationError("Jacobian rank exceeds equation count")
    return 2 * arr.d - jac_rank


def orbit_dim(arr: Arrangement, config: milnor.EngineConfig | None = None) -> int:
    """Dimension of the coordinate-change orbit: 8 - dim of linear syzygies.

    Cross-checked against the full case table: 2 for a single line, 4 for
    two, 5/6 for three concurrent/triangle, and for d >= 4 the value 5, 7 or
    8 according to the minimal syzygy degree being 0, 1 or higher.
    """
    an = milnor.Analyzer(arr.polynomial(), config)
    d = arr.d
    ar1 = an.ar_dim(1)
    value = 8 - ar1
    if d == 1:
        expected = 2
    elif d == 2:
        expected = 4
    elif d == 3:
        pencil = max_multiplicity(intersection_lattice(arr)) == 3
        expected = 5 if pencil else 6
    else:
        ar0 = an.ar_dim(0)
        if ar0 > 0:
            expected = 5
        elif ar1 > 0:
            expected = 7
        else:
            expected = 8
    if value != expected:
        raise InvariantViolationError(
            f"orbit dimension {value} contradicts the case table value {expected}"
        )
    return value


def tau_min(d: int) -> int:
    """Minimal Tjurina number of a free arrangement of d lines."""
    if d < 2:
        raise ValueError("needs d >= 2")
    return milnor.tau_min_free(d)


@dataclass
class TeraoReport:
    """Which sufficient conditions for lattice-determined freeness hold."""

    d: int
    free: bool
    exponents: tuple[int, int] | None
    conditions: dict[str, bool]
    verified: bool | None
    not_free_certificate: bool
    certificate_detail: str | None


def terao_hypotheses(arr: Arrangement, config: milnor.EngineConfig | None = None) -> TeraoReport:
    lat = intersection_lattice(arr)
    d = arr.d
    profile = milnor.quick_profile(arr.polynomial(), config=config)
    free = profile.classification == milnor.FREE

    tau_lat = tau_of_lattice(lat)
    weight = sum(m - 1 for m in lat.multiplicities)
    low_tau = 4 * tau_lat < 3 * (d - 1) ** 2
    heavy = 4 * weight > (d + 3) * (d - 1)
    if heavy and not low_tau:
        raise InvariantViolationError("singularity-weight certificate without low tau")
    if (low_tau or heavy) and free:
        raise InvariantViolationError("free arrangement with a non-freeness certificate")
    detail = None
    if heavy:
        detail = f"sum(m_p - 1) = {weight} > (d+3)(d-1)/4"
    elif low_tau:
        detail = f"tau = {tau_lat} < 3(d-1)^2/4"

    if not free:
        return TeraoReport(
            d=d,
            free=False,
            exponents=None,
            conditions={},
            verified=None,
            not_free_certificate=low_tau or heavy,
            certificate_detail=detail,
        )

    d1 = profile.exponents[0]
    m = max_multiplicity(lat) if d >= 2 else 0
    conditions = {
        "d_at_most_12": d <= 12,
        "d1_at_most_5": d1 <= 5,
        "max_multiplicity_at_least_d1": m >= d1,
        "max_multiplicity_at_least_half_d": 2 * m >= d,
        "d1_within_sqrt_bound": (d1 + 1) ** 2 <= 2 * d + 1,
    }
    return TeraoReport(
        d=d,
        free=True,
        exponents=profile.exponents,
        conditions=conditions,
        verified=any(conditions.values()),
        not_free_certificate=False,
        certificate_detail=None,
    )


# ---------------------------------------------------------------------------
# census


@dataclass
class StratumReport:
    tau: int
    local_dim: int
    codim_bound: int
    codim_bound_strict_regime: bool
    orbit_dim: int


def stratum_report(arr: Arrangement, config: milnor.EngineConfig | None = None) -> StratumReport:
    lat = intersection_lattice(arr)
    return StratumReport(
        tau=tau_of_lattice(lat),
        local_dim=local_stratum_dim(arr),
        codim_bound=codim_bound(lat),
        codim_bound_strict_regime=codim_bound_is_strict_regime(lat),
        orbit_dim=orbit_dim(arr, config),
    )


@dataclass
class CellResult:
    name: str
    expected: object
    actual: object

    @property
    def passed(self) -> bool:
        return self.expected == self.actual


@dataclass
class RowResult:
    family: str
    cells: list[CellResult]

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.cells)


@dataclass
class CensusReport:
    d: int
    rows: list[RowResult]
    extra_checks: list[CellResult]

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.rows) and all(c.passed for c in self.extra_checks)


def _load_census_data(d: int) -> dict:
    name = f"census_d{d}.json"
    with resources.files("arrinv.data").joinpath(name).open("r", encoding="utf-8") as fh:
        return json.load(fh)


@lru_cache(maxsize=None)
def _qd7_counterexample(config: milnor.EngineConfig):
    """Pencil-type 11-line arrangement with tau above the free minimum that
    is neither free nor nearly free."""
    arr = realize(NamedLattice("L", (11, 8)))
    lat = intersection_lattice(arr)
    profile = milnor.quick_profile(arr.polynomial(), config=config)
    return {
        "tau_lattice": tau_of_lattice(lat),
        "tau": profile.tau,
        "tau_min": tau_min(11),
        "classification": profile.classification,
    }


def census(
    d: int,
    certified: bool = True,
    num_primes: int = 3,
    seed: int | None = None,
    include_counterexample: bool = True,
) -> CensusReport:
    """Verify the full stratum table for d in {4, 5, 6}."""
    if d not in (4, 5, 6):
        raise ValueError("census is available for d = 4, 5, 6")
    config = milnor.EngineConfig(
        certified=certified,
        num_primes=num_primes,
        seed=milnor.DEFAULT_CONFIG.seed if seed is None else seed,
    )
    data = _load_census_data(d)
    rows: list[RowResult] = []
    taus: list[int] = []
    reports: dict[str, milnor.InvariantReport] = {}
    for rowdata in data["rows"]:
        spec = NamedLattice.parse(rowdata["family"])
        arr = realize(spec)
        lat = intersection_lattice(arr)
        rep = milnor.classify(arr.polynomial(), config=config, assume_arrangement=True)
        reports[rowdata["family"]] = rep
        stratum = stratum_report(arr, config)
        taus.append(rep.tau)
        cells = [
            CellResult("tau", rowdata["tau"], rep.tau),
            CellResult("tau_from_lattice", rowdata["tau"], tau_of_lattice(lat)),
            CellResult(
                "n_census",
                {int(k): v for k, v in rowdata["n_census"].items()},
                lat.n_census(),
            ),
            CellResult("classification", rowdata["classification"], rep.classification),
            CellResult("local_dim", rowdata["local_dim"], stratum.local_dim),
        ]
        for key, actual in (
            ("mdr", rep.mdr),
            ("exponents", list(rep.exponents) if rep.exponents else None),
            ("ct", rep.ct),
            ("st", rep.st),
            ("reg", rep.reg),
            ("orbit_dim", stratum.orbit_dim),
        ):
            if rowdata.get(key) is not None:
                cells.append(CellResult(key, rowdata[key], actual))
        rows.append(RowResult(family=rowdata["family"], cells=cells))

    extra = [CellResult("tau_multiset", sorted(data["tau_multiset"]), sorted(taus))]
    if d == 6:
        a = reports["Ltilde(3,3)"]
        b = reports["Ltilde_prime(3,3)"]
        extra.append(
            CellResult(
                "tau17_pair_same_hilbert",
                True,
                a.hilbert.milnor_dims == b.hilbert.milnor_dims,
            )
        )
        extra.append(CellResult("tau17_pair_mdr", (3, 3), (a.mdr, b.mdr)))
        extra.append(
            CellResult(
                "tau17_pair_non_isomorphic",
                False,
                is_isomorphic(
                    intersection_lattice(realize(NamedLattice.parse("Ltilde(3,3)"))),
                    intersection_lattice(realize(NamedLattice.parse("Ltilde_prime(3,3)"))),
                ),
            )
        )
    if include_counterexample:
        got = _qd7_counterexample(config)
        expected = {
            "tau_lattice": 76,
            "tau": 76,
            "tau_min": 75,
            "classification": milnor.NEITHER,
        }
        extra.append(CellResult("tau_above_free_minimum_not_free_d11", expected, got))

    return CensusReport(d=d, rows=rows, extra_checks=extra)
