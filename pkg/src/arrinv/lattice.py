"""Intersection lattices of line arrangements, canonical forms, realizations.

An arrangement is an ordered list of pairwise non-proportional linear forms.
Its lattice records every intersection point (multiplicity >= 2) as the set
of incident line indices.  Isomorphism of lattices means a relabelling of the
lines matching up the points of multiplicity >= 3 (double points are forced
by the rest); ``canonical_form`` computes a complete invariant for this
relation by canonical labelling.

``realize`` builds explicit rational arrangements for the named lattice
families used throughout; every construction is verified against its intended
incidence structure before being returned.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import lru_cache
from math import comb

from . import milnor
from .errors import ArrangementError, InvariantViolationError, UnrealizableError
from .graded import LinearForm, product


class Arrangement:
    """d pairwise non-proportional lines, kept in input order."""

    __slots__ = ("forms",)

    def __init__(self, forms):
        forms = tuple(forms)
        if not forms:
            raise ArrangementError("an arrangement needs at least one line")
        prims = [f.primitive_triple() for f in forms]
        seen: dict = {}
        for i, t in enumerate(prims):
            if t in seen:
                raise ArrangementError(
                    f"lines {seen[t] + 1} and {i + 1} proportional"
                )
            seen[t] = i
        self.forms = forms

    @classmethod
    def from_triples(cls, triples) -> "Arrangement":
        return cls([LinearForm(*t) for t in triples])

    @property
    def d(self) -> int:
        return len(self.forms)

    def polynomial(self):
        return product(self.forms)

    def primitive_triples(self):
        return [f.primitive_triple() for f in self.forms]

    def relabel(self, perm) -> "Arrangement":
        """Arrangement with line i moved to position perm[i]."""
        out = [None] * self.d
        for i, f in enumerate(self.forms):
            out[perm[i]] = f
        return Arrangement(out)

    def __repr__(self):
        return f"Arrangement(d={self.d})"


def _cross(u, v):
    return (
        u[1] * v[2] - u[2] * v[1],
        u[2] * v[0] - u[0] * v[2],
        u[0] * v[1] - u[1] * v[0],
    )


def _normalize_point(p):
    from math import gcd

    g = 0
    for x in p:
        g = gcd(g, x)
    for x in p:
        if x:
            if x < 0:
                g = -g
            break
    return tuple(x // g for x in p)


@dataclass(frozen=True)
class Lattice:
    """Incidence data: for each multiple point, the sorted incident lines."""

    d: int
    points: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        pairs = set()
        for pt in self.points:
            if len(pt) < 2 or list(pt) != sorted(set(pt)):
                raise InvariantViolationError(f"bad point record {pt}")
            if pt[0] < 0 or pt[-1] >= self.d:
                raise InvariantViolationError("line index out of range")
            for a in range(len(pt)):
                for b in range(a + 1, len(pt)):
                    key = (pt[a], pt[b])
                    if key in pairs:
                        raise InvariantViolationError(f"pair {key} in two points")
                    pairs.add(key)
        if len(pairs) != comb(self.d, 2):
            raise InvariantViolationError("points do not cover every pair of lines")

    @property
    def multiplicities(self):
        return [len(pt) for pt in self.points]

    def n_census(self) -> dict[int, int]:
        """{multiplicity: number of points}."""
        out: dict[int, int] = {}
        for pt in self.points:
            out[len(pt)] = out.get(len(pt), 0) + 1
        return out

    def points_ge3(self):
        return tuple(pt for pt in self.points if len(pt) >= 3)


def intersection_lattice(arr: Arrangement) -> Lattice:
    """Group the pairwise intersections of the lines into multiple points."""
    prims = arr.primitive_triples()
    buckets: dict[tuple, set] = {}
    for i in range(arr.d):
        for j in range(i + 1, arr.d):
            p = _cross(prims[i], prims[j])
            buckets.setdefault(_normalize_point(p), set()).update((i, j))
    points = sorted((tuple(sorted(s)) for s in buckets.values()), key=lambda t: (-len(t), t))
    lat = Lattice(arr.d, tuple(points))
    if sum(comb(m, 2) for m in lat.multiplicities) != comb(arr.d, 2):
        raise InvariantViolationError("pair count identity failed")
    return lat


def tau_of_lattice(lat: Lattice) -> int:
    """Combinatorial Tjurina number: sum of (m_p - 1)^2 over multiple points."""
    return sum((m - 1) ** 2 for m in lat.multiplicities)


def max_multiplicity(lat: Lattice) -> int:
    if lat.d < 2:
        raise ValueError("needs at least two lines")
    return max(lat.multiplicities)


# ---------------------------------------------------------------------------
# canonical form / isomorphism


def _refine(colors, pts_cls, npts_of):
    """Colour refinement on clone classes; colours are small ints."""
    n = len(colors)
    while True:
        sigs = []
        for ci in range(n):
            neigh = sorted(
                tuple(sorted(colors[cj] for cj in pts_cls[pi])) for pi in npts_of[ci]
            )
            sigs.append((colors[ci], tuple(neigh)))
        order = sorted(set(sigs))
        new = [order.index(s) for s in sigs]
        if new == colors:
            return colors
        colors = new


def canonical_form(lat: Lattice):
    """Complete isomorphism invariant of (d, points of multiplicity >= 3).

    Lines with identical point membership are interchangeable, so they are
    collapsed into a single weighted class first; the small class structure is
    then canonically labelled by individualization + refinement backtracking.
    """
    pts = lat.points_ge3()
    if not pts:
        return (lat.d, (), ())

    membership: dict[int, frozenset] = {}
    for pi, pt in enumerate(pts):
        for line in pt:
            membership[line] = membership.get(line, frozenset()) | {pi}
    classes: dict[frozenset, int] = {}
    sizes: list[int] = []
    for line in sorted(membership):
        mem = membership[line]
        if mem not in classes:
            classes[mem] = len(sizes)
            sizes.append(0)
        sizes[classes[mem]] += 1
    ncls = len(sizes)
    pts_cls = [
        tuple(sorted({classes[membership[line]] for line in pt})) for pi, pt in enumerate(pts)
    ]
    npts_of = [
        [pi for pi, pc in enumerate(pts_cls) if ci in pc] for ci in range(ncls)
    ]

    init = [
        (sizes[ci], tuple(sorted(len(pts[pi]) for pi in npts_of[ci]))) for ci in range(ncls)
    ]
    order0 = sorted(set(init))
    colors0 = _refine([order0.index(s) for s in init], pts_cls, npts_of)

    best: list = [None]

    def leaf(colors):
        order = sorted(range(ncls), key=lambda ci: colors[ci])
        label = {ci: i for i, ci in enumerate(order)}
        key = (
            tuple(sizes[ci] for ci in order),
            tuple(sorted(tuple(sorted(label[c] for c in pc)) for pc in pts_cls)),
        )
        if best[0] is None or key < best[0]:
            best[0] = key

    def search(colors):
        buckets: dict[int, list] = {}
        for ci, c in enumerate(colors):
            buckets.setdefault(c, []).append(ci)
        target = None
        for c in sorted(buckets):
            if len(buckets[c]) > 1:
                target = buckets[c]
                break
        if target is None:
            leaf(colors)
            return
        for ci in target:
            branched = [2 * c for c in colors]
            branched[ci] -= 1
            search(_refine(branched, pts_cls, npts_of))

    search(colors0)
    return (lat.d, tuple(sorted(sizes)), best[0])


def is_isomorphic(a: Lattice, b: Lattice) -> bool:
    return canonical_form(a) == canonical_form(b)


# ---------------------------------------------------------------------------
# named families


_FAMILIES = (
    "generic",
    "L",
    "Ltilde",
    "Lhat",
    "Lprime",
    "monomial",
    "ziegler_A",
    "ziegler_Aprime",
    "Ltilde_prime",
)

ZIEGLER_A_TRIPLES = (
    (1, 0, 0),
    (0, 1, 0),
    (1, -1, -1),
    (1, -1, 1),
    (2, 1, -2),
    (1, 3, -3),
    (3, 2, 3),
    (1, 5, 5),
    (7, -4, -1),
)

ZIEGLER_APRIME_TRIPLES = (
    (1, 0, 0),
    (0, 1, 0),
    (1, 1, -1),
    (5, 2, -10),
    (3, 2, -6),
    (1, -3, 15),
    (2, -1, 10),
    (6, 5, 30),
    (3, -4, -24),
)

LTILDE_PRIME_33_TRIPLES = (
    (1, 0, 0),
    (0, 1, 0),
    (1, 1, 0),
    (0, 0, 1),
    (1, 0, 1),
    (1, 2, 3),
)


@dataclass(frozen=True)
class NamedLattice:
    """Tagged lattice family with integer parameters."""

    family: str
    params: tuple[int, ...] = ()

    def __post_init__(self):
        if self.family not in _FAMILIES:
            raise UnrealizableError(f"unknown family {self.family!r}")
        p = self.params
        fam = self.family
        if fam == "generic":
            if len(p) != 1 or p[0] < 1:
                raise UnrealizableError("generic needs one parameter d >= 1")
        elif fam == "L":
            if len(p) != 2 or not 2 <= p[1] <= p[0]:
                raise UnrealizableError("L(d, m) needs 2 <= m <= d")
        elif fam == "Ltilde":
            if len(p) != 2 or not 2 <= p[0] <= p[1]:
                raise UnrealizableError("Ltilde(m1, m2) needs 2 <= m1 <= m2")
        elif fam == "Lhat":
            if len(p) != 2 or not 3 <= p[0] <= p[1]:
                raise UnrealizableError("Lhat(m1, m2) needs 3 <= m1 <= m2")
        elif fam == "Lprime":
            if len(p) != 2 or not 2 <= p[0] <= p[1]:
                raise UnrealizableError("Lprime(m1, m2) needs 2 <= m1 <= m2")
        elif fam == "monomial":
            if len(p) != 1 or p[0] < 2:
                raise UnrealizableError("monomial(m) needs m >= 2")
        elif fam == "Ltilde_prime":
            if p != (3, 3):
                raise UnrealizableError("Ltilde_prime is only defined for (3, 3)")
        elif p:
            raise UnrealizableError(f"{fam} takes no parameters")

    @property
    def d(self) -> int:
        fam, p = self.family, self.params
        if fam == "generic":
            return p[0]
        if fam == "L":
            return p[0]
        if fam in ("Ltilde", "Lprime"):
            return p[0] + p[1]
        if fam == "Lhat":
            return p[0] + p[1] - 1
        if fam == "monomial":
            return 3 * p[0]
        if fam == "Ltilde_prime":
            return 6
        return 9  # the two Ziegler arrangements

    def __str__(self):
        if self.params:
            return f"{self.family}({','.join(map(str, self.params))})"
        return self.family

    @classmethod
    def parse(cls, text: str) -> "NamedLattice":
        text = text.strip()
        m = re.fullmatch(r"([A-Za-z_]+)(?:\(([-0-9,\s]*)\))?", text)
        if not m:
            raise UnrealizableError(f"cannot parse family spec {text!r}")
        fam = m.group(1)
        params = ()
        if m.group(2):
            try:
                params = tuple(int(v) for v in m.group(2).split(","))
            except ValueError:
                raise UnrealizableError(f"bad parameters in {text!r}") from None
        return cls(fam, params)


def _moment_lines(count: int, start: int = 2):
    return [LinearForm(1, t, t * t) for t in range(start, start + count)]


def _build_forms(spec: NamedLattice, attempt: int):
    fam, p = spec.family, spec.params
    shift = 2 + attempt
    if fam == "generic":
        d = p[0]
        base = [LinearForm(1, 0, 0), LinearForm(0, 1, 0), LinearForm(0, 0, 1), LinearForm(1, 1, 1)]
        forms = base[: min(d, 4)]
        forms += _moment_lines(d - 4, shift) if d > 4 else []
        expected = None
        return forms, expected
    if fam == "L":
        d, m = p
        forms = [LinearForm(1, -i, 0) for i in range(m)] + _moment_lines(d - m, shift)
        expected = {frozenset(range(m))} if m >= 3 else set()
        return forms, expected
    if fam == "Ltilde":
        m1, m2 = p
        forms = [LinearForm(1, -i, 0) for i in range(1, m1 + 1)]
        forms += [LinearForm(1, 0, -j) for j in range(1, m2 + 1)]
        expected = set()
        if m1 >= 3:
            expected.add(frozenset(range(m1)))
        if m2 >= 3:
            expected.add(frozenset(range(m1, m1 + m2)))
        return forms, expected
    if fam == "Lhat":
        m1, m2 = p
        forms = [LinearForm(1, 0, 0)]
        forms += [LinearForm(1, -i, 0) for i in range(1, m1)]
        forms += [LinearForm(1, 0, -j) for j in range(1, m2)]
        expected = {
            frozenset(range(m1)),
            frozenset({0} | set(range(m1, m1 + m2 - 1))),
        }
        return forms, expected
    if fam == "Lprime":
        m1, m2 = p
        forms = [LinearForm(1, 0, 0), LinearForm(0, 1, -1)]
        forms += [LinearForm(1, -k, 0) for k in range(1, m1)]
        forms += [LinearForm(1, 0, -k) for k in range(2, m2 + 1)]
        expected = set()
        p1 = frozenset({0} | set(range(2, m1 + 1)))
        p2 = frozenset({0} | set(range(m1 + 1, m1 + m2)))
        if len(p1) >= 3:
            expected.add(p1)
        if len(p2) >= 3:
            expected.add(p2)
        for k in range(2, m1):
            expected.add(frozenset({1, 1 + k, m1 - 1 + k}))
        return forms, expected
    if fam == "monomial":
        if p[0] != 2:
            raise UnrealizableError(
                "monomial(m) has no rational realization for m > 2 "
                "(its lines involve m-th roots of unity); "
                "use abstract_lattice for the incidence data"
            )
        forms = [
            LinearForm(1, -1, 0),
            LinearForm(1, 1, 0),
            LinearForm(1, 0, -1),
            LinearForm(1, 0, 1),
            LinearForm(0, 1, -1),
            LinearForm(0, 1, 1),
        ]
        expected = {pt for pt in abstract_lattice(spec).points_ge3()}
        expected = {frozenset(pt) for pt in expected}
        return forms, expected
    if fam == "ziegler_A":
        return [LinearForm(*t) for t in ZIEGLER_A_TRIPLES], None
    if fam == "ziegler_Aprime":
        return [LinearForm(*t) for t in ZIEGLER_APRIME_TRIPLES], None
    # Ltilde_prime(3, 3)
    forms = [LinearForm(*t) for t in LTILDE_PRIME_33_TRIPLES]
    expected = {frozenset({0, 1, 2}), frozenset({0, 3, 4})}
    return forms, expected


def _verify_realization(spec: NamedLattice, arr: Arrangement) -> None:
    lat = intersection_lattice(arr)
    fam = spec.family
    if fam in ("ziegler_A", "ziegler_Aprime"):
        if lat.n_census() != {2: 18, 3: 6}:
            raise InvariantViolationError(f"{spec}: expected 18 nodes and 6 triple points")
        return
    _, expected = _build_forms(spec, 0)
    if expected is None:
        if any(len(pt) > 2 for pt in lat.points):
            raise InvariantViolationError(f"{spec}: generic construction has a multiple point")
        return
    got = {frozenset(pt) for pt in lat.points_ge3()}
    if got != expected:
        raise InvariantViolationError(
            f"{spec}: realized multiple points {sorted(map(sorted, got))} "
            f"!= intended {sorted(map(sorted, expected))}"
        )


def realize(spec: NamedLattice) -> Arrangement:
    """Explicit rational arrangement with the family's lattice (verified)."""
    last_err = None
    for attempt in range(5):
        try:
            forms, _ = _build_forms(spec, attempt)
            arr = Arrangement(forms)
            _verify_realization(spec, arr)
            return arr
        except (ArrangementError, InvariantViolationError) as exc:
            last_err = exc
    raise InvariantViolationError(f"could not realize {spec}: {last_err}")


def abstract_lattice(spec: NamedLattice) -> Lattice:
    """Incidence data of a named lattice without a realization.

    Needed for the monomial family with m >= 3, whose members exist over the
    complex numbers but not over Q.
    """
    if spec.family != "monomial":
        return intersection_lattice(realize(spec))
    m = spec.params[0]
    pts = [tuple(range(m)), tuple(range(m, 2 * m)), tuple(range(2 * m, 3 * m))]
    for i in range(m):
        for j in range(m):
            pts.append(tuple(sorted((i, m + j, 2 * m + (j - i) % m))))
    return Lattice(3 * m, tuple(sorted(pts, key=lambda t: (-len(t), t))))


# ---------------------------------------------------------------------------
# the degree-2 syzygy classification


NOT_MDR2 = "not_mdr2"


@lru_cache(maxsize=None)
def _reference_key(tag: str, d: int):
    if tag == "L(d,d-2)":
        spec = NamedLattice("L", (d, d - 2))
    elif tag == "Lhat(3,d-2)":
        spec = NamedLattice("Lhat", (3, d - 2))
    else:
        spec = NamedLattice("monomial", (2,))
    return canonical_form(intersection_lattice(realize(spec)))


def classify_mdr2(arr: Arrangement, config: milnor.EngineConfig | None = None) -> str:
    """Which of the three lattice classes an arrangement with a degree-2
    syzygy belongs to; ``not_mdr2`` when the minimal degree differs."""
    if arr.d < 4:
        raise ValueError("classification needs at least 4 lines")
    if milnor.mdr(arr.polynomial(), config=config) != 2:
        return NOT_MDR2
    key = canonical_form(intersection_lattice(arr))
    candidates = [("L(d,d-2)", arr.d)]
    if arr.d >= 5:
        candidates.append(("Lhat(3,d-2)", arr.d))
    if arr.d == 6:
        candidates.append(("monomial(2,2,3)", arr.d))
    for tag, d in candidates:
        if key == _reference_key(tag, d):
            return tag
    raise InvariantViolationError(
        "arrangement with a degree-2 syzygy outside the three known classes"
    )
