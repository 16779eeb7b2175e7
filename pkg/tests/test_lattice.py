import random
from math import comb

import pytest

from arrinv.errors import ArrangementError, InvariantViolationError, UnrealizableError
from arrinv.lattice import (
    Arrangement,
    Lattice,
    NamedLattice,
    abstract_lattice,
    canonical_form,
    classify_mdr2,
    intersection_lattice,
    is_isomorphic,
    max_multiplicity,
    realize,
    tau_of_lattice,
)


def test_triangle_lattice():
    lat = intersection_lattice(Arrangement.from_triples([(1, 0, 0), (0, 1, 0), (0, 0, 1)]))
    assert lat.n_census() == {2: 3}


def test_near_pencil_4_lattice():
    lat = intersection_lattice(
        Arrangement.from_triples([(1, 0, 0), (0, 1, 0), (0, 0, 1), (1, 1, 0)])
    )
    assert (0, 1, 3) in lat.points
    assert lat.n_census() == {3: 1, 2: 3}


def test_proportional_lines_rejected():
    with pytest.raises(ArrangementError, match="lines 2 and 5 proportional"):
        Arrangement.from_triples(
            [(1, 0, 0), (0, 1, 0), (0, 0, 1), (1, 1, 1), (0, -3, 0)]
        )


def test_fractional_proportionality_detected():
    from fractions import Fraction

    with pytest.raises(ArrangementError):
        Arrangement.from_triples([(1, 2, 3), (Fraction(1, 2), 1, Fraction(3, 2))])


def test_lattice_validation_rejects_overlapping_points():
    with pytest.raises(InvariantViolationError):
        Lattice(3, ((0, 1, 2), (0, 1)))


def test_ziegler_census_and_isomorphism():
    a = intersection_lattice(realize(NamedLattice("ziegler_A")))
    b = intersection_lattice(realize(NamedLattice("ziegler_Aprime")))
    assert a.n_census() == b.n_census() == {2: 18, 3: 6}
    assert tau_of_lattice(a) == tau_of_lattice(b) == 42
    assert max_multiplicity(a) == 3
    assert is_isomorphic(a, b)


def test_tau_of_lattice_formulas():
    assert tau_of_lattice(intersection_lattice(realize(NamedLattice("generic", (6,))))) == 15
    assert tau_of_lattice(intersection_lattice(realize(NamedLattice("L", (6, 4))))) == comb(6, 2) + comb(3, 2)
    assert tau_of_lattice(intersection_lattice(realize(NamedLattice("Ltilde", (3, 3))))) == 17


def test_hirzebruch_identity_random(rng):
    from conftest import random_arrangement

    for _ in range(40):
        lat = intersection_lattice(random_arrangement(rng))
        assert sum(comb(m, 2) for m in lat.multiplicities) == comb(lat.d, 2)


def test_canonical_form_permutation_invariance():
    rng = random.Random(99)
    arr = realize(NamedLattice("ziegler_A"))
    key = canonical_form(intersection_lattice(arr))
    for _ in range(15):
        perm = list(range(arr.d))
        rng.shuffle(perm)
        assert canonical_form(intersection_lattice(arr.relabel(perm))) == key


def test_canonical_form_trivial_cases():
    gen = intersection_lattice(realize(NamedLattice("generic", (5,))))
    assert canonical_form(gen) == (5, (), ())
    pencil = intersection_lattice(realize(NamedLattice("L", (7, 7))))
    assert canonical_form(pencil)[1] == (7,)


def test_self_isomorphism_and_d_mismatch():
    a = intersection_lattice(realize(NamedLattice("L", (5, 3))))
    b = intersection_lattice(realize(NamedLattice("L", (6, 3))))
    assert is_isomorphic(a, a)
    assert not is_isomorphic(a, b)


def test_tau17_pair_not_isomorphic():
    a = intersection_lattice(realize(NamedLattice("Ltilde", (3, 3))))
    b = intersection_lattice(realize(NamedLattice("Ltilde_prime", (3, 3))))
    assert a.n_census() == b.n_census()
    assert not is_isomorphic(a, b)


def test_tau18_pair_not_isomorphic():
    a = intersection_lattice(realize(NamedLattice("L", (6, 4))))
    b = intersection_lattice(realize(NamedLattice("Lprime", (3, 3))))
    assert tau_of_lattice(a) == tau_of_lattice(b) == 18
    assert not is_isomorphic(a, b)


REALIZATION_CENSUS = [
    ("generic(4)", {2: 6}),
    ("generic(8)", {2: 28}),
    ("L(5,5)", {5: 1}),
    ("L(7,4)", {4: 1, 2: 15}),
    ("Ltilde(2,2)", {2: 6}),
    ("Ltilde(3,5)", {3: 1, 5: 1, 2: 15}),
    ("Lhat(3,3)", {3: 2, 2: 4}),
    ("Lhat(4,6)", {4: 1, 6: 1, 2: 20}),
    ("Lprime(2,2)", {2: 6}),
    ("Lprime(3,4)", {3: 3, 4: 1, 2: 10}),
    ("Lprime(4,4)", {4: 2, 3: 2, 2: 14}),
    ("monomial(2)", {3: 4, 2: 3}),
    ("Ltilde_prime(3,3)", {3: 2, 2: 9}),
]


@pytest.mark.parametrize("family,census", REALIZATION_CENSUS)
def test_realizations_have_expected_census(family, census):
    lat = intersection_lattice(realize(NamedLattice.parse(family)))
    assert lat.n_census() == census


def test_ziegler_forms_are_the_published_equations():
    arr = realize(NamedLattice("ziegler_A"))
    assert [f.triple for f in arr.forms[:4]] == [
        (1, 0, 0),
        (0, 1, 0),
        (1, -1, -1),
        (1, -1, 1),
    ]


def test_abstract_monomial_lattice():
    lat = abstract_lattice(NamedLattice("monomial", (5,)))
    assert lat.d == 15
    assert lat.n_census() == {5: 3, 3: 25}
    small = abstract_lattice(NamedLattice("monomial", (2,)))
    assert is_isomorphic(small, intersection_lattice(realize(NamedLattice("monomial", (2,)))))


def test_parameter_validation():
    with pytest.raises(UnrealizableError):
        NamedLattice("L", (4, 7))
    with pytest.raises(UnrealizableError):
        NamedLattice("Lhat", (2, 5))
    with pytest.raises(UnrealizableError):
        NamedLattice("Ltilde", (3, 2))
    with pytest.raises(UnrealizableError):
        NamedLattice("monomial", (1,))
    with pytest.raises(UnrealizableError):
        NamedLattice("nosuch", (1,))
    with pytest.raises(UnrealizableError):
        realize(NamedLattice("monomial", (3,)))


def test_parse_roundtrip():
    for text in ("L(6,4)", "generic(5)", "ziegler_A", "Ltilde_prime(3,3)"):
        assert str(NamedLattice.parse(text)) == text
    with pytest.raises(UnrealizableError):
        NamedLattice.parse("L(6;4)")


def test_classify_mdr2_references():
    assert classify_mdr2(realize(NamedLattice("L", (6, 4)))) == "L(d,d-2)"
    assert classify_mdr2(realize(NamedLattice("Lhat", (3, 4)))) == "Lhat(3,d-2)"
    assert classify_mdr2(realize(NamedLattice("monomial", (2,)))) == "monomial(2,2,3)"
    assert classify_mdr2(realize(NamedLattice("generic", (5,)))) == "not_mdr2"
    assert classify_mdr2(realize(NamedLattice("L", (6, 6)))) == "not_mdr2"
