import pytest

from arrinv import milnor
from arrinv.errors import NonIsolatedSingularitiesError
from arrinv.graded import HomogeneousPolynomial, LinearForm, monomial_basis, product
from arrinv.lattice import NamedLattice, realize

X = LinearForm(1, 0, 0)
Y = LinearForm(0, 1, 0)
Z = LinearForm(0, 0, 1)

CERTIFIED = milnor.EngineConfig(certified=True)


def fermat(d):
    return HomogeneousPolynomial(d, {(d, 0, 0): 1, (0, d, 0): 1, (0, 0, d): 1})


def brute_smooth_dims(d, cap):
    out = []
    for k in range(cap + 1):
        out.append(sum(1 for m in monomial_basis(k) if max(m) <= d - 2))
    return out


@pytest.mark.parametrize("d", [1, 2, 3, 4, 5, 7])
def test_smooth_dims_match_brute_count(d):
    cap = 3 * (d - 2) + 4
    assert milnor.smooth_milnor_dims(d, cap) == brute_smooth_dims(d, cap)


def test_smooth_dims_total_is_cubed():
    for d in range(2, 8):
        assert sum(milnor.smooth_milnor_dims(d, 3 * d)) == (d - 1) ** 3


def test_smooth_dims_d2():
    assert milnor.smooth_milnor_dims(2, 4) == [1, 0, 0, 0, 0]


def test_smooth_quartic_table():
    t = milnor.hilbert_table(fermat(4))
    assert t.milnor_dims == [1, 3, 6, 7, 6, 3, 1, 0, 0]
    assert t.tau == 0


def test_quadrilateral_tau():
    f = product([X, Y, Z, LinearForm(1, 1, 1)])
    assert milnor.tjurina(f) == 6


def test_triangle_tau():
    assert milnor.tjurina(product([X, Y, Z])) == 3


def test_pencil_taus():
    f = product([LinearForm(1, -i, 0) for i in range(5)])
    assert milnor.tjurina(f) == 16  # (d-1)^2 for a pencil of 5


def test_generic_six_lines_tau_is_15():
    f = realize(NamedLattice("generic", (6,))).polynomial()
    assert milnor.tjurina(f) == 15


def test_mdr_examples():
    assert milnor.mdr(product([X, Y, LinearForm(1, 1, 0), LinearForm(1, 2, 0)])) == 0
    assert milnor.mdr(product([X, Y, Z, LinearForm(1, 1, 0)])) == 1
    assert milnor.mdr(product([X, Y, Z, LinearForm(1, 1, 1)])) == 2
    assert milnor.mdr(fermat(4)) == 3  # smooth: only trivial relations


def test_mdr_e_smooth_is_none():
    assert milnor.mdr_e(fermat(4)) is None
    assert milnor.ct(fermat(4)) is None


def test_thresholds_generic_4():
    f = product([X, Y, Z, LinearForm(1, 1, 1)])
    assert milnor.ct(f) == 4
    assert milnor.st(f) == 4


def test_classify_quadrilateral():
    rep = milnor.classify(
        product([X, Y, Z, LinearForm(1, 1, 1)]), assume_arrangement=True
    )
    assert rep.classification == "nearly_free"
    assert rep.exponents == (2, 2)
    assert rep.tau == 6
    assert rep.reg == 3
    assert rep.delta == 1


def test_classify_near_pencil_4():
    rep = milnor.classify(product([X, Y, Z, LinearForm(1, 1, 0)]), assume_arrangement=True)
    assert rep.classification == "free"
    assert rep.exponents == (1, 2)
    assert rep.tau == 7
    assert rep.st == rep.reg == 3


def test_classify_triple_product():
    f = product(
        [
            LinearForm(1, -1, 0),
            LinearForm(1, 1, 0),
            LinearForm(1, 0, -1),
            LinearForm(1, 0, 1),
            LinearForm(0, 1, -1),
            LinearForm(0, 1, 1),
        ]
    )
    rep = milnor.classify(f, assume_arrangement=True)
    assert rep.classification == "free"
    assert rep.exponents == (2, 3)
    assert rep.tau == 19


def test_classify_smooth_is_neither():
    rep = milnor.classify(fermat(5))
    assert rep.classification == "neither"
    assert rep.ct is None and rep.mdr_e is None
    assert rep.tau == 0


def test_classification_note_for_non_arrangement():
    # a nearly free curve fed without the arrangement assumption keeps a note
    rep = milnor.classify(product([X, Y, Z, LinearForm(1, 1, 1)]))
    assert rep.classification == "nearly_free"
    assert rep.classification_note == "nearly_free (numeric criterion)"


def test_ct_st_undefined_below_degree_3():
    rep = milnor.classify(product([X, Y]), assume_arrangement=True)
    assert rep.ct is None and rep.st is None and rep.reg is None
    assert rep.classification == "free"
    assert rep.tau == 1


def test_non_reduced_detection():
    with pytest.raises(NonIsolatedSingularitiesError):
        milnor.hilbert_table(product([X, X, Y, Z]))
    with pytest.raises(NonIsolatedSingularitiesError):
        milnor.quick_profile(product([X, X, Y, Z, LinearForm(1, 1, 1)]))


def test_cap_too_small_rejected():
    with pytest.raises(ValueError):
        milnor.hilbert_table(product([X, Y, Z, LinearForm(1, 1, 1)]), cap=5)


def test_saturation_generic_4():
    sat = milnor.saturation_profile(product([X, Y, Z, LinearForm(1, 1, 1)]))
    assert sat.gap_dims[3] == 1
    assert sum(sat.gap_dims) == 1
    assert sat.sat_degree == 4
    assert sat.algebraically_rigid


def test_saturation_free_is_trivial():
    sat = milnor.saturation_profile(product([X, Y, Z, LinearForm(1, 1, 0)]))
    assert all(g == 0 for g in sat.gap_dims)
    assert sat.sat_degree == 0
    assert sat.algebraically_rigid


@pytest.mark.parametrize(
    "family",
    ["generic(4)", "L(5,3)", "L(4,4)", "Lhat(3,3)", "monomial(2)"],
)
def test_saturation_matches_naive_oracle(family):
    f = realize(NamedLattice.parse(family)).polynomial()
    prod_sat = milnor.saturation_profile(f)
    cap = len(prod_sat.gap_dims) - 1
    naive = milnor.saturation_profile_naive(f, cap)
    assert prod_sat.gap_dims == naive.gap_dims
    assert prod_sat.saturated_dims == naive.saturated_dims
    assert prod_sat.sat_degree == naive.sat_degree
    assert prod_sat.algebraically_rigid == naive.algebraically_rigid


def test_certified_matches_fast_on_census_families():
    for family in ("generic(5)", "L(6,4)", "Lprime(3,3)", "Lhat(3,4)"):
        f = realize(NamedLattice.parse(family)).polynomial()
        fast = milnor.classify(f, assume_arrangement=True)
        cert = milnor.classify(f, config=CERTIFIED, assume_arrangement=True)
        assert fast.to_dict() == cert.to_dict()


def test_quick_profile_agrees_with_classify():
    for family in ("generic(5)", "L(6,4)", "L(5,5)", "Ltilde(3,3)"):
        f = realize(NamedLattice.parse(family)).polynomial()
        qp = milnor.quick_profile(f)
        rep = milnor.classify(f, assume_arrangement=True)
        assert (qp.tau, qp.mdr, qp.classification, qp.exponents) == (
            rep.tau,
            rep.mdr,
            rep.classification,
            rep.exponents,
        )


def test_free_split_syzygy_hilbert_function():
    # free with exponents (d1, d2): dim AR_r = dim S_{r-d1} + dim S_{r-d2}
    from arrinv.graded import dim_graded_piece

    rep = milnor.classify(
        realize(NamedLattice.parse("Lhat(3,4)")).polynomial(), assume_arrangement=True
    )
    d1, d2 = rep.exponents
    for r, v in enumerate(rep.hilbert.ar_dims):
        assert v == dim_graded_piece(r - d1) + dim_graded_piece(r - d2)


def test_koszul_dims_closed_form():
    from arrinv.graded import dim_graded_piece

    f = realize(NamedLattice.parse("generic(5)")).polynomial()
    t = milnor.hilbert_table(f)
    d = 5
    for r, v in enumerate(t.koszul_dims):
        if r < d - 1:
            assert v == 0
        else:
            assert v == 3 * dim_graded_piece(r - d + 1) - dim_graded_piece(r - 2 * d + 2)


def test_tau_min_values():
    assert milnor.tau_min_free(7) == 27
    assert milnor.tau_min_free(4) == 7
    assert milnor.tau_min_free(11) == 75
