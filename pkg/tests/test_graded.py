from fractions import Fraction
from math import comb

import pytest

from arrinv.graded import (
    HomogeneousPolynomial,
    LinearForm,
    dim_graded_piece,
    monomial_basis,
    monomial_index,
    multiplication_matrix,
    partials,
    product,
)
from arrinv.ratlin import rank

X = LinearForm(1, 0, 0)
Y = LinearForm(0, 1, 0)
Z = LinearForm(0, 0, 1)


def test_dims():
    assert dim_graded_piece(0) == 1
    assert dim_graded_piece(1) == 3
    assert dim_graded_piece(3) == 10
    assert dim_graded_piece(-2) == 0


def test_basis_order_k1():
    assert monomial_basis(1) == ((1, 0, 0), (0, 1, 0), (0, 0, 1))


def test_basis_order_k0():
    assert monomial_basis(0) == ((0, 0, 0),)


def test_basis_order_k2():
    # x^2, xy, xz, y^2, yz, z^2
    assert monomial_basis(2) == (
        (2, 0, 0),
        (1, 1, 0),
        (1, 0, 1),
        (0, 2, 0),
        (0, 1, 1),
        (0, 0, 2),
    )


def test_monomial_index_inverts_basis():
    for k in range(9):
        for i, m in enumerate(monomial_basis(k)):
            assert monomial_index(m, k) == i


def test_product_xyz():
    assert product([X, Y, Z]) == HomogeneousPolynomial(3, {(1, 1, 1): 1})


def test_product_difference_of_squares():
    got = product([LinearForm(1, 1, 0), LinearForm(1, -1, 0)])
    assert got == HomogeneousPolynomial(2, {(2, 0, 0): 1, (0, 2, 0): -1})


def test_product_commutative_on_random_triples(rng):
    from conftest import random_homogeneous

    for _ in range(25):
        a, b, c = (random_homogeneous(rng, dmax=3, coeff=4) for _ in range(3))
        assert product([a, b, c]) == product([c, a, b])


def test_partials_xyz():
    fx, fy, fz = partials(product([X, Y, Z]))
    assert fx == HomogeneousPolynomial(2, {(0, 1, 1): 1})
    assert fy == HomogeneousPolynomial(2, {(1, 0, 1): 1})
    assert fz == HomogeneousPolynomial(2, {(1, 1, 0): 1})


def test_partials_pure_power():
    f = HomogeneousPolynomial(5, {(5, 0, 0): 1})
    fx, fy, fz = partials(f)
    assert fx == HomogeneousPolynomial(4, {(4, 0, 0): 5})
    assert fy.is_zero() and fz.is_zero()


def euler_holds(f):
    fx, fy, fz = partials(f)
    x = HomogeneousPolynomial(1, {(1, 0, 0): 1})
    y = HomogeneousPolynomial(1, {(0, 1, 0): 1})
    z = HomogeneousPolynomial(1, {(0, 0, 1): 1})
    return x * fx + y * fy + z * fz == f.scale(f.degree)


def test_euler_random(rng):
    from conftest import random_homogeneous

    for _ in range(40):
        assert euler_holds(random_homogeneous(rng))


def test_multiplication_matrix_identity():
    m = multiplication_matrix([X.as_poly(), Y.as_poly(), Z.as_poly()], 1)
    assert m.data == [[1, 0, 0], [0, 1, 0], [0, 0, 1]]


def test_multiplication_matrix_single_form():
    m = multiplication_matrix([X.as_poly()], 2)
    assert (m.rows, m.cols) == (6, 3)
    assert rank(m) == 3


def test_multiplication_by_nonzero_form_injective(rng):
    from conftest import random_homogeneous

    for _ in range(15):
        g = random_homogeneous(rng, dmax=3)
        k = g.degree + rng.randint(0, 2)
        m = multiplication_matrix([g], k)
        assert rank(m) == dim_graded_piece(k - g.degree)


def _smooth_jacobian_dim_oracle(d, k):
    """Monomials of degree k divisible by x^(d-1), y^(d-1) or z^(d-1),
    counted by inclusion-exclusion."""
    e = d - 1

    def n(j):
        t = k - j * e
        return comb(t + 2, 2) if t >= 0 else 0

    return 3 * n(1) - 3 * n(2) + n(3)


@pytest.mark.parametrize("d", [3, 4, 5])
def test_smooth_multiplication_rank_matches_monomial_count(d):
    f = HomogeneousPolynomial(d, {(d, 0, 0): 1, (0, d, 0): 1, (0, 0, d): 1})
    gs = list(partials(f))
    for k in range(d - 1, 3 * (d - 2) + 3):
        assert rank(multiplication_matrix(gs, k)) == _smooth_jacobian_dim_oracle(d, k)


def test_multiplication_matrix_rejects_mixed_degrees():
    with pytest.raises(ValueError):
        multiplication_matrix([X.as_poly(), product([X, Y])], 3)


def test_primitive_scaling():
    f = HomogeneousPolynomial(2, {(2, 0, 0): Fraction(2, 3), (0, 2, 0): Fraction(4, 3)})
    g = f.primitive()
    assert g.coeffs == {(2, 0, 0): 1, (0, 2, 0): 2}


def test_linear_form_rejects_zero():
    with pytest.raises(Exception):
        LinearForm(0, 0, 0)
