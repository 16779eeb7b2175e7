import random
from fractions import Fraction

import pytest

from arrinv.errors import ArrangementError
from arrinv.graded import HomogeneousPolynomial, LinearForm, monomial_basis
from arrinv.lattice import Arrangement


def random_arrangement(rng: random.Random, dmin=3, dmax=5, coeff=3) -> Arrangement:
    """Random small arrangement with integer coefficients."""
    d = rng.randint(dmin, dmax)
    while True:
        triples = []
        seen = set()
        guard = 0
        while len(triples) < d:
            guard += 1
            if guard > 200:
                break
            t = tuple(rng.randint(-coeff, coeff) for _ in range(3))
            if t == (0, 0, 0):
                continue
            prim = LinearForm(*t).primitive_triple()
            if prim in seen:
                continue
            seen.add(prim)
            triples.append(t)
        if len(triples) < d:
            continue
        try:
            return Arrangement.from_triples(triples)
        except ArrangementError:
            continue


def random_homogeneous(rng: random.Random, dmin=1, dmax=5, coeff=5) -> HomogeneousPolynomial:
    while True:
        d = rng.randint(dmin, dmax)
        coeffs = {m: rng.randint(-coeff, coeff) for m in monomial_basis(d)}
        poly = HomogeneousPolynomial(d, coeffs)
        if not poly.is_zero():
            return poly


def random_invertible_change(rng: random.Random):
    """Invertible 3x3 rational matrix (rows act on form coefficients)."""
    while True:
        m = [
            [Fraction(rng.randint(-4, 4), rng.randint(1, 3)) for _ in range(3)]
            for _ in range(3)
        ]
        det = (
            m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
            - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
            + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
        )
        if det != 0:
            return m


def apply_change(arr: Arrangement, m) -> Arrangement:
    """Substitute variables by the invertible change m (coefficients -> row * m)."""
    forms = []
    for f in arr.forms:
        row = f.triple
        forms.append(
            LinearForm(
                row[0] * m[0][0] + row[1] * m[1][0] + row[2] * m[2][0],
                row[0] * m[0][1] + row[1] * m[1][1] + row[2] * m[2][1],
                row[0] * m[0][2] + row[1] * m[1][2] + row[2] * m[2][2],
            )
        )
    return Arrangement(forms)


@pytest.fixture(scope="session")
def rng():
    return random.Random(20240813)
