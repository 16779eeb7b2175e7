"""Homogeneous polynomials in x, y, z over Q.

Monomials are exponent triples (a, b, c); graded pieces use the
degree-lexicographic basis with x > y > z, e.g. for degree 2:
x^2, xy, xz, y^2, yz, z^2.  The basis order is part of the interface (matrix
layouts and golden tests depend on it).
"""

from __future__ import annotations

import math
from fractions import Fraction
from functools import lru_cache

from .errors import ArrangementError
from .ratlin import RationalMatrix

VARS = ("x", "y", "z")


def dim_graded_piece(k: int) -> int:
    """Dimension of the degree-k piece: C(k+2, 2)."""
    if k < 0:
        return 0
    return (k + 1) * (k + 2) // 2


@lru_cache(maxsize=None)
def monomial_basis(k: int):
    """All degree-k monomials in deglex order (x > y > z)."""
    if k < 0:
        return ()
    out = []
    for a in range(k, -1, -1):
        for b in range(k - a, -1, -1):
            out.append((a, b, k - a - b))
    return tuple(out)


def monomial_index(mono, k: int) -> int:
    """Position of a degree-k monomial in ``monomial_basis(k)``."""
    a, b, _ = mono
    t = k - a
    return t * (t + 1) // 2 + (t - b)


class HomogeneousPolynomial:
    """Degree-d form with exact coefficients, stored sparsely by monomial."""

    __slots__ = ("degree", "coeffs")

    def __init__(self, degree: int, coeffs):
        self.degree = degree
        self.coeffs = {}
        for mono, c in dict(coeffs).items():
            if c == 0:
                continue
            if sum(mono) != degree or min(mono) < 0:
                raise ValueError(f"monomial {mono} has degree != {degree}")
            self.coeffs[tuple(mono)] = c

    @classmethod
    def zero(cls, degree: int) -> "HomogeneousPolynomial":
        return cls(degree, {})

    def is_zero(self) -> bool:
        return not self.coeffs

    def __eq__(self, other):
        if not isinstance(other, HomogeneousPolynomial):
            return NotImplemented
        if self.degree != other.degree:
            return False
        keys = set(self.coeffs) | set(other.coeffs)
        return all(
            Fraction(self.coeffs.get(m, 0)) == Fraction(other.coeffs.get(m, 0)) for m in keys
        )

    def __hash__(self):
        return hash((self.degree, frozenset((m, Fraction(c)) for m, c in self.coeffs.items())))

    def __mul__(self, other):
        if isinstance(other, HomogeneousPolynomial):
            out: dict = {}
            for m1, c1 in self.coeffs.items():
                for m2, c2 in other.coeffs.items():
                    m = (m1[0] + m2[0], m1[1] + m2[1], m1[2] + m2[2])
                    out[m] = out.get(m, 0) + c1 * c2
            return HomogeneousPolynomial(self.degree + other.degree, out)
        return self.scale(other)

    __rmul__ = __mul__

    def __add__(self, other):
        if self.degree != other.degree:
            raise ValueError("cannot add forms of different degrees")
        out = dict(self.coeffs)
        for m, c in other.coeffs.items():
            out[m] = out.get(m, 0) + c
        return HomogeneousPolynomial(self.degree, out)

    def __sub__(self, other):
        return self + other.scale(-1)

    def scale(self, c):
        return HomogeneousPolynomial(self.degree, {m: c * v for m, v in self.coeffs.items()})

    def partial(self, var: int) -> "HomogeneousPolynomial":
        """Formal partial derivative with respect to x, y or z (var = 0, 1, 2)."""
        out = {}
        for m, c in self.coeffs.items():
            e = m[var]
            if e:
                m2 = list(m)
                m2[var] = e - 1
                out[tuple(m2)] = c * e
        return HomogeneousPolynomial(max(self.degree - 1, 0), out)

    def coefficient_vector(self):
        """Coefficients over ``monomial_basis(degree)``."""
        k = self.degree
        vec = [0] * dim_graded_piece(k)
        for m, c in self.coeffs.items():
            vec[monomial_index(m, k)] = c
        return vec

    @classmethod
    def from_coefficient_vector(cls, degree: int, vec) -> "HomogeneousPolynomial":
        basis = monomial_basis(degree)
        return cls(degree, {m: c for m, c in zip(basis, vec) if c != 0})

    def primitive(self) -> "HomogeneousPolynomial":
        """Scale to integer coefficients with content 1 (invariants of the
        defining ideal do not see scalar factors)."""
        if not self.coeffs:
            return self
        lcm = 1
        for c in self.coeffs.values():
            if isinstance(c, Fraction):
                lcm = lcm // math.gcd(lcm, c.denominator) * c.denominator
        ints = {}
        for m, c in self.coeffs.items():
            c = Fraction(c) * lcm
            ints[m] = int(c)
        g = 0
        for c in ints.values():
            g = math.gcd(g, c)
        # sign: coefficient of the earliest basis monomial present is positive
        first = min(ints, key=lambda m: monomial_index(m, self.degree))
        if ints[first] < 0:
            g = -g
        return HomogeneousPolynomial(self.degree, {m: c // g for m, c in ints.items()})

    def __repr__(self):
        if not self.coeffs:
            return "0"
        parts = []
        for m in sorted(self.coeffs, key=lambda mo: monomial_index(mo, self.degree)):
            c = self.coeffs[m]
            mono = "*".join(
                f"{v}^{e}" if e > 1 else v for v, e in zip(VARS, m) if e
            ) or "1"
            parts.append(f"{c}*{mono}")
        return " + ".join(parts)


class LinearForm:
    """Nonzero form a*x + b*y + c*z."""

    __slots__ = ("a", "b", "c")

    def __init__(self, a, b, c):
        if a == 0 and b == 0 and c == 0:
            raise ArrangementError("linear form is identically zero")
        self.a, self.b, self.c = a, b, c

    @property
    def triple(self):
        return (self.a, self.b, self.c)

    def as_poly(self) -> HomogeneousPolynomial:
        return HomogeneousPolynomial(
            1, {(1, 0, 0): self.a, (0, 1, 0): self.b, (0, 0, 1): self.c}
        )

    def primitive_triple(self):
        """Integer coefficients, content 1, first nonzero positive.

        Two forms are proportional iff their primitive triples coincide.
        """
        vals = [Fraction(v) for v in self.triple]
        lcm = 1
        for v in vals:
            lcm = lcm // math.gcd(lcm, v.denominator) * v.denominator
        ints = [int(v * lcm) for v in vals]
        g = 0
        for v in ints:
            g = math.gcd(g, v)
        for v in ints:
            if v:
                if v < 0:
                    g = -g
                break
        return tuple(v // g for v in ints)

    def evaluate(self, point):
        return self.a * point[0] + self.b * point[1] + self.c * point[2]

    def __eq__(self, other):
        if not isinstance(other, LinearForm):
            return NotImplemented
        return all(Fraction(u) == Fraction(v) for u, v in zip(self.triple, other.triple))

    def __hash__(self):
        return hash(tuple(Fraction(v) for v in self.triple))

    def __repr__(self):
        return f"LinearForm({self.a}, {self.b}, {self.c})"


def product(factors) -> HomogeneousPolynomial:
    """Exact expanded product of homogeneous polynomials (or linear forms)."""
    result = HomogeneousPolynomial(0, {(0, 0, 0): 1})
    for f in factors:
        if isinstance(f, LinearForm):
            f = f.as_poly()
        result = result * f
    return result


def partials(f: HomogeneousPolynomial):
    """The three partial derivatives (f_x, f_y, f_z)."""
    if f.degree < 1:
        raise ValueError("partials need degree >= 1")
    return f.partial(0), f.partial(1), f.partial(2)


def multiplication_rows(gs, k: int):
    """Rows (over monomial_basis(k)) of (u_1, ..., u_m) -> sum u_i g_i.

    Columns are (generator, monomial_basis(k - e)) pairs, generator-major.
    Integer output when the generators are integer.  Internal fast path; the
    public wrapper boxes this into a RationalMatrix.
    """
    if not gs:
        return [[] for _ in range(dim_graded_piece(k))], 0
    e = gs[0].degree
    if any(g.degree != e for g in gs):
        raise ValueError("generators must share one degree")
    if k < e:
        raise ValueError("target degree below generator degree")
    src = monomial_basis(k - e)
    nrows = dim_graded_piece(k)
    ncols = len(gs) * len(src)
    rows = [[0] * ncols for _ in range(nrows)]
    col = 0
    for g in gs:
        terms = [(m, c) for m, c in g.coeffs.items()]
        for mu in src:
            for m, c in terms:
                idx = monomial_index((m[0] + mu[0], m[1] + mu[1], m[2] + mu[2]), k)
                rows[idx][col] += c
            col += 1
    return rows, ncols


def multiplication_matrix(gs, k: int) -> RationalMatrix:
    """Matrix of the graded multiplication map (S_{k-e})^m -> S_k."""
    rows, ncols = multiplication_rows(list(gs), k)
    return RationalMatrix(dim_graded_piece(k), ncols, rows)
