from fractions import Fraction

import pytest
import sympy
from hypothesis import given
from hypothesis import strategies as st

from newtonmot.algebra import (
    AlgebraicScalar,
    AlgebraicValue,
    FieldTower,
    ReducibleMinPolyError,
    UniPoly,
    adjoin_root,
    face_discriminant,
    factor_irreducible,
    is_irreducible,
    minimal_polynomial,
    resultant,
    squarefree_decomposition,
)

small = st.integers(min_value=-6, max_value=6)
polys = st.lists(small, min_size=1, max_size=6).filter(lambda c: any(c))


def sqrt2():
    return adjoin_root(FieldTower.rationals(), UniPoly.from_ints([-2, 0, 1]), name="r2")


def test_sqrt2_squares_to_two():
    T, r = sqrt2()
    assert T.degree == 2
    assert (r * r).as_fraction() == 2
    assert (r * r.inverse()).as_fraction() == 1


def test_reducible_minpoly_rejected():
    with pytest.raises(ReducibleMinPolyError):
        adjoin_root(FieldTower.rationals(), UniPoly.from_ints([-4, 0, 1]))


def test_linear_minpoly_returns_rational_root():
    T, r = adjoin_root(FieldTower.rationals(), UniPoly.from_ints([-3, 2]))
    assert T.depth == 0 and r.as_fraction() == Fraction(3, 2)


def test_tower_of_two_square_roots():
    T, r2 = sqrt2()
    T2, r3 = adjoin_root(T, UniPoly.from_scalars([-3, 0, 1], level=T.level), name="r3")
    s = r2 + r3
    assert minimal_polynomial(s).coeffs == tuple(Fraction(c) for c in (1, 0, -10, 0, 1))
    # canonicalization to the minimal level
    assert (r3 * r3).is_rational()


def test_squarefree_decomposition_example():
    p = UniPoly.from_ints([2, -3, 0, 1])  # s^3 - 3 s + 2 = (s + 2)(s - 1)^2
    parts = squarefree_decomposition(p)
    assert [(q.coeffs, m) for q, m in parts] == [
        ((Fraction(2), Fraction(1)), 1),
        ((Fraction(-1), Fraction(1)), 2),
    ]


def test_factor_over_extension_splits():
    T, r2 = sqrt2()
    p = UniPoly.from_scalars([-2, 0, 1], level=T.level)
    fs = factor_irreducible(p)
    assert sorted(q.degree for q, _ in fs) == [1, 1]


def test_face_discriminant_deg10_dicritical():
    # s^2 + 2 s + 2 - c has discriminant 4 c - 4
    d = face_discriminant(UniPoly.from_ints([2, 2, 1]))
    assert d.monic().coeffs == (Fraction(-1), Fraction(1))


@given(polys, polys)
def test_resultant_matches_sympy(a, b):
    A, B = UniPoly.from_ints(a), UniPoly.from_ints(b)
    if A.degree < 1 or B.degree < 1:
        return
    assert resultant(A, B).as_fraction() == sylvester_det(A, B)


def sylvester_det(A, B):
    # determinant of the Sylvester matrix, highest coefficients first
    n, m = A.degree, B.degree
    ca = [A.coefficient(i).as_fraction() for i in range(n, -1, -1)]
    cb = [B.coefficient(i).as_fraction() for i in range(m, -1, -1)]
    rows = [[0] * i + ca + [0] * (m - 1 - i) for i in range(m)]
    rows += [[0] * i + cb + [0] * (n - 1 - i) for i in range(n)]
    d = sympy.Matrix(rows).det()
    return Fraction(int(sympy.numer(d)), int(sympy.denom(d)))


def test_resultant_sign_on_monomial():
    # Res(s + 2, s^3) = (-2)^3
    assert resultant(UniPoly.from_ints([2, 1]), UniPoly.from_ints([0, 0, 0, 1])).as_fraction() == -8


@given(polys)
def test_factorization_reconstructs(coeffs):
    p = UniPoly.from_ints(coeffs)
    if p.degree < 1:
        return
    prod = UniPoly.from_ints([1])
    for q, m in factor_irreducible(p):
        assert is_irreducible(q)
        prod = prod * q**m
    assert prod.coeffs == p.monic().coeffs


@given(polys)
def test_squarefree_parts_reconstruct(coeffs):
    p = UniPoly.from_ints(coeffs)
    if p.degree < 1:
        return
    prod = UniPoly.from_ints([1])
    for q, m in squarefree_decomposition(p):
        assert q.is_squarefree()
        prod = prod * q**m
    assert prod.coeffs == p.monic().coeffs


@given(small, small, small)
def test_field_axioms_in_quadratic_extension(a, b, c):
    T, r = sqrt2()
    u = r * a + b
    v = r * c + 1
    assert (u + v) * v == u * v + v * v
    if not u.is_zero():
        assert (u * u.inverse()).as_fraction() == 1


def test_algebraic_value_rational_hashing():
    v = AlgebraicValue.of(2)
    assert v == 2 and 2 in {v} and str(v) == "2"


def test_algebraic_value_conjugate_class():
    T, r = sqrt2()
    v1 = AlgebraicValue.of(r + 1)
    v2 = AlgebraicValue.of(-r + 1)
    assert v1 == v2 and v1.degree == 2
    approx = sorted(z.real for z in v1.approximations())
    assert abs(approx[0] - (1 - 2**0.5)) < 1e-9


def test_coerce_and_keys():
    a = AlgebraicScalar.coerce(Fraction(1, 3))
    assert a.is_rational() and a.as_fraction() == Fraction(1, 3)
