from fractions import Fraction

import pytest
import sympy
from hypothesis import given
from hypothesis import strategies as st

from newtonmot.laurent import (
    ContextError,
    LaurentPoly,
    format_laurent,
    height,
    infinity_bezout,
    newton_map_infinity,
    newton_map_local,
    substitute_axis_flip,
    swap_xy,
)

from conftest import X, Y

terms = st.dictionaries(
    st.tuples(st.integers(0, 4), st.integers(0, 4)), st.integers(-5, 5).filter(bool), min_size=1, max_size=6
)


def to_sympy(f, xs="x", ys="y"):
    x, y = sympy.symbols(f"{xs} {ys}")
    out = 0
    for (a, b), c in f.items():
        fr = c.as_fraction()
        out += sympy.Rational(fr.numerator, fr.denominator) * x**a * y**b
    return out


def test_negative_exponent_context():
    LaurentPoly({(-1, 0): 1})
    with pytest.raises(ContextError):
        LaurentPoly({(-1, 0): 1}, context="poly")
    with pytest.raises(ContextError):
        LaurentPoly({(0, -1): 1}, context="laurent_x")


def test_exponent_overflow():
    with pytest.raises(OverflowError):
        LaurentPoly({(2**63, 0): 1})


def test_format_and_equality():
    f = X * (X * Y - 1)
    assert format_laurent(f) == "x^2*y - x"
    assert f == X**2 * Y - X
    assert hash(f) == hash(X**2 * Y - X)


@given(terms, terms)
def test_ring_operations_match_sympy(d1, d2):
    f, g = LaurentPoly.from_dict(d1), LaurentPoly.from_dict(d2)
    assert sympy.expand(to_sympy(f * g) - to_sympy(f) * to_sympy(g)) == 0
    assert sympy.expand(to_sympy(f - g) - to_sympy(f) + to_sympy(g)) == 0


@given(terms, st.integers(1, 4), st.integers(1, 4), st.integers(1, 3))
def test_newton_map_local_matches_substitution(d, p, q, mu):
    if sympy.gcd(p, q) != 1:
        return
    f = LaurentPoly.from_dict(d)
    pp, qp = next((a, b) for b in range(p) for a in range(q + 1) if p * a - q * b == 1)
    g = newton_map_local(f, p, q, mu)
    x, y = sympy.symbols("x y")
    ref = to_sympy(f).subs({x: mu**qp * x**p, y: x**q * (y + mu**pp)}, simultaneous=True)
    assert sympy.expand(to_sympy(g) - ref) == 0


@pytest.mark.parametrize("p,q", [(1, 1), (2, 3), (3, -2), (-3, 2), (1, -1), (-1, 2), (5, 2)])
def test_infinity_bezout_identities(p, q):
    pp, qp = infinity_bezout(p, q)
    assert 0 <= qp < abs(p)
    if p > 0 and q > 0:
        assert q * qp - p * pp == 1
    else:
        assert p * pp - q * qp == 1


@given(terms, st.sampled_from([(1, 1), (2, 1), (1, -1), (2, -1), (-1, 2), (-2, 3), (0, 1), (1, 0)]), st.integers(1, 3))
def test_newton_map_infinity_matches_substitution(d, n, mu):
    p, q = n
    f = LaurentPoly.from_dict(d)
    g = newton_map_infinity(f, p, q, mu)
    x, y, v, w = sympy.symbols("x y v w")
    if n == (0, 1):
        sub = {x: w + mu, y: 1 / v}
    elif n == (1, 0):
        sub = {x: 1 / v, y: w + mu}
    else:
        pp, qp = infinity_bezout(p, q)
        if p > 0:
            sub = {x: sympy.Integer(mu) ** qp * v**-p, y: v**-q * (w + sympy.Integer(mu) ** pp)}
        else:
            sub = {x: v**-p * (w + sympy.Integer(mu) ** qp), y: sympy.Integer(mu) ** pp * v**-q}
    ref = to_sympy(f).subs(sub, simultaneous=True)
    assert sympy.expand(to_sympy(g, "v", "w") - ref) == 0


def test_broughton_charts():
    f = X * (X * Y - 1)
    assert newton_map_infinity(f, -1, 1, 1) == X * Y**2 + X * Y
    assert newton_map_infinity(f, 1, -1, 1) == LaurentPoly({(-1, 1): 1})


def test_axis_flip_and_swap():
    f = Y * (X - 2)
    assert substitute_axis_flip(f, 2, "horizontal") == LaurentPoly({(1, -1): 1})
    assert swap_xy(X**2 * Y) == X * Y**2


def test_height():
    # x^-2 (y^4 + x^2)
    assert height(LaurentPoly({(-2, 4): 1, (0, 0): 1})) == 4


def test_evaluate_and_derivatives():
    f = X**2 * Y + 3 * X
    assert f.evaluate(2, 1).as_fraction() == 10
    assert f.diff_x() == 2 * X * Y + 3
    assert f.diff_y() == X**2
    assert (f.scale(Fraction(1, 2))).coeff(1, 0).as_fraction() == Fraction(3, 2)
