import pytest

from newtonmot.algebra import AlgebraicValue, UniPoly
from newtonmot.laurent import LaurentPoly, newton_map_infinity
from newtonmot.newton_algo import (
    Monomial,
    NewtonNonTermination,
    NewtonPreconditionError,
    SmoothBranch,
    critical_value_classes,
    detect_base_case,
    dicritical_faces,
    newton_algorithm_infinity,
    newton_algorithm_local,
    newton_bifurcation_candidates,
    newton_bifurcation_set,
    nongeneric_values_tagged,
)

from conftest import X, Y, broughton, deg10

# Conjugacy class of the two critical values of the degree-ten example.  Frozen from an
# independent lex Groebner elimination of (f_x, f_y, c - f) in sympy:
# 135 c^2 - 172 c + 380.
DEG10_CRITICAL = AlgebraicValue.from_poly(UniPoly.from_ints([380, -172, 135]))


@pytest.mark.parametrize(
    "f,expected",
    [
        (((1 + X) * Y - X) ** 2, SmoothBranch(0, 2, 1)),
        (LaurentPoly({(-3, 1): 1}) * (1 + X + Y), Monomial(3, 1)),
        ((Y - X**2) ** 2 * (1 + X), SmoothBranch(0, 2, 2)),
        ((Y - X) ** 2 + X**3, None),
        (1 + X, Monomial(0, 0)),
        (X**2 * Y**3, Monomial(-2, 3)),
    ],
)
def test_detect_base_case(f, expected):
    assert detect_base_case(f) == expected


def test_detect_rejects_negative_y():
    with pytest.raises(NewtonPreconditionError):
        detect_base_case(LaurentPoly({(0, -1): 1}))


@pytest.mark.parametrize(
    "c,leaves",
    [
        (0, [SmoothBranch(0, 1, 1), SmoothBranch(3, 1, 1)]),
        (1, [SmoothBranch(-2, 1, 1), SmoothBranch(3, 1, 1)]),
        (2, [SmoothBranch(0, 1, 1), SmoothBranch(-1, 1, 1), SmoothBranch(3, 1, 1)]),
    ],
)
def test_deg10_tree_leaves(c, leaves):
    T = newton_algorithm_infinity(deg10() - c)
    assert [leaf.base for leaf in T.leaves()] == leaves
    assert T.root.height() <= 3


def test_deg10_dicritical_face_of_second_chart():
    f2 = newton_map_infinity(deg10(), 1, -1, -1)
    (d,) = dicritical_faces(f2, "local")
    assert d.face.vertices == ((-2, 4), (0, 0)) and not d.smooth
    assert d.P.coeffs == UniPoly.from_ints([2, 2, 1]).coeffs
    assert nongeneric_values_tagged(f2) == {1: {"local-dicritical"}, 2: {"local-dicritical"}}


def test_deg10_bifurcation_candidates():
    B = newton_bifurcation_set(deg10())
    assert 1 in B and 2 in B and DEG10_CRITICAL in B
    assert len(B) == 3


def test_broughton_candidates():
    assert newton_bifurcation_candidates(broughton()) == {0: {"infinity-dicritical"}}


def test_critical_values():
    assert critical_value_classes(deg10()) == [DEG10_CRITICAL]
    assert critical_value_classes(X**2 + Y**2) == [0]
    assert critical_value_classes(broughton()) == []
    with pytest.raises(NewtonPreconditionError):
        critical_value_classes((X * Y) ** 2)


def test_local_algorithm_terminates_on_cusp():
    T = newton_algorithm_local(Y**2 - X**3)
    assert all(leaf.base is not None for leaf in T.leaves())


def test_depth_bound():
    with pytest.raises(NewtonNonTermination):
        newton_algorithm_local((Y - X) ** 2 + X**3, max_depth=0)


def test_tree_serializes():
    d = newton_algorithm_infinity(broughton()).to_dict()
    assert d["kind"] == "infinity"
