import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from newtonmot import (
    AlgebraicValue,
    ConsistencyError,
    LaurentPoly,
    bifurcation_report,
    global_milnor_number,
    lambda_invariant,
    local_motive,
    milnor_fiber_at_infinity,
    nearby_cycles_at_infinity,
)
from newtonmot.laurent import newton_map_infinity
from newtonmot.motives import MonomialTorusClass, MotiveExpr
from newtonmot.newton_algo import NewtonPreconditionError

from conftest import X, Y, broughton, deg10


def test_deg10_generic_fiber_decomposition(f_deg10):
    res = milnor_fiber_at_infinity(f_deg10)
    assert res.chi == -3
    assert res.chi_by_area == -3
    assert [t.chi * t.weight for t in res.terms] == [1, 2, -2, -2, 0, -2, 0]
    assert res.terms[5].flat() == [1, -3, 0, 0]


def test_deg10_lambda(f_deg10):
    assert lambda_invariant(f_deg10, 1) == 1
    assert lambda_invariant(f_deg10, 2) == 1
    assert lambda_invariant(f_deg10, 0) == 0


def test_deg10_report(f_deg10):
    r = bifurcation_report(f_deg10)
    assert r.chi_generic == -3
    assert r.lam() == {AlgebraicValue.of(1): 1, AlgebraicValue.of(2): 1}
    assert r.lambda_total == 2
    assert r.mu_derived == 2 and r.mu_groebner == 2
    assert r.consistent


def test_deg10_first_chart_local_motive(f_deg10):
    f1 = newton_map_infinity(f_deg10, -1, 2, -1)
    res = local_motive(f1, -1)
    assert res.chi == -2
    assert res.summands() == [1, -3, 0, 0]


def test_deg10_second_chart_local_motive_vanishes(f_deg10):
    f2 = newton_map_infinity(f_deg10, 1, -1, -1)
    assert local_motive(f2, -1).chi == 0


def test_broughton(f_broughton):
    assert nearby_cycles_at_infinity(f_broughton, 0).chi == -1
    assert lambda_invariant(f_broughton, 0) == 1
    for c in (1, -7, 13):
        assert lambda_invariant(f_broughton, c) == 0
    r = bifurcation_report(f_broughton)
    assert r.chi_generic == 0
    assert r.b_top == [AlgebraicValue.of(0)]
    assert r.mu_groebner == 0


# (f, χ_generic, {a: λ_a}, μ).  Each row was checked by hand through
# χ(f^{-1}(a)) − χ_generic = μ_a + λ_a and the genus / points-at-infinity count
# of the generic fiber.
BALANCE = [
    (X + Y, 1, {}, 0),
    (X**2 + Y**3, -1, {}, 2),
    (X**3 + Y**3 + X * Y, -3, {}, 4),
    (X**2 * Y**2 + X + Y, -2, {}, 3),
    (X**3 * Y - X, 0, {0: 1}, 0),
    (X**2 * Y**3 + X * Y, -1, {0: 1}, 1),
    (X * (X * Y - 1) * (X * Y - 2), -1, {0: 2}, 0),
]


@pytest.mark.parametrize("f,chi,lam,mu", BALANCE)
def test_balance_table(f, chi, lam, mu):
    r = bifurcation_report(f)
    assert r.chi_generic == chi
    assert r.lam() == {AlgebraicValue.of(k): v for k, v in lam.items()}
    assert r.mu_groebner == mu
    assert 1 - chi == mu + r.lambda_total
    assert r.consistent


def test_quasi_homogeneous_in_monomial():
    res = milnor_fiber_at_infinity((X * Y) ** 2 + X * Y + 1)
    assert res.motive == MotiveExpr.atom(MonomialTorusClass(-2, -2))
    assert res.chi == 0
    res = milnor_fiber_at_infinity((X**2 * Y**3) ** 3 + 2)
    assert res.motive == MotiveExpr.atom(MonomialTorusClass(-6, -9))


def test_monomial_nearby_cycles_vanish():
    assert nearby_cycles_at_infinity(X**2 * Y**3 + 5, 5).chi == 0


def test_global_milnor_number():
    assert global_milnor_number(X**3 + Y**4) == 6
    assert global_milnor_number(broughton()) == 0
    with pytest.raises(NewtonPreconditionError):
        global_milnor_number((X * Y) ** 2)


def test_local_motive_rejects_bad_input():
    with pytest.raises(ValueError):
        local_motive(X + Y, 0)
    with pytest.raises(NewtonPreconditionError):
        local_motive(LaurentPoly({(0, -1): 1, (1, 0): 1}), 1)
    with pytest.raises(NewtonPreconditionError):
        local_motive(X + Y, 1, M=3)


def test_sentinel_is_deterministic(f_deg10):
    a = bifurcation_report(f_deg10, seed=3)
    b = bifurcation_report(f_deg10, seed=3)
    assert a.sentinel == b.sentinel and a.sentinel[1] == 0


def test_wrong_milnor_number_is_reported(f_broughton):
    r = bifurcation_report(f_broughton, milnor=5)
    assert r.residues["milnor_balance"] == -5
    assert not r.consistent


POLYS = [deg10(), broughton()] + [row[0] for row in BALANCE]


@given(st.sampled_from(POLYS), st.integers(-30, 30))
def test_generic_chi_translation_invariant(f, c):
    assert milnor_fiber_at_infinity(f + c).chi == milnor_fiber_at_infinity(f).chi


@given(st.sampled_from(POLYS), st.integers(-10**6, 10**6))
def test_lambda_nonnegative(f, a):
    res = nearby_cycles_at_infinity(f, a)
    assert -res.chi >= 0
    assert res.chi_by_area == res.chi


@given(st.sampled_from(POLYS), st.data())
def test_candidate_lambda_two_paths(f, data):
    r = bifurcation_report(f, seed=data.draw(st.integers(0, 1000)))
    for cand in r.candidates:
        res = nearby_cycles_at_infinity(f, cand.value)
        assert res.chi_by_area == res.chi == -cand.lam


def test_negative_lambda_is_a_consistency_error(monkeypatch):
    import newtonmot.invariants as inv

    real = inv.nearby_cycles_at_infinity

    def broken(f, a=0, max_depth=inv.DEFAULT_MAX_DEPTH):
        res = real(f, a, max_depth)
        res.chi = 1
        return res

    monkeypatch.setattr(inv, "nearby_cycles_at_infinity", broken)
    with pytest.raises(ConsistencyError):
        inv.bifurcation_report(broughton())


def test_random_values_have_zero_lambda():
    rng = random.Random(11)
    for _ in range(3):
        c = rng.randint(3, 10**4)
        assert lambda_invariant(deg10(), c) == 0
