"""Acceptance criteria 1-8.

Every check is exact.  Each criterion prints one ``PASS``/``FAIL`` line:
under pytest the lines appear in the terminal summary, and
``python tests/test_acceptance.py`` prints them directly.
"""

import math
import random
import sys
from fractions import Fraction
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).resolve().parent))

from newtonmot import (  # noqa: E402
    LaurentPoly,
    bifurcation_report,
    global_milnor_number,
    lambda_invariant,
    milnor_fiber_at_infinity,
    nearby_cycles_at_infinity,
)
from newtonmot.algebra import UniPoly, factor_irreducible  # noqa: E402
from newtonmot.lattice import (  # noqa: E402
    Cone,
    area_with_respect_to,
    cone_euler,
    face_euler,
    polygon_infinity,
    quasi_hom_factor,
)
from newtonmot.motives import (  # noqa: E402
    CurveTimesGm,
    FaceClass,
    MonomialTorusClass,
    MotiveExpr,
    PowerClass,
    cone_series,
    euler_realization,
    face_of_poly,
    limit_T_infinity,
    normalize,
)
from newtonmot.newton_algo import (  # noqa: E402
    DEFAULT_MAX_DEPTH,
    Monomial,
    SmoothBranch,
    detect_base_case,
    newton_algorithm_infinity,
    newton_algorithm_local,
    newton_bifurcation_set,
)

from conftest import X, Y, broughton, deg10  # noqa: E402

RESULTS: dict[int, str] = {}


def _record(n: int, fn) -> None:
    try:
        fn()
    except BaseException:
        RESULTS[n] = "FAIL"
        raise
    RESULTS[n] = "PASS"


def status_lines() -> list[str]:
    return [f"criterion {n}: {RESULTS[n]}" for n in sorted(RESULTS)]


# ---------------------------------------------------------------------------
# 1. Degree-ten example end to end


def criterion_1():
    f = deg10()
    mfi = milnor_fiber_at_infinity(f)
    assert mfi.chi == -3
    assert [t.weight * t.chi for t in mfi.terms] == [1, 2, -2, -2, 0, -2, 0]
    # The chart summand splits as 1 - 3 - 0; its last leaf is a base case with χ 0.
    assert mfi.terms[5].flat() == [1, -3, 0, 0]
    assert lambda_invariant(f, 1) == 1
    assert lambda_invariant(f, 2) == 1
    B = newton_bifurcation_set(f)
    assert 1 in B and 2 in B
    r = bifurcation_report(f)
    mu, lam = r.mu_groebner, r.lambda_total
    assert (mu, lam) == (2, 2)
    assert 1 - (mu + lam) == -3 == r.chi_generic
    assert r.mu_derived == mu and r.consistent


# ---------------------------------------------------------------------------
# 2. Broughton


def criterion_2():
    f = broughton()
    assert nearby_cycles_at_infinity(f, 0).chi == -1
    assert lambda_invariant(f, 0) == 1
    rng = random.Random(20240601)
    cs = set()
    while len(cs) < 3:
        c = Fraction(rng.randint(-10**5, 10**5), rng.randint(1, 97))
        if c:
            cs.add(c)
    for c in cs:
        assert lambda_invariant(f, c) == 0


# ---------------------------------------------------------------------------
# 3. Face χ table


FACE_TABLE = [
    (Y * (X**2 * Y + 1) ** 3, -2),
    (X**2 * (X * Y + 1) ** 4, -2),
    (LaurentPoly({(-2, 3): 8, (-1, 0): 5}), -3),
]


def criterion_3():
    for poly, chi in FACE_TABLE:
        face = face_of_poly(poly)
        assert face_euler(poly, face) == chi
        assert -2 * area_with_respect_to(face, poly) == chi
        for sign in (1, -1):
            assert euler_realization(MotiveExpr.atom(FaceClass(poly, sign))) == chi


# ---------------------------------------------------------------------------
# 4. Quasi-homogeneous suite


def _quasi_homogeneous_case(rng: random.Random):
    while True:
        p, q = rng.randint(1, 4), rng.randint(1, 4)
        if math.gcd(p, q) == 1:
            break
    a, b = rng.randint(-3, 3), rng.randint(0, 3)
    k = rng.randint(1, 3)
    mus = rng.sample([m for m in range(-6, 7) if m], k)
    nus = [rng.randint(1, 3) for _ in mus]
    f = LaurentPoly.monomial(a, b)
    for mu, nu in zip(mus, nus):
        f = f * (LaurentPoly.monomial(q, 0) - mu * LaurentPoly.monomial(0, p)) ** nu
    # Every monomial x^{a+qi} y^{b+pj} with i + j = Σν pairs to the same
    # value against the primitive normal (p, q); r counts the distinct roots.
    N = p * a + q * b + p * q * sum(nus)
    return f, -len(mus) * abs(N)


def criterion_4():
    rng = random.Random(4)
    for _ in range(20):
        f, oracle = _quasi_homogeneous_case(rng)
        assert euler_realization(MotiveExpr.atom(FaceClass(f, 1))) == oracle
        assert euler_realization(MotiveExpr.atom(FaceClass(f, -1))) == oracle
    for _ in range(10):
        a, b = rng.randint(0, 3), rng.randint(0, 3)
        if (a, b) == (0, 0) or a * b == 0:
            a, b = a + 1, b + 1
        coeffs = [rng.choice([-3, -2, -1, 1, 2, 3]) for _ in range(rng.randint(2, 4))]
        d = len(coeffs) - 1
        t = LaurentPoly.monomial(a, b)
        f = sum((c * t**i for i, c in enumerate(coeffs)), LaurentPoly.zero())
        res = milnor_fiber_at_infinity(f)
        assert res.motive == MotiveExpr.atom(MonomialTorusClass(-d * a, -d * b))
        assert res.chi == 0


# ---------------------------------------------------------------------------
# 5. Cone-series suite


def _cone_case(rng: random.Random, kind: str):
    while True:
        w1 = (rng.randint(-4, 4), rng.randint(-4, 4))
        w2 = (rng.randint(-4, 4), rng.randint(-4, 4))
        if w1 == (0, 0) or w2 == (0, 0):
            continue
        if kind != "ray" and w1[0] * w2[1] - w1[1] * w2[0] <= 0:
            continue
        gens = (w1,) if kind == "ray" else (w1, w2)
        phi = (rng.randint(-5, 5), rng.randint(-5, 5))
        eta = (rng.randint(-5, 5), rng.randint(-5, 5))
        if all(phi[0] * g[0] + phi[1] * g[1] >= 1 and eta[0] * g[0] + eta[1] * g[1] >= 0 for g in gens):
            return phi, eta, Cone(kind, gens)


def criterion_5():
    rng = random.Random(5)
    expected = {"ray": -1, "open2D": 1, "halfopen2D": 0}
    for kind, value in expected.items():
        for _ in range(50):
            phi, eta, C = _cone_case(rng, kind)
            assert cone_euler(C) == value
            lim = limit_T_infinity(cone_series(phi, eta, C))
            assert lim == ({0: value} if value else {})


# ---------------------------------------------------------------------------
# 6. Convenient nondegenerate suite


def _nondegenerate_at_infinity(f) -> bool:
    P = polygon_infinity(f)
    return all(br.nu == 1 for e in P.edges() if not e.contains_origin for br in quasi_hom_factor(f, e).branches)


def _convenient_case(rng: random.Random):
    while True:
        n, m = rng.randint(2, 3), rng.randint(2, 3)
        terms = {(n, 0): rng.choice([1, 2, -3]), (0, m): rng.choice([1, -1, 5])}
        for i in range(n + 1):
            for j in range(m + 1):
                if (i, j) not in terms and i * m + j * n <= n * m and rng.random() < 0.5:
                    terms[(i, j)] = rng.randint(-4, 4) or 1
        f = LaurentPoly(terms)
        if not _nondegenerate_at_infinity(f):
            continue
        try:
            global_milnor_number(f)
        except ValueError:
            continue
        return f


def criterion_6():
    rng = random.Random(6)
    for _ in range(10):
        f = _convenient_case(rng)
        for c in newton_bifurcation_set(f):
            assert lambda_invariant(f, c) == 0
        for _ in range(3):
            assert lambda_invariant(f, Fraction(rng.randint(-10**4, 10**4), rng.randint(1, 50))) == 0
        r = bifurcation_report(f)
        assert r.lambda_total == 0 and r.consistent


# ---------------------------------------------------------------------------
# 7. Base-case detector and termination


def _corpus():
    from test_cli import CORPUS
    from test_invariants import BALANCE

    from newtonmot.cli import parse_polynomial

    polys = [parse_polynomial(t) for t in CORPUS]
    polys += [row[0] for row in BALANCE]
    polys += [deg10() - c for c in (0, 1, 2, 5)]
    polys += [broughton(), (X * Y) ** 2 + X * Y + 1, Y**2 - X**3, (Y - X**2) ** 2 * (1 + X)]
    rng = random.Random(7)
    polys += [_convenient_case(rng) for _ in range(5)]
    return [f for f in polys if any(a for a, _ in f.terms) and any(b for _, b in f.terms)]


def criterion_7():
    assert detect_base_case(((1 + X) * Y - X) ** 2) == SmoothBranch(0, 2, 1)
    assert detect_base_case(LaurentPoly.monomial(-3, 1) * (1 + X + 2 * Y)) == Monomial(3, 1)
    leaves = {
        0: [SmoothBranch(0, 1, 1), SmoothBranch(3, 1, 1)],
        1: [SmoothBranch(-2, 1, 1), SmoothBranch(3, 1, 1)],
        2: [SmoothBranch(0, 1, 1), SmoothBranch(-1, 1, 1), SmoothBranch(3, 1, 1)],
    }
    for c, want in leaves.items():
        T = newton_algorithm_infinity(deg10() - c)
        assert [leaf.base for leaf in T.leaves()] == want
        assert all(detect_base_case(leaf.poly) == leaf.base for leaf in T.leaves())
    for f in _corpus():
        trees = [newton_algorithm_infinity(f)]
        g = f - f.constant_term()
        if not g.is_zero() and g.min_a() >= 0:
            trees.append(newton_algorithm_local(g))
        for T in trees:
            assert T.root.height() <= DEFAULT_MAX_DEPTH
            for node in T.nodes():
                if node is not T.root or T.kind == "local":
                    assert node.is_leaf() or node.branches


# ---------------------------------------------------------------------------
# 8. Property suites


def _smooth_chain(M, m, q, mu):
    face = LaurentPoly.monomial(-M, 0) * (Y - mu * X**q) ** m
    return (MotiveExpr.atom(PowerClass(-M + m * q)) + MotiveExpr.atom(FaceClass(face, 1))
            - MotiveExpr.atom(MonomialTorusClass(-M, m)))


def criterion_8():
    rng = random.Random(8)
    polys = [deg10(), broughton(), X**3 * Y - X, X**2 * Y**3 + X * Y, X * (X * Y - 1) * (X * Y - 2)]
    for f in polys:
        chi = milnor_fiber_at_infinity(f).chi
        for _ in range(4):
            a = Fraction(rng.randint(-10**4, 10**4), rng.randint(1, 30))
            res = nearby_cycles_at_infinity(f, a)
            assert -res.chi >= 0
            assert res.chi_by_area == res.chi
            assert milnor_fiber_at_infinity(f + a).chi == chi
        for cand in bifurcation_report(f).candidates:
            res = nearby_cycles_at_infinity(f, cand.value)
            assert res.chi_by_area == res.chi == -cand.lam
            assert cand.lam >= 0

    for _ in range(25):
        M, m, q, mu = rng.randint(-3, 3), rng.randint(1, 3), rng.randint(1, 3), rng.choice([-2, -1, 1, 3])
        if -M + m * q == 0:
            continue
        chain = _smooth_chain(M, m, q, mu)
        assert normalize(chain).is_zero() and euler_realization(chain) == 0
        e = MotiveExpr.atom(CurveTimesGm(M or 1, m))
        assert normalize(e) == MotiveExpr.atom(MonomialTorusClass(-(M or 1), m))
        assert euler_realization(normalize(e)) == euler_realization(e)

    for _ in range(25):
        roots = [rng.randint(-5, 5) for _ in range(rng.randint(1, 5))]
        p = UniPoly.from_ints([1])
        for r in roots:
            p = p * UniPoly.from_ints([-r, 1])
        p = p * UniPoly.from_ints([rng.randint(1, 4), 0, 1])
        prod = UniPoly.from_ints([1])
        for fac, mult in factor_irreducible(p):
            prod = prod * fac**mult
        assert prod == p.monic()
        f, _ = _quasi_homogeneous_case(rng)
        face = face_of_poly(f)
        fact = quasi_hom_factor(f, face)
        assert sum(br.nu * br.degree for br in fact.branches) == face.lattice_length


CRITERIA = {n: globals()[f"criterion_{n}"] for n in range(1, 9)}


@pytest.mark.parametrize("n", sorted(CRITERIA))
def test_criterion(n):
    _record(n, CRITERIA[n])


if __name__ == "__main__":
    failed = False
    for n, fn in CRITERIA.items():
        try:
            _record(n, fn)
        except BaseException:
            failed = True
        print(f"criterion {n}: {RESULTS[n]}")
    sys.exit(1 if failed else 0)
