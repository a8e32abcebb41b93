"""Motives at infinity, λ invariants and bifurcation sets of plane polynomials.

Every assembled motive carries a tree of ``Term`` records so that a result
can be compared summand by summand, and every Euler characteristic is
computed twice: by realizing the motive atom by atom and by the area
formula with its own recursion.  A mismatch raises ``ConsistencyError``.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction

import sympy

from .algebra import AlgebraicScalar, AlgebraicValue
from .lattice import (
    area_with_respect_to,
    eps_classification,
    eps_minus,
    eps_plus,
    face_polynomial,
    in_omega,
    polygon_global,
    polygon_infinity,
    polygon_local,
    polygon_tilde,
    primitive,
    quasi_hom_factor,
)
from .laurent import LaurentPoly, newton_map_infinity, newton_map_local
from .motives import (
    ConsistencyError,
    FaceClass,
    MonomialTorusClass,
    MotiveExpr,
    PowerClass,
    euler_realization,
)
from .newton_algo import (
    DEFAULT_MAX_DEPTH,
    Monomial,
    NewtonNonTermination,
    NewtonPreconditionError,
    SmoothBranch,
    _require_bivariate_poly,
    branch_root,
    critical_value_classes,
    detect_base_case,
    newton_bifurcation_candidates,
)


@dataclass
class Term:
    """One summand of an assembled motive, with its realized χ."""

    label: str
    motive: MotiveExpr
    chi: int
    weight: int = 1
    children: list = field(default_factory=list)

    def flat(self) -> list[int]:
        """χ of the leaves, in order, each multiplied by the accumulated weight."""
        if not self.children:
            return [self.weight * self.chi]
        return [self.weight * c for t in self.children for c in t.flat()]

    def to_dict(self) -> dict:
        return {
            "label": self.label,
            "motive": str(self.motive),
            "chi": self.chi,
            "weight": self.weight,
            "children": [t.to_dict() for t in self.children],
        }


def _atom_term(label: str, atom, coeff: int) -> Term:
    m = MotiveExpr.atom(atom, coeff)
    return Term(label, m, euler_realization(m))


@dataclass
class LocalMotiveResult:
    motive: MotiveExpr
    chi: int
    provenance: str
    terms: list

    def summands(self) -> list[int]:
        return [c for t in self.terms for c in t.flat()]


@dataclass
class InfinityResult:
    """S_{f,∞} or S^∞_{f,a} with its χ and term decomposition."""

    motive: MotiveExpr
    chi: int
    terms: list
    chi_by_area: int

    def summands(self) -> list[int]:
        return [c for t in self.terms for c in t.flat()]


# ---------------------------------------------------------------------------
# Local motives of f^ε along x != 0


def _local_base(base, epsilon: int, path: str) -> LocalMotiveResult:
    M, m = base.M, base.m
    terms = []
    if isinstance(base, Monomial) and m == 0:
        if -epsilon * M > 0:
            terms.append(_atom_term(f"[x^{-epsilon * M}]", PowerClass(-epsilon * M), 1))
    elif epsilon == 1 and -M > 0:
        terms.append(_atom_term(f"-[x^{-M} y^{m}]", MonomialTorusClass(-M, m), -1))
    motive = sum((t.motive for t in terms), MotiveExpr.zero())
    chi = euler_realization(motive)
    return LocalMotiveResult(motive, chi, path, terms)


def local_motive(f: LaurentPoly, epsilon: int, *, M: int | None = None,
                 max_depth: int = DEFAULT_MAX_DEPTH, _depth: int = 0, _path: str = "root") -> LocalMotiveResult:
    """Motivic Milnor fiber of f^ε at the origin along x != 0.

    ``f`` lives in k[x, 1/x, y].  When ``M`` is given, ``x^M f`` must be a
    polynomial not divisible by x.
    """
    if epsilon not in (1, -1):
        raise ValueError("epsilon must be +1 or -1")
    if f.is_zero():
        raise NewtonPreconditionError("zero polynomial")
    if f.min_b() < 0:
        raise NewtonPreconditionError("negative powers of y are not allowed")
    if M is not None and M != -f.min_a():
        raise NewtonPreconditionError(f"x^{M} f is not a polynomial prime to x")
    if epsilon == -1 and f.min_a() >= 0:
        return LocalMotiveResult(MotiveExpr.zero(), 0, _path, [])
    base = detect_base_case(f)
    if base is not None:
        return _local_base(base, epsilon, _path)
    if _depth >= max_depth:
        raise NewtonNonTermination(f"depth bound {max_depth} reached at {_path}")

    P = polygon_local(f)
    members = eps_classification(f, epsilon, P)
    gh = P.extra["gamma_h"]
    terms: list[Term] = []
    chi_area = Fraction(0)

    a, b = gh
    gh_member = any(fc.dim == 0 and fc.vertices[0] == gh for fc in members)
    if gh_member:
        if b == 0:
            terms.append(_atom_term(f"[x^{epsilon * a}]", PowerClass(epsilon * a), 1))
            chi_area += abs(a)
        elif epsilon == 1:
            terms.append(_atom_term(f"-[x^{a} y^{b}]", MonomialTorusClass(a, b), -1))
    for fc in sorted(members, key=lambda fc: -fc.dim):
        if fc.dim == 0:
            v = fc.vertices[0]
            if v == gh:
                continue
            terms.append(_atom_term(f"-[vertex {v}]", MonomialTorusClass(epsilon * v[0], epsilon * v[1]), -1))
        else:
            fg = face_polynomial(f, fc)
            terms.append(_atom_term(f"[face {fc.vertices}]", FaceClass(fg, epsilon), 1))
            chi_area -= 2 * area_with_respect_to(fc, f)

    edges = P.edges() if epsilon == 1 else [fc for fc in members if fc.dim == 1]
    for ei, e in enumerate(edges):
        p, q = e.normal
        fact = quasi_hom_factor(f, e)
        for bi, br in enumerate(fact.branches):
            mu = branch_root(br.factor)
            child = newton_map_local(f, p, q, mu)
            sub = local_motive(child, epsilon, max_depth=max_depth, _depth=_depth + 1, _path=f"{_path}/e{ei}b{bi}")
            terms.append(Term(f"chart ({p},{q}) root of {br.factor}", sub.motive,
                              sub.chi, br.degree, sub.terms))
            chi_area += br.degree * sub.chi

    motive = MotiveExpr.zero()
    for t in terms:
        motive = motive + t.motive * t.weight
    chi = euler_realization(motive)
    if chi_area != chi:
        raise ConsistencyError(f"local χ paths disagree at {_path}: {chi} vs {chi_area}")
    return LocalMotiveResult(motive, chi, _path, terms)


# ---------------------------------------------------------------------------
# Milnor fiber at infinity


def _quasi_hom_ray(g: LaurentPoly):
    """(a, b, d) if Supp(g) minus the origin lies on N(a, b) with a, b >= 1."""
    pts = [v for v in g.support() if v != (0, 0)]
    if not pts:
        return None
    a, b = primitive(pts[0])
    if a < 1 or b < 1:
        return None
    d = 0
    for u, w in pts:
        if u * b != w * a or u % a:
            return None
        d = max(d, u // a)
    return a, b, d


def _shifted_to_unit_constant(f: LaurentPoly) -> LaurentPoly:
    return f + (AlgebraicScalar.coerce(1) - f.constant_term())


def milnor_fiber_at_infinity(f: LaurentPoly, max_depth: int = DEFAULT_MAX_DEPTH) -> InfinityResult:
    """S_{f,∞} with χ_c of the generic fiber."""
    _require_bivariate_poly(f)
    g = _shifted_to_unit_constant(f)
    qh = _quasi_hom_ray(g)
    if qh is not None:
        a, b, d = qh
        t = _atom_term(f"[1/(x^{a} y^{b})^{d}]", MonomialTorusClass(-d * a, -d * b), 1)
        return InfinityResult(t.motive, 0, [t], 0)

    pinf = polygon_infinity(g)
    a0, b0 = pinf.extra["a0"], pinf.extra["b0"]
    verts = set(pinf.vertex_points())
    terms: list[Term] = []
    chi_area = Fraction(0)
    if b0 > 0 and (0, b0) in verts:
        terms.append(_atom_term(f"[1/y^{b0}]", PowerClass(-b0), 1))
        chi_area += b0
    if a0 > 0 and (a0, 0) in verts:
        terms.append(_atom_term(f"[1/x^{a0}]", PowerClass(-a0), 1))
        chi_area += a0
    interior_edges = [fc for fc in pinf.faces if fc.dim == 1 and not fc.contains_origin]
    for e in interior_edges:
        eps = eps_minus(e, pinf)
        terms.append(_atom_term(f"[1/face {e.vertices}]", FaceClass(face_polynomial(g, e), -1), eps))
        chi_area -= 2 * eps * area_with_respect_to(e, g)
    for fc in pinf.faces:
        if fc.dim == 0 and fc.kind == "vertex":
            eps = eps_minus(fc, pinf)
            if eps:
                v = fc.vertices[0]
                terms.append(_atom_term(f"{eps}*[1/x^{v[0]} y^{v[1]}]", MonomialTorusClass(-v[0], -v[1]), eps))
    for ei, e in enumerate(interior_edges):
        p, q = e.normal
        fact = quasi_hom_factor(g, e)
        for bi, br in enumerate(fact.branches):
            mu = branch_root(br.factor)
            child = newton_map_infinity(g, p, q, mu)
            sub = local_motive(child, -1, max_depth=max_depth, _depth=1, _path=f"inf/e{ei}b{bi}")
            terms.append(Term(f"S_(1/f_sigma) chart ({p},{q}) root of {br.factor}", sub.motive, sub.chi,
                              br.degree, sub.terms))
            chi_area += br.degree * sub.chi
    motive = MotiveExpr.zero()
    for t in terms:
        motive = motive + t.motive * t.weight
    chi = euler_realization(motive)
    if chi != chi_area:
        raise ConsistencyError(f"generic fiber χ paths disagree: {chi} vs {chi_area}")
    return InfinityResult(motive, chi, terms, int(chi_area))


# ---------------------------------------------------------------------------
# Nearby cycles at infinity


def _as_scalar(a) -> AlgebraicScalar:
    if isinstance(a, AlgebraicValue):
        return a.representative()
    return AlgebraicScalar.coerce(a)


def _segment_nearby(h: LaurentPoly, glob) -> InfinityResult:
    e = glob.edges()[0]
    A, B = sorted(e.vertices)
    n = e.normal if in_omega(e.normal) else (-e.normal[0], -e.normal[1])
    p, q = n
    if p * q >= 0:
        return InfinityResult(MotiveExpr.zero(), 0, [], 0)
    N = p * A[0] + q * A[1]
    terms: list[Term] = []
    chi_area = Fraction(0)
    for fc in glob.faces:
        if fc.dim != 0:
            continue
        v = fc.vertices[0]
        if v == (0, 0):
            continue
        eps = eps_plus(fc, glob)
        if eps:
            terms.append(_atom_term(f"{eps}*[x^{v[0]} y^{v[1]}]", MonomialTorusClass(*v), eps))
    eps_g = eps_plus(e, glob)
    if eps_g:
        terms.append(_atom_term("[f over complement]", FaceClass(h, 1), eps_g))
        chi_area += 2 * eps_g * area_with_respect_to(e, h)
    if N != 0:
        fact = quasi_hom_factor(h, e)
        for br in fact.branches:
            t = _atom_term(f"-[x^{abs(N)} y^{br.nu}]", MonomialTorusClass(abs(N), br.nu), -1)
            t.weight = br.degree
            terms.append(t)
    motive = MotiveExpr.zero()
    for t in terms:
        motive = motive + t.motive * t.weight
    chi = euler_realization(motive)
    lam = int(chi_area)
    if -chi != chi_area:
        raise ConsistencyError(f"λ paths disagree on a segment: {-chi} vs {chi_area}")
    return InfinityResult(motive, chi, terms, -lam)


def nearby_cycles_at_infinity(f: LaurentPoly, a=0, max_depth: int = DEFAULT_MAX_DEPTH) -> InfinityResult:
    """S^∞_{f,a}, computed on f − a; ``chi_by_area`` is −λ from the area formula."""
    _require_bivariate_poly(f)
    h = f - _as_scalar(a)
    if h.is_monomial():
        return InfinityResult(MotiveExpr.zero(), 0, [], 0)
    glob = polygon_global(h)
    if glob.shape == "segment":
        return _segment_nearby(h, glob)
    T = polygon_tilde(h)
    terms: list[Term] = []
    lam_area = Fraction(0)
    for fc in T.faces:
        eps = eps_plus(fc, T)
        if not eps:
            continue
        if fc.dim == 0:
            v = fc.vertices[0]
            terms.append(_atom_term(f"{eps}*[x^{v[0]} y^{v[1]}]", MonomialTorusClass(*v), eps))
        else:
            terms.append(_atom_term(f"[face {fc.vertices}]", FaceClass(face_polynomial(h, fc), 1), eps))
            lam_area += 2 * eps * area_with_respect_to(fc, h)
    edges = [e for e in T.edges() if in_omega(e.normal)]
    for ei, e in enumerate(edges):
        p, q = e.normal
        fact = quasi_hom_factor(h, e)
        for bi, br in enumerate(fact.branches):
            mu = branch_root(br.factor)
            child = newton_map_infinity(h, p, q, mu)
            sub = local_motive(child, 1, max_depth=max_depth, _depth=1, _path=f"near/e{ei}b{bi}")
            terms.append(Term(f"S_(f_sigma) chart ({p},{q}) root of {br.factor}", sub.motive, sub.chi,
                              br.degree, sub.terms))
            lam_area -= br.degree * sub.chi
    motive = MotiveExpr.zero()
    for t in terms:
        motive = motive + t.motive * t.weight
    chi = euler_realization(motive)
    if -chi != lam_area:
        raise ConsistencyError(f"λ paths disagree: {-chi} vs {lam_area}")
    return InfinityResult(motive, chi, terms, int(-lam_area))


def lambda_invariant(f: LaurentPoly, a=0, max_depth: int = DEFAULT_MAX_DEPTH) -> int:
    """λ_a(f) = −χ of the fiber at 1 of S^∞_{f,a}; both computation paths must agree."""
    res = nearby_cycles_at_infinity(f, a, max_depth)
    lam = -res.chi
    if lam < 0:
        raise ConsistencyError(f"negative λ ({lam}) at value {a}")
    return lam


# ---------------------------------------------------------------------------
# Critical values and global Milnor number


def critical_values(f: LaurentPoly) -> set[AlgebraicValue]:
    """Conjugacy classes of critical values, by resultant elimination."""
    return set(critical_value_classes(f))


def _to_sympy(f: LaurentPoly):
    x, y = sympy.symbols("x y")
    expr = 0
    for (a, b), c in f.items():
        if not c.is_rational():
            raise NewtonPreconditionError("Milnor number needs rational coefficients")
        fr = c.as_fraction()
        expr += sympy.Rational(fr.numerator, fr.denominator) * x**a * y**b
    return expr, x, y


def global_milnor_number(f: LaurentPoly) -> int:
    """dim_Q Q[x, y]/(f_x, f_y), counted from a Gröbner basis."""
    expr, x, y = _to_sympy(f)
    G = sympy.groebner([sympy.diff(expr, x), sympy.diff(expr, y)], x, y, order="grevlex", domain="QQ")
    if list(G.exprs) == [1]:
        return 0
    leads = [sympy.Poly(g, x, y).monoms(order="grevlex")[0] for g in G.exprs]
    px = min((i for i, j in leads if j == 0), default=None)
    py = min((j for i, j in leads if i == 0), default=None)
    if px is None or py is None:
        raise NewtonPreconditionError("singularities are not isolated")
    return sum(1 for i in range(px) for j in range(py) if not any(i >= u and j >= v for u, v in leads))


# ---------------------------------------------------------------------------
# Bifurcation report


@dataclass
class CandidateReport:
    value: AlgebraicValue
    tags: tuple
    lam: int
    motive: MotiveExpr
    chi: int


@dataclass
class BifurcationReport:
    candidates: list
    chi_generic: int
    motive_at_infinity: InfinityResult
    b_newton: list
    b_top: list
    critical: list
    lambda_total: int
    mu_derived: int
    mu_groebner: int | None
    sentinel: tuple
    residues: dict

    def lam(self) -> dict:
        return {c.value: c.lam for c in self.candidates if c.lam}

    @property
    def consistent(self) -> bool:
        return all(v == 0 for v in self.residues.values())


def _sentinel_value(excluded, rng: random.Random) -> int:
    while True:
        c = rng.randint(-10**6, 10**6)
        if c not in excluded:
            return c


def bifurcation_report(f: LaurentPoly, extra_values=(), max_depth: int = DEFAULT_MAX_DEPTH,
                       seed: int = 0, milnor: int | None = None) -> BifurcationReport:
    """B^Newton, λ per candidate, B^top and the χ/μ/λ balance for a polynomial."""
    _require_bivariate_poly(f)
    cands = {v: set(tags) for v, tags in newton_bifurcation_candidates(f, max_depth).items()}
    for v in extra_values:
        val = v if isinstance(v, AlgebraicValue) else AlgebraicValue.of(v)
        cands.setdefault(val, set()).add("user")
    crit = sorted(critical_values(f), key=AlgebraicValue.sort_key)
    for v in crit:
        cands.setdefault(v, set()).add("critical")
    b_newton = sorted((v for v, t in cands.items() if t - {"user", "critical"}), key=AlgebraicValue.sort_key)
    reports = []
    for v in sorted(cands, key=AlgebraicValue.sort_key):
        res = nearby_cycles_at_infinity(f, v, max_depth)
        lam = -res.chi
        if lam < 0:
            raise ConsistencyError(f"negative λ ({lam}) at value {v}")
        reports.append(CandidateReport(v, tuple(sorted(cands[v])), lam, res.motive, res.chi))
    mfi = milnor_fiber_at_infinity(f, max_depth)
    lam_total = sum(r.value.degree * r.lam for r in reports)
    mu_derived = 1 - mfi.chi - lam_total
    b_top = sorted({r.value for r in reports if r.lam} | set(crit), key=AlgebraicValue.sort_key)

    rng = random.Random(seed)
    s = _sentinel_value(set(cands), rng)
    s_lam = lambda_invariant(f, s, max_depth)
    residues = {"sentinel_lambda": s_lam}
    mu_g = milnor
    if mu_g is None:
        try:
            mu_g = global_milnor_number(f)
        except NewtonPreconditionError:
            mu_g = None
    if mu_g is not None:
        residues["milnor_balance"] = mu_derived - mu_g
    if s_lam:
        raise ConsistencyError(f"generic sentinel value {s} has λ = {s_lam}")
    return BifurcationReport(reports, mfi.chi, mfi, b_newton, b_top, crit, lam_total, mu_derived, mu_g,
                             (s, s_lam), residues)
