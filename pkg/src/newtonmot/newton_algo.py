"""Newton algorithm: trees of Newton maps, base cases and nongeneric values.

A local tree starts from ``f`` in ``k[x, 1/x, y]``.  At every node the base
case detector runs first.  Otherwise the node branches over the 1-faces of
the local polygon and the distinct irreducible factors of each face
polynomial; every branch applies :func:`newton_map_local` at one root.

Conjugate roots are collapsed: a branch stands for all roots of an
irreducible factor of degree ``d`` and consumers weight it by ``d``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .algebra import (
    QQ_LEVEL,
    AlgebraicScalar,
    AlgebraicValue,
    FieldTower,
    UniPoly,
    _from_q,
    _is_zero,
    adjoin_root,
    face_discriminant,
    factor_irreducible,
    value_classes_of_poly,
)
from .laurent import LaurentPoly, infinity_bezout, newton_map_infinity, newton_map_local, _bezout_local
from .lattice import (
    Face,
    NewtonPolygon,
    in_omega,
    normal_kind,
    polygon_global,
    polygon_infinity,
    polygon_local,
    polygon_tilde,
    primitive,
    quasi_hom_factor,
)

DEFAULT_MAX_DEPTH = 64


class NewtonNonTermination(RuntimeError):
    """The depth guard fired before every leaf reached a base case."""


class NewtonPreconditionError(ValueError):
    """Input outside the ring the algorithm is defined on."""


# ---------------------------------------------------------------------------
# Base cases


@dataclass(frozen=True)
class Monomial:
    """f = x^-M y^m U(x, y) with U(0, 0) != 0."""

    M: int
    m: int


@dataclass(frozen=True)
class SmoothBranch:
    """f = x^-M (y - μ x^q - ...)^m U(x, y) with U(0, 0) != 0 and μ != 0."""

    M: int
    m: int
    q: int


BaseCase = Monomial | SmoothBranch


# Bivariate polynomials for the square-free test: lists of UniPoly in x
# indexed by the y-degree.


def _bi_from(F: LaurentPoly) -> list[UniPoly]:
    L = F.level
    out: dict[int, dict[int, object]] = {}
    for (a, b), v in F.terms.items():
        out.setdefault(b, {})[a] = v
    deg = max(out)
    zero = _from_q(L, 0)
    res = []
    for j in range(deg + 1):
        row = out.get(j, {})
        n = max(row) + 1 if row else 0
        res.append(UniPoly(L, [row.get(i, zero) for i in range(n)], "x"))
    return res


def _bi_trim(A):
    A = list(A)
    while A and A[-1].is_zero():
        A.pop()
    return A


def _bi_deg(A) -> int:
    return len(A) - 1


def _bi_sub(A, B):
    n = max(len(A), len(B))
    zero = UniPoly(QQ_LEVEL, [], "x")
    return _bi_trim([(A[i] if i < len(A) else zero) - (B[i] if i < len(B) else zero) for i in range(n)])


def _bi_dy(A):
    return _bi_trim([A[i] * i for i in range(1, len(A))])


def _bi_content(A) -> UniPoly:
    g = None
    for c in A:
        if c.is_zero():
            continue
        g = c.monic() if g is None else g.gcd(c)
    return g


def _bi_pp(A):
    A = _bi_trim(A)
    if not A:
        return A
    c = _bi_content(A)
    out = [a.exact_div(c) for a in A]
    return [a * out[-1].lc().inverse() for a in out]


def _bi_prem(A, B):
    R = list(A)
    dB = _bi_deg(B)
    lcB = B[-1]
    zero = UniPoly(QQ_LEVEL, [], "x")
    while R and _bi_deg(R) >= dB:
        k = _bi_deg(R) - dB
        lcR = R[-1]
        R = [r * lcB for r in R]
        for i, b in enumerate(B):
            R[i + k] = R[i + k] - lcR * b
        R = _bi_trim(R)
    if not R:
        return []
    return R if R else [zero]


def _bi_gcd(A, B):
    A, B = _bi_pp(A), _bi_pp(B)
    if not B:
        return A
    if not A:
        return B
    if _bi_deg(A) < _bi_deg(B):
        A, B = B, A
    while True:
        if _bi_deg(B) == 0:
            return [UniPoly(B[0].level, [_from_q(B[0].level, 1)], "x")]
        R = _bi_prem(A, B)
        if not R:
            return _bi_pp(B)
        A, B = B, _bi_pp(R)


def _bi_exact_div(A, B):
    A = list(A)
    dB = _bi_deg(B)
    Q = [None] * (max(_bi_deg(A) - dB + 1, 0))
    while A and _bi_deg(A) >= dB:
        k = _bi_deg(A) - dB
        c = A[-1].exact_div(B[-1])
        Q[k] = c
        for i, b in enumerate(B):
            A[i + k] = A[i + k] - c * b
        A = _bi_trim(A)
    if A:
        raise ArithmeticError("bivariate division is not exact")
    zero = UniPoly(QQ_LEVEL, [], "x")
    return [q if q is not None else zero for q in Q]


def bivariate_squarefree(F: LaurentPoly) -> list[tuple[LaurentPoly, int]]:
    """Yun's algorithm in K[x][y] for a polynomial primitive in y."""
    A = _bi_pp(_bi_from(F))
    out = []
    if _bi_deg(A) == 0:
        return out
    B = _bi_dy(A)
    C = _bi_gcd(A, B)
    W = _bi_exact_div(A, C)
    Y = _bi_exact_div(B, C)
    Z = _bi_sub(Y, _bi_dy(W))
    i = 1
    while _bi_deg(W) > 0:
        G = _bi_gcd(W, Z)
        if _bi_deg(G) > 0:
            out.append((_bi_to_laurent(G, F.level), i))
        W = _bi_exact_div(W, G)
        Y = _bi_exact_div(Z, G)
        Z = _bi_sub(Y, _bi_dy(W))
        i += 1
    return out


def _bi_to_laurent(A, level) -> LaurentPoly:
    terms = {}
    for j, c in enumerate(A):
        c = c.lift(level) if c.level is not level else c
        for i, v in enumerate(c.coeffs):
            terms[(i, j)] = v
    return LaurentPoly(terms, level)


def detect_base_case(f: LaurentPoly) -> BaseCase | None:
    """Recognize x^-M y^m U and x^-M (y - φ(x))^m U with U a local unit."""
    if f.is_zero():
        raise NewtonPreconditionError("zero polynomial")
    if f.min_b() < 0:
        raise NewtonPreconditionError("negative powers of y are not allowed")
    M = -f.min_a()
    F = f.shift(M, 0)
    m = F.min_b()
    if (0, m) in F.terms:
        return Monomial(M, m)
    if m > 0:
        return None
    h = min(b for a, b in F.terms if a == 0)
    q = min(a for a, b in F.terms if b == 0)
    if h == 1:
        return SmoothBranch(M, 1, q)
    # quick shape test on the polygon: single edge (0, h) -- (h q', 0)
    P = polygon_local(F)
    edges = P.edges()
    if len(edges) != 1 or edges[0].normal[0] != 1:
        return None
    fact = quasi_hom_factor(F, edges[0])
    if len(fact.branches) != 1 or fact.branches[0].degree != 1:
        return None
    qq = edges[0].normal[1]
    # strip the content in K[x] and run Yun in K[x][y]
    parts = bivariate_squarefree(F)
    through = [(G, i) for G, i in parts if G.coeff(0, 0).is_zero()]
    if len(through) != 1:
        return None
    G, i = through[0]
    if i != h or G.coeff(0, 1).is_zero():
        return None
    return SmoothBranch(M, h, qq)


# ---------------------------------------------------------------------------
# Trees


@dataclass
class Branch:
    face: Face
    factor: UniPoly
    nu: int
    degree: int
    mu: AlgebraicScalar
    transform: dict
    child: "TreeNode"


@dataclass
class TreeNode:
    poly: LaurentPoly
    polygon: NewtonPolygon | None
    base: BaseCase | None
    branches: list = field(default_factory=list)
    depth: int = 0

    def is_leaf(self) -> bool:
        return self.base is not None

    def walk(self):
        yield self
        for b in self.branches:
            yield from b.child.walk()

    def leaves(self):
        return [n for n in self.walk() if n.is_leaf()]

    def height(self) -> int:
        if not self.branches:
            return 0
        return 1 + max(b.child.height() for b in self.branches)

    def to_dict(self) -> dict:
        d: dict = {"poly": str(self.poly)}
        if self.base is not None:
            kind = type(self.base).__name__
            d["base_case"] = {"kind": kind, **{k: getattr(self.base, k) for k in self.base.__dataclass_fields__}}
        if self.branches:
            d["branches"] = [
                {
                    "face": [list(v) for v in b.face.vertices],
                    "normal": list(b.face.normal),
                    "factor": str(b.factor),
                    "multiplicity": b.nu,
                    "conjugates": b.degree,
                    "transform": b.transform,
                    "child": b.child.to_dict(),
                }
                for b in self.branches
            ]
        return d


@dataclass
class NewtonTree:
    root: TreeNode
    kind: str  # "local" or "infinity"

    def nodes(self):
        return list(self.root.walk())

    def leaves(self):
        return self.root.leaves()

    def to_dict(self) -> dict:
        return {"kind": self.kind, "root": self.root.to_dict()}


def branch_root(factor: UniPoly) -> AlgebraicScalar:
    """A root of a monic irreducible factor (new tower level when degree > 1)."""
    if factor.degree == 1:
        return -factor.coefficient(0)
    _, mu = adjoin_root(FieldTower(factor.level), factor, certified=True)
    return mu


def _local_branches(f: LaurentPoly, P: NewtonPolygon, depth: int, max_depth: int) -> list[Branch]:
    out = []
    for e in P.edges():
        p, q = e.normal
        fact = quasi_hom_factor(f, e)
        pp, qp = _bezout_local(p, q)
        for br in fact.branches:
            mu = branch_root(br.factor)
            child = newton_map_local(f, p, q, mu)
            node = _build_local(child, depth + 1, max_depth)
            out.append(Branch(e, br.factor, br.nu, br.degree, mu,
                              {"chart": "local", "p": p, "q": q, "p_prime": pp, "q_prime": qp}, node))
    return out


def _build_local(f: LaurentPoly, depth: int, max_depth: int) -> TreeNode:
    if depth > max_depth:
        raise NewtonNonTermination(f"Newton algorithm exceeded depth {max_depth}")
    base = detect_base_case(f)
    if base is not None:
        return TreeNode(f, None, base, [], depth)
    P = polygon_local(f)
    node = TreeNode(f, P, None, [], depth)
    node.branches = _local_branches(f, P, depth, max_depth)
    return node


def newton_algorithm_local(f: LaurentPoly, max_depth: int = DEFAULT_MAX_DEPTH) -> NewtonTree:
    """Local Newton tree of f in k[x, 1/x, y] at the origin."""
    if f.is_zero():
        raise NewtonPreconditionError("zero polynomial")
    if f.min_b() < 0:
        raise NewtonPreconditionError("negative powers of y are not allowed")
    return NewtonTree(_build_local(f, 0, max_depth), "local")


def infinity_faces(f: LaurentPoly) -> tuple[NewtonPolygon, list[tuple[Face, tuple]]]:
    """Faces of N̄(f) \\ N(f) driving the charts at infinity, with their normals.

    A segment hull contributes its edge once per normal in Ω.
    """
    glob = polygon_global(f)
    if glob.shape == "point":
        return glob, []
    if glob.shape == "segment":
        e = glob.edges()[0]
        n = e.normal
        normals = [n] + ([(-n[0], -n[1])] if in_omega((-n[0], -n[1])) else [])
        return glob, [(e, m) for m in normals]
    T = polygon_tilde(f)
    return T, [(e, e.normal) for e in T.edges() if in_omega(e.normal)]


def oriented_face(face: Face, normal: tuple) -> Face:
    """The same face seen with another outward normal (for segments)."""
    if normal == face.normal:
        return face
    N = normal[0] * face.vertices[0][0] + normal[1] * face.vertices[0][1]
    return Face(1, face.vertices, face.points, normal, N, normal_kind(normal), face.cone)


def infinity_branches(f: LaurentPoly, faces, max_depth: int = DEFAULT_MAX_DEPTH, depth: int = 0) -> list[Branch]:
    out = []
    for e, n in faces:
        fe = oriented_face(e, n)
        p, q = n
        fact = quasi_hom_factor(f, fe)
        for br in fact.branches:
            mu = branch_root(br.factor)
            child = newton_map_infinity(f, p, q, mu)
            node = _build_local(child, depth + 1, max_depth)
            tr = {"chart": "infinity", "p": p, "q": q}
            if (p, q) not in ((0, 1), (1, 0)):
                pp, qp = infinity_bezout(p, q)
                tr.update(p_prime=pp, q_prime=qp)
            out.append(Branch(fe, br.factor, br.nu, br.degree, mu, tr, node))
    return out


def newton_algorithm_infinity(f: LaurentPoly, max_depth: int = DEFAULT_MAX_DEPTH) -> NewtonTree:
    """Tree at infinity: charts for the faces of N̄(f) \\ N(f), then local trees."""
    _require_bivariate_poly(f)
    P, faces = infinity_faces(f)
    root = TreeNode(f, P, None, [], 0)
    root.branches = infinity_branches(f, faces, max_depth)
    return NewtonTree(root, "infinity")


def _require_bivariate_poly(f: LaurentPoly) -> None:
    if f.is_zero() or not f.is_polynomial():
        raise NewtonPreconditionError("need a nonzero polynomial in k[x, y]")
    if all(b == 0 for _, b in f.terms) or all(a == 0 for a, _ in f.terms):
        raise NewtonPreconditionError("polynomial must depend on both x and y")


# ---------------------------------------------------------------------------
# Dicritical faces and nongeneric values


@dataclass(frozen=True)
class DicriticalFace:
    face: Face
    P: UniPoly       # Σ c_k s^k along the face from the origin
    smooth: bool
    scope: str


def dicritical_faces(f: LaurentPoly, scope: str = "local") -> list[DicriticalFace]:
    """Faces through the origin: local (f not in k[x, y]) or at infinity."""
    if scope not in ("local", "infinity"):
        raise ValueError("scope must be 'local' or 'infinity'")
    S = f.support() | {(0, 0)}
    out = []
    if scope == "local":
        if f.min_a() >= 0:
            return []
        P = polygon_local(S)
        for e in P.edges():
            if e.N != 0:
                continue
            p, q = e.normal
            out.append(DicriticalFace(e, _along(f, (-q, p), e), p == 1, "local"))
        return out
    Pinf = polygon_infinity(f)
    for e in Pinf.edges():
        if not e.contains_origin:
            continue
        far = e.vertices[0] if e.vertices[1] == (0, 0) else e.vertices[1]
        d = primitive(far)
        p, q = e.normal
        kind = normal_kind(e.normal)
        smooth = (q == 1) if kind == "zero_inf" else (p == 1)
        out.append(DicriticalFace(e, _along(f, d, e), smooth, "infinity"))
    return out


def _along(f: LaurentPoly, d: tuple, e: Face) -> UniPoly:
    far = max(e.vertices, key=lambda v: abs(v[0]) + abs(v[1]))
    k_max = abs(far[0] // d[0]) if d[0] else abs(far[1] // d[1])
    zero = _from_q(f.level, 0)
    cs = [f.terms.get((k * d[0], k * d[1]), zero) for k in range(k_max + 1)]
    return UniPoly(f.level, cs, "s")


def nongeneric_values_tagged(f: LaurentPoly, scope: str = "local") -> dict[AlgebraicValue, set]:
    """Nongeneric values with the kind of dicritical face that produced them."""
    tag = "local-dicritical" if scope == "local" else "infinity-dicritical"
    out: dict = {}
    c00 = f.constant_term()
    for dface in dicritical_faces(f, scope):
        D = face_discriminant(dface.P)
        vals = value_classes_of_poly(D) if D.degree >= 1 else []
        if not dface.smooth:
            vals.append(AlgebraicValue.of(c00))
        for v in vals:
            out.setdefault(v, set()).add(tag)
    return out


def nongeneric_values(f: LaurentPoly, scope: str = "local") -> set[AlgebraicValue]:
    """Values c0 where a dicritical face polynomial P(s) - c0 degenerates.

    These are the roots of Disc_s(P(s) - c), together with f(0, 0) when the
    face is not smooth.
    """
    return set(nongeneric_values_tagged(f, scope))


def critical_value_classes(f: LaurentPoly) -> list[AlgebraicValue]:
    """Critical values of a polynomial with rational coefficients."""
    import sympy

    if f.level.depth != 0:
        raise NewtonPreconditionError("critical values need rational coefficients")
    X, Y = sympy.symbols("x y")
    expr = sum(sympy.Rational(c.numerator, c.denominator) * X**a * Y**b for (a, b), c in f.terms.items())
    fx, fy = sympy.diff(expr, X), sympy.diff(expr, Y)
    if fx == 0 or fy == 0:
        raise NewtonPreconditionError("polynomial must depend on both x and y")
    R = sympy.Poly(sympy.resultant(fx, fy, Y), X)
    Rx = sympy.resultant(fx, fy, X)
    if R.is_zero or sympy.expand(Rx) == 0:
        g = sympy.gcd(fx, fy)
        raise NewtonPreconditionError(f"critical locus is not finite: f_x and f_y share the factor {g}")
    values: set = set()
    Rq = UniPoly.from_ints([Fraction(int(c.p), int(c.q)) for c in reversed(R.all_coeffs())], "x")
    if Rq.degree < 1:
        return []
    dfx, dfy = f.diff_x(), f.diff_y()
    for phi, _ in factor_irreducible(Rq):
        x0 = branch_root(phi)
        A = _restrict_x(dfx, x0)
        B = _restrict_x(dfy, x0)
        G = A.gcd(B)
        if G.degree < 1:
            continue
        for psi, _ in factor_irreducible(G):
            y0 = branch_root(psi)
            if not (dfx.evaluate(x0, y0).is_zero() and dfy.evaluate(x0, y0).is_zero()):
                raise ArithmeticError("critical point check failed")  # pragma: no cover
            values.add(AlgebraicValue.of(f.evaluate(x0, y0)))
    return sorted(values, key=AlgebraicValue.sort_key)


def _restrict_x(g: LaurentPoly, x0: AlgebraicScalar) -> UniPoly:
    """g(x0, y) as a polynomial in y."""
    if g.is_zero():
        return UniPoly(x0.level, [], "y")
    deg = g.degree_y()
    cs = [AlgebraicScalar.coerce(0)] * (deg + 1)
    for (a, b), v in g.terms.items():
        cs[b] = cs[b] + AlgebraicScalar(g.level, v) * x0**a
    return UniPoly.from_scalars(cs, "y", x0.level)


def newton_bifurcation_candidates(f: LaurentPoly, max_depth: int = DEFAULT_MAX_DEPTH,
                                  tree: NewtonTree | None = None) -> dict[AlgebraicValue, set]:
    """B^Newton with provenance tags: discriminant, local-dicritical, infinity-dicritical."""
    _require_bivariate_poly(f)
    out: dict = {}

    def add(d):
        for v, tags in d.items():
            out.setdefault(v, set()).update(tags)

    add({v: {"discriminant"} for v in critical_value_classes(f)})
    add(nongeneric_values_tagged(f, "infinity"))
    T = tree or newton_algorithm_infinity(f, max_depth)
    for node in T.nodes():
        if node is not T.root:
            add(nongeneric_values_tagged(node.poly, "local"))
    return dict(sorted(out.items(), key=lambda kv: kv[0].sort_key()))


def newton_bifurcation_set(f: LaurentPoly, max_depth: int = DEFAULT_MAX_DEPTH,
                           tree: NewtonTree | None = None) -> list[AlgebraicValue]:
    """Critical values together with the nongeneric values of f and its transforms."""
    return list(newton_bifurcation_candidates(f, max_depth, tree))
