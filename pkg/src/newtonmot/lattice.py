"""Newton polygons, dual cones, face polynomials and their factorizations.

Conventions
-----------
Local polygon ``N(f)``: compact faces of ``conv(Supp f) + R_{>=0}^2``.  Each
1-face carries its primitive inward normal ``(p, q)`` with ``p, q >= 1`` and
the value ``N = m(p, q) = min_{Supp} (p a + q b)``.

Global polygon ``N̄(f)``: faces of ``conv(Supp f)`` with primitive outward
normals and ``N = max``.  Polygon at infinity ``N_∞(f)``: the faces of
``conv(Supp f ∪ {0})`` whose outward normal lies in
``Ω = Z^2 \\ (Z_{<=0})^2``.

Face polynomials are turned into univariate polynomials ``R(t)`` by walking
the lattice points of the face from the end with smallest ``a`` (smallest
``b`` for vertical faces).  The roots of ``R`` are the parameters ``mu`` of
the Newton maps in :mod:`newtonmot.laurent`.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

from .algebra import AlgebraicScalar, UniPoly, _from_q, factor_irreducible
from .laurent import LaurentPoly

Point = tuple[int, int]


class PolygonError(ValueError):
    """Raised for polygons of the zero polynomial or unsupported inputs."""


def primitive(v: Sequence[int]) -> tuple[int, int]:
    g = math.gcd(v[0], v[1])
    if g == 0:
        raise ValueError("zero vector has no primitive direction")
    return (v[0] // g, v[1] // g)


def in_omega(n: Sequence[int]) -> bool:
    """True when n lies outside the closed negative quadrant."""
    return n[0] > 0 or n[1] > 0


def _cross(o, a, b) -> int:
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


def _det(u, v) -> int:
    return u[0] * v[1] - u[1] * v[0]


def _dot(u, v) -> int:
    return u[0] * v[0] + u[1] * v[1]


def convex_hull(points: Iterable[Point]) -> list[Point]:
    """Counter-clockwise hull vertices without collinear points."""
    pts = sorted(set(points))
    if len(pts) <= 2:
        return pts
    lower: list = []
    for p in pts:
        while len(lower) >= 2 and _cross(lower[-2], lower[-1], p) <= 0:
            lower.pop()
        lower.append(p)
    upper: list = []
    for p in reversed(pts):
        while len(upper) >= 2 and _cross(upper[-2], upper[-1], p) <= 0:
            upper.pop()
        upper.append(p)
    hull = lower[:-1] + upper[:-1]
    if len(hull) == 2 and hull[0] == hull[1]:
        return hull[:1]
    return hull


def lattice_length(u: Point, v: Point) -> int:
    return math.gcd(v[0] - u[0], v[1] - u[1])


# ---------------------------------------------------------------------------
# Cones


@dataclass(frozen=True)
class Cone:
    """A rational polyhedral cone in the weight plane.

    kinds:
      ``open2D``        R>0 w1 + R>0 w2, generators in counter-clockwise order
      ``halfopen2D``    R>0 w1 + R>=0 w2 (the ray through w1 is included)
      ``ray``           R>0 w
      ``halfplane``     {u . w > 0}, generator u
      ``opposite_rays`` R>0 n union R>0 (-n)
      ``plane``         all of R^2
      ``empty``
    """

    kind: str
    generators: tuple = ()

    def inequalities(self) -> list[Point]:
        """Strict inequalities u . w > 0 cutting out an open 2D cone."""
        if self.kind == "open2D":
            w1, w2 = self.generators
            return [(-w1[1], w1[0]), (w2[1], -w2[0])]
        if self.kind == "halfplane":
            return [self.generators[0]]
        if self.kind == "plane":
            return []
        raise ValueError(f"cone of kind {self.kind} is not an open 2D cone")

    def contains(self, w: Point) -> bool:
        k = self.kind
        if k == "empty":
            return False
        if k == "plane":
            return True
        if k == "ray":
            g = self.generators[0]
            return _det(g, w) == 0 and _dot(g, w) > 0
        if k == "opposite_rays":
            g = self.generators[0]
            return _det(g, w) == 0 and w != (0, 0)
        if k == "halfopen2D":
            w1, w2 = self.generators
            on_w1 = _det(w1, w) == 0 and _dot(w1, w) > 0
            return on_w1 or Cone("open2D", (w1, w2)).contains(w)
        return all(_dot(u, w) > 0 for u in self.inequalities())

    def meets_omega(self) -> bool:
        k = self.kind
        if k == "empty":
            return False
        if k in ("plane", "halfplane", "opposite_rays"):
            return True
        return any(in_omega(g) for g in self.generators)


def dual_cone(face: "Face", polygon: "NewtonPolygon | None" = None) -> Cone:
    return face.cone


def cone_euler(cone: Cone) -> int:
    """Compactly supported Euler characteristic of the cone's lattice points."""
    k = cone.kind
    if k == "open2D":
        return 1
    if k == "ray":
        return -1
    if k in ("halfopen2D", "empty"):
        return 0
    if k == "halfplane":
        return 1
    if k == "opposite_rays":
        return -2
    raise ValueError(f"no Euler characteristic for cone kind {k}")


def _open_cone_rays(ineqs: Sequence[Point]) -> tuple[Point, Point] | None:
    """Extreme rays of a pointed open cone {u_i . w > 0}, or None if not 2D."""
    cands = set()
    for u in ineqs:
        for r in ((-u[1], u[0]), (u[1], -u[0])):
            if all(_dot(v, r) >= 0 for v in ineqs):
                cands.add(primitive(r))
    if len(cands) != 2:
        return None
    r1, r2 = sorted(cands)
    mid = (r1[0] + r2[0], r1[1] + r2[1])
    if mid == (0, 0) or not all(_dot(v, mid) > 0 for v in ineqs):
        return None
    return r1, r2


# ---------------------------------------------------------------------------
# Faces and polygons


@dataclass(frozen=True)
class Face:
    dim: int
    vertices: tuple
    points: tuple
    normal: tuple | None
    N: int | None
    kind: str
    cone: Cone

    @property
    def contains_origin(self) -> bool:
        return (0, 0) in self.vertices or (self.dim == 1 and self.N == 0 and _on_segment((0, 0), *self.vertices))

    @property
    def lattice_length(self) -> int:
        if self.dim == 0:
            return 0
        return lattice_length(*self.vertices)

    def label(self) -> str:
        if self.dim == 0:
            return f"vertex{self.vertices[0]}"
        return f"edge{self.vertices[0]}-{self.vertices[1]} normal {self.normal}"


def _on_segment(p, a, b) -> bool:
    return _cross(a, b, p) == 0 and min(a[0], b[0]) <= p[0] <= max(a[0], b[0]) and min(a[1], b[1]) <= p[1] <= max(a[1], b[1])


def normal_kind(n: Point) -> str:
    p, q = n
    if (p, q) == (0, 1):
        return "horizontal"
    if (p, q) == (1, 0):
        return "vertical"
    if p > 0 and q > 0:
        return "inf_inf"
    if p < 0 < q:
        return "zero_inf"
    if q < 0 < p:
        return "inf_zero"
    return "negative"


@dataclass(frozen=True)
class NewtonPolygon:
    """Faces of a Newton polygon with their dual cones.

    ``faces`` lists vertices and edges in boundary order.  ``shape`` is
    ``point``, ``segment`` or ``polygon`` for the hull the faces came from.
    """

    kind: str
    faces: tuple
    support: frozenset
    shape: str = "polygon"
    extra: dict = field(default_factory=dict, compare=False)

    def vertices(self) -> list[Face]:
        return [f for f in self.faces if f.dim == 0]

    def edges(self) -> list[Face]:
        return [f for f in self.faces if f.dim == 1]

    def vertex_points(self) -> list[Point]:
        return [f.vertices[0] for f in self.vertices()]

    def face_with_vertex(self, v: Point) -> Face:
        for f in self.vertices():
            if f.vertices[0] == v:
                return f
        raise KeyError(v)

    def is_segment(self) -> bool:
        return self.shape == "segment"


def _points_on(support, a, b) -> tuple:
    return tuple(sorted(p for p in support if _on_segment(p, a, b)))


def _support(f) -> frozenset:
    if isinstance(f, LaurentPoly):
        if f.is_zero():
            raise PolygonError("Newton polygon of the zero polynomial")
        return f.support()
    s = frozenset(f)
    if not s:
        raise PolygonError("empty support")
    return s


def polygon_local(f) -> NewtonPolygon:
    """Compact faces of conv(Supp f) + R_{>=0}^2, from v0 (top left) to vd."""
    S = _support(f)
    best: dict = {}
    for a, b in S:
        if a not in best or b < best[a]:
            best[a] = b
    pts = sorted(best.items())
    bmin = min(b for _, b in pts)
    chain: list = []
    for p in pts:
        while len(chain) >= 2 and _cross(chain[-2], chain[-1], p) <= 0:
            chain.pop()
        chain.append(p)
        if p[1] == bmin:
            break
    normals = []
    for u, v in zip(chain, chain[1:]):
        normals.append(primitive((u[1] - v[1], v[0] - u[0])))
    faces = []
    for i, v in enumerate(chain):
        left = (1, 0) if i == 0 else normals[i - 1]
        right = (0, 1) if i == len(chain) - 1 else normals[i]
        faces.append(Face(0, (v,), (v,), None, None, "local", Cone("open2D", (left, right))))
        if i < len(normals):
            n = normals[i]
            w = chain[i + 1]
            faces.append(Face(1, (v, w), _points_on(S, v, w), n, n[0] * v[0] + n[1] * v[1], "local", Cone("ray", (n,))))
    shape = "point" if len(chain) == 1 else "polygon"
    return NewtonPolygon("local", tuple(faces), S, shape, {"gamma_v": chain[0], "gamma_h": chain[-1]})


def _hull_faces(S, hull, kind) -> tuple[tuple, str]:
    if len(hull) == 1:
        v = hull[0]
        return (Face(0, (v,), (v,), None, None, "vertex", Cone("plane")),), "point"
    if len(hull) == 2:
        A, B = sorted(hull)
        if A[0] == B[0] and A[1] > B[1]:
            A, B = B, A
        n = primitive((B[1] - A[1], A[0] - B[0]))
        if not in_omega(n) or (in_omega((-n[0], -n[1])) and n[0] < 0):
            n = (-n[0], -n[1])
        faces = (
            Face(0, (A,), (A,), None, None, "vertex", Cone("halfplane", ((A[0] - B[0], A[1] - B[1]),))),
            Face(1, (A, B), _points_on(S, A, B), n, n[0] * A[0] + n[1] * A[1], normal_kind(n),
                 Cone("opposite_rays", (n, (-n[0], -n[1])))),
            Face(0, (B,), (B,), None, None, "vertex", Cone("halfplane", ((B[0] - A[0], B[1] - A[1]),))),
        )
        return faces, "segment"
    m = len(hull)
    normals = [primitive((hull[(i + 1) % m][1] - hull[i][1], hull[i][0] - hull[(i + 1) % m][0])) for i in range(m)]
    faces = []
    for i in range(m):
        v, w = hull[i], hull[(i + 1) % m]
        faces.append(Face(0, (v,), (v,), None, None, "vertex", Cone("open2D", (normals[i - 1], normals[i]))))
        n = normals[i]
        faces.append(Face(1, (v, w), _points_on(S, v, w), n, n[0] * v[0] + n[1] * v[1], normal_kind(n), Cone("ray", (n,))))
    return tuple(faces), "polygon"


def polygon_global(f) -> NewtonPolygon:
    """All faces of conv(Supp f), counter-clockwise from the lowest-left vertex."""
    S = _support(f)
    faces, shape = _hull_faces(S, convex_hull(S), "global")
    return NewtonPolygon("global", faces, S, shape)


def polygon_infinity(f) -> NewtonPolygon:
    """Faces of conv(Supp f ∪ {0}) with outward normal in Ω, from (0, b0) to (a0, 0)."""
    S = _support(f)
    S0 = frozenset(S | {(0, 0)})
    hull = convex_hull(S0)
    all_faces, shape = _hull_faces(S0, hull, "infinity")
    if shape == "point":
        return NewtonPolygon("infinity", (), S, "point")
    if shape == "segment":
        keep = list(all_faces)
    else:
        keep = []
        edges = [fc for fc in all_faces if fc.dim == 1 and in_omega(fc.normal)]
        verts = set()
        for e in edges:
            verts.update(e.vertices)
        for fc in all_faces:
            if (fc.dim == 1 and in_omega(fc.normal)) or (fc.dim == 0 and fc.vertices[0] in verts):
                keep.append(fc)
        # rotate so that the chain is contiguous, then order from (0, b0) down to (a0, 0)
        idx = [i for i, fc in enumerate(all_faces) if fc in keep]
        n = len(all_faces)
        gaps = [i for i in idx if (i - 1) % n not in idx]
        start = gaps[0] if gaps else next(i for i, fc in enumerate(all_faces) if fc.vertices == ((0, 0),))
        keep = [all_faces[(start + k) % n] for k in range(len(idx))]
        keep.reverse()
    out = []
    for fc in keep:
        if fc.dim == 0:
            v = fc.vertices[0]
            k = "origin" if v == (0, 0) else ("axis" if v[0] == 0 or v[1] == 0 else "vertex")
            out.append(Face(0, fc.vertices, fc.points, None, None, k, fc.cone))
        else:
            out.append(fc)
    b0 = max((b for a, b in S if a == 0), default=0)
    a0 = max((a for a, b in S if b == 0), default=0)
    return NewtonPolygon("infinity", tuple(out), S, shape, {"a0": a0, "b0": b0})


def polygon_infinity_interior(pinf: NewtonPolygon) -> list[Face]:
    """Faces of N_∞ that avoid the origin."""
    return [fc for fc in pinf.faces if not fc.contains_origin]


def polygon_tilde(f) -> NewtonPolygon:
    """Faces of N̄(f) which are not compact local faces and meet Ω, plus γ_h and γ_v."""
    S = _support(f)
    glob = polygon_global(S)
    loc = polygon_local(S)
    gh, gv = loc.extra["gamma_h"], loc.extra["gamma_v"]
    local_vertices = set(loc.vertex_points())
    local_edges = {fc.vertices for fc in loc.edges()} | {tuple(reversed(fc.vertices)) for fc in loc.edges()}
    out = []
    for fc in glob.faces:
        if fc.dim == 0:
            v = fc.vertices[0]
            if v in (gh, gv):
                out.append(fc)
            elif v not in local_vertices and fc.cone.meets_omega():
                out.append(fc)
        else:
            if fc.vertices in local_edges and not in_omega(fc.normal):
                continue
            if fc.cone.meets_omega():
                out.append(fc)
    return NewtonPolygon("tilde", tuple(out), S, glob.shape, {"gamma_h": gh, "gamma_v": gv, "global": glob})


# ---------------------------------------------------------------------------
# Values on polygons


def m_value(polygon: NewtonPolygon, p: int, q: int) -> int:
    """Support function: min for the local polygon, max otherwise."""
    S = polygon.support
    if polygon.kind == "local":
        if p < 0 or q < 0:
            raise ValueError("local m-value needs non-negative weights")
        return min(p * a + q * b for a, b in S)
    if polygon.kind == "infinity":
        S = S | {(0, 0)}
    return max(p * a + q * b for a, b in S)


def face_polynomial(f: LaurentPoly, face: Face) -> LaurentPoly:
    return f.restrict(face.points)


# ---------------------------------------------------------------------------
# Quasi-homogeneous factorization


@dataclass(frozen=True)
class FaceBranch:
    factor: UniPoly  # monic irreducible over the coefficient field
    nu: int          # multiplicity
    degree: int      # degree of the factor (number of conjugate roots)


@dataclass(frozen=True)
class QuasiHomFactorization:
    """f_γ = c · Π φ_i(t)^ν_i transported along the face."""

    start: Point
    step: Point
    length: int
    reversed: bool
    R: UniPoly
    lead: AlgebraicScalar
    branches: tuple
    level: object = field(compare=False)

    @property
    def r(self) -> int:
        return sum(b.degree for b in self.branches)

    def point(self, k: int) -> Point:
        return (self.start[0] + k * self.step[0], self.start[1] + k * self.step[1])

    def reconstruct(self) -> LaurentPoly:
        prod = UniPoly(self.R.level, [_from_q(self.R.level, 1)], "t")
        for b in self.branches:
            prod = prod * b.factor**b.nu
        prod = prod * self.lead
        cs = prod.lift(self.level).coeffs if prod.level is not self.level else prod.coeffs
        L = self.length
        terms = {}
        for i, c in enumerate(cs):
            k = L - i if self.reversed else i
            terms[self.point(k)] = c
        return LaurentPoly(terms, self.level)


def face_walk(face: Face) -> tuple[Point, Point, bool]:
    """(start, step, reversed) for turning a 1-face into a univariate polynomial."""
    if face.dim != 1:
        raise ValueError("need a 1-dimensional face")
    A, B = face.vertices
    p, q = face.normal
    if A[0] == B[0]:
        start = min(A, B, key=lambda v: v[1])
        step = (0, 1)
    else:
        start = min(A, B)
        d = (q, -p) if q > 0 else (-q, p)
        step = d
    rev = face.kind == "local" or (face.kind != "local" and p < 0 < q)
    return start, step, rev


def face_univariate(f: LaurentPoly, face: Face) -> tuple[UniPoly, Point, Point, bool]:
    start, step, rev = face_walk(face)
    L = face.lattice_length
    L0 = f.level
    cs = [f.terms.get((start[0] + k * step[0], start[1] + k * step[1]), _from_q(L0, 0)) for k in range(L + 1)]
    if rev:
        cs = list(reversed(cs))
    return UniPoly(L0, cs, "t"), start, step, rev


def quasi_hom_factor(f: LaurentPoly, face: Face) -> QuasiHomFactorization:
    """Factor the face polynomial of ``f`` on a 1-face into irreducible branches."""
    R, start, step, rev = face_univariate(f, face)
    if R.degree != face.lattice_length or R.coefficient(0).is_zero():
        raise PolygonError("face endpoints must carry nonzero coefficients")
    branches = tuple(FaceBranch(phi, nu, phi.degree) for phi, nu in factor_irreducible(R))
    return QuasiHomFactorization(start, step, face.lattice_length, rev, R, R.lc(), branches, f.level)


def branch_roots_count(fact: QuasiHomFactorization) -> int:
    return fact.r


def area_with_respect_to(face: Face, f: LaurentPoly | None = None, r: int | None = None) -> Fraction:
    """r · S / (s + 1) with S the area of the triangle (0, v, w) and s + 1 the lattice length."""
    if face.dim != 1:
        raise ValueError("area is only defined for 1-faces")
    if r is None:
        if f is None:
            raise ValueError("need f or r")
        r = quasi_hom_factor(f, face).r
    v, w = face.vertices
    S = Fraction(abs(_det(v, w)), 2)
    return r * S / lattice_length(v, w)


def face_euler(f: LaurentPoly, face: Face) -> int:
    """χ_c of (f_γ = 1) in the torus, computed as −r|N|."""
    return -quasi_hom_factor(f, face).r * abs(face.N)


# ---------------------------------------------------------------------------
# Sign data


def eps_classification(f: LaurentPoly, epsilon: int, polygon: NewtonPolygon | None = None) -> list[Face]:
    """Faces of the local polygon lying in N(f)^ε (ε = +1 or -1)."""
    if epsilon not in (1, -1):
        raise ValueError("epsilon must be +1 or -1")
    P = polygon or polygon_local(f)
    gh = P.extra["gamma_h"]
    out = []
    for fc in P.faces:
        if fc.dim == 1:
            if epsilon * fc.N > 0:
                out.append(fc)
            continue
        v = fc.vertices[0]
        w1, w2 = fc.cone.generators
        if v == gh:
            a, b = v
            if b == 0:
                ok = epsilon * a > 0
            else:
                omega = w1 if w2 == (0, 1) else w2
                ok = epsilon * _dot(v, omega) > 0
        else:
            ok = epsilon * _dot(v, w1) > 0 and epsilon * _dot(v, w2) > 0
        if ok:
            out.append(fc)
    return out


_QUADRANTS = (((1, 0), (0, -1)), ((-1, 0), (0, 1)))


def eps_plus(face: Face, polygon: NewtonPolygon) -> int:
    """Sign ε_γ in the nearby cycles at infinity of a polynomial."""
    if face.dim == 1:
        p, q = face.normal
        if polygon.shape == "segment":
            if p * q < 0:
                return 1 if face.N != 0 else 0
            return 1 if face.N < 0 and in_omega(face.normal) else 0
        return 1 if face.N < 0 and in_omega(face.normal) else 0
    g = face.vertices[0]
    if g == (0, 0):
        return 0
    base = face.cone.inequalities() + [(-g[0], -g[1])]
    count = 0
    for quad in _QUADRANTS:
        rays = _open_cone_rays(base + list(quad))
        if rays and all(_dot(g, r) < 0 for r in rays):
            count += 1
    return -count


def eps_minus(face: Face, polygon: NewtonPolygon) -> int:
    """Sign ε_γ in the motivic Milnor fiber at infinity (polygon at infinity)."""
    if face.contains_origin:
        return 0
    if face.dim == 0 and face.kind == "axis":
        return 1
    if face.dim == 0:
        v = face.vertices[0]
        for e in polygon.edges():
            if e.contains_origin and v in e.vertices:
                return 0
        return -1
    return 1
