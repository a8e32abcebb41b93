"""Symbolic motives, their Euler realization and rational series on cones.

A :class:`MotiveExpr` is a finite sum ``Σ c_i(L) · atom_i`` where each
coefficient is an integer Laurent polynomial in the Lefschetz class ``L``
(stored as ``{exponent: integer}``).  Only the Euler characteristic of the
fiber over 1 is realized, so the group actions are not tracked.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Mapping

from .lattice import Cone, Face, lattice_length, normal_kind, primitive, quasi_hom_factor
from .laurent import LaurentPoly


class ConsistencyError(ArithmeticError):
    """Two independent computations of the same quantity disagree."""


class DivergentLimitError(ValueError):
    """A rational series has no limit as T goes to infinity."""


# ---------------------------------------------------------------------------
# Atoms


@dataclass(frozen=True)
class Lefschetz:
    power: int

    def key(self):
        return (0, self.power)

    def __str__(self):
        return "L" if self.power == 1 else ("1" if self.power == 0 else f"L^{self.power}")


@dataclass(frozen=True)
class PowerClass:
    """[x^N : G_m -> G_m]."""

    N: int

    def __post_init__(self):
        if self.N == 0:
            raise ValueError("PowerClass needs N != 0")

    def key(self):
        return (1, self.N)

    def __str__(self):
        return f"[x^{self.N}: Gm -> Gm]"


@dataclass(frozen=True)
class MonomialTorusClass:
    """[x^a y^b : G_m^2 -> G_m]."""

    a: int
    b: int

    def __post_init__(self):
        if self.a == 0 and self.b == 0:
            raise ValueError("MonomialTorusClass needs (a, b) != (0, 0)")

    def key(self):
        return (2, self.a, self.b)

    def __str__(self):
        return f"[{_mono_str(self.a, self.b)}: Gm^2 -> Gm]"


@dataclass(frozen=True)
class FaceClass:
    """[f_γ^sign : G_m^2 minus (f_γ = 0) -> G_m] for a quasi-homogeneous f_γ."""

    poly: LaurentPoly
    sign: int = 1

    def __post_init__(self):
        if self.sign not in (1, -1):
            raise ValueError("sign must be +1 or -1")
        if len(self.poly.terms) < 2:
            raise ValueError("a face class needs a face polynomial with a root")

    def key(self):
        return (3, self.sign, self.poly.canonical())

    def __hash__(self):
        return hash(self.key())

    def __eq__(self, other):
        return isinstance(other, FaceClass) and self.sign == other.sign and self.poly == other.poly

    def __str__(self):
        inner = f"({self.poly})" if self.sign == 1 else f"1/({self.poly})"
        return f"[{inner}: Gm^2 \\ V -> Gm]"


@dataclass(frozen=True)
class CurveTimesGm:
    """[x^-M ξ^m : ((y = μ x^q) ∩ G_m^2) × G_m -> G_m]."""

    M: int
    m: int

    def __post_init__(self):
        if self.m < 1:
            raise ValueError("CurveTimesGm needs m >= 1")

    def key(self):
        return (4, self.M, self.m)

    def __str__(self):
        return f"[x^{-self.M}*xi^{self.m}: C x Gm -> Gm]"


MotiveAtom = Lefschetz | PowerClass | MonomialTorusClass | FaceClass | CurveTimesGm


def _mono_str(a: int, b: int) -> str:
    parts = []
    for v, e in (("x", a), ("y", b)):
        if e == 1:
            parts.append(v)
        elif e:
            parts.append(f"{v}^{e}" if e > 0 else f"{v}^({e})")
    return "*".join(parts) or "1"


# ---------------------------------------------------------------------------
# Face geometry straight from the face polynomial


def face_of_poly(poly: LaurentPoly) -> Face:
    """Rebuild the 1-face spanned by the support of a quasi-homogeneous polynomial."""
    pts = sorted(poly.terms)
    A, B = pts[0], pts[-1]
    d = primitive((B[0] - A[0], B[1] - A[1]))
    for P in pts:
        if (P[0] - A[0]) * d[1] - (P[1] - A[1]) * d[0] != 0:
            raise ValueError("face polynomial is not quasi-homogeneous")
    n = (d[1], -d[0])
    if not (n[0] > 0 or n[1] > 0):
        n = (-n[0], -n[1])
    N = n[0] * A[0] + n[1] * A[1]
    return Face(1, (A, B), tuple(pts), n, N, normal_kind(n), Cone("ray", (n,)))


@lru_cache(maxsize=4096)
def _face_data(poly: LaurentPoly) -> tuple[int, int, Fraction]:
    face = face_of_poly(poly)
    fact = quasi_hom_factor(poly, face)
    v, w = face.vertices
    S = Fraction(abs(v[0] * w[1] - v[1] * w[0]), 2)
    return fact.r, abs(face.N), S / lattice_length(v, w)


def face_class_euler(atom: FaceClass) -> int:
    """χ_c of the fiber over 1, by the −r|N| path and by the area path."""
    r, N, area_unit = _face_data(atom.poly)
    by_degree = -r * N
    by_area = -2 * r * area_unit
    if by_area != by_degree:
        raise ConsistencyError(f"face χ paths disagree for {atom.poly}: {by_degree} vs {by_area}")
    return by_degree


def atom_euler(atom) -> int:
    if isinstance(atom, Lefschetz):
        return 1
    if isinstance(atom, PowerClass):
        return abs(atom.N)
    if isinstance(atom, (MonomialTorusClass, CurveTimesGm)):
        return 0
    if isinstance(atom, FaceClass):
        return face_class_euler(atom)
    raise TypeError(f"unknown atom {atom!r}")


# ---------------------------------------------------------------------------
# Expressions


def _lc_add(a: Mapping, b: Mapping, sign: int = 1) -> dict:
    out = dict(a)
    for k, v in b.items():
        out[k] = out.get(k, 0) + sign * v
        if out[k] == 0:
            del out[k]
    return out


def _lc_str(c: Mapping) -> str:
    parts = []
    for k in sorted(c, reverse=True):
        v = c[k]
        mono = "" if k == 0 else ("L" if k == 1 else f"L^{k}" if k > 0 else f"L^({k})")
        if not mono:
            parts.append(str(v))
        elif v == 1:
            parts.append(mono)
        elif v == -1:
            parts.append("-" + mono)
        else:
            parts.append(f"{v}*{mono}")
    return " + ".join(parts).replace("+ -", "- ")


class MotiveExpr:
    """Finite sum of atoms with integer Laurent polynomials in L as coefficients."""

    __slots__ = ("_terms",)

    def __init__(self, terms: Mapping | None = None):
        clean = {}
        for atom, c in (terms or {}).items():
            if isinstance(c, int):
                c = {0: c} if c else {}
            c = {k: v for k, v in c.items() if v}
            if c:
                clean[atom] = c
        self._terms = clean

    @classmethod
    def atom(cls, atom, coeff: int = 1) -> "MotiveExpr":
        return cls({atom: coeff})

    @classmethod
    def zero(cls) -> "MotiveExpr":
        return cls()

    def terms(self) -> list[tuple[object, dict]]:
        return sorted(self._terms.items(), key=lambda kv: kv[0].key())

    def atoms(self) -> list:
        return [a for a, _ in self.terms()]

    def coefficient(self, atom) -> dict:
        return dict(self._terms.get(atom, {}))

    def is_zero(self) -> bool:
        return not self._terms

    def __add__(self, other: "MotiveExpr") -> "MotiveExpr":
        out = dict(self._terms)
        for a, c in other._terms.items():
            out[a] = _lc_add(out.get(a, {}), c)
        return MotiveExpr(out)

    def __sub__(self, other: "MotiveExpr") -> "MotiveExpr":
        return self + (-other)

    def __neg__(self) -> "MotiveExpr":
        return MotiveExpr({a: {k: -v for k, v in c.items()} for a, c in self._terms.items()})

    def __mul__(self, n: int) -> "MotiveExpr":
        if not isinstance(n, int):
            return NotImplemented
        return MotiveExpr({a: {k: n * v for k, v in c.items()} for a, c in self._terms.items()})

    __rmul__ = __mul__

    def times_L(self, k: int) -> "MotiveExpr":
        return MotiveExpr({a: {e + k: v for e, v in c.items()} for a, c in self._terms.items()})

    def __eq__(self, other) -> bool:
        if not isinstance(other, MotiveExpr):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self):
        return hash(tuple((a.key(), tuple(sorted(c.items()))) for a, c in self.terms()))

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        parts = []
        for atom, c in self.terms():
            cs = _lc_str(c)
            if cs == "1":
                parts.append(str(atom))
            elif cs == "-1":
                parts.append("-" + str(atom))
            elif " " in cs:
                parts.append(f"({cs})*{atom}")
            else:
                parts.append(f"{cs}*{atom}")
        return " + ".join(parts).replace("+ -", "- ")

    __repr__ = __str__


def euler_realization(e: MotiveExpr) -> int:
    """χ_c of the fiber over 1 (L realizes to 1)."""
    return sum(sum(c.values()) * atom_euler(a) for a, c in e._terms.items())


def _smooth_power_shape(poly: LaurentPoly):
    """If poly = c x^A (y - μ x^q)^m, return (A, m, q); else None."""
    try:
        face = face_of_poly(poly)
    except ValueError:
        return None
    (A0, B0), (A1, B1) = face.vertices
    top, bottom = ((A0, B0), (A1, B1)) if B0 > B1 else ((A1, B1), (A0, B0))
    if bottom[1] != 0 or top[1] < 1:
        return None
    m = top[1]
    if (bottom[0] - top[0]) % m or bottom[0] <= top[0]:
        return None
    q = (bottom[0] - top[0]) // m
    if face.lattice_length != m:
        return None
    local = Face(1, (top, bottom), face.points, (1, q), top[0] + q * m, "local", face.cone)
    fact = quasi_hom_factor(poly, local)
    if len(fact.branches) != 1 or fact.branches[0].degree != 1 or fact.branches[0].nu != m:
        return None
    return top[0], m, q


def normalize(e: MotiveExpr) -> MotiveExpr:
    """Apply the Grothendieck-ring rewrites and cancel matched pairs.

    * L^k atoms fold into the coefficient of L^0.
    * [x^-M ξ^m : C × G_m] becomes [x^-M z^m : G_m^2].
    * [x^(A + m q)] + [x^A (y - μ x^q)^m over the complement] becomes
      [x^A y^m : G_m^2] when both carry the same coefficient.
    """
    terms: dict = {}

    def add(atom, c):
        terms[atom] = _lc_add(terms.get(atom, {}), c)
        if not terms[atom]:
            del terms[atom]

    for atom, c in e._terms.items():
        if isinstance(atom, Lefschetz):
            add(Lefschetz(0), {k + atom.power: v for k, v in c.items()})
        elif isinstance(atom, CurveTimesGm):
            add(MonomialTorusClass(-atom.M, atom.m), c)
        else:
            add(atom, c)
    for atom in sorted([a for a in terms if isinstance(a, FaceClass) and a.sign == 1], key=lambda a: a.key()):
        shape = _smooth_power_shape(atom.poly)
        if shape is None:
            continue
        A, m, q = shape
        N = A + m * q
        if N == 0:
            continue
        pc = PowerClass(N)
        c = terms.get(atom)
        if c is None or terms.get(pc) != c:
            continue
        del terms[atom]
        del terms[pc]
        add(MonomialTorusClass(A, m), c)
    return MotiveExpr(terms)


# ---------------------------------------------------------------------------
# Rational series


@dataclass(frozen=True)
class SeriesTerm:
    """coef · L^e T^i / Π (1 - L^{e_j} T^{i_j})."""

    coef: int
    e: int
    i: int
    denominators: tuple

    def __post_init__(self):
        if any(ij < 1 for _, ij in self.denominators):
            raise ValueError("denominator T-exponents must be >= 1")
        if self.i < 0:
            raise ValueError("numerator T-exponent must be natural")


@dataclass(frozen=True)
class RationalSeries:
    terms: tuple = ()

    def __add__(self, other: "RationalSeries") -> "RationalSeries":
        return RationalSeries(self.terms + other.terms)

    def expand(self, order: int) -> dict:
        """Coefficients of T^n for n <= order, as {n: {L-exponent: int}}."""
        out: dict = {}
        for t in self.terms:
            series = {(t.e, t.i): t.coef}
            for ej, ij in t.denominators:
                new: dict = {}
                for (e, i), c in series.items():
                    k = 0
                    while i + k * ij <= order:
                        key = (e + k * ej, i + k * ij)
                        new[key] = new.get(key, 0) + c
                        k += 1
                series = new
            for (e, i), c in series.items():
                if i <= order:
                    d = out.setdefault(i, {})
                    d[e] = d.get(e, 0) + c
        return {n: {k: v for k, v in d.items() if v} for n, d in sorted(out.items())}

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for t in self.terms:
            den = "".join(f"(1 - L^{ej}*T^{ij})" for ej, ij in t.denominators)
            parts.append(f"{t.coef}*L^{t.e}*T^{t.i}" + (f"/{den}" if den else ""))
        return " + ".join(parts)


def limit_T_infinity(s: RationalSeries) -> dict:
    """Degree-wise limit: each term tends to 0 or to (−1)^{|J|} L^{e − Σ e_j}."""
    out: dict = {}
    for t in s.terms:
        dsum = sum(ij for _, ij in t.denominators)
        if t.i < dsum:
            continue
        if t.i > dsum:
            raise DivergentLimitError("numerator degree exceeds denominator degree")
        k = t.e - sum(ej for ej, _ in t.denominators)
        out[k] = out.get(k, 0) + t.coef * (-1) ** len(t.denominators)
    return {k: v for k, v in out.items() if v}


def _lin(form, w) -> int:
    return form[0] * w[0] + form[1] * w[1]


def parallelepiped_points(w1, w2, include_w1_ray: bool = False) -> list[tuple[int, int]]:
    """Lattice points a w1 + b w2 with a, b in (0, 1] (b in [0, 1) if include_w1_ray)."""
    det = w1[0] * w2[1] - w1[1] * w2[0]
    if det == 0:
        raise ValueError("generators must be independent")
    xs = [0, w1[0], w2[0], w1[0] + w2[0]]
    ys = [0, w1[1], w2[1], w1[1] + w2[1]]
    out = []
    for X in range(min(xs), max(xs) + 1):
        for Y in range(min(ys), max(ys) + 1):
            a = Fraction(X * w2[1] - Y * w2[0], det)
            b = Fraction(w1[0] * Y - w1[1] * X, det)
            ok_b = (0 <= b < 1) if include_w1_ray else (0 < b <= 1)
            if 0 < a <= 1 and ok_b:
                out.append((X, Y))
    return out


def cone_series(phi, eta, C: Cone) -> RationalSeries:
    """Σ_{k in C ∩ Z^2} L^{−η(k)} T^{φ(k)} in closed form."""
    if C.kind == "empty":
        return RationalSeries()
    if C.kind not in ("ray", "open2D", "halfopen2D"):
        raise ValueError(f"unsupported cone kind {C.kind}")
    for w in C.generators:
        if _lin(phi, w) < 1 or _lin(eta, w) < 0:
            raise ValueError("need φ >= 1 and η >= 0 on the generators")
    if C.kind == "ray":
        w = primitive(C.generators[0])
        return RationalSeries((SeriesTerm(1, -_lin(eta, w), _lin(phi, w), ((-_lin(eta, w), _lin(phi, w)),)),))
    w1, w2 = C.generators
    den = ((-_lin(eta, w1), _lin(phi, w1)), (-_lin(eta, w2), _lin(phi, w2)))
    pts = parallelepiped_points(w1, w2, include_w1_ray=(C.kind == "halfopen2D"))
    return RationalSeries(tuple(SeriesTerm(1, -_lin(eta, k), _lin(phi, k), den) for k in pts))
