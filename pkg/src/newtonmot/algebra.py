"""Exact arithmetic: towers of simple algebraic extensions of Q.

A tower is a chain of levels. Level 0 is Q (``fractions.Fraction``).
Level ``k`` is ``K_{k-1}[t] / (m_k(t))`` for a monic irreducible ``m_k``.
Elements of level ``k`` are stored as tuples of length ``deg m_k`` whose
entries are elements of level ``k - 1`` (low to high powers of the
generator).  These "raw" values are what the arithmetic kernels below act
on; ``AlgebraicScalar`` and ``UniPoly`` wrap them with a level.

Towers branch: each call to :func:`adjoin_root` creates a new level whose
parent is the current top.  Two scalars can be combined when one level is
an ancestor of the other.  Values from sibling branches never meet.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence, Union

import sympy

Raw = Union[Fraction, tuple]
Number = Union[int, Fraction]


class TowerMismatchError(ValueError):
    """Raised when values from unrelated tower branches are combined."""


class ReducibleMinPolyError(ValueError):
    """Raised when a root of a reducible polynomial is adjoined."""


# ---------------------------------------------------------------------------
# Levels and raw kernels


class _Level:
    __slots__ = ("parent", "minpoly", "degree", "depth", "name", "_ancestors")

    def __init__(self, parent: "_Level | None", minpoly: tuple, name: str):
        self.parent = parent
        self.minpoly = minpoly  # raw coefficients at parent level, monic
        self.degree = len(minpoly) - 1 if parent is not None else 1
        self.depth = 0 if parent is None else parent.depth + 1
        self.name = name
        anc = [self]
        if parent is not None:
            anc.extend(parent._ancestors)
        self._ancestors = tuple(anc)

    def is_ancestor_of(self, other: "_Level") -> bool:
        return self in other._ancestors

    def __repr__(self) -> str:
        return f"<level {self.name} depth={self.depth}>"


QQ_LEVEL = _Level(None, (), "QQ")
_F0 = Fraction(0)
_F1 = Fraction(1)


def _zero(L: _Level) -> Raw:
    if L.depth == 0:
        return _F0
    return (_zero(L.parent),) * L.degree


def _from_q(L: _Level, q: Number) -> Raw:
    if L.depth == 0:
        return Fraction(q)
    return (_from_q(L.parent, q),) + (_zero(L.parent),) * (L.degree - 1)


def _is_zero(L: _Level, a: Raw) -> bool:
    if L.depth == 0:
        return a == 0
    P = L.parent
    return all(_is_zero(P, c) for c in a)


def _add(L: _Level, a: Raw, b: Raw) -> Raw:
    if L.depth == 0:
        return a + b
    P = L.parent
    return tuple(_add(P, x, y) for x, y in zip(a, b))


def _sub(L: _Level, a: Raw, b: Raw) -> Raw:
    if L.depth == 0:
        return a - b
    P = L.parent
    return tuple(_sub(P, x, y) for x, y in zip(a, b))


def _neg(L: _Level, a: Raw) -> Raw:
    if L.depth == 0:
        return -a
    P = L.parent
    return tuple(_neg(P, x) for x in a)


def _scale_q(L: _Level, a: Raw, q: Fraction) -> Raw:
    if L.depth == 0:
        return a * q
    P = L.parent
    return tuple(_scale_q(P, x, q) for x in a)


def _mul(L: _Level, a: Raw, b: Raw) -> Raw:
    if L.depth == 0:
        return a * b
    P = L.parent
    n = L.degree
    z = _zero(P)
    prod = [z] * (2 * n - 1)
    for i, x in enumerate(a):
        if _is_zero(P, x):
            continue
        for j, y in enumerate(b):
            if _is_zero(P, y):
                continue
            prod[i + j] = _add(P, prod[i + j], _mul(P, x, y))
    m = L.minpoly
    for k in range(2 * n - 2, n - 1, -1):
        c = prod[k]
        if _is_zero(P, c):
            continue
        for t in range(n):
            if not _is_zero(P, m[t]):
                prod[k - n + t] = _sub(P, prod[k - n + t], _mul(P, c, m[t]))
        prod[k] = z
    return tuple(prod[:n])


def _inv(L: _Level, a: Raw) -> Raw:
    if _is_zero(L, a):
        raise ZeroDivisionError("inverse of zero in a number field")
    if L.depth == 0:
        return 1 / a
    P = L.parent
    g, s, _t = _pgcdex(P, _ptrim(P, list(a)), list(L.minpoly))
    # g is a nonzero constant because minpoly is irreducible
    ginv = _inv(P, g[0])
    out = [_mul(P, c, ginv) for c in s]
    out += [_zero(P)] * (L.degree - len(out))
    return tuple(out)


def _pow(L: _Level, a: Raw, e: int) -> Raw:
    if e < 0:
        return _pow(L, _inv(L, a), -e)
    result = _from_q(L, 1)
    base = a
    while e:
        if e & 1:
            result = _mul(L, result, base)
        e >>= 1
        if e:
            base = _mul(L, base, base)
    return result


def _embed(src: _Level, dst: _Level, a: Raw) -> Raw:
    """Lift a raw value from ``src`` to a descendant level ``dst``."""
    if src is dst:
        return a
    if not src.is_ancestor_of(dst):
        raise TowerMismatchError(f"{src!r} is not below {dst!r}")
    chain = []
    L = dst
    while L is not src:
        chain.append(L)
        L = L.parent
    for L in reversed(chain):
        a = (a,) + (_zero(L.parent),) * (L.degree - 1)
    return a


def _demote(L: _Level, a: Raw) -> tuple[_Level, Raw]:
    """Return the lowest level on which ``a`` already lives."""
    while L.depth > 0:
        P = L.parent
        if all(_is_zero(P, c) for c in a[1:]):
            a = a[0]
            L = P
        else:
            break
    return L, a


def _flat_key(L: _Level, a: Raw) -> tuple:
    if L.depth == 0:
        return (a,)
    out: tuple = ()
    for c in a:
        out += _flat_key(L.parent, c)
    return out


def _common(L1: _Level, L2: _Level) -> _Level:
    if L1.is_ancestor_of(L2):
        return L2
    if L2.is_ancestor_of(L1):
        return L1
    raise TowerMismatchError(f"levels {L1.name} and {L2.name} are on different branches")


def common_level(levels: Iterable[_Level]) -> _Level:
    out = QQ_LEVEL
    for L in levels:
        out = _common(out, L)
    return out


# ---------------------------------------------------------------------------
# Raw polynomial kernels (lists of raw values, low to high, trimmed)


def _ptrim(L: _Level, c: list) -> list:
    while c and _is_zero(L, c[-1]):
        c.pop()
    return c


def _padd(L, a, b):
    n = max(len(a), len(b))
    z = _zero(L)
    out = [_add(L, a[i] if i < len(a) else z, b[i] if i < len(b) else z) for i in range(n)]
    return _ptrim(L, out)


def _psub(L, a, b):
    n = max(len(a), len(b))
    z = _zero(L)
    out = [_sub(L, a[i] if i < len(a) else z, b[i] if i < len(b) else z) for i in range(n)]
    return _ptrim(L, out)


def _pmul(L, a, b):
    if not a or not b:
        return []
    out = [_zero(L)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if _is_zero(L, x):
            continue
        for j, y in enumerate(b):
            if _is_zero(L, y):
                continue
            out[i + j] = _add(L, out[i + j], _mul(L, x, y))
    return _ptrim(L, out)


def _pscale(L, a, c):
    if _is_zero(L, c):
        return []
    return _ptrim(L, [_mul(L, x, c) for x in a])


def _pdivmod(L, a, b):
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    a = list(a)
    db = len(b) - 1
    inv_lc = _inv(L, b[-1])
    if len(a) - 1 < db:
        return [], _ptrim(L, a)
    q = [_zero(L)] * (len(a) - db)
    for k in range(len(a) - 1 - db, -1, -1):
        c = a[k + db]
        if _is_zero(L, c):
            continue
        c = _mul(L, c, inv_lc)
        q[k] = c
        for i, y in enumerate(b):
            if not _is_zero(L, y):
                a[k + i] = _sub(L, a[k + i], _mul(L, c, y))
    return _ptrim(L, q), _ptrim(L, a[:db])


def _pmonic(L, a):
    if not a:
        return []
    return _pscale(L, a, _inv(L, a[-1]))


def _qq_gcd(a, b) -> list:
    # Euclid over Q blows up coefficients on large norms; sympy's heuristic gcd does not.
    A = sympy.Poly([sympy.Rational(c.numerator, c.denominator) for c in reversed(a)], _GCD_SYMBOL, domain="QQ")
    B = sympy.Poly([sympy.Rational(c.numerator, c.denominator) for c in reversed(b)], _GCD_SYMBOL, domain="QQ")
    return [Fraction(int(c.p), int(c.q)) for c in reversed(A.gcd(B).monic().all_coeffs())]


_GCD_SYMBOL = sympy.Symbol("s")


def _pgcd(L, a, b):
    a, b = _ptrim(L, list(a)), _ptrim(L, list(b))
    if L.depth == 0 and a and b:
        return _qq_gcd(a, b)
    while b:
        _, r = _pdivmod(L, a, b)
        a, b = b, r
    return _pmonic(L, a)


def _pgcdex(L, a, b):
    """Return (g, s, t) with s*a + t*b = g (g not normalized)."""
    r0, r1 = list(a), list(b)
    s0, s1 = [_from_q(L, 1)], []
    t0, t1 = [], [_from_q(L, 1)]
    while r1:
        q, r = _pdivmod(L, r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, _psub(L, s0, _pmul(L, q, s1))
        t0, t1 = t1, _psub(L, t0, _pmul(L, q, t1))
    return r0, s0, t0


def _pderiv(L, a):
    return _ptrim(L, [_scale_q(L, c, Fraction(i)) for i, c in enumerate(a)][1:])


def _peval(L, a, x):
    acc = _zero(L)
    for c in reversed(a):
        acc = _add(L, _mul(L, acc, x), c)
    return acc


def _pshift(L, a, c):
    """Return a(s + c)."""
    out: list = []
    lin = _ptrim(L, [c, _from_q(L, 1)])
    for coef in reversed(a):
        out = _padd(L, _pmul(L, out, lin), [coef] if not _is_zero(L, coef) else [])
    return out


def _pres(L, a, b):
    """Resultant of two polynomials over the field at level ``L``."""
    a, b = _ptrim(L, list(a)), _ptrim(L, list(b))
    if not a or not b:
        return _zero(L)
    res = _from_q(L, 1)
    while True:
        m, n = len(a) - 1, len(b) - 1
        if n == 0:
            return _mul(L, res, _pow(L, b[0], m))
        if m == 0:
            return _mul(L, res, _pow(L, a[0], n))
        _, r = _pdivmod(L, a, b)
        if not r:
            return _zero(L)
        if (m * n) % 2:
            res = _neg(L, res)
        res = _mul(L, res, _pow(L, b[-1], m - (len(r) - 1)))
        a, b = b, r


def _interpolate(L, xs: Sequence[Fraction], ys: Sequence[Raw]) -> list:
    """Newton interpolation with rational nodes and values at level ``L``."""
    n = len(xs)
    coef = list(ys)
    for j in range(1, n):
        for i in range(n - 1, j - 1, -1):
            coef[i] = _scale_q(L, _sub(L, coef[i], coef[i - 1]), 1 / (xs[i] - xs[i - j]))
    poly: list = []
    for i in range(n - 1, -1, -1):
        poly = _pmul(L, poly, [_from_q(L, -xs[i]), _from_q(L, 1)])
        poly = _padd(L, poly, [coef[i]] if not _is_zero(L, coef[i]) else [])
    return poly


def _norm_poly(K: _Level, p: list) -> list:
    """Norm from ``K`` to its parent of a polynomial with coefficients in ``K``."""
    P = K.parent
    deg = (len(p) - 1) * K.degree
    xs = [Fraction(i) for i in range(deg + 1)]
    m = list(K.minpoly)
    ys = []
    for x in xs:
        v = _peval(K, p, _from_q(K, x))
        ys.append(_pres(P, m, _ptrim(P, list(v))))
    return _interpolate(P, xs, ys)


def _norm_elem(K: _Level, a: Raw) -> Raw:
    P = K.parent
    return _pres(P, list(K.minpoly), _ptrim(P, list(a)))


# ---------------------------------------------------------------------------
# Public wrappers


class FieldTower:
    """Handle on one level of a tower of simple extensions of Q."""

    __slots__ = ("level",)

    def __init__(self, level: _Level = QQ_LEVEL):
        self.level = level

    @staticmethod
    def rationals() -> "FieldTower":
        return FieldTower(QQ_LEVEL)

    @property
    def depth(self) -> int:
        return self.level.depth

    @property
    def degree(self) -> int:
        """Degree of this level over Q."""
        d = 1
        L = self.level
        while L.depth > 0:
            d *= L.degree
            L = L.parent
        return d

    def generator(self) -> "AlgebraicScalar":
        if self.level.depth == 0:
            raise ValueError("Q has no adjoined generator")
        L = self.level
        return AlgebraicScalar(L, (_zero(L.parent), _from_q(L.parent, 1)) + (_zero(L.parent),) * (L.degree - 2))

    def minpolys(self) -> list["UniPoly"]:
        """Defining polynomials from the bottom of the tower up."""
        out = []
        L = self.level
        while L.depth > 0:
            out.append(UniPoly(L.parent, L.minpoly, "t"))
            L = L.parent
        return list(reversed(out))

    def scalar(self, q: Number) -> "AlgebraicScalar":
        return AlgebraicScalar(QQ_LEVEL, Fraction(q))

    def __eq__(self, other) -> bool:
        return isinstance(other, FieldTower) and other.level is self.level

    def __hash__(self) -> int:
        return id(self.level)

    def __repr__(self) -> str:
        names = []
        L = self.level
        while L.depth > 0:
            names.append(L.name)
            L = L.parent
        return "FieldTower(Q" + "".join(f"({n})" for n in reversed(names)) + ")"


class AlgebraicScalar:
    """Element of a number-field tower, stored at its minimal level."""

    __slots__ = ("level", "raw", "_key")

    def __init__(self, level: _Level, raw: Raw):
        self.level, self.raw = _demote(level, raw)
        self._key = None

    @classmethod
    def coerce(cls, x) -> "AlgebraicScalar":
        if isinstance(x, AlgebraicScalar):
            return x
        if isinstance(x, (int, Fraction)):
            return cls(QQ_LEVEL, Fraction(x))
        raise TypeError(f"cannot coerce {type(x).__name__} to AlgebraicScalar")

    def lift(self, L: _Level) -> Raw:
        return _embed(self.level, L, self.raw)

    def _binary(self, other, op):
        other = AlgebraicScalar.coerce(other)
        L = _common(self.level, other.level)
        return AlgebraicScalar(L, op(L, self.lift(L), other.lift(L)))

    def __add__(self, o):
        return self._binary(o, _add)

    __radd__ = __add__

    def __sub__(self, o):
        return self._binary(o, _sub)

    def __rsub__(self, o):
        return AlgebraicScalar.coerce(o) - self

    def __mul__(self, o):
        return self._binary(o, _mul)

    __rmul__ = __mul__

    def __neg__(self):
        return AlgebraicScalar(self.level, _neg(self.level, self.raw))

    def inverse(self) -> "AlgebraicScalar":
        return AlgebraicScalar(self.level, _inv(self.level, self.raw))

    def __truediv__(self, o):
        return self * AlgebraicScalar.coerce(o).inverse()

    def __rtruediv__(self, o):
        return AlgebraicScalar.coerce(o) * self.inverse()

    def __pow__(self, e: int):
        return AlgebraicScalar(self.level, _pow(self.level, self.raw, e))

    def is_zero(self) -> bool:
        return _is_zero(self.level, self.raw)

    def __bool__(self) -> bool:
        return not self.is_zero()

    def is_rational(self) -> bool:
        return self.level.depth == 0

    def as_fraction(self) -> Fraction:
        if not self.is_rational():
            raise ValueError(f"{self} is not rational")
        return self.raw

    def key(self) -> tuple:
        if self._key is None:
            self._key = (self.level.depth, _flat_key(self.level, self.raw))
        return self._key

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            return self.level.depth == 0 and self.raw == other
        if not isinstance(other, AlgebraicScalar):
            return NotImplemented
        return self.level is other.level and self.raw == other.raw

    def __hash__(self) -> int:
        if self.level.depth == 0:
            return hash(self.raw)
        return hash((id(self.level), self.raw))

    def __repr__(self) -> str:
        return _format_raw(self.level, self.raw)

    def minimal_polynomial(self) -> "UniPoly":
        """Monic minimal polynomial over Q."""
        return minimal_polynomial(self)


def _format_raw(L: _Level, a: Raw) -> str:
    if L.depth == 0:
        return str(a)
    parts = []
    for i, c in enumerate(a):
        if _is_zero(L.parent, c):
            continue
        cs = _format_raw(L.parent, c)
        if i and (" + " in cs or " - " in cs):
            cs = f"({cs})"
        mono = "" if i == 0 else (L.name if i == 1 else f"{L.name}^{i}")
        if i == 0:
            parts.append(cs)
        elif cs == "1":
            parts.append(mono)
        elif cs == "-1":
            parts.append("-" + mono)
        else:
            parts.append(f"{cs}*{mono}")
    s = " + ".join(parts) if parts else "0"
    return s.replace("+ -", "- ")


class UniPoly:
    """Univariate polynomial with coefficients in one tower level."""

    __slots__ = ("level", "coeffs", "var")

    def __init__(self, level: _Level, coeffs: Iterable[Raw], var: str = "s"):
        self.level = level
        self.coeffs = tuple(_ptrim(level, list(coeffs)))
        self.var = var

    @classmethod
    def from_scalars(cls, coeffs: Sequence, var: str = "s", level: _Level | None = None) -> "UniPoly":
        cs = [AlgebraicScalar.coerce(c) for c in coeffs]
        L = common_level([c.level for c in cs] + ([level] if level is not None else []))
        return cls(L, [c.lift(L) for c in cs], var)

    @classmethod
    def from_ints(cls, coeffs: Sequence[Number], var: str = "s") -> "UniPoly":
        return cls(QQ_LEVEL, [Fraction(c) for c in coeffs], var)

    # -- basic accessors
    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def coefficient(self, i: int) -> AlgebraicScalar:
        if 0 <= i < len(self.coeffs):
            return AlgebraicScalar(self.level, self.coeffs[i])
        return AlgebraicScalar(QQ_LEVEL, _F0)

    def scalars(self) -> list[AlgebraicScalar]:
        return [AlgebraicScalar(self.level, c) for c in self.coeffs]

    def lc(self) -> AlgebraicScalar:
        return AlgebraicScalar(self.level, self.coeffs[-1])

    def lift(self, L: _Level) -> "UniPoly":
        return UniPoly(L, [_embed(self.level, L, c) for c in self.coeffs], self.var)

    def _align(self, other: "UniPoly"):
        L = _common(self.level, other.level)
        return L, self.lift(L).coeffs, other.lift(L).coeffs

    def is_monic(self) -> bool:
        return bool(self.coeffs) and self.coeffs[-1] == _from_q(self.level, 1)

    def monic(self) -> "UniPoly":
        return UniPoly(self.level, _pmonic(self.level, list(self.coeffs)), self.var)

    # -- arithmetic
    def __add__(self, o):
        o = _as_poly(o, self)
        L, a, b = self._align(o)
        return UniPoly(L, _padd(L, a, b), self.var)

    __radd__ = __add__

    def __sub__(self, o):
        o = _as_poly(o, self)
        L, a, b = self._align(o)
        return UniPoly(L, _psub(L, a, b), self.var)

    def __rsub__(self, o):
        return _as_poly(o, self) - self

    def __neg__(self):
        return UniPoly(self.level, [_neg(self.level, c) for c in self.coeffs], self.var)

    def __mul__(self, o):
        o = _as_poly(o, self)
        L, a, b = self._align(o)
        return UniPoly(L, _pmul(L, a, b), self.var)

    __rmul__ = __mul__

    def __pow__(self, e: int):
        if e < 0:
            raise ValueError("negative power of a polynomial")
        out = UniPoly(self.level, [_from_q(self.level, 1)], self.var)
        for _ in range(e):
            out = out * self
        return out

    def __divmod__(self, o):
        o = _as_poly(o, self)
        L, a, b = self._align(o)
        q, r = _pdivmod(L, a, b)
        return UniPoly(L, q, self.var), UniPoly(L, r, self.var)

    def __floordiv__(self, o):
        return divmod(self, o)[0]

    def __mod__(self, o):
        return divmod(self, o)[1]

    def exact_div(self, o) -> "UniPoly":
        q, r = divmod(self, o)
        if not r.is_zero():
            raise ArithmeticError("division is not exact")
        return q

    def gcd(self, o) -> "UniPoly":
        L, a, b = self._align(_as_poly(o, self))
        return UniPoly(L, _pgcd(L, a, b), self.var)

    def derivative(self) -> "UniPoly":
        return UniPoly(self.level, _pderiv(self.level, list(self.coeffs)), self.var)

    def __call__(self, x) -> AlgebraicScalar:
        x = AlgebraicScalar.coerce(x)
        L = _common(self.level, x.level)
        return AlgebraicScalar(L, _peval(L, list(self.lift(L).coeffs), x.lift(L)))

    def shift(self, c) -> "UniPoly":
        """Return p(s + c)."""
        c = AlgebraicScalar.coerce(c)
        L = _common(self.level, c.level)
        return UniPoly(L, _pshift(L, list(self.lift(L).coeffs), c.lift(L)), self.var)

    def reversed(self) -> "UniPoly":
        return UniPoly(self.level, list(reversed(self.coeffs)), self.var)

    def valuation(self) -> int:
        for i, c in enumerate(self.coeffs):
            if not _is_zero(self.level, c):
                return i
        raise ValueError("valuation of the zero polynomial")

    def is_squarefree(self) -> bool:
        return self.gcd(self.derivative()).degree == 0

    def key(self) -> tuple:
        return (self.degree, tuple(_flat_key(self.level, c) for c in self.coeffs))

    def canonical_key(self) -> tuple:
        return tuple(AlgebraicScalar(self.level, c).key() for c in self.coeffs)

    def __eq__(self, other) -> bool:
        if not isinstance(other, UniPoly):
            return NotImplemented
        try:
            L, a, b = self._align(other)
        except TowerMismatchError:
            return False
        return a == b

    def __hash__(self) -> int:
        return hash(self.canonical_key())

    def __repr__(self) -> str:
        if not self.coeffs:
            return "0"
        parts = []
        for i in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[i]
            if _is_zero(self.level, c):
                continue
            cs = _format_raw(self.level, c)
            if self.level.depth > 0 and ("+" in cs or " - " in cs) and i > 0:
                cs = f"({cs})"
            mono = "" if i == 0 else (self.var if i == 1 else f"{self.var}^{i}")
            if i == 0:
                parts.append(cs)
            elif cs == "1":
                parts.append(mono)
            elif cs == "-1":
                parts.append("-" + mono)
            else:
                parts.append(f"{cs}*{mono}")
        return " + ".join(parts).replace("+ -", "- ")


def _as_poly(o, like: UniPoly) -> UniPoly:
    if isinstance(o, UniPoly):
        return o
    c = AlgebraicScalar.coerce(o)
    return UniPoly(c.level, [c.raw], like.var)


# ---------------------------------------------------------------------------
# Squarefree decomposition, resultants, factorization


def squarefree_decomposition(p: UniPoly) -> list[tuple[UniPoly, int]]:
    """Yun's algorithm.  Returns monic pairwise coprime (factor, multiplicity)."""
    if p.is_zero():
        raise ValueError("square-free decomposition of zero")
    a = p.monic()
    if a.degree == 0:
        return []
    b = a.derivative()
    c = a.gcd(b)
    w = a.exact_div(c)
    y = b.exact_div(c)
    z = y - w.derivative()
    out = []
    i = 1
    while w.degree > 0:
        g = w.gcd(z)
        if g.degree > 0:
            out.append((g.monic(), i))
        w = w.exact_div(g)
        y = z.exact_div(g)
        z = y - w.derivative()
        i += 1
    return out


def resultant(p: UniPoly, q: UniPoly) -> AlgebraicScalar:
    L, a, b = p._align(q)
    return AlgebraicScalar(L, _pres(L, list(a), list(b)))


def _factor_over_q(p: UniPoly) -> list[UniPoly]:
    """Monic irreducible factors of a square-free polynomial over Q."""
    s = sympy.Symbol("s")
    expr = sympy.Poly([sympy.Rational(c.numerator, c.denominator) for c in reversed(p.coeffs)], s, domain="QQ")
    _, facs = expr.factor_list()
    out = []
    for f, _mult in facs:
        cs = [Fraction(int(c.p), int(c.q)) for c in reversed(f.all_coeffs())]
        out.append(UniPoly(QQ_LEVEL, cs, p.var).monic())
    return out


def _factor_squarefree(p: UniPoly) -> list[UniPoly]:
    """Monic irreducible factors of a monic square-free polynomial."""
    if p.degree <= 1:
        return [p.monic()] if p.degree == 1 else []
    K = p.level
    if K.depth == 0:
        return _factor_over_q(p)
    gen = FieldTower(K).generator()
    for k in itertools.chain([0], *([j, -j] for j in range(1, 50))):
        shifted = p.shift(gen * (-k)) if k else p  # p(s - k*alpha)
        shifted = shifted.lift(K)
        N = UniPoly(K.parent, _norm_poly(K, list(shifted.coeffs)), p.var)
        if not N.is_squarefree():
            continue
        factors = []
        for g in _factor_squarefree(N.monic()):
            h = shifted.gcd(g.lift(K))
            if h.degree > 0:
                factors.append(h.shift(gen * k).monic() if k else h.monic())
        return factors
    raise ArithmeticError("no square-free norm shift found")  # pragma: no cover


def _sort_factors(fs):
    return sorted(fs, key=lambda f: f[0].key() + (f[1],) if isinstance(f, tuple) else f.key())


def factor_irreducible(p: UniPoly) -> list[tuple[UniPoly, int]]:
    """Monic irreducible factors with multiplicities, deterministically ordered."""
    out = []
    for part, mult in squarefree_decomposition(p):
        for f in _factor_squarefree(part):
            out.append((f.lift(p.level) if f.level is not p.level and f.level.is_ancestor_of(p.level) else f, mult))
    return sorted(out, key=lambda fm: (fm[0].key(), fm[1]))


def is_irreducible(p: UniPoly) -> bool:
    if p.degree < 1:
        return False
    fs = factor_irreducible(p)
    return len(fs) == 1 and fs[0][1] == 1


def adjoin_root(tower: FieldTower | _Level, minpoly: UniPoly, *, name: str | None = None,
                certified: bool = False) -> tuple[FieldTower, AlgebraicScalar]:
    """Adjoin a root of ``minpoly`` (irreducible over the tower) to ``tower``.

    Returns the extended tower and the new generator.  ``certified`` skips
    the irreducibility check for factors produced by :func:`factor_irreducible`.
    A linear polynomial returns the same tower and its rational-level root.
    """
    L = tower.level if isinstance(tower, FieldTower) else tower
    mp = minpoly.lift(_common(L, minpoly.level))
    if mp.level is not L:
        L = mp.level
    if mp.degree < 1:
        raise ValueError("minimal polynomial must have positive degree")
    mp = mp.monic()
    if mp.degree == 1:
        return FieldTower(L), AlgebraicScalar(L, _neg(L, mp.coeffs[0]))
    if not certified and not is_irreducible(mp):
        raise ReducibleMinPolyError(f"{mp} is reducible")
    new = _Level(L, mp.coeffs, name or f"a{L.depth + 1}")
    T = FieldTower(new)
    return T, T.generator()


def minimal_polynomial(a: AlgebraicScalar, var: str = "c") -> UniPoly:
    """Monic minimal polynomial of ``a`` over Q."""
    L = a.level
    p = [_neg(L, a.raw), _from_q(L, 1)]
    while L.depth > 0:
        p = _norm_poly(L, p)
        L = L.parent
        sq = UniPoly(L, p, var)
        p = list(sq.exact_div(sq.gcd(sq.derivative())).monic().coeffs)
    return UniPoly(QQ_LEVEL, p, var)


def norm_to_q(p: UniPoly) -> UniPoly:
    """Norm of a polynomial from its tower level all the way down to Q."""
    L = p.level
    c = list(p.coeffs)
    while L.depth > 0:
        c = _norm_poly(L, c)
        L = L.parent
    return UniPoly(QQ_LEVEL, c, p.var)


def element_norm(a: AlgebraicScalar) -> Fraction:
    L, r = a.level, a.raw
    while L.depth > 0:
        r = _norm_elem(L, r)
        L = L.parent
    return r


def face_discriminant(P: UniPoly, var: str = "c") -> UniPoly:
    """Discriminant of ``P(s) - c`` as a polynomial in ``c``."""
    n = P.degree
    if n < 1:
        raise ValueError("face polynomial must be non-constant")
    L = P.level
    xs = [Fraction(i) for i in range(n + 1)]
    ys = []
    sign = Fraction(-1) ** (n * (n - 1) // 2)
    lc_inv = _inv(L, P.coeffs[-1])
    for x in xs:
        Q = list(P.coeffs)
        Q[0] = _sub(L, Q[0], _from_q(L, x))
        Q = _ptrim(L, Q)
        r = _pres(L, Q, _pderiv(L, Q)) if n > 1 else _from_q(L, 1)
        ys.append(_scale_q(L, _mul(L, r, lc_inv), sign) if n > 1 else r)
    return UniPoly(L, _interpolate(L, xs, ys), var)


# ---------------------------------------------------------------------------
# Conjugacy classes of algebraic numbers


@dataclass(frozen=True)
class AlgebraicValue:
    """All Q-conjugates of an algebraic number, identified by its minimal polynomial.

    Rational values compare and hash like ``Fraction`` so that ``2 in values``
    works for sets of values.
    """

    minpoly: tuple  # monic, low to high, Fractions

    @classmethod
    def of(cls, a) -> "AlgebraicValue":
        a = AlgebraicScalar.coerce(a)
        return cls(minimal_polynomial(a).coeffs)

    @classmethod
    def from_poly(cls, p: UniPoly) -> "AlgebraicValue":
        if p.level.depth != 0:
            raise ValueError("class polynomial must be over Q")
        return cls(p.monic().coeffs)

    @property
    def degree(self) -> int:
        return len(self.minpoly) - 1

    def poly(self, var: str = "c") -> UniPoly:
        return UniPoly(QQ_LEVEL, self.minpoly, var)

    def is_rational(self) -> bool:
        return self.degree == 1

    def rational(self) -> Fraction:
        if not self.is_rational():
            raise ValueError("value is irrational")
        return -self.minpoly[0]

    def representative(self) -> AlgebraicScalar:
        """A root in a fresh extension of Q (or the rational value)."""
        if self.is_rational():
            return AlgebraicScalar(QQ_LEVEL, self.rational())
        _, r = adjoin_root(FieldTower.rationals(), self.poly("t"), certified=True, name="c")
        return r

    def approximations(self, digits: int = 12) -> list[complex]:
        s = sympy.Symbol("c")
        expr = sum(sympy.Rational(c.numerator, c.denominator) * s**i for i, c in enumerate(self.minpoly))
        return [complex(r) for r in sympy.Poly(expr, s).nroots(n=digits)]

    def sort_key(self) -> tuple:
        if self.degree == 1:
            return (1, (self.rational(),))
        return (self.degree, tuple(reversed(self.minpoly)))

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            return self.is_rational() and self.rational() == other
        if isinstance(other, AlgebraicValue):
            return self.minpoly == other.minpoly
        return NotImplemented

    def __hash__(self) -> int:
        if self.is_rational():
            return hash(self.rational())
        return hash(self.minpoly)

    def __str__(self) -> str:
        if self.is_rational():
            return str(self.rational())
        return f"root of {self.poly('c')}"

    __repr__ = __str__


def value_classes_of_poly(p: UniPoly) -> list[AlgebraicValue]:
    """Conjugacy classes of all roots of ``p`` and its conjugates over Q."""
    if p.degree < 1:
        return []
    n = norm_to_q(p)
    return sorted({AlgebraicValue.from_poly(f) for f, _ in factor_irreducible(n)}, key=AlgebraicValue.sort_key)
