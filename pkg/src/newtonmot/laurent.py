"""Sparse bivariate Laurent polynomials and the Newton substitution maps.

A ``LaurentPoly`` stores ``{(a, b): coefficient}`` with coefficients at a
single tower level and a context flag saying which variables may carry
negative exponents:

``poly``       k[x, y]
``laurent_x``  k[x, 1/x, y]
``laurent_y``  k[x, y, 1/y]
``laurent``    k[x, 1/x, y, 1/y]
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Iterable, Mapping

from .algebra import (
    QQ_LEVEL,
    AlgebraicScalar,
    FieldTower,
    _add,
    _common,
    _embed,
    _from_q,
    _inv,
    _is_zero,
    _mul,
    _neg,
    _pow,
    _sub,
    common_level,
)

CONTEXTS = ("poly", "laurent_x", "laurent_y", "laurent")
_CTX_BITS = {"poly": 0, "laurent_x": 1, "laurent_y": 2, "laurent": 3}
_BITS_CTX = {v: k for k, v in _CTX_BITS.items()}

EXPONENT_LIMIT = 2**63 - 1


class ContextError(ValueError):
    """A negative exponent appeared where the declared ring forbids it."""


def _check_exponent(e: int) -> int:
    if abs(e) > EXPONENT_LIMIT:
        raise OverflowError(f"exponent {e} does not fit in a signed 64-bit integer")
    return e


def _infer_bits(terms) -> int:
    bits = 0
    for a, b in terms:
        if a < 0:
            bits |= 1
        if b < 0:
            bits |= 2
    return bits


class LaurentPoly:
    """Bivariate Laurent polynomial with coefficients in a number-field tower."""

    __slots__ = ("terms", "level", "context", "_hash")

    def __init__(self, terms: Mapping, level=None, context: str | None = None):
        if isinstance(level, FieldTower):
            level = level.level
        raw_terms = {}
        if level is None:
            scalars = {k: AlgebraicScalar.coerce(v) for k, v in terms.items()}
            level = common_level(s.level for s in scalars.values())
            for k, s in scalars.items():
                raw_terms[k] = s.lift(level)
        else:
            for k, v in terms.items():
                if isinstance(v, AlgebraicScalar):
                    raw_terms[k] = v.lift(level)
                elif isinstance(v, (int, Fraction)):
                    raw_terms[k] = _from_q(level, v)
                else:
                    raw_terms[k] = v
        clean = {}
        for (a, b), v in raw_terms.items():
            if not _is_zero(level, v):
                clean[(_check_exponent(int(a)), _check_exponent(int(b)))] = v
        self.terms = clean
        self.level = level
        bits = _infer_bits(clean)
        if context is None:
            self.context = _BITS_CTX[bits]
        else:
            if context not in _CTX_BITS:
                raise ValueError(f"unknown context {context!r}")
            if bits & ~_CTX_BITS[context]:
                raise ContextError(f"negative exponents are not allowed in context {context!r}")
            self.context = context
        self._hash = None

    # -- constructors
    @classmethod
    def _raw(cls, terms: dict, level, context: str | None = None) -> "LaurentPoly":
        return cls(terms, level, context)

    @classmethod
    def zero(cls, level=QQ_LEVEL) -> "LaurentPoly":
        return cls({}, level)

    @classmethod
    def constant(cls, c, level=None) -> "LaurentPoly":
        c = AlgebraicScalar.coerce(c)
        L = c.level if level is None else _common(c.level, level)
        return cls({(0, 0): c.lift(L)}, L)

    @classmethod
    def monomial(cls, a: int, b: int, c=1, level=None) -> "LaurentPoly":
        c = AlgebraicScalar.coerce(c)
        L = c.level if level is None else _common(c.level, level)
        return cls({(a, b): c.lift(L)}, L)

    @classmethod
    def x(cls) -> "LaurentPoly":
        return cls.monomial(1, 0)

    @classmethod
    def y(cls) -> "LaurentPoly":
        return cls.monomial(0, 1)

    @classmethod
    def from_dict(cls, d: Mapping, context: str | None = None) -> "LaurentPoly":
        return cls(dict(d), None, context)

    # -- inspection
    def support(self) -> frozenset:
        return frozenset(self.terms)

    def coeff(self, a: int, b: int) -> AlgebraicScalar:
        v = self.terms.get((a, b))
        if v is None:
            return AlgebraicScalar(QQ_LEVEL, Fraction(0))
        return AlgebraicScalar(self.level, v)

    def items(self):
        for k in sorted(self.terms):
            yield k, AlgebraicScalar(self.level, self.terms[k])

    def is_zero(self) -> bool:
        return not self.terms

    def is_monomial(self) -> bool:
        return len(self.terms) == 1

    def is_polynomial(self) -> bool:
        return all(a >= 0 and b >= 0 for a, b in self.terms)

    def min_a(self) -> int:
        return min(a for a, _ in self.terms)

    def min_b(self) -> int:
        return min(b for _, b in self.terms)

    def degree_x(self) -> int:
        return max(a for a, _ in self.terms)

    def degree_y(self) -> int:
        return max(b for _, b in self.terms)

    def constant_term(self) -> AlgebraicScalar:
        return self.coeff(0, 0)

    def tower(self) -> FieldTower:
        return FieldTower(self.level)

    # -- arithmetic
    def lift(self, level) -> "LaurentPoly":
        if isinstance(level, FieldTower):
            level = level.level
        if level is self.level:
            return self
        return LaurentPoly({k: _embed(self.level, level, v) for k, v in self.terms.items()}, level, self.context)

    def _align(self, other):
        if not isinstance(other, LaurentPoly):
            other = LaurentPoly.constant(other)
        L = _common(self.level, other.level)
        bits = _CTX_BITS[self.context] | _CTX_BITS[other.context]
        return L, self.lift(L), other.lift(L), _BITS_CTX[bits]

    def __add__(self, other):
        L, a, b, ctx = self._align(other)
        out = dict(a.terms)
        for k, v in b.terms.items():
            out[k] = _add(L, out[k], v) if k in out else v
        return LaurentPoly(out, L, None if ctx == "poly" else _ctx_join(ctx, out))

    __radd__ = __add__

    def __neg__(self):
        return LaurentPoly({k: _neg(self.level, v) for k, v in self.terms.items()}, self.level, self.context)

    def __sub__(self, other):
        L, a, b, ctx = self._align(other)
        out = dict(a.terms)
        for k, v in b.terms.items():
            out[k] = _sub(L, out[k], v) if k in out else _neg(L, v)
        return LaurentPoly(out, L, _ctx_join(ctx, out))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        L, a, b, ctx = self._align(other)
        out: dict = {}
        for (i, j), u in a.terms.items():
            for (k, l), v in b.terms.items():
                key = (i + k, j + l)
                p = _mul(L, u, v)
                out[key] = _add(L, out[key], p) if key in out else p
        return LaurentPoly(out, L, _ctx_join(ctx, out))

    __rmul__ = __mul__

    def __pow__(self, e: int):
        if e < 0:
            if not self.is_monomial():
                raise ValueError("only monomials can be raised to negative powers")
            (a, b), v = next(iter(self.terms.items()))
            return LaurentPoly({(a * e, b * e): _pow(self.level, v, e)}, self.level)
        out = LaurentPoly.constant(1, self.level)
        base = self
        while e:
            if e & 1:
                out = out * base
            e >>= 1
            if e:
                base = base * base
        return out

    def scale(self, c) -> "LaurentPoly":
        c = AlgebraicScalar.coerce(c)
        L = _common(self.level, c.level)
        cr = c.lift(L)
        return LaurentPoly({k: _mul(L, _embed(self.level, L, v), cr) for k, v in self.terms.items()}, L, self.context)

    def shift(self, da: int, db: int) -> "LaurentPoly":
        """Multiply by the monomial x^da y^db."""
        return LaurentPoly({(a + da, b + db): v for (a, b), v in self.terms.items()}, self.level)

    def restrict(self, points: Iterable) -> "LaurentPoly":
        pts = set(points)
        return LaurentPoly({k: v for k, v in self.terms.items() if k in pts}, self.level)

    def diff_x(self) -> "LaurentPoly":
        L = self.level
        return LaurentPoly({(a - 1, b): _mul(L, v, _from_q(L, a)) for (a, b), v in self.terms.items() if a}, L)

    def diff_y(self) -> "LaurentPoly":
        L = self.level
        return LaurentPoly({(a, b - 1): _mul(L, v, _from_q(L, b)) for (a, b), v in self.terms.items() if b}, L)

    def evaluate(self, x, y) -> AlgebraicScalar:
        x, y = AlgebraicScalar.coerce(x), AlgebraicScalar.coerce(y)
        L = common_level([self.level, x.level, y.level])
        xr, yr = x.lift(L), y.lift(L)
        acc = _from_q(L, 0)
        for (a, b), v in self.terms.items():
            t = _mul(L, _embed(self.level, L, v), _mul(L, _pow(L, xr, a), _pow(L, yr, b)))
            acc = _add(L, acc, t)
        return AlgebraicScalar(L, acc)

    # -- identity
    def canonical(self) -> tuple:
        return tuple(sorted((k, AlgebraicScalar(self.level, v).key()) for k, v in self.terms.items()))

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction, AlgebraicScalar)):
            other = LaurentPoly.constant(other)
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        try:
            L = _common(self.level, other.level)
        except ValueError:
            return False
        return self.lift(L).terms == other.lift(L).terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(self.canonical())
        return self._hash

    def __repr__(self) -> str:
        return format_laurent(self)


def _ctx_join(ctx: str, terms) -> str:
    return _BITS_CTX[_CTX_BITS[ctx] | _infer_bits(terms)]


def format_laurent(f: LaurentPoly, xvar: str = "x", yvar: str = "y") -> str:
    if f.is_zero():
        return "0"
    parts = []
    for (a, b) in sorted(f.terms, key=lambda k: (-(k[0] + k[1]), -k[0], -k[1])):
        c = AlgebraicScalar(f.level, f.terms[(a, b)])
        cs = repr(c)
        mono = []
        for v, e in ((xvar, a), (yvar, b)):
            if e == 1:
                mono.append(v)
            elif e:
                mono.append(f"{v}^{e}" if e > 0 else f"{v}^({e})")
        m = "*".join(mono)
        if not m:
            parts.append(cs)
            continue
        if " + " in cs or " - " in cs[1:]:
            cs = f"({cs})"
        if cs == "1":
            parts.append(m)
        elif cs == "-1":
            parts.append("-" + m)
        else:
            parts.append(f"{cs}*{m}")
    return " + ".join(parts).replace("+ -", "- ")


def support(f: LaurentPoly) -> frozenset:
    return f.support()


# ---------------------------------------------------------------------------
# Substitution


def substitute(f: LaurentPoly, X: LaurentPoly, Y: LaurentPoly) -> LaurentPoly:
    """Return f(X, Y) where X and Y are Laurent polynomials in the new variables."""
    L = common_level([f.level, X.level, Y.level])
    X, Y, f = X.lift(L), Y.lift(L), f.lift(L)
    xp: dict = {}
    yp: dict = {}

    def power(cache, base, e):
        if e not in cache:
            if e < 0 and not base.is_monomial():
                raise ValueError("negative power of a non-monomial image")
            cache[e] = base**e
        return cache[e]

    acc: dict = {}
    for (a, b), c in f.terms.items():
        term = power(xp, X, a) * power(yp, Y, b)
        for k, v in term.terms.items():
            p = _mul(L, v, c)
            acc[k] = _add(L, acc[k], p) if k in acc else p
    return LaurentPoly(acc, L)


def _bezout_local(p: int, q: int) -> tuple[int, int]:
    """Canonical (p', q') with p p' - q q' = 1, 0 <= q' < p."""
    if p == 1:
        return 1, 0
    qp = (-pow(q, -1, p)) % p
    pp = (1 + q * qp) // p
    return pp, qp


def newton_map_local(f: LaurentPoly, p: int, q: int, mu, p_prime: int | None = None,
                     q_prime: int | None = None) -> LaurentPoly:
    """Apply x = mu^q' x1^p, y = x1^q (y1 + mu^p') to f.

    (p, q) are coprime positive integers and ``mu`` is nonzero.  The default
    (p', q') has 0 <= q' < p; explicit values are checked against
    p p' - q q' = 1.
    """
    if p < 1 or q < 1 or math.gcd(p, q) != 1:
        raise ValueError(f"(p, q) = ({p}, {q}) must be coprime positive integers")
    mu = AlgebraicScalar.coerce(mu)
    if mu.is_zero():
        raise ValueError("mu must be nonzero")
    if p_prime is None and q_prime is None:
        p_prime, q_prime = _bezout_local(p, q)
    elif p_prime is None or q_prime is None or p * p_prime - q * q_prime != 1:
        raise ValueError("need p p' - q q' = 1")
    L = _common(f.level, mu.level)
    X = LaurentPoly.monomial(p, 0, mu**q_prime, L)
    Y = LaurentPoly.monomial(q, 1, 1, L) + LaurentPoly.monomial(q, 0, mu**p_prime, L)
    return substitute(f, X, Y)


def _bezout_infinity(p: int, q: int) -> tuple[int, int]:
    """(p', q') used by the chart at infinity for direction (p, q), 0 <= q' < |p|."""
    if p > 0 and q > 0:
        qp = pow(q, -1, p) % p  # q q' - p p' = 1
        return (q * qp - 1) // p, qp
    if p > 0 and q < 0:
        qp = (-pow(q, -1, p)) % p  # p p' - q q' = 1
        return (1 + q * qp) // p, qp
    if p < 0 and q > 0:
        qp = (-pow(q, -1, -p)) % (-p)  # p p' - q q' = 1
        return (1 + q * qp) // p, qp
    raise ValueError(f"no Bezout normalization for ({p}, {q})")


def infinity_bezout(p: int, q: int) -> tuple[int, int]:
    return _bezout_infinity(p, q)


def newton_map_infinity(f: LaurentPoly, p: int, q: int, mu, p_prime: int | None = None,
                        q_prime: int | None = None) -> LaurentPoly:
    """Chart at infinity attached to a face with outward normal (p, q) and root mu.

    * p, q > 0:   x = mu^q' v^-p, y = v^-q (w + mu^p'),  q q' - p p' = 1
    * p > 0 > q:  same formula,                          p p' - q q' = 1
    * p < 0 < q:  x = v^-p (w + mu^q'), y = mu^p' v^-q,  p p' - q q' = 1
    * (0, 1):     x = w + mu, y = 1/v
    * (1, 0):     x = 1/v, y = w + mu
    """
    if math.gcd(p, q) != 1:
        raise ValueError(f"(p, q) = ({p}, {q}) must be primitive")
    if p <= 0 and q <= 0:
        raise ValueError("normal must lie outside the closed negative quadrant")
    mu = AlgebraicScalar.coerce(mu)
    if mu.is_zero():
        raise ValueError("mu must be nonzero")
    L = _common(f.level, mu.level)
    one = LaurentPoly.constant(1, L)
    if (p, q) == (0, 1):
        X = LaurentPoly.monomial(0, 1, 1, L) + one.scale(mu)
        Y = LaurentPoly.monomial(-1, 0, 1, L)
        return substitute(f, X, Y)
    if (p, q) == (1, 0):
        X = LaurentPoly.monomial(-1, 0, 1, L)
        Y = LaurentPoly.monomial(0, 1, 1, L) + one.scale(mu)
        return substitute(f, X, Y)
    if p_prime is None and q_prime is None:
        p_prime, q_prime = _bezout_infinity(p, q)
    elif p_prime is None or q_prime is None:
        raise ValueError("give both p' and q'")
    if p > 0 and q > 0:
        if q * q_prime - p * p_prime != 1:
            raise ValueError("need q q' - p p' = 1")
    elif p * p_prime - q * q_prime != 1:
        raise ValueError("need p p' - q q' = 1")
    if p > 0:
        X = LaurentPoly.monomial(-p, 0, mu**q_prime, L)
        Y = LaurentPoly.monomial(-q, 1, 1, L) + LaurentPoly.monomial(-q, 0, mu**p_prime, L)
    else:
        X = LaurentPoly.monomial(-p, 1, 1, L) + LaurentPoly.monomial(-p, 0, mu**q_prime, L)
        Y = LaurentPoly.monomial(-q, 0, mu**p_prime, L)
    return substitute(f, X, Y)


def substitute_axis_flip(f: LaurentPoly, mu, which: str = "horizontal", swap: bool = False) -> LaurentPoly:
    """f(x + mu, 1/y) for ``horizontal``; f(1/x, y + mu) for ``vertical``.

    With ``swap`` the two output variables are exchanged, which turns the
    horizontal flip into the (0, 1) chart at infinity.
    """
    mu = AlgebraicScalar.coerce(mu)
    L = _common(f.level, mu.level)
    one = LaurentPoly.constant(1, L)
    if which == "horizontal":
        X = LaurentPoly.monomial(1, 0, 1, L) + one.scale(mu)
        Y = LaurentPoly.monomial(0, -1, 1, L)
    elif which == "vertical":
        X = LaurentPoly.monomial(-1, 0, 1, L)
        Y = LaurentPoly.monomial(0, 1, 1, L) + one.scale(mu)
    else:
        raise ValueError("which must be 'horizontal' or 'vertical'")
    if swap:
        X, Y = swap_xy(X), swap_xy(Y)
    return substitute(f, X, Y)


def swap_xy(f: LaurentPoly) -> LaurentPoly:
    return LaurentPoly({(b, a): v for (a, b), v in f.terms.items()}, f.level)


def height(f: LaurentPoly) -> int:
    """b0 - bd of the local Newton polygon (vertices v0 and vd)."""
    if f.is_zero():
        raise ValueError("height of zero")
    amin = f.min_a()
    b0 = min(b for a, b in f.terms if a == amin)
    return b0 - f.min_b()
