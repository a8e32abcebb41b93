"""Command line front end: parse a polynomial, run the pipeline, print a report.

Exit codes: 0 ok, 2 parse error, 3 precondition violation, 4 internal
consistency failure.
"""

from __future__ import annotations

import json
import sys
from dataclasses import dataclass
from fractions import Fraction

import click

from .algebra import AlgebraicValue
from .invariants import bifurcation_report
from .lattice import polygon_global, polygon_infinity
from .laurent import ContextError, LaurentPoly, format_laurent
from .motives import ConsistencyError
from .newton_algo import NewtonNonTermination, NewtonPreconditionError, newton_algorithm_infinity, newton_algorithm_local

EXIT_OK, EXIT_PARSE, EXIT_PRECONDITION, EXIT_CONSISTENCY = 0, 2, 3, 4

MAX_EXPONENT = 10_000


class ParseError(ValueError):
    def __init__(self, message: str, offset: int):
        super().__init__(f"{message} at offset {offset}")
        self.offset = offset
        self.reason = message


# ---------------------------------------------------------------------------
# Parser


@dataclass(frozen=True)
class Token:
    kind: str  # 'int', 'var', 'op', 'end'
    text: str
    offset: int


def tokenize(text: str, variables=("x", "y")) -> list[Token]:
    out = []
    i = 0
    while i < len(text):
        ch = text[i]
        if ch.isspace():
            i += 1
        elif ch.isdigit():
            j = i
            while j < len(text) and text[j].isdigit():
                j += 1
            out.append(Token("int", text[i:j], i))
            i = j
        elif ch.isalpha() or ch == "_":
            j = i
            while j < len(text) and (text[j].isalnum() or text[j] == "_"):
                j += 1
            name = text[i:j]
            if name not in variables:
                raise ParseError(f"unknown variable {name!r}", i)
            out.append(Token("var", name, i))
            i = j
        elif ch in "+-*/^()":
            out.append(Token("op", ch, i))
            i += 1
        else:
            raise ParseError(f"unexpected character {ch!r}", i)
    out.append(Token("end", "", len(text)))
    return out


class _Parser:
    def __init__(self, text: str, variables, context: str):
        self.toks = tokenize(text, variables)
        self.pos = 0
        self.variables = variables
        self.context = context

    def peek(self) -> Token:
        return self.toks[self.pos]

    def take(self) -> Token:
        t = self.toks[self.pos]
        self.pos += 1
        return t

    def expect(self, text: str) -> Token:
        t = self.take()
        if t.text != text or t.kind != "op":
            raise ParseError(f"expected {text!r}", t.offset)
        return t

    def parse(self) -> LaurentPoly:
        if self.peek().kind == "end":
            raise ParseError("empty expression", 0)
        e = self.expr()
        t = self.peek()
        if t.kind != "end":
            raise ParseError(f"unexpected {t.text!r}", t.offset)
        return e

    def expr(self) -> LaurentPoly:
        acc = self.term()
        while self.peek().kind == "op" and self.peek().text in "+-":
            op = self.take().text
            rhs = self.term()
            acc = acc + rhs if op == "+" else acc - rhs
        return acc

    def term(self) -> LaurentPoly:
        acc = self.unary()
        while self.peek().kind == "op" and self.peek().text in "*/":
            t = self.take()
            rhs = self.unary()
            if t.text == "*":
                acc = acc * rhs
            else:
                if not (rhs.is_zero() or set(rhs.terms) == {(0, 0)}):
                    raise ParseError("division only by nonzero constants", t.offset)
                if rhs.is_zero():
                    raise ParseError("division by zero", t.offset)
                acc = acc * rhs.constant_term().inverse()
        return acc

    def unary(self) -> LaurentPoly:
        t = self.peek()
        if t.kind == "op" and t.text in "+-":
            self.take()
            v = self.unary()
            return -v if t.text == "-" else v
        return self.power()

    def power(self) -> LaurentPoly:
        base = self.atom()
        if self.peek().kind == "op" and self.peek().text == "^":
            self.take()
            e, off = self.exponent()
            if abs(e) > MAX_EXPONENT:
                raise ParseError(f"exponent overflow (|e| > {MAX_EXPONENT})", off)
            if e < 0:
                if self.context == "poly":
                    raise ParseError("negative exponent not allowed", off)
                if not base.is_monomial():
                    raise ParseError("negative exponent on a non-monomial", off)
            try:
                base = base**e
            except OverflowError as exc:
                raise ParseError(str(exc), off) from exc
            if self.peek().kind == "op" and self.peek().text == "^":
                raise ParseError("chained exponent needs parentheses", self.peek().offset)
        return base

    def exponent(self) -> tuple[int, int]:
        t = self.take()
        paren = t.kind == "op" and t.text == "("
        if paren:
            t = self.take()
        sign = 1
        off = t.offset
        if t.kind == "op" and t.text in "+-":
            sign = -1 if t.text == "-" else 1
            t = self.take()
        if t.kind != "int":
            raise ParseError("expected an integer exponent", t.offset)
        if paren:
            self.expect(")")
        return sign * int(t.text), off

    def atom(self) -> LaurentPoly:
        t = self.take()
        if t.kind == "int":
            return LaurentPoly.constant(int(t.text))
        if t.kind == "var":
            i = self.variables.index(t.text)
            return LaurentPoly.monomial(1 if i == 0 else 0, 1 if i == 1 else 0)
        if t.kind == "op" and t.text == "(":
            e = self.expr()
            self.expect(")")
            return e
        if t.kind == "end":
            raise ParseError("unexpected end of input", t.offset)
        raise ParseError(f"unexpected {t.text!r}", t.offset)


def parse_polynomial(text: str, variables=("x", "y"), context: str = "poly") -> LaurentPoly:
    """Parse an exact polynomial; ``context='laurent'`` admits negative exponents."""
    f = _Parser(text, tuple(variables), context).parse()
    try:
        return LaurentPoly(f.terms, f.level, None if context == "poly" else context)
    except ContextError as exc:
        raise ParseError(str(exc), 0) from exc


@dataclass(frozen=True)
class PolynomialSource:
    raw: str
    poly: LaurentPoly
    variables: tuple

    @classmethod
    def parse(cls, raw: str, variables=("x", "y"), context: str = "poly") -> "PolynomialSource":
        return cls(raw, parse_polynomial(raw, variables, context), tuple(variables))

    def canonical(self) -> str:
        return format_laurent(self.poly, *self.variables)


def parse_value(text: str) -> Fraction:
    f = parse_polynomial(text)
    if f.is_zero():
        return Fraction(0)
    if set(f.terms) != {(0, 0)}:
        raise ParseError("a value must be a constant", 0)
    return f.constant_term().as_fraction()


# ---------------------------------------------------------------------------
# Reports


def value_string(v: AlgebraicValue, digits: int = 10) -> str:
    if v.is_rational():
        return str(v.rational())
    hints = ", ".join(_complex_str(z, digits) for z in sorted(v.approximations(digits), key=lambda z: (z.real, z.imag)))
    return f"root of {v.poly('c')} ~ [{hints}]"


def _complex_str(z: complex, digits: int) -> str:
    re_, im = round(z.real, digits), round(z.imag, digits)
    if abs(im) < 10 ** (-digits):
        return f"{re_:.{digits}g}"
    return f"{re_:.{digits}g}{'+' if im >= 0 else '-'}{abs(im):.{digits}g}i"


def _polygon_dict(P) -> dict:
    return {
        "shape": P.shape,
        "vertices": [list(v) for v in P.vertex_points()],
        "edges": [{"vertices": [list(v) for v in e.vertices], "normal": list(e.normal), "N": e.N} for e in P.edges()],
    }


def run_report(f: LaurentPoly, values=(), motives: bool = False, tree: bool = False) -> dict:
    """Structured report with stable field names."""
    rep = bifurcation_report(f, extra_values=values)
    mfi = rep.motive_at_infinity
    out = {
        "input": format_laurent(f),
        "chi_generic": rep.chi_generic,
        "lambda": {value_string(c.value): c.lam for c in rep.candidates if c.lam},
        "lambda_total": rep.lambda_total,
        "b_newton": [value_string(v) for v in rep.b_newton],
        "b_top": [value_string(v) for v in rep.b_top],
        "critical_values": [value_string(v) for v in rep.critical],
        "candidates": [
            {
                "value": value_string(c.value),
                "tags": list(c.tags),
                "lambda": c.lam,
                "chi": c.chi,
                "motive": str(c.motive) if motives else None,
            }
            for c in rep.candidates
        ],
        "motive_at_infinity": {
            "chi": mfi.chi,
            "summands": mfi.summands(),
            "motive": str(mfi.motive) if motives else None,
        },
        "milnor_number": {"derived": rep.mu_derived, "groebner": rep.mu_groebner},
        "consistency": dict(rep.residues),
        "polygons": {"global": _polygon_dict(polygon_global(f)), "infinity": _polygon_dict(polygon_infinity(f))},
        "tree": None,
    }
    if tree:
        trees = {"infinity": newton_algorithm_infinity(f).to_dict()}
        g = f - f.constant_term()
        try:
            trees["local"] = newton_algorithm_local(g).to_dict() if not g.is_zero() else None
        except (NewtonPreconditionError, NewtonNonTermination):
            trees["local"] = None
        out["tree"] = trees
    return out


def format_text(rep: dict) -> str:
    lines = [f"f = {rep['input']}", f"chi_generic = {rep['chi_generic']}"]
    lines.append(f"  summands at infinity: {rep['motive_at_infinity']['summands']}")
    if rep["motive_at_infinity"]["motive"]:
        lines.append(f"  S_f,inf = {rep['motive_at_infinity']['motive']}")
    lines.append(f"B^Newton = {{{'; '.join(rep['b_newton'])}}}")
    lines.append(f"critical values = {{{'; '.join(rep['critical_values'])}}}")
    lines.append("candidates:")
    for c in rep["candidates"]:
        lines.append(f"  {c['value']}  [{', '.join(c['tags'])}]  lambda = {c['lambda']}")
        if c["motive"]:
            lines.append(f"    S^inf = {c['motive']}")
    lines.append(f"B^top = {{{'; '.join(rep['b_top'])}}}")
    mu = rep["milnor_number"]
    lines.append(f"mu derived = {mu['derived']}, mu from Groebner basis = {mu['groebner']}")
    lines.append(f"consistency residues = {rep['consistency']}")
    if rep["tree"]:
        lines.append("tree:")
        lines.append(json.dumps(rep["tree"], indent=2, sort_keys=True))
    return "\n".join(lines)


def polygon_svg(f: LaurentPoly, scale: int = 40) -> str:
    """Support points, the global hull and the polygon at infinity."""
    pts = sorted(f.support() | {(0, 0)})
    A = max(a for a, _ in pts) + 1
    B = max(b for _, b in pts) + 1
    amin = min(0, min(a for a, _ in pts))
    W, H = (A - amin + 1) * scale, (B + 1) * scale

    def X(a):
        return (a - amin + 0.5) * scale

    def Y(b):
        return H - (b + 0.5) * scale

    body = [f'<line x1="{X(amin)}" y1="{Y(0)}" x2="{X(A)}" y2="{Y(0)}" stroke="#999"/>',
            f'<line x1="{X(0)}" y1="{Y(0)}" x2="{X(0)}" y2="{Y(B)}" stroke="#999"/>']
    glob = polygon_global(f)
    for e in glob.edges():
        (a0, b0), (a1, b1) = e.vertices
        body.append(f'<line x1="{X(a0)}" y1="{Y(b0)}" x2="{X(a1)}" y2="{Y(b1)}" stroke="#36c" stroke-width="2"/>')
    for e in polygon_infinity(f).edges():
        (a0, b0), (a1, b1) = e.vertices
        body.append(f'<line x1="{X(a0)}" y1="{Y(b0)}" x2="{X(a1)}" y2="{Y(b1)}" stroke="#c33" '
                    f'stroke-width="2" stroke-dasharray="6,4"/>')
    for a, b in sorted(f.support()):
        body.append(f'<circle cx="{X(a)}" cy="{Y(b)}" r="4" fill="#000"/>')
    return (f'<svg xmlns="http://www.w3.org/2000/svg" width="{W}" height="{H}" viewBox="0 0 {W} {H}">\n'
            + "\n".join(body) + "\n</svg>\n")


def _fail(code: int, kind: str, msg: str, as_json: bool, offset: int | None = None):
    if as_json:
        err = {"code": code, "kind": kind, "message": msg}
        if offset is not None:
            err["offset"] = offset
        click.echo(json.dumps({"error": err}, sort_keys=True))
    else:
        click.echo(f"error ({kind}): {msg}", err=True)
    sys.exit(code)


@click.command()
@click.argument("polynomial", required=False)
@click.option("--value", "values", multiple=True, help="Extra candidate value (rational expression).")
@click.option("--motives", is_flag=True, help="Include motive pretty-prints.")
@click.option("--tree", is_flag=True, help="Include the Newton trees.")
@click.option("--svg", "svg_path", type=click.Path(dir_okay=False), help="Write a polygon diagram to this file.")
@click.option("--json", "as_json", is_flag=True, help="Machine-readable output.")
def main(polynomial, values, motives, tree, svg_path, as_json):
    """Bifurcation set, λ invariants and motives at infinity of POLYNOMIAL in x, y.

    Reads the polynomial from standard input when the argument is omitted or '-'.
    """
    text = sys.stdin.read() if polynomial in (None, "-") else polynomial
    try:
        f = parse_polynomial(text.strip())
        vals = [parse_value(v) for v in values]
    except ParseError as exc:
        _fail(EXIT_PARSE, "parse", str(exc), as_json, exc.offset)
    try:
        rep = run_report(f, vals, motives=motives, tree=tree)
        if svg_path:
            with open(svg_path, "w", encoding="utf-8") as fh:
                fh.write(polygon_svg(f))
    except ConsistencyError as exc:
        _fail(EXIT_CONSISTENCY, "consistency", str(exc), as_json)
    except (NewtonPreconditionError, NewtonNonTermination, ContextError, ValueError) as exc:
        _fail(EXIT_PRECONDITION, "precondition", str(exc), as_json)
    if as_json:
        click.echo(json.dumps(rep, sort_keys=True, indent=2))
    else:
        click.echo(format_text(rep))


if __name__ == "__main__":  # pragma: no cover
    main()
