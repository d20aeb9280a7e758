"""A small expression language for polynomial and rational inputs.

Tokens: nonnegative integers, identifiers ``[a-zA-Z][a-zA-Z0-9_]*``, the
operators ``+ - * / ^`` and parentheses.  Precedence, from tightest:
``^`` (exponent must be a nonnegative integer literal), unary minus, ``* /``,
``+ -``.  Binary operators associate to the left.

    >>> print(parse_expr("y^2*z - 4*x^3", {"x", "y", "z"}))
    y^2*z - 4*x^3
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, List, Optional, Sequence, Tuple, Union

from .algebra import Poly, RatField, RatFunc

__all__ = [
    "ParseError",
    "Num",
    "Var",
    "Neg",
    "BinOp",
    "parse_expr",
    "to_str",
    "to_ratfunc",
    "to_poly",
    "ratfunc_to_expr_str",
    "ratfunc_num_den",
]


class ParseError(ValueError):
    """Syntax or declaration error with a 1-based line/column position."""

    def __init__(self, msg: str, line: int, col: int, expected: Iterable[str] = ()):
        self.line, self.col = line, col
        self.expected = sorted(set(expected))
        self.reason = msg
        extra = f" (expected one of: {', '.join(self.expected)})" if self.expected else ""
        super().__init__(f"{line}:{col}: {msg}{extra}")


@dataclass(frozen=True)
class Num:
    value: int


@dataclass(frozen=True)
class Var:
    name: str


@dataclass(frozen=True)
class Neg:
    arg: "Expr"


@dataclass(frozen=True)
class BinOp:
    op: str
    left: "Expr"
    right: "Expr"


Expr = Union[Num, Var, Neg, BinOp]

_TOKEN = re.compile(r"\s*(?:(?P<num>\d+)|(?P<id>[a-zA-Z][a-zA-Z0-9_]*)|(?P<op>[-+*/^()]))")


@dataclass
class _Tok:
    kind: str  # num, id, op, eof
    text: str
    line: int
    col: int


def _tokenize(src: str) -> List[_Tok]:
    toks = []
    pos = 0
    line_starts = [0] + [m.end() for m in re.finditer("\n", src)]

    def where(p):
        ln = max(i for i, s in enumerate(line_starts) if s <= p)
        return ln + 1, p - line_starts[ln] + 1

    while True:
        while pos < len(src) and src[pos].isspace():
            pos += 1
        if pos >= len(src):
            toks.append(_Tok("eof", "", *where(pos)))
            return toks
        m = _TOKEN.match(src, pos)
        if not m or m.end() == pos:
            raise ParseError(f"unexpected character {src[pos]!r}", *where(pos))
        kind = m.lastgroup
        start = m.start(kind)
        toks.append(_Tok(kind, m.group(kind), *where(start)))
        pos = m.end()


_OPERAND_START = ("integer", "identifier", "(", "-")


class _Parser:
    def __init__(self, src: str, declared: Optional[Iterable[str]]):
        self.toks = _tokenize(src)
        self.i = 0
        self.declared = None if declared is None else set(declared)

    def peek(self) -> _Tok:
        return self.toks[self.i]

    def take(self) -> _Tok:
        t = self.toks[self.i]
        self.i += 1
        return t

    def fail(self, tok: _Tok, expected):
        what = "end of input" if tok.kind == "eof" else repr(tok.text)
        raise ParseError(f"unexpected {what}", tok.line, tok.col, expected)

    def parse(self) -> Expr:
        e = self.sum()
        tok = self.peek()
        if tok.kind != "eof":
            self.fail(tok, ["+", "-", "*", "/", "^", "end of input"])
        return e

    def sum(self) -> Expr:
        e = self.product()
        while self.peek().kind == "op" and self.peek().text in "+-":
            op = self.take().text
            e = BinOp(op, e, self.product())
        return e

    def product(self) -> Expr:
        e = self.unary()
        while self.peek().kind == "op" and self.peek().text in "*/":
            tok = self.take()
            rhs = self.unary()
            if tok.text == "/" and _is_syntactic_zero(rhs):
                raise ParseError("division by the literal zero", tok.line, tok.col)
            e = BinOp(tok.text, e, rhs)
        return e

    def unary(self) -> Expr:
        tok = self.peek()
        if tok.kind == "op" and tok.text == "-":
            self.take()
            return Neg(self.unary())
        return self.power()

    def power(self) -> Expr:
        e = self.atom()
        while self.peek().kind == "op" and self.peek().text == "^":
            self.take()
            e = BinOp("^", e, self.exponent())
        return e

    def exponent(self) -> Num:
        tok = self.peek()
        if tok.kind == "num":
            self.take()
            return Num(int(tok.text))
        if tok.kind == "op" and tok.text == "(":
            self.take()
            inner = self.peek()
            if inner.kind != "num":
                raise ParseError("malformed exponent: only nonnegative integer literals are allowed",
                                 inner.line, inner.col, ["integer"])
            self.take()
            close = self.take()
            if close.text != ")":
                self.fail(close, [")"])
            return Num(int(inner.text))
        raise ParseError("malformed exponent: only nonnegative integer literals are allowed",
                         tok.line, tok.col, ["integer", "("])

    def atom(self) -> Expr:
        tok = self.take()
        if tok.kind == "num":
            return Num(int(tok.text))
        if tok.kind == "id":
            if self.declared is not None and tok.text not in self.declared:
                raise ParseError(f"undeclared variable {tok.text!r}", tok.line, tok.col,
                                 sorted(self.declared))
            return Var(tok.text)
        if tok.kind == "op" and tok.text == "(":
            e = self.sum()
            close = self.take()
            if not (close.kind == "op" and close.text == ")"):
                self.fail(close, [")", "+", "-", "*", "/", "^"])
            return e
        self.fail(tok, _OPERAND_START)


def _is_syntactic_zero(e: Expr) -> bool:
    while isinstance(e, Neg):
        e = e.arg
    return isinstance(e, Num) and e.value == 0


def parse_expr(src: str, variables: Optional[Iterable[str]] = None) -> Expr:
    """Parse ``src``; with ``variables`` given, other identifiers are errors."""
    return _Parser(src, variables).parse()


# -- printing -----------------------------------------------------------------

_PREC = {"+": 1, "-": 1, "*": 2, "/": 2, "neg": 3, "^": 4}


def _prec(e: Expr) -> int:
    if isinstance(e, BinOp):
        return _PREC[e.op]
    if isinstance(e, Neg):
        return _PREC["neg"]
    return 5


def to_str(e: Expr) -> str:
    """Print with the fewest parentheses that reparse to the same tree."""
    if isinstance(e, Num):
        return str(e.value)
    if isinstance(e, Var):
        return e.name
    if isinstance(e, Neg):
        inner = to_str(e.arg)
        return "-" + (f"({inner})" if _prec(e.arg) < _PREC["neg"] else inner)
    p = _PREC[e.op]
    left = to_str(e.left)
    if _prec(e.left) < p or (e.op == "^" and _prec(e.left) <= p):
        left = f"({left})"
    right = to_str(e.right)
    if _prec(e.right) <= p and not (e.op == "^"):
        right = f"({right})"
    if e.op in "+-":
        return f"{left} {e.op} {right}"
    return f"{left}{e.op}{right}"


for _cls in (Num, Var, Neg, BinOp):
    _cls.__str__ = to_str  # type: ignore[assignment]


# -- lowering -----------------------------------------------------------------


def to_ratfunc(e: Expr, field: RatField) -> RatFunc:
    """Evaluate in the rational function field ``field``."""
    if isinstance(e, Num):
        return field(e.value)
    if isinstance(e, Var):
        if e.name not in field.names:
            raise ValueError(f"variable {e.name!r} not in {field}")
        return field.gen(e.name)
    if isinstance(e, Neg):
        return -to_ratfunc(e.arg, field)
    if e.op == "^":
        return to_ratfunc(e.left, field) ** e.right.value
    a, b = to_ratfunc(e.left, field), to_ratfunc(e.right, field)
    if e.op == "+":
        return a + b
    if e.op == "-":
        return a - b
    if e.op == "*":
        return a * b
    if not b:
        raise ZeroDivisionError("division by an expression that simplifies to zero")
    return a / b


def to_poly(e: Expr, variables: Sequence[str], field: RatField) -> Poly:
    """Polynomial in ``variables`` with coefficients in ``field``.

    Division is allowed only by expressions free of the polynomial variables.
    """
    variables = tuple(variables)
    if isinstance(e, Num):
        return Poly.const(variables, field(e.value))
    if isinstance(e, Var):
        if e.name in variables:
            return Poly.var(variables, e.name, field.one())
        if e.name in field.names:
            return Poly.const(variables, field.gen(e.name))
        raise ValueError(f"variable {e.name!r} is neither a coordinate nor a parameter")
    if isinstance(e, Neg):
        return -to_poly(e.arg, variables, field)
    if e.op == "^":
        return to_poly(e.left, variables, field) ** e.right.value
    a = to_poly(e.left, variables, field)
    b = to_poly(e.right, variables, field)
    if e.op == "+":
        return a + b
    if e.op == "-":
        return a - b
    if e.op == "*":
        return a * b
    if b.total_degree() > 0:
        raise ValueError("division by a polynomial in the coordinates")
    c = b.coeff((0,) * len(variables))
    if not c:
        raise ZeroDivisionError("division by an expression that simplifies to zero")
    return a.scale(field.one() / c)


def ratfunc_num_den(f: RatFunc) -> Tuple[str, str]:
    """Numerator and denominator of ``f`` as integer-coefficient polynomial strings.

    Both are scaled by the least common denominator of all coefficients, so the
    pair is canonical for the monic-denominator representation of ``f``.
    """
    from .algebra import _fmpq_to_frac

    dens = [int(c.q) for c in list(f.num.coeffs()) + list(f.den.coeffs())]
    scale = 1
    for d in dens:
        scale = scale * d // math.gcd(scale, d)

    def poly_str(p) -> str:
        terms = []
        for exp, c in zip(p.monoms(), p.coeffs()):
            q = _fmpq_to_frac(c) * scale
            mon = "*".join((n if k == 1 else f"{n}^{k}") for n, k in zip(f.field.names, exp) if k)
            v = q.numerator
            if mon:
                body = mon if abs(v) == 1 else f"{abs(v)}*{mon}"
            else:
                body = str(abs(v))
            terms.append(("-" if v < 0 else "+", body))
        if not terms:
            return "0"
        out = ("-" if terms[0][0] == "-" else "") + terms[0][1]
        for sgn, b in terms[1:]:
            out += f" {sgn} {b}"
        return out

    return poly_str(f.num), poly_str(f.den)


def ratfunc_to_expr_str(f: RatFunc) -> str:
    """Grammar-compatible rendering of a RatFunc (no rational literals)."""
    n, d = ratfunc_num_den(f)
    if d == "1":
        return n
    if " " in n:
        n = f"({n})"
    if " " in d or "*" in d:
        d = f"({d})"
    return f"{n}/{d}"
