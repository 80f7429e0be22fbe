"""Expression grammar for rational generating functions.

    expr   := term (('+'|'-') term)*
    term   := factor (('*'|'/') factor)*
    factor := '-' factor | atom ('^' nat)?
    atom   := nat | ident | '(' expr ')'

``z`` is the series variable; every other identifier is a parameter.
Multiplication is always explicit.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Union

from .exactarith import MPoly, format_rational
from .ratgf import Z, GFError, RatGF, ZPoly, gf_new


class ParseError(ValueError):
    def __init__(self, message: str, position: int):
        super().__init__(f"{message} at position {position}")
        self.position = position


class LoweringError(GFError):
    pass


@dataclass(frozen=True)
class Num:
    value: Fraction


@dataclass(frozen=True)
class Ident:
    name: str


@dataclass(frozen=True)
class Neg:
    operand: "GFExpr"


@dataclass(frozen=True)
class BinOp:
    op: str
    left: "GFExpr"
    right: "GFExpr"


@dataclass(frozen=True)
class Pow:
    base: "GFExpr"
    exponent: int


GFExpr = Union[Num, Ident, Neg, BinOp, Pow]

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z0-9_]*)|(.))")


def _tokenize(text: str):
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:  # trailing whitespace
            break
        start = m.start(m.lastindex)
        if m.group(1) is not None:
            tokens.append(("nat", int(m.group(1)), start))
        elif m.group(2) is not None:
            tokens.append(("ident", m.group(2), start))
        else:
            ch = m.group(3)
            if ch not in "+-*/^()":
                raise ParseError(f"unexpected character {ch!r}", start)
            tokens.append((ch, ch, start))
        pos = m.end()
    tokens.append(("end", None, len(text)))
    return tokens


class _Parser:
    def __init__(self, text: str):
        self.tokens = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.tokens[self.i]

    def take(self, kind=None):
        tok = self.tokens[self.i]
        if kind is not None and tok[0] != kind:
            what = "end of input" if tok[0] == "end" else repr(tok[1])
            raise ParseError(f"expected {kind!r}, found {what}", tok[2])
        self.i += 1
        return tok

    def expr(self):
        node = self.term()
        while self.peek()[0] in ("+", "-"):
            op = self.take()[0]
            node = BinOp(op, node, self.term())
        return node

    def term(self):
        node = self.factor()
        while self.peek()[0] in ("*", "/"):
            op = self.take()[0]
            node = BinOp(op, node, self.factor())
        return node

    def factor(self):
        if self.peek()[0] == "-":
            self.take()
            return Neg(self.factor())
        node = self.atom()
        if self.peek()[0] == "^":
            self.take()
            node = Pow(node, self.take("nat")[1])
        return node

    def atom(self):
        kind, value, pos = self.peek()
        if kind == "nat":
            self.take()
            return Num(Fraction(value))
        if kind == "ident":
            self.take()
            return Ident(value)
        if kind == "(":
            self.take()
            node = self.expr()
            self.take(")")
            return node
        what = "end of input" if kind == "end" else repr(value)
        raise ParseError(f"unexpected {what}", pos)


def parse_gf(text: str) -> GFExpr:
    p = _Parser(text)
    node = p.expr()
    kind, value, pos = p.peek()
    if kind != "end":
        raise ParseError(f"unexpected {value!r}", pos)
    return node


def _lower_pair(node):
    # (numerator, denominator) as MPolys that may mention z
    if isinstance(node, Num):
        return MPoly.const(node.value), MPoly.const(1)
    if isinstance(node, Ident):
        return MPoly.var(node.name), MPoly.const(1)
    if isinstance(node, Neg):
        n, d = _lower_pair(node.operand)
        return -n, d
    if isinstance(node, Pow):
        n, d = _lower_pair(node.base)
        return n ** node.exponent, d ** node.exponent
    n1, d1 = _lower_pair(node.left)
    n2, d2 = _lower_pair(node.right)
    if node.op == "*":
        return n1 * n2, d1 * d2
    if node.op == "/":
        if not n2:
            raise LoweringError("division by zero")
        return n1 * d2, d1 * n2
    if d1 == d2:
        return (n1 + n2 if node.op == "+" else n1 - n2), d1
    a, b = n1 * d2, n2 * d1
    return (a + b if node.op == "+" else a - b), d1 * d2


def lower(node: GFExpr) -> RatGF:
    n, d = _lower_pair(node)
    try:
        return gf_new(ZPoly.from_mpoly(n), ZPoly.from_mpoly(d))
    except GFError as exc:
        raise LoweringError(str(exc)) from exc


def read_gf(text: str) -> RatGF:
    """Parse and lower in one step."""
    return lower(parse_gf(text))


def read_mpoly(text: str) -> MPoly:
    """Parse a polynomial in the parameters (no series variable, no division by parameters)."""
    f = read_gf(text)
    if f.den.degree > 0 or f.num.degree > 0:
        raise LoweringError(f"{text!r} is not a polynomial in the parameters")
    return f.num[0]


def to_sexp(node: GFExpr) -> str:
    if isinstance(node, Num):
        return format_rational(node.value)
    if isinstance(node, Ident):
        return node.name
    if isinstance(node, Neg):
        return f"(- {to_sexp(node.operand)})"
    if isinstance(node, Pow):
        return f"(^ {to_sexp(node.base)} {node.exponent})"
    return f"({node.op} {to_sexp(node.left)} {to_sexp(node.right)})"


def mpoly_sexp(p: MPoly) -> str:
    terms = []
    for mono, coeff in p.sorted_terms():
        factors = [format_rational(coeff)] if coeff != 1 or not mono else []
        factors += [name if e == 1 else f"(^ {name} {e})" for name, e in mono]
        terms.append(factors[0] if len(factors) == 1 else "(* " + " ".join(factors) + ")")
    if not terms:
        return "0"
    return terms[0] if len(terms) == 1 else "(+ " + " ".join(terms) + ")"


def zpoly_sexp(p: ZPoly) -> str:
    return "(poly " + Z + "".join(" " + mpoly_sexp(c) for c in p.coeffs) + ")"


def gf_sexp(f: RatGF) -> str:
    return f"(/ {zpoly_sexp(f.num)} {zpoly_sexp(f.den)})"
