"""Rational generating functions, linear recurrences and series expansion."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, List, Mapping, Sequence

from .exactarith import MPoly, join_signed

SeriesPrefix = List[MPoly]

Z = "z"


class GFError(ValueError):
    """A ratio of polynomials that is not a usable power series."""


class PoleAtOriginError(GFError):
    pass


class NonunitDenominatorError(GFError):
    pass


class ZPoly:
    """Dense polynomial in z with MPoly coefficients, lowest degree first."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable = ()):
        cs = [MPoly.coerce(c) for c in coeffs]
        while cs and not cs[-1]:
            cs.pop()
        self.coeffs = tuple(cs)

    @classmethod
    def from_mpoly(cls, p: MPoly, var: str = Z) -> "ZPoly":
        """Collect a polynomial that mentions ``var`` by powers of ``var``."""
        groups = p.coefficients_in(var)
        deg = max(groups, default=-1)
        return cls(groups.get(i, MPoly()) for i in range(deg + 1))

    def to_mpoly(self, var: str = Z) -> MPoly:
        out = MPoly()
        for i, c in enumerate(self.coeffs):
            if c:
                out = out + (c.mul_monomial(((var, i),)) if i else c)
        return out

    @property
    def degree(self) -> int:
        """-1 for the zero polynomial."""
        return len(self.coeffs) - 1

    def __getitem__(self, i: int) -> MPoly:
        if 0 <= i < len(self.coeffs):
            return self.coeffs[i]
        return MPoly()

    def __len__(self):
        return len(self.coeffs)

    def __bool__(self):
        return bool(self.coeffs)

    def __eq__(self, other):
        if isinstance(other, ZPoly):
            return self.coeffs == other.coeffs
        return NotImplemented

    def __hash__(self):
        return hash(self.coeffs)

    def __add__(self, other: "ZPoly") -> "ZPoly":
        n = max(len(self), len(other))
        return ZPoly(self[i] + other[i] for i in range(n))

    def __neg__(self):
        return ZPoly(-c for c in self.coeffs)

    def __sub__(self, other: "ZPoly") -> "ZPoly":
        n = max(len(self), len(other))
        return ZPoly(self[i] - other[i] for i in range(n))

    def __mul__(self, other) -> "ZPoly":
        if not isinstance(other, ZPoly):
            other = MPoly.coerce(other)
            return ZPoly(c * other for c in self.coeffs)
        if not self or not other:
            return ZPoly()
        out = [MPoly()] * (len(self) + len(other) - 1)
        for i, a in enumerate(self.coeffs):
            if not a:
                continue
            for j, b in enumerate(other.coeffs):
                if b:
                    out[i + j] = out[i + j] + a * b
        return ZPoly(out)

    __rmul__ = __mul__

    def truncate(self, n: int) -> "ZPoly":
        return ZPoly(self.coeffs[:n])

    def shift(self, k: int) -> "ZPoly":
        """Multiply by z^k."""
        if not self:
            return self
        return ZPoly([MPoly()] * k + list(self.coeffs))

    def subs(self, bindings: Mapping[str, object]) -> "ZPoly":
        return ZPoly(c.subs(bindings) for c in self.coeffs)

    def variables(self) -> frozenset:
        out = frozenset()
        for c in self.coeffs:
            out |= c.variables()
        return out

    def __str__(self):
        pieces = []
        for i, c in enumerate(self.coeffs):
            if not c:
                continue
            if i == 0:
                pieces.extend(c.signed_pieces())
                continue
            zpow = Z if i == 1 else f"{Z}^{i}"
            cp = c.signed_pieces()
            if len(cp) == 1:
                neg, body = cp[0]
                pieces.append((neg, zpow if body == "1" else f"{body}*{zpow}"))
            else:
                pieces.append((False, f"({c})*{zpow}"))
        return join_signed(pieces)

    def __repr__(self):
        return f"ZPoly({str(self)!r})"


def zpoly(*coeffs) -> ZPoly:
    return ZPoly(coeffs)


class RatGF:
    """numerator/denominator in z with denominator(0) == 1.

    Build through :func:`gf_new`. ``==`` is series equality decided by
    cross-multiplication, so instances are unhashable.
    """

    __slots__ = ("num", "den")
    __hash__ = None

    def __init__(self, num: ZPoly, den: ZPoly):
        self.num = num
        self.den = den

    def __eq__(self, other):
        if isinstance(other, RatGF):
            return gf_equal(self, other)
        return NotImplemented

    def __add__(self, other):
        return gf_arith(self, other, "add")

    def __sub__(self, other):
        return gf_arith(self, other, "sub")

    def __mul__(self, other):
        return gf_arith(self, other, "mul")

    def is_proper(self) -> bool:
        return self.num.degree < self.den.degree

    def transient_length(self) -> int:
        """Number of leading terms not governed by the denominator recurrence."""
        return max(0, self.num.degree - self.den.degree + 1)

    def expand(self, n: int) -> SeriesPrefix:
        return gf_expand(self, n)

    def subs(self, bindings: Mapping[str, object]) -> "RatGF":
        return gf_new(self.num.subs(bindings), self.den.subs(bindings))

    def variables(self) -> frozenset:
        return self.num.variables() | self.den.variables()

    def __str__(self):
        return f"({self.num})/({self.den})"

    def __repr__(self):
        return f"RatGF({str(self)!r})"


def gf_new(numer, denom) -> RatGF:
    numer = numer if isinstance(numer, ZPoly) else ZPoly(numer)
    denom = denom if isinstance(denom, ZPoly) else ZPoly(denom)
    d0 = denom[0]
    if not d0:
        raise PoleAtOriginError("pole at origin: denominator vanishes at z = 0")
    if not d0.is_constant():
        raise NonunitDenominatorError(
            f"nonunit leading denominator coefficient: constant term {d0} is not a rational number"
        )
    if not numer:
        return RatGF(ZPoly(), ZPoly([1]))
    c = d0.constant_value()
    if c != 1:
        inv = 1 / c
        numer, denom = numer * inv, denom * inv
    return RatGF(numer, denom)


def gf_expand(f: RatGF, n: int) -> SeriesPrefix:
    if n < 0:
        raise ValueError("term count must be nonnegative")
    den = f.den.coeffs
    tail = [(i, den[i]) for i in range(1, len(den)) if den[i]]
    h: SeriesPrefix = []
    for m in range(n):
        s = f.num[m]
        for i, di in tail:
            if i > m:
                break
            hm = h[m - i]
            if hm:
                s = s - di * hm
        h.append(s)
    return h


@dataclass(frozen=True)
class LinRec:
    """x_n = c_1 x_{n-1} + ... + c_r x_{n-r} for every n >= max(offset, r)."""

    coeffs: tuple
    initial: tuple
    offset: int = 0

    def __post_init__(self):
        object.__setattr__(self, "coeffs", tuple(MPoly.coerce(c) for c in self.coeffs))
        object.__setattr__(self, "initial", tuple(MPoly.coerce(c) for c in self.initial))
        if self.offset < 0:
            raise ValueError("offset must be nonnegative")
        if self.coeffs and not self.coeffs[-1]:
            raise ValueError("trailing recurrence coefficient must be nonzero")
        if len(self.initial) < max(self.order, self.offset):
            raise ValueError(
                f"need at least {max(self.order, self.offset)} initial terms, got {len(self.initial)}"
            )

    @property
    def order(self) -> int:
        return len(self.coeffs)

    @property
    def start(self) -> int:
        """First index produced by the recurrence rather than read from initial."""
        return max(self.order, self.offset, len(self.initial))

    def terms(self, n: int) -> SeriesPrefix:
        out = list(self.initial[:n])
        for m in range(len(out), n):
            s = MPoly()
            for i, c in enumerate(self.coeffs, 1):
                s = s + c * out[m - i]
            out.append(s)
        return out

    def __str__(self):
        lhs = "x(n) = "
        rhs = []
        for i, c in enumerate(self.coeffs, 1):
            if not c:
                continue
            pieces = c.signed_pieces()
            xn = f"x(n-{i})"
            if len(pieces) == 1:
                neg, body = pieces[0]
                rhs.append((neg, xn if body == "1" else f"{body}*{xn}"))
            else:
                rhs.append((False, f"({c})*{xn}"))
        body = join_signed(rhs)
        init = ", ".join(str(t) for t in self.initial)
        return f"{lhs}{body} for n >= {self.start}; initial terms [{init}]"


def gf_to_rec(f: RatGF) -> LinRec:
    order = f.den.degree
    coeffs = tuple(-f.den[i] for i in range(1, order + 1))
    offset = max(f.num.degree + 1, order)
    return LinRec(coeffs, tuple(gf_expand(f, max(offset, order))), offset)


def rec_to_gf(r: LinRec) -> RatGF:
    den = ZPoly([MPoly.const(1)] + [-c for c in r.coeffs])
    start = r.start
    num = (den * ZPoly(r.terms(start))).truncate(start)
    return gf_new(num, den)


def gf_equal(f: RatGF, g: RatGF) -> bool:
    return f.num * g.den == g.num * f.den


def gf_arith(f: RatGF, g: RatGF, op: str) -> RatGF:
    if op not in ("add", "sub", "mul"):
        raise ValueError(f"unknown operation {op!r}")
    if op == "mul":
        return gf_new(f.num * g.num, f.den * g.den)
    if f.den == g.den:
        num = f.num + g.num if op == "add" else f.num - g.num
        return gf_new(num, f.den)
    a, b = f.num * g.den, g.num * f.den
    return gf_new(a + b if op == "add" else a - b, f.den * g.den)


def gf_from_series(terms: Sequence) -> RatGF:
    """A finite sequence as a polynomial generating function."""
    return gf_new(ZPoly(terms), ZPoly([1]))
