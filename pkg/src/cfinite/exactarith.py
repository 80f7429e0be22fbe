"""Exact scalar and polynomial arithmetic.

Scalars are :class:`fractions.Fraction` (exposed here as ``Rational``).
:class:`MPoly` is a sparse multivariate polynomial over the rationals in
named parameters; it is the coefficient ring of every series in the package.
"""

from __future__ import annotations

import heapq
import math
import threading
from fractions import Fraction
from numbers import Rational as _RationalABC
from typing import Mapping, Sequence, Union

__all__ = [
    "Rational",
    "ExactArithmeticError",
    "MPoly",
    "rational",
    "rat_arith",
    "format_rational",
    "mpoly_arith",
    "mpoly_eval",
    "bareiss_det",
    "cofactor_det",
]

Rational = Fraction

# A monomial is a tuple of (name, exponent) pairs sorted by name, exponents > 0.
Monomial = tuple
Scalar = Union[int, Fraction]


class ExactArithmeticError(ArithmeticError):
    """Raised for division by zero or a failed exact division."""


def rational(value) -> Fraction:
    """Coerce an int, Fraction or ``"p/q"`` string to a reduced Fraction."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        try:
            return Fraction(value.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise ValueError(f"not an exact rational: {value!r}") from exc
    if isinstance(value, _RationalABC):
        return Fraction(value.numerator, value.denominator)
    raise TypeError(f"cannot convert {type(value).__name__} to an exact rational")


def _norm(c: Scalar) -> Scalar:
    # ints are much cheaper than Fractions; keep integral values as ints
    if type(c) is Fraction and c.denominator == 1:
        return c.numerator
    return c


def rat_arith(x, y, op: str) -> Fraction:
    x, y = rational(x), rational(y)
    if op == "add":
        return x + y
    if op == "sub":
        return x - y
    if op == "mul":
        return x * y
    if op == "div":
        if y == 0:
            raise ExactArithmeticError("division by zero")
        return x / y
    raise ValueError(f"unknown operation {op!r}")


def format_rational(c) -> str:
    """``p/q``, or ``p`` when the denominator is 1."""
    c = rational(c)
    if c.denominator == 1:
        return str(c.numerator)
    return f"{c.numerator}/{c.denominator}"


# Monomials are packed into one int: the exponent of the i-th interned
# parameter occupies bits [i*_W, (i+1)*_W), whose top bit is a guard bit that
# is always clear. Integer comparison of packed monomials is a lexicographic
# monomial order (most recently interned parameter most significant).
_W = 24
_FIELD = (1 << (_W - 1)) - 1
_names: list = []
_index: dict = {}
_guard = 0
_intern_lock = threading.Lock()


def _var_index(name: str) -> int:
    i = _index.get(name)
    if i is None:
        global _guard
        with _intern_lock:
            i = _index.get(name)
            if i is None:
                i = len(_names)
                _names.append(name)
                _guard |= 1 << (i * _W + _W - 1)
                _index[name] = i
    return i


def _encode(mono) -> int:
    packed = 0
    for name, e in mono:
        if e < 0 or e > _FIELD:
            raise ValueError(f"exponent {e} out of range")
        if e:
            packed += e << (_var_index(name) * _W)
    return packed


def _decode(packed: int) -> Monomial:
    out = []
    i = 0
    while packed:
        e = packed & _FIELD
        if e:
            out.append((_names[i], e))
        packed >>= _W
        i += 1
    out.sort()
    return tuple(out)


def _packed_degree(packed: int) -> int:
    total = 0
    while packed:
        total += packed & _FIELD
        packed >>= _W
    return total


def _packed_div(m1: int, m2: int):
    """m1 / m2 if m2 divides m1, else None."""
    if m2 > m1:
        return None
    g = _guard
    if ((m1 | g) - m2) & g != g:
        return None
    return m1 - m2


def _packed_min(m1: int, m2: int) -> int:
    out = 0
    shift = 0
    while m1 and m2:
        out |= min(m1 & _FIELD, m2 & _FIELD) << shift
        m1 >>= _W
        m2 >>= _W
        shift += _W
    return out


def _packed_exponent(packed: int, name: str) -> int:
    i = _index.get(name)
    if i is None:
        return 0
    return (packed >> (i * _W)) & _FIELD


def _print_key(m: Monomial):
    # ascending total degree; within a degree, lexicographically larger first
    return (sum(e for _, e in m), tuple((name, -e) for name, e in m))


def _format_monomial(m: Monomial) -> str:
    return "*".join(name if e == 1 else f"{name}^{e}" for name, e in m)


class MPoly:
    """Sparse polynomial over Q in named parameters, always in canonical form.

    >>> a, c, b = MPoly.var("a"), MPoly.var("c"), MPoly.var("b")
    >>> str(b - a * c)
    'b - a*c'
    """

    __slots__ = ("_t", "_hash")

    def __init__(self, terms: Mapping[Monomial, Scalar] | None = None):
        clean: dict = {}
        if terms:
            for mono, coeff in terms.items():
                coeff = coeff if type(coeff) is int else _norm(rational(coeff))
                if coeff:
                    key = _encode(mono)
                    s = _norm(clean.get(key, 0) + coeff)
                    if s:
                        clean[key] = s
                    else:
                        clean.pop(key, None)
        self._t = clean
        self._hash = None

    @classmethod
    def _raw(cls, terms: dict) -> "MPoly":
        # packed terms, already canonical: no zero coefficients, normalized scalars
        p = cls.__new__(cls)
        p._t = terms
        p._hash = None
        return p

    def __reduce__(self):
        # packed monomials are only meaningful inside one interpreter
        return (MPoly, (self.terms,))

    @classmethod
    def const(cls, c) -> "MPoly":
        c = c if type(c) is int else _norm(rational(c))
        return cls._raw({0: c} if c else {})

    @classmethod
    def var(cls, name: str) -> "MPoly":
        return cls._raw({1 << (_var_index(name) * _W): 1})

    @classmethod
    def monomial(cls, mono: Monomial, c=1) -> "MPoly":
        return cls({tuple(mono): c})

    @classmethod
    def coerce(cls, x) -> "MPoly":
        if isinstance(x, MPoly):
            return x
        return cls.const(x)

    @property
    def terms(self) -> dict:
        """{monomial: coefficient} with monomials as sorted (name, exponent) tuples."""
        return {_decode(m): c for m, c in self._t.items()}

    def items(self):
        return self.terms.items()

    def __len__(self):
        return len(self._t)

    def __bool__(self):
        return bool(self._t)

    def is_zero(self) -> bool:
        return not self._t

    def is_constant(self) -> bool:
        t = self._t
        return not t or (len(t) == 1 and 0 in t)

    def constant_value(self) -> Fraction:
        """The value of a constant polynomial; raises if not constant."""
        if not self.is_constant():
            raise ValueError(f"{self} is not a constant")
        return Fraction(self._t.get(0, 0))

    def constant_term(self) -> "MPoly":
        return MPoly.const(self._t.get(0, 0))

    def variables(self) -> frozenset:
        acc = 0
        for m in self._t:
            acc |= m
        out = []
        i = 0
        while acc:
            if acc & _FIELD:
                out.append(_names[i])
            acc >>= _W
            i += 1
        return frozenset(out)

    def degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        return max((_packed_degree(m) for m in self._t), default=-1)

    def degree_in(self, name: str) -> int:
        return max((_packed_exponent(m, name) for m in self._t), default=-1)

    def leading_term(self):
        """Leading (monomial, coefficient) in the internal monomial order."""
        m = max(self._t)
        return _decode(m), self._t[m]

    def leading_coefficient(self) -> Scalar:
        return self._t[max(self._t)]

    # ring operations

    def __neg__(self):
        return MPoly._raw({m: -c for m, c in self._t.items()})

    def __add__(self, other):
        if not isinstance(other, MPoly):
            if isinstance(other, (int, Fraction)):
                other = MPoly.const(other)
            else:
                return NotImplemented
        if not other._t:
            return self
        if not self._t:
            return other
        a, b = (self._t, other._t) if len(self._t) >= len(other._t) else (other._t, self._t)
        out = dict(a)
        for m, c in b.items():
            s = out.get(m, 0) + c
            if s:
                out[m] = _norm(s)
            else:
                del out[m]
        return MPoly._raw(out)

    __radd__ = __add__

    def __sub__(self, other):
        if not isinstance(other, MPoly):
            if isinstance(other, (int, Fraction)):
                other = MPoly.const(other)
            else:
                return NotImplemented
        if not other._t:
            return self
        out = dict(self._t)
        for m, c in other._t.items():
            s = out.get(m, 0) - c
            if s:
                out[m] = _norm(s)
            else:
                out.pop(m, None)
        return MPoly._raw(out)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, MPoly):
            if isinstance(other, (int, Fraction)):
                return self.scale(other)
            return NotImplemented
        if not self._t or not other._t:
            return MPoly._raw({})
        a, b = self._t, other._t
        if len(a) < len(b):
            a, b = b, a
        out: dict = {}
        get = out.get
        for m2, c2 in b.items():
            for m1, c1 in a.items():
                m = m1 + m2
                out[m] = get(m, 0) + c1 * c2
        return MPoly._raw({m: _norm(c) for m, c in out.items() if c})

    __rmul__ = __mul__

    def scale(self, c) -> "MPoly":
        c = c if type(c) is int else _norm(rational(c))
        if not c:
            return MPoly._raw({})
        if c == 1:
            return self
        return MPoly._raw({m: _norm(v * c) for m, v in self._t.items()})

    def __pow__(self, n: int):
        if not isinstance(n, int) or n < 0:
            raise ValueError("exponent must be a nonnegative integer")
        result, base = MPoly.const(1), self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def mul_monomial(self, mono: Monomial, c=1) -> "MPoly":
        packed = _encode(mono)
        c = c if type(c) is int else _norm(rational(c))
        return MPoly._raw({m + packed: _norm(v * c) for m, v in self._t.items()})

    def div_monomial(self, mono: Monomial) -> "MPoly":
        packed = _encode(mono)
        out = {}
        for m, v in self._t.items():
            q = _packed_div(m, packed)
            if q is None:
                raise ExactArithmeticError(f"{_format_monomial(mono)} does not divide {self}")
            out[q] = v
        return MPoly._raw(out)

    def exact_div(self, other: "MPoly") -> "MPoly":
        """Quotient of an exact division; raises ExactArithmeticError otherwise."""
        q = self.try_div(other)
        if q is None:
            raise ExactArithmeticError(f"{other} does not divide {self}")
        return q

    def try_div(self, other) -> "MPoly | None":
        """Quotient if ``other`` divides ``self`` exactly, else None."""
        other = MPoly.coerce(other)
        if not other._t:
            raise ExactArithmeticError("division by zero polynomial")
        if other.is_constant():
            return self.scale(1 / Fraction(other._t[0]))
        if not self._t:
            return self
        lm = max(other._t)
        lc = other._t[lm]
        divisor = [(m, c) for m, c in other._t.items() if m != lm]
        rem = dict(self._t)
        heap = [-m for m in rem]
        heapq.heapify(heap)
        quot: dict = {}
        while heap:
            m = -heapq.heappop(heap)
            c = rem.pop(m, None)
            if c is None:
                continue
            qm = _packed_div(m, lm)
            if qm is None:
                return None
            if type(c) is int and type(lc) is int and c % lc == 0:
                qc = c // lc
            else:
                qc = _norm(Fraction(c) / lc)
            quot[qm] = qc
            for m2, c2 in divisor:
                mm = m2 + qm
                old = rem.get(mm)
                s = (old or 0) - c2 * qc
                if s:
                    rem[mm] = _norm(s)
                    if old is None:
                        heapq.heappush(heap, -mm)
                elif old is not None:
                    del rem[mm]
        return MPoly._raw(quot)

    def content(self) -> Fraction:
        """Positive rational c with self/c having coprime integer coefficients."""
        if not self._t:
            return Fraction(0)
        vals = [Fraction(c) for c in self._t.values()]
        g = math.gcd(*(v.numerator for v in vals))
        return Fraction(g, math.lcm(*(v.denominator for v in vals)))

    def monomial_content(self) -> Monomial:
        """Largest monomial dividing every term."""
        if not self._t:
            return ()
        it = iter(self._t)
        common = next(it)
        for m in it:
            if not common:
                break
            common = _packed_min(common, m)
        return _decode(common)

    def subs(self, bindings: Mapping[str, object]) -> "MPoly":
        return mpoly_eval(self, bindings)

    def coefficients_in(self, name: str) -> dict:
        """Split by powers of one variable: {exponent: coefficient MPoly}."""
        i = _index.get(name)
        if i is None or not self._t:
            return {0: self} if self._t else {}
        shift = i * _W
        groups: dict = {}
        for m, c in self._t.items():
            e = (m >> shift) & _FIELD
            groups.setdefault(e, {})[m - (e << shift)] = c
        return {e: MPoly._raw(t) for e, t in groups.items()}

    # comparison and hashing

    def __eq__(self, other):
        if isinstance(other, MPoly):
            return self._t == other._t
        if isinstance(other, (int, Fraction)):
            return self.is_constant() and self._t.get(0, 0) == other
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self._t.items()))
        return self._hash

    # rendering

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda mc: _print_key(mc[0]))

    def signed_pieces(self):
        """[(negative?, body)] in canonical order, bodies unsigned."""
        pieces = []
        for mono, coeff in self.sorted_terms():
            neg = coeff < 0
            mag = -coeff if neg else coeff
            if not mono:
                body = format_rational(mag)
            elif mag == 1:
                body = _format_monomial(mono)
            else:
                body = f"{format_rational(mag)}*{_format_monomial(mono)}"
            pieces.append((neg, body))
        return pieces

    def __str__(self):
        return join_signed(self.signed_pieces())

    def __repr__(self):
        return f"MPoly({str(self)!r})"


def join_signed(pieces: Sequence[tuple]) -> str:
    if not pieces:
        return "0"
    out = []
    for i, (neg, body) in enumerate(pieces):
        if i == 0:
            out.append(f"-{body}" if neg else body)
        else:
            out.append(f" - {body}" if neg else f" + {body}")
    return "".join(out)


def mpoly_arith(p: MPoly, q: MPoly, op: str) -> MPoly:
    if op == "add":
        return p + q
    if op == "sub":
        return p - q
    if op == "mul":
        return p * q
    raise ValueError(f"unknown operation {op!r}")


def mpoly_eval(p: MPoly, bindings: Mapping[str, object]) -> MPoly:
    """Simultaneous substitution of parameters; unbound names pass through."""
    if not bindings:
        return p
    values = {name: MPoly.coerce(v) for name, v in bindings.items()}
    if not (p.variables() & values.keys()):
        return p
    powers: dict = {}

    def power(name, e):
        key = (name, e)
        if key not in powers:
            powers[key] = values[name] ** e
        return powers[key]

    acc: dict = {}
    for mono, coeff in p.items():
        kept = []
        term = MPoly.const(coeff)
        for name, e in mono:
            if name in values:
                term = term * power(name, e)
            else:
                kept.append((name, e))
        if kept:
            term = term.mul_monomial(tuple(kept))
        for m, c in term._t.items():
            acc[m] = acc.get(m, 0) + c
    return MPoly._raw({m: _norm(c) for m, c in acc.items() if c})


def _as_matrix(m: Sequence[Sequence[object]]) -> list:
    rows = [[MPoly.coerce(x) for x in row] for row in m]
    n = len(rows)
    if n == 0 or any(len(r) != n for r in rows):
        raise ValueError("determinant needs a nonempty square matrix")
    return rows


def cofactor_det(m: Sequence[Sequence[object]]) -> MPoly:
    """Laplace expansion along the first row."""
    rows = _as_matrix(m)
    return _cofactor(rows)


def _cofactor(rows: list) -> MPoly:
    n = len(rows)
    if n == 1:
        return rows[0][0]
    if n == 2:
        return rows[0][0] * rows[1][1] - rows[0][1] * rows[1][0]
    total = MPoly()
    for j, entry in enumerate(rows[0]):
        if not entry:
            continue
        minor = [r[:j] + r[j + 1:] for r in rows[1:]]
        term = entry * _cofactor(minor)
        total = total + term if j % 2 == 0 else total - term
    return total


def bareiss_det(m: Sequence[Sequence[object]], cofactor_cutoff: int = 4) -> MPoly:
    """Determinant by fraction-free Bareiss elimination.

    Matrices of dimension <= ``cofactor_cutoff`` go through cofactor
    expansion instead. Every division by the previous pivot must be exact;
    a failure raises ``AssertionError`` since it can only mean a bug.
    """
    rows = _as_matrix(m)
    n = len(rows)
    if n <= cofactor_cutoff:
        return _cofactor(rows)
    sign = 1
    prev = MPoly.const(1)
    for k in range(n - 1):
        if not rows[k][k]:
            for i in range(k + 1, n):
                if rows[i][k]:
                    rows[k], rows[i] = rows[i], rows[k]
                    sign = -sign
                    break
            else:
                return MPoly()
        pivot = rows[k][k]
        for i in range(k + 1, n):
            rik = rows[i][k]
            for j in range(k + 1, n):
                num = pivot * rows[i][j] - rik * rows[k][j]
                q = num.try_div(prev)
                assert q is not None, "inexact division in Bareiss elimination"
                rows[i][j] = q
            rows[i][k] = MPoly()
        prev = pivot
    det = rows[n - 1][n - 1]
    return det if sign > 0 else -det
