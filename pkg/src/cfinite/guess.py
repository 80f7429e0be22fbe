"""Recurrence and generating-function guessing from a coefficient prefix.

Berlekamp-Massey is run fraction-free over the parameter ring: instead of
dividing by the previous discrepancy the connection polynomial is scaled,
so every intermediate value stays an MPoly and zero tests stay exact.
With symbolic parameters a discrepancy that is a nonzero polynomial counts
as nonzero even if it vanishes at special parameter values (generic guess).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd, lcm
from typing import Optional, Sequence

from .exactarith import MPoly
from .ratgf import LinRec, RatGF, SeriesPrefix, gf_expand, rec_to_gf

DEFAULT_TERMS = 30
DEFAULT_MAX_ORDER = 8


class InsufficientEvidenceError(ValueError):
    pass


@dataclass(frozen=True)
class GuessOutcome:
    found: bool
    order: int
    terms_used: int
    rec: Optional[LinRec] = None
    gf: Optional[RatGF] = None
    reason: str = ""


def _trim(p: list) -> list:
    while len(p) > 1 and not p[-1]:
        p.pop()
    return p


def _primitive(p: list) -> list:
    """Divide out the rational content and the common monomial factor."""
    nz = [c for c in p if c]
    if not nz:
        return p
    content = nz[0].content()
    for c in nz[1:]:
        x = c.content()
        content = Fraction(gcd(content.numerator, x.numerator), lcm(content.denominator, x.denominator))
    mono = nz[0].monomial_content()
    for c in nz[1:]:
        if not mono:
            break
        mono = _gcd_monomial(mono, c.monomial_content())
    scale = (-1 if nz[0].leading_coefficient() < 0 else 1) / content
    if mono:
        p = [c.div_monomial(mono) if c else c for c in p]
    if scale == 1:
        return p
    return [c.scale(scale) for c in p]


def _gcd_monomial(m1, m2):
    d2 = dict(m2)
    return tuple((n, min(e, d2[n])) for n, e in m1 if n in d2)


def _divide_all(p: list, q: MPoly):
    """p / q coefficientwise, or None unless q divides every entry."""
    out = [None] * len(p)
    # small entries first: a failed division is detected sooner
    for i in sorted(range(len(p)), key=lambda i: len(p[i])):
        if not p[i]:
            out[i] = p[i]
            continue
        r = p[i].try_div(q)
        if r is None:
            return None
        out[i] = r
    return out


def berlekamp_massey(seq: Sequence, max_order: Optional[int] = None):
    """Connection polynomial C and linear complexity L of ``seq``.

    C is returned up to a nonzero scalar in the parameter ring:
    sum_i C[i]*seq[n-i] == 0 for L <= n < len(seq). If ``max_order`` is
    given the scan stops as soon as L exceeds it.

    The update is C <- b*C - d*x^m*B, which multiplies the scale of C (its
    constant coefficient) by the old discrepancy b. The excess is removed by
    exact division by the previous scale, by b, or by b over the previous
    scale, whichever divide; any exact division keeps C a valid
    connection polynomial, so this only controls size.
    """
    s = [MPoly.coerce(v) for v in seq]
    C = [MPoly.const(1)]
    B = [MPoly.const(1)]
    b = MPoly.const(1)
    L = 0
    m = 1
    for n in range(len(s)):
        d = MPoly()
        for i, ci in enumerate(C):
            if ci and s[n - i]:
                d = d + ci * s[n - i]
        if not d:
            m += 1
            continue
        size = max(len(C), len(B) + m)
        newC = []
        for i in range(size):
            t = b * C[i] if i < len(C) else MPoly()
            if m <= i < len(B) + m and B[i - m]:
                t = t - d * B[i - m]
            newC.append(t)
        newC = _trim(newC)
        scale = C[0]
        candidates = [q for q in (scale, b) if not q.is_constant()]
        if not scale.is_constant():
            ratio = b.try_div(scale)
            if ratio is not None and not ratio.is_constant():
                candidates.append(ratio)
        if candidates:
            progress = True
            while progress:
                progress = False
                for q in candidates:
                    reduced = _divide_all(newC, q)
                    if reduced is not None:
                        newC, progress = reduced, True
        if 2 * L <= n:
            B, b = C, d
            L = n + 1 - L
            m = 1
        else:
            m += 1
        C = _primitive(newC)
        if max_order is not None and L > max_order:
            break
    return _trim(C), L


def guess_rec(prefix: Sequence, max_order: int = DEFAULT_MAX_ORDER) -> GuessOutcome:
    terms = [MPoly.coerce(v) for v in prefix]
    C, L = berlekamp_massey(terms, max_order)
    if L > max_order:
        return GuessOutcome(False, L, len(terms), reason="no recurrence found within bound")
    lead = C[0]
    coeffs = []
    for c in C[1:]:
        q = c.try_div(lead)
        if q is None:
            return GuessOutcome(
                False, L, len(terms),
                reason="recurrence coefficients are not polynomial in the parameters",
            )
        coeffs.append(-q)
    rec = LinRec(tuple(coeffs), tuple(terms[:L]), L)
    if rec.terms(len(terms)) != terms:
        raise AssertionError("Berlekamp-Massey recurrence does not reproduce its input")
    return GuessOutcome(True, L, len(terms), rec=rec, gf=rec_to_gf(rec))


def guess_gf(prefix: Sequence, max_order: int = DEFAULT_MAX_ORDER) -> GuessOutcome:
    outcome = guess_rec(prefix, max_order)
    if outcome.found:
        terms = [MPoly.coerce(v) for v in prefix]
        if gf_expand(outcome.gf, len(terms)) != terms:
            raise AssertionError("guessed generating function does not reproduce its input")
    return outcome


def certify(candidate: RatGF, oracle: SeriesPrefix, bound: int) -> bool:
    """Degree-bound certificate.

    Two rational series with denominator degree <= bound and numerator
    degree < bound that agree on 2*bound coefficients are equal, because
    their cross-multiplied difference has degree < 2*bound yet vanishes to
    order 2*bound. The caller vouches that the true series obeys the bounds.
    """
    need = 2 * bound
    if len(oracle) < need:
        raise InsufficientEvidenceError(
            f"insufficient evidence: need {need} oracle coefficients, got {len(oracle)}"
        )
    if candidate.den.degree > bound or candidate.num.degree >= bound:
        raise ValueError(
            f"candidate {candidate} exceeds the degree bound {bound}"
        )
    expected = [MPoly.coerce(v) for v in oracle[:need]]
    return gf_expand(candidate, need) == expected
