"""Hadamard (termwise) products of rational generating functions.

Two constructions are provided and can be checked against each other and
against the pointwise product of expansions:

* ``hadamard_resultant``: the denominator is the resultant
  ``Res_y(D_f(y), y^s D_g(z/y))`` (roots are the pairwise products of the
  operands' inverse roots), the numerator is read off the product series.
* ``hadamard_guess``: Berlekamp-Massey on enough product terms, certified by
  the degree-bound argument.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping, Optional

from .exactarith import MPoly, bareiss_det
from .guess import DEFAULT_TERMS, certify, guess_gf
from .parser import read_mpoly
from .ratgf import Z, RatGF, SeriesPrefix, ZPoly, gf_expand, gf_new


class ImproperOperandError(ValueError):
    pass


class NoRecurrenceFoundError(RuntimeError):
    pass


@dataclass(frozen=True)
class HadamardResult:
    gf: RatGF
    route: str
    certified: bool
    order_bound: int


def hadamard_series(f: RatGF, g: RatGF, n: int) -> SeriesPrefix:
    """Ground truth: the first n coefficients of f ⊙ g by pointwise products."""
    return [a * b for a, b in zip(gf_expand(f, n), gf_expand(g, n))]


def product_order_bound(f: RatGF, g: RatGF) -> int:
    """A priori bound R with deg(denominator) <= R and deg(numerator) < R for f ⊙ g."""
    return f.den.degree * g.den.degree + max(f.transient_length(), g.transient_length())


def sylvester_matrix(p: list, q: list) -> list:
    """Sylvester matrix of two polynomials given as coefficient lists, lowest degree first."""
    r, s = len(p) - 1, len(q) - 1
    n = r + s
    zero = MPoly()
    rows = []
    for i in range(s):
        row = [zero] * n
        for k, c in enumerate(reversed(p)):
            row[i + k] = c
        rows.append(row)
    for i in range(r):
        row = [zero] * n
        for k, c in enumerate(reversed(q)):
            row[i + k] = c
        rows.append(row)
    return rows


def product_denominator(df: ZPoly, dg: ZPoly) -> ZPoly:
    """Polynomial in z whose inverse roots are all products of inverse roots of df and dg."""
    r, s = df.degree, dg.degree
    if r == 0 or s == 0:
        return ZPoly([1])
    p = list(df.coeffs)
    zv = MPoly.var(Z)
    # y^s * dg(z/y): coefficient of y^(s-j) is dg_j * z^j
    q = [dg[s - k] * zv ** (s - k) for k in range(s + 1)]
    det = bareiss_det(sylvester_matrix(p, q))
    den = ZPoly.from_mpoly(det, Z)
    c0 = den[0]
    if not c0.is_constant() or not c0:
        raise AssertionError(f"resultant has non-unit constant term {c0}")
    return den * (1 / c0.constant_value())


def hadamard_resultant(f: RatGF, g: RatGF, split_transients: bool = True) -> HadamardResult:
    if not split_transients and not (f.is_proper() and g.is_proper()):
        raise ImproperOperandError(
            "improper operand: split off the polynomial part (transient) first "
            "or call with split_transients=True"
        )
    den = product_denominator(f.den, g.den)
    # terms before the transient length are corrected through the numerator
    bound = den.degree + max(f.transient_length(), g.transient_length())
    oracle = hadamard_series(f, g, 2 * bound)
    num = (den * ZPoly(oracle[:bound])).truncate(bound)
    gf = gf_new(num, den)
    return HadamardResult(gf, "resultant", certify(gf, oracle, bound), bound)


def hadamard_guess(
    f: RatGF,
    g: RatGF,
    order_bound: Optional[int] = None,
    terms: int = DEFAULT_TERMS,
) -> HadamardResult:
    a_priori = product_order_bound(f, g)
    if order_bound is None:
        order_bound = a_priori
    if terms < 2 * order_bound:
        raise ValueError(f"need at least {2 * order_bound} terms for order bound {order_bound}")
    series = hadamard_series(f, g, terms)
    outcome = guess_gf(series, order_bound)
    if not outcome.found:
        raise NoRecurrenceFoundError(
            f"no recurrence found within bound {order_bound} ({outcome.reason})"
        )
    gf = outcome.gf
    within = gf.den.degree <= order_bound and gf.num.degree < order_bound
    # the certificate is only a proof when the true product also obeys the bound
    certified = within and order_bound >= a_priori and certify(gf, series, order_bound)
    return HadamardResult(gf, "guess", certified, order_bound)


# Closed form of P ⊙ (a+bz)/(1+cz+dz^2) for the Pell-Padovan tetranacci GF,
# transcribed term by term as printed.
CLOSED_FORM_NUMERATOR = (
    "b - a*c",
    "-a*d - c*b + a*c^2",
    "d*b",
    "d*(a*d - 2*c*b)",
    "-d*(-d*b + d*a*c - c^2*b)",
    "d^2*(a*d - c*b)",
)
CLOSED_FORM_DENOMINATOR = (
    "1",
    "0",
    "-c^2 + 2*d",
    "2*c*(c^2 - 3*d)",
    "-c^4 + 4*c^2*d - d^2",
    "-2*c*d^2",
    "d^2*(c^2 + 2*d)",
    "-2*c*d^3",
    "d^4",
)


@dataclass(frozen=True)
class ClosedForm:
    numerator: ZPoly
    denominator: ZPoly

    @classmethod
    def fixture(cls) -> "ClosedForm":
        return cls(
            ZPoly(read_mpoly(t) for t in CLOSED_FORM_NUMERATOR),
            ZPoly(read_mpoly(t) for t in CLOSED_FORM_DENOMINATOR),
        )


def _bindings(a, b, c, d) -> Mapping[str, MPoly]:
    return {
        name: MPoly.coerce(v)
        for name, v in zip("abcd", (a, b, c, d))
        if v is not None
    }


def closed_form_paper(a=None, b=None, c=None, d=None) -> RatGF:
    """N/D with the given bindings; ``None`` keeps a parameter symbolic."""
    cf = ClosedForm.fixture()
    env = _bindings(a, b, c, d)
    return gf_new(cf.numerator.subs(env), cf.denominator.subs(env))


def shifted_closed_form(a=None, b=None, c=None, d=None) -> RatGF:
    """z * N/D: the closed form aligned with the product series from index 0."""
    f = closed_form_paper(a, b, c, d)
    return gf_new(f.num.shift(1), f.den)


def hadamard_closed_form(a=None, b=None, c=None, d=None) -> HadamardResult:
    """The closed-form route for P ⊙ (a+bz)/(1+cz+dz^2), certified against the oracle."""
    from .catalog import general_second_order_gf, pell_padovan_gf

    gf = shifted_closed_form(a, b, c, d)
    f, g = pell_padovan_gf(), general_second_order_gf(a, b, c, d)
    bound = product_order_bound(f, g)
    oracle = hadamard_series(f, g, 2 * bound)
    return HadamardResult(gf, "closed_form", certify(gf, oracle, bound), bound)
