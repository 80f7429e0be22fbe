from fractions import Fraction

import pytest
from hypothesis import given

from cfinite import catalog
from cfinite.exactarith import MPoly
from cfinite.parser import (
    BinOp,
    Ident,
    LoweringError,
    Neg,
    Num,
    ParseError,
    Pow,
    gf_sexp,
    lower,
    mpoly_sexp,
    parse_gf,
    read_gf,
    read_mpoly,
    to_sexp,
)
from cfinite.ratgf import ZPoly, gf_equal, gf_new, zpoly

from conftest import mpolys, numeric_gfs

a, b, c, d, x, z = (MPoly.var(n) for n in "abcdxz")


def test_pell_padovan():
    f = read_gf("(z + z^2)/(1 - z^2 - 2*z^3 - z^4)")
    assert f.num == zpoly(0, 1, 1) and f.den == zpoly(1, 0, -1, -2, -1)


def test_general_family():
    f = read_gf("(a + b*z)/(1 + c*z + d*z^2)")
    assert f.num == ZPoly([a, b]) and f.den == ZPoly([1, c, d])


def test_chebyshev_u():
    f = read_gf("1/(1 - 2*x*z + z^2)")
    assert gf_equal(f, catalog.family_gf(catalog.FamilySpec("chebyshev_U")))


def test_ast_shape():
    assert parse_gf("-z^2") == Neg(Pow(Ident("z"), 2))
    assert parse_gf("1 - 2*z") == BinOp("-", Num(Fraction(1)), BinOp("*", Num(Fraction(2)), Ident("z")))
    assert to_sexp(parse_gf("(a+z)^3")) == "(^ (+ a z) 3)"


def test_unary_minus_binds_to_factor():
    # -z^2 is -(z^2), never (-z)^2
    assert read_gf("-z^2").num == zpoly(0, 0, -1)
    assert read_gf("(-z)^2").num == zpoly(0, 0, 1)
    assert read_gf("--z").num == zpoly(0, 1)


def test_fractions():
    f = read_gf("1/2 + 3/4*z")
    assert f.num == zpoly(Fraction(1, 2), Fraction(3, 4))
    assert read_gf("(1/2)/(1 - z/3)").den == zpoly(1, Fraction(-1, 3))


def test_nested_division_flattens():
    f = read_gf("1/(1 - z/(1 - z))")
    # (1 - z)/(1 - 2z)
    assert gf_equal(f, gf_new(zpoly(1, -1), zpoly(1, -2)))


@pytest.mark.parametrize(
    "text,pos",
    [("2z", 1), ("1 +", 3), ("(1 + z", 6), ("z^a", 2), ("1 $ 2", 2), ("", 0), (")", 0)],
)
def test_syntax_errors_carry_position(text, pos):
    with pytest.raises(ParseError) as err:
        parse_gf(text)
    assert err.value.position == pos
    assert f"at position {pos}" in str(err.value)


def test_implicit_multiplication_rejected():
    with pytest.raises(ParseError):
        parse_gf("2 z")


@pytest.mark.parametrize("text", ["1/z", "z/(z + z^2)", "1/(a + z)", "1/0", "1/(z - z)"])
def test_lowering_errors(text):
    with pytest.raises(LoweringError):
        read_gf(text)


def test_read_mpoly():
    assert read_mpoly("d*(a*d - 2*c*b)") == a * d * d - 2 * b * c * d
    with pytest.raises(LoweringError):
        read_mpoly("1 + z")


def test_sexp():
    f = read_gf("(a + b*z)/(1 + c*z + d*z^2)")
    assert gf_sexp(f) == "(/ (poly z a b) (poly z 1 c d))"
    assert mpoly_sexp(read_mpoly("-3/2*a^2*b + 1")) == "(+ 1 (* -3/2 (^ a 2) b))"
    assert mpoly_sexp(MPoly()) == "0"


@given(numeric_gfs(max_num=5, max_den=5))
def test_print_parse_round_trip(f):
    assert gf_equal(read_gf(str(f)), f)


@given(mpolys(), mpolys())
def test_symbolic_round_trip(p, q):
    f = gf_new(ZPoly([p, q]), ZPoly([1, q, p]))
    g = read_gf(str(f))
    assert g.num == f.num and g.den == f.den


@given(mpolys())
def test_mpoly_print_parse(p):
    assert read_mpoly(str(p)) == p


def test_lower_is_exposed():
    assert gf_equal(lower(parse_gf("z/(1 - z - z^2)")), gf_new(zpoly(0, 1), zpoly(1, -1, -1)))
