import random
from fractions import Fraction

import pytest
from hypothesis import given

from cfinite import catalog
from cfinite.exactarith import MPoly
from cfinite.guess import InsufficientEvidenceError, berlekamp_massey, certify, guess_gf, guess_rec
from cfinite.hadamard import hadamard_series, shifted_closed_form
from cfinite.ratgf import ZPoly, gf_equal, gf_expand, gf_new, zpoly

from conftest import numeric_gfs, random_gf
from oracles import hankel_min_order, iterate

k = MPoly.var("k")


def consts(seq):
    return [c.constant_value() for c in seq]


def pell_padovan_times(name, bindings, n):
    f = catalog.pell_padovan_gf()
    return hadamard_series(f, catalog.family_gf(catalog.FamilySpec(name, bindings)), n)


class TestGuessRec:
    def test_fibonacci(self):
        out = guess_rec([0, 1, 1, 2, 3, 5, 8, 13], 4)
        assert out.found and out.order == 2
        assert out.rec.coeffs == (MPoly.const(1), MPoly.const(1))
        assert str(out.gf) == "(z)/(1 - z - z^2)"

    def test_fibonacci_times_powers_of_two(self):
        seq = [1, 2, 8, 24, 80]
        assert hankel_min_order(seq, 2) == (2, [2, 4])
        out = guess_rec(seq, 2)
        assert out.found and out.order == 2
        assert consts(out.rec.coeffs) == [2, 4]

    def test_zeros(self):
        out = guess_gf([0] * 10, 3)
        assert out.found and out.order == 0
        assert not out.gf.num

    def test_geometric_break(self):
        out = guess_rec([1, 2, 4, 8, 17], 1)
        assert not out.found
        assert out.reason == "no recurrence found within bound"

    def test_leading_zeros_not_stripped(self):
        seq = [0, 0, 0, 1, 1, 2, 3, 5, 8, 13, 21]
        out = guess_gf(seq, 5)
        assert out.found and out.order == hankel_min_order(seq, 5)[0] == 4
        assert out.rec.offset == 4
        assert consts(gf_expand(out.gf, 11)) == [0, 0, 0, 1, 1, 2, 3, 5, 8, 13, 21]
        assert out.gf.num == zpoly(0, 0, 0, 1)

    def test_rationals(self):
        seq = [Fraction(1, 3 ** n) for n in range(12)]
        out = guess_gf(seq, 3)
        assert out.found and out.order == 1
        assert out.gf.den == zpoly(1, Fraction(-1, 3))

    def test_ones(self):
        out = guess_gf([1] * 30, 8)
        assert str(out.gf) == "(1)/(1 - z)"

    def test_symbolic_k_fibonacci(self):
        seq = catalog.family_terms(catalog.FamilySpec("k_fibonacci"), 10)
        out = guess_gf(seq, 4)
        assert out.found and out.order == 2
        assert str(out.gf) == "(1)/(1 - k*z - z^2)"

    def test_k_pell_product(self):
        seq = pell_padovan_times("k_pell", {"k": 1}, 30)
        out = guess_gf(seq, 8)
        assert out.found
        assert gf_equal(out.gf, shifted_closed_form(0, 1, -2, -1))

    def test_short_window(self):
        seq = pell_padovan_times("k_fibonacci", {"k": 1}, 16)
        early = guess_gf(seq[:12], 8)
        assert early.found
        with pytest.raises(InsufficientEvidenceError):
            certify(early.gf, seq[:12], 8)
        assert not certify(early.gf, seq, 8)
        late = guess_gf(seq, 8)
        assert certify(late.gf, seq, 8)

    def test_symbolic_guess_commutes_with_specialization(self):
        seq = pell_padovan_times("k_fibonacci", {}, 20)
        symbolic = guess_gf(seq, 8)
        assert symbolic.found and symbolic.order == 8
        for kv in (1, 2, 3, -2, Fraction(1, 2)):
            numeric = guess_gf([t.subs({"k": kv}) for t in seq], 8)
            assert numeric.found
            assert gf_equal(symbolic.gf.subs({"k": kv}), numeric.gf)


class TestProperties:
    @given(numeric_gfs(max_num=5, max_den=5))
    def test_soundness(self, f):
        seq = gf_expand(f, 24)
        out = guess_gf(seq, 11)
        if out.found:
            assert out.rec.terms(24) == seq
            assert gf_expand(out.gf, 24) == seq

    def test_minimality_distinct_roots(self, rng):
        for _ in range(150):
            r = rng.randint(1, 5)
            roots = rng.sample([q for q in range(-6, 7) if q], r)
            den = ZPoly([1])
            for q in roots:
                den = den * zpoly(1, -q)
            while True:
                num = [rng.randint(-5, 5) for _ in range(r)]
                # coprime iff the numerator is nonzero at every pole 1/q
                if all(sum(Fraction(cf, q ** i) for i, cf in enumerate(num)) for q in roots):
                    break
            f = gf_new(ZPoly(num), den)
            seq = gf_expand(f, 2 * r + 4 + rng.randint(0, 4))
            out = guess_rec(seq, 6)
            assert out.found and out.order == r
            assert hankel_min_order(consts(seq), 6)[0] == r

    def test_completeness(self):
        rng = random.Random(1000)
        for _ in range(1000):
            f = random_gf(rng, 4, 5, proper=True)
            bound = rng.randint(max(f.den.degree, 1), 6)
            seq = gf_expand(f, 2 * bound + rng.randint(0, 3))
            out = guess_gf(seq, bound)
            assert out.found
            assert gf_equal(out.gf, f)

    def test_matches_hankel_oracle(self, rng):
        for _ in range(200):
            seq = [rng.randint(-3, 3) for _ in range(rng.randint(1, 12))]
            out = guess_rec(seq, 6)
            want = hankel_min_order(seq, 6)
            if want is None:
                assert not out.found
            else:
                assert out.found and out.order == want[0]


class TestCertify:
    def test_fibonacci(self):
        oracle = iterate([1, 1], [0, 1], 8)
        assert certify(gf_new(zpoly(0, 1), zpoly(1, -1, -1)), oracle, 2)

    def test_mismatch(self):
        assert not certify(gf_new(zpoly(1), zpoly(1, -1)), [1, 1, 1, 2], 2)

    def test_k_mersenne_product(self):
        oracle = pell_padovan_times("k_mersenne", {"k": 1}, 16)
        assert certify(shifted_closed_form(0, 1, -3, 2), oracle, 8)

    def test_insufficient_evidence(self):
        with pytest.raises(InsufficientEvidenceError, match="insufficient evidence"):
            certify(gf_new(zpoly(1), zpoly(1, -1)), [1, 1, 1], 2)

    def test_degree_bounds_enforced(self):
        with pytest.raises(ValueError):
            certify(gf_new(zpoly(0, 0, 1), zpoly(1, -1)), [0] * 4, 2)

    def test_agrees_with_gf_equal(self, rng):
        for _ in range(300):
            R = rng.randint(1, 4)
            p = random_gf(rng, R - 1, R, proper=True)
            q = p if rng.random() < 0.3 else random_gf(rng, R - 1, R, proper=True)
            oracle = gf_expand(q, 2 * R)
            assert certify(p, oracle, R) == gf_equal(p, q)


def test_berlekamp_massey_returns_connection_polynomial():
    seq = [MPoly.const(v) for v in iterate([0, 1, 2, 1], [0, 1, 1, 1], 12)]
    C, L = berlekamp_massey(seq)
    assert L == 4
    for n in range(L, 12):
        assert sum((C[i] * seq[n - i] for i in range(len(C))), MPoly()) == 0


def test_berlekamp_massey_symbolic_stays_polynomial():
    seq = catalog.family_terms(catalog.FamilySpec("chebyshev_T"), 8)
    C, L = berlekamp_massey(seq)
    assert L == 2
    assert all(isinstance(c, MPoly) for c in C)
