"""Exact C-finite sequences, rational generating functions and their Hadamard products."""

from .catalog import FamilySpec, family_gf, family_terms, general_second_order_gf, pell_padovan_gf
from .exactarith import ExactArithmeticError, MPoly, Rational, bareiss_det, cofactor_det, rational
from .guess import GuessOutcome, berlekamp_massey, certify, guess_gf, guess_rec
from .hadamard import (
    ClosedForm,
    HadamardResult,
    closed_form_paper,
    hadamard_closed_form,
    hadamard_guess,
    hadamard_resultant,
    hadamard_series,
    shifted_closed_form,
)
from .parser import parse_gf, read_gf
from .ratgf import LinRec, RatGF, ZPoly, gf_equal, gf_expand, gf_new, gf_to_rec, rec_to_gf

__version__ = "0.1.0"
