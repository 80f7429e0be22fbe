"""Command-line interface.

Exit codes: 0 success, 1 usage error, 2 parse error, 3 verification
failure, 4 guess failure.
"""

from __future__ import annotations

import argparse
import sys
from typing import Optional, Sequence

from . import catalog
from .exactarith import MPoly, rational
from .guess import DEFAULT_MAX_ORDER, DEFAULT_TERMS, guess_gf
from .hadamard import (
    NoRecurrenceFoundError,
    closed_form_paper,
    hadamard_guess,
    hadamard_resultant,
    product_order_bound,
    shifted_closed_form,
)
from .parser import LoweringError, ParseError, gf_sexp, mpoly_sexp, read_gf, zpoly_sexp
from .ratgf import GFError, gf_equal

EXIT_OK, EXIT_USAGE, EXIT_PARSE, EXIT_VERIFY, EXIT_GUESS = 0, 1, 2, 3, 4


class UsageError(Exception):
    pass


class InputError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: error: {message}")


def _parse_bindings(items) -> dict:
    out = {}
    for item in items or ():
        name, sep, value = item.partition("=")
        name = name.strip()
        if not sep or not name.isidentifier() or name == "z":
            raise InputError(f"bad binding {item!r}: expected name=value")
        try:
            out[name] = rational(value)
        except (ValueError, TypeError) as exc:
            raise InputError(f"bad binding {item!r}: value must be an integer or fraction") from exc
    return out


def _gf(text: str, bindings: dict):
    try:
        f = read_gf(text)
        return f.subs(bindings) if bindings else f
    except (ParseError, LoweringError, GFError) as exc:
        raise InputError(f"{text!r}: {exc}") from exc


def _show_gf(f, fmt: str) -> str:
    return gf_sexp(f) if fmt == "sexp" else str(f)


def _show_coeff(c: MPoly, fmt: str) -> str:
    return mpoly_sexp(c) if fmt == "sexp" else str(c)


def _read_terms(text: str) -> list:
    """Whitespace-separated exact rationals, or "index value" lines with contiguous indices."""
    lines = [ln.split() for ln in text.splitlines()]
    lines = [ln for ln in lines if ln and not ln[0].startswith("#")]
    pairs = len(lines) > 1 and all(len(ln) == 2 for ln in lines)
    if pairs:
        try:
            idx = [int(ln[0]) for ln in lines]
        except ValueError:
            pairs = False
        else:
            if idx != list(range(idx[0], idx[0] + len(idx))):
                raise InputError("b-file indices must be contiguous")
    tokens = [ln[1] for ln in lines] if pairs else [t for ln in lines for t in ln]
    try:
        return [MPoly.const(rational(t)) for t in tokens]
    except (ValueError, TypeError) as exc:
        raise InputError(str(exc)) from exc


def cmd_expand(args, out):
    f = _gf(args.gf, _parse_bindings(args.bind))
    for n, c in enumerate(f.expand(args.terms)):
        print(f"{n}\t{_show_coeff(c, args.format)}", file=out)
    return EXIT_OK


def cmd_hadamard(args, out):
    env = _parse_bindings(args.bind)
    f, g = _gf(args.f, env), _gf(args.g, env)
    results = []
    if args.route in ("resultant", "both"):
        results.append(hadamard_resultant(f, g))
    if args.route in ("guess", "both"):
        try:
            results.append(hadamard_guess(f, g, terms=max(args.terms, 2 * product_order_bound(f, g))))
        except NoRecurrenceFoundError as exc:
            print(str(exc), file=out)
            return EXIT_GUESS
    print(_show_gf(results[0].gf, args.format), file=out)
    if args.route != "both":
        return EXIT_OK
    res, gss = results
    agree = gf_equal(res.gf, gss.gf)
    print(f"routes agree: {'yes' if agree else 'no'}", file=out)
    for r in results:
        print(f"{r.route}: certified={'yes' if r.certified else 'no'} order_bound={r.order_bound}", file=out)
    if not agree:
        print(f"guess route gave {_show_gf(gss.gf, args.format)}", file=out)
    ok = agree and res.certified and gss.certified
    return EXIT_OK if ok else EXIT_VERIFY


def cmd_guess(args, out):
    if args.terms_file:
        with open(args.terms_file) as fh:
            text = fh.read()
    else:
        text = sys.stdin.read()
    terms = _read_terms(text)
    outcome = guess_gf(terms, args.max_order)
    if not outcome.found:
        print("no recurrence found within bound", file=out)
        return EXIT_GUESS
    print(f"order: {outcome.order}", file=out)
    print(f"recurrence: {outcome.rec}", file=out)
    print(f"gf: {_show_gf(outcome.gf, args.format)}", file=out)
    return EXIT_OK


def cmd_catalog(args, out):
    spec = catalog.FamilySpec(args.family, _parse_bindings(args.bind))
    print(f"gf: {_show_gf(catalog.family_gf(spec), args.format)}", file=out)
    for n, c in enumerate(catalog.family_terms(spec, args.terms)):
        print(f"{n}\t{_show_coeff(c, args.format)}", file=out)
    return EXIT_OK


def cmd_closed_form(args, out):
    env = _parse_bindings(args.bind)
    f = closed_form_paper(**{k: v for k, v in env.items() if k in "abcd"})
    show = zpoly_sexp if args.format == "sexp" else str
    print(f"N: {show(f.num)}", file=out)
    print(f"D: {show(f.den)}", file=out)
    return EXIT_OK


def cmd_verify_paper(args, out):
    env = _parse_bindings(args.bind)
    extra = set(env) - set("abcd")
    if extra:
        raise InputError(f"verify-paper binds only a, b, c, d (got {', '.join(sorted(extra))})")
    params = {k: env.get(k) for k in "abcd"}
    f = catalog.pell_padovan_gf()
    g = catalog.general_second_order_gf(**params)
    cf = closed_form_paper(**params)
    shifted = shifted_closed_form(**params)
    print(f"P(z) = {f}", file=out)
    print(f"X(z) = {g}", file=out)
    print(f"N = {cf.num}", file=out)
    print(f"D = {cf.den}", file=out)
    ok = True
    for route, run in (
        ("resultant", lambda: hadamard_resultant(f, g)),
        ("guess", lambda: hadamard_guess(f, g, 8, max(args.terms, 16))),
    ):
        try:
            r = run()
        except NoRecurrenceFoundError as exc:
            print(f"{route} route: {exc}", file=out)
            ok = False
            continue
        holds = gf_equal(r.gf, shifted)
        unshifted = gf_equal(r.gf, cf)
        print(
            f"{route} route: certified={'yes' if r.certified else 'no'} order_bound={r.order_bound} "
            f"P (.) X == z*N/D: {'holds' if holds else 'fails'}; "
            f"P (.) X == N/D: {'holds' if unshifted else 'fails'}",
            file=out,
        )
        ok = ok and holds and r.certified
    if ok:
        print("certified identity: P (.) X = z*N/D", file=out)
        return EXIT_OK
    print("verification failed", file=out)
    return EXIT_VERIFY


def cmd_crosscheck(args, out):
    spec = catalog.FamilySpec(args.family, _parse_bindings(args.bind))
    try:
        bf = catalog.read_bfile(args.bfile)
    except catalog.BFileError as exc:
        raise InputError(f"{args.bfile}: {exc}") from exc
    report = catalog.crosscheck_bfile(spec, bf, args.offset)
    print(str(report), file=out)
    return EXIT_OK if report.agree else EXIT_VERIFY


def cmd_fetch_bfile(args, out):
    path = catalog.fetch_bfile(args.anumber, args.dest)
    print(str(path), file=out)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--format", choices=("text", "sexp"), default="text")
    bind = _Parser(add_help=False)
    bind.add_argument("--bind", nargs="+", action="extend", metavar="NAME=VALUE", default=[])

    p = _Parser(prog="cfinite", description="C-finite sequences and Hadamard products of rational GFs")
    sub = p.add_subparsers(dest="command", parser_class=_Parser)
    sub.required = True

    s = sub.add_parser("expand", parents=[common, bind], help="series coefficients of a GF")
    s.add_argument("gf")
    s.add_argument("--terms", type=int, default=10)
    s.set_defaults(func=cmd_expand)

    s = sub.add_parser("hadamard", parents=[common, bind], help="Hadamard product of two GFs")
    s.add_argument("f")
    s.add_argument("g")
    s.add_argument("--route", choices=("resultant", "guess", "both"), default="resultant")
    s.add_argument("--terms", type=int, default=DEFAULT_TERMS)
    s.set_defaults(func=cmd_hadamard)

    s = sub.add_parser("guess", parents=[common], help="guess a recurrence from terms")
    s.add_argument("--max-order", type=int, default=DEFAULT_MAX_ORDER)
    s.add_argument("--terms-file")
    s.set_defaults(func=cmd_guess)

    s = sub.add_parser("catalog", parents=[common, bind], help="a named family")
    s.add_argument("family", choices=catalog.FAMILIES)
    s.add_argument("--terms", type=int, default=10)
    s.set_defaults(func=cmd_catalog)

    s = sub.add_parser("closed-form", parents=[common, bind], help="print the closed form N and D")
    s.set_defaults(func=cmd_closed_form)

    s = sub.add_parser("verify-paper", parents=[bind], help="check P (.) X against z*N/D")
    s.add_argument("--terms", type=int, default=DEFAULT_TERMS)
    s.set_defaults(func=cmd_verify_paper)

    s = sub.add_parser("crosscheck", parents=[bind], help="compare a family with an OEIS b-file")
    s.add_argument("family", choices=catalog.FAMILIES)
    s.add_argument("--bfile", required=True)
    s.add_argument("--offset", type=int, default=0)
    s.set_defaults(func=cmd_crosscheck)

    s = sub.add_parser("fetch-bfile", help="download an OEIS b-file (needs network)")
    s.add_argument("anumber")
    s.add_argument("--dest", default=".")
    s.set_defaults(func=cmd_fetch_bfile)
    return p


def main(argv: Optional[Sequence[str]] = None, out=None) -> int:
    out = out or sys.stdout
    try:
        args = build_parser().parse_args(argv)
    except UsageError as exc:
        print(str(exc), file=sys.stderr)
        return EXIT_USAGE
    except SystemExit as exc:  # --help
        return EXIT_OK if not exc.code else EXIT_USAGE
    try:
        return args.func(args, out)
    except (InputError, catalog.UnknownFamilyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
