"""Named sequences: Pell-Padovan tetranacci and eight second-order families.

Each family exists twice on purpose. ``family_gf`` builds the generating
function (a + b z)/(1 + c z + d z^2) from the family's (a, b, c, d) row;
``family_terms`` iterates the family's recursion from its two initial
values. Agreement of the two is a consistency check of the table itself.
"""

from __future__ import annotations

import re
import urllib.request
from dataclasses import dataclass, field
from pathlib import Path
from typing import Mapping, Optional

from .exactarith import MPoly
from .ratgf import RatGF, SeriesPrefix, ZPoly, gf_new

PELL_PADOVAN = "pell_padovan_tetranacci"
SYMBOLIC_TERM_CAP = 64

_k, _x = MPoly.var("k"), MPoly.var("x")
_one = MPoly.const(1)
_zero = MPoly()

# name -> (a, b, c, d)
FAMILY_PARAMETERS = {
    "k_fibonacci": (_one, _zero, -_k, -_one),
    "k_pell": (_zero, _one, MPoly.const(-2), -_k),
    "k_jacobsthal": (_zero, _one, -_k, MPoly.const(-2)),
    "k_mersenne": (_zero, _one, -3 * _k, MPoly.const(2)),
    "chebyshev_T": (_one, -_x, -2 * _x, _one),
    "chebyshev_U": (_one, _zero, -2 * _x, _one),
    "chebyshev_V": (_one, -_one, -2 * _x, _one),
    "chebyshev_W": (_one, _one, -2 * _x, _one),
}

# name -> ((p, q) with X_n = p X_{n-1} + q X_{n-2}, (X_0, X_1))
FAMILY_RECURSIONS = {
    "k_fibonacci": ((_k, _one), (_one, _k)),
    "k_pell": ((MPoly.const(2), _k), (_zero, _one)),
    "k_jacobsthal": ((_k, MPoly.const(2)), (_zero, _one)),
    "k_mersenne": ((3 * _k, MPoly.const(-2)), (_zero, _one)),
    "chebyshev_T": ((2 * _x, -_one), (_one, _x)),
    "chebyshev_U": ((2 * _x, -_one), (_one, 2 * _x)),
    "chebyshev_V": ((2 * _x, -_one), (_one, 2 * _x - 1)),
    "chebyshev_W": ((2 * _x, -_one), (_one, 2 * _x + 1)),
}

FAMILIES = (PELL_PADOVAN,) + tuple(FAMILY_PARAMETERS)


class UnknownFamilyError(KeyError):
    pass


@dataclass(frozen=True)
class FamilySpec:
    name: str
    bindings: Mapping[str, object] = field(default_factory=dict)

    def __post_init__(self):
        if self.name not in FAMILIES:
            raise UnknownFamilyError(f"unknown family {self.name!r}; choose from {', '.join(FAMILIES)}")
        object.__setattr__(
            self, "bindings", {k: MPoly.coerce(v) for k, v in dict(self.bindings).items()}
        )

    def parameters(self):
        """The family's (a, b, c, d) under the bindings."""
        if self.name == PELL_PADOVAN:
            raise ValueError("the Pell-Padovan sequence is not a second-order family")
        return tuple(p.subs(self.bindings) for p in FAMILY_PARAMETERS[self.name])

    def is_numeric(self) -> bool:
        if self.name == PELL_PADOVAN:
            return True
        return all(p.is_constant() for p in self.parameters())


def pell_padovan_gf() -> RatGF:
    return gf_new(ZPoly([0, 1, 1]), ZPoly([1, 0, -1, -2, -1]))


def general_second_order_gf(a=None, b=None, c=None, d=None) -> RatGF:
    """(a + b z)/(1 + c z + d z^2); ``None`` keeps a parameter symbolic."""
    a, b, c, d = (
        MPoly.var(name) if v is None else MPoly.coerce(v)
        for name, v in zip("abcd", (a, b, c, d))
    )
    return gf_new(ZPoly([a, b]), ZPoly([1, c, d]))


def family_gf(spec: FamilySpec) -> RatGF:
    if spec.name == PELL_PADOVAN:
        return pell_padovan_gf()
    return general_second_order_gf(*spec.parameters())


def family_terms(spec: FamilySpec, n: int, symbolic_cap: int = SYMBOLIC_TERM_CAP) -> SeriesPrefix:
    """First n terms by direct iteration of the recursion."""
    if not spec.is_numeric() and n > symbolic_cap:
        raise ValueError(f"symbolic iteration is capped at {symbolic_cap} terms")
    if spec.name == PELL_PADOVAN:
        out = [MPoly.const(v) for v in (0, 1, 1, 1)][:n]
        while len(out) < n:
            out.append(out[-2] + 2 * out[-3] + out[-4])
        return out
    (p, q), (x0, x1) = FAMILY_RECURSIONS[spec.name]
    p, q, x0, x1 = (v.subs(spec.bindings) for v in (p, q, x0, x1))
    out = [x0, x1][:n]
    while len(out) < n:
        out.append(p * out[-1] + q * out[-2])
    return out


# b-files


class BFileError(ValueError):
    def __init__(self, message: str, line: Optional[int] = None):
        super().__init__(message if line is None else f"line {line}: {message}")
        self.line = line


@dataclass(frozen=True)
class BFile:
    entries: tuple  # ((index, value), ...)

    def as_dict(self) -> dict:
        return dict(self.entries)


_BLINE = re.compile(r"^\s*(-?\d+)\s+(-?\d+)\s*$")


def parse_bfile(text: str) -> BFile:
    entries = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.rstrip("\r")
        if not line.strip() or line.lstrip().startswith("#"):
            continue
        m = _BLINE.match(line)
        if m is None:
            raise BFileError(f"malformed b-file line {raw!r}", lineno)
        idx, val = int(m.group(1)), int(m.group(2))
        if entries and idx <= entries[-1][0]:
            raise BFileError(f"index {idx} does not increase", lineno)
        entries.append((idx, val))
    return BFile(tuple(entries))


def read_bfile(path) -> BFile:
    return parse_bfile(Path(path).read_text())


def bfile_url(anumber: str) -> str:
    digits = anumber.upper().lstrip("A")
    return f"https://oeis.org/A{digits}/b{digits}.txt"


def fetch_bfile(anumber: str, dest, timeout: float = 30.0) -> Path:
    """Download an OEIS b-file to ``dest`` (a directory or a file path)."""
    dest = Path(dest)
    if dest.is_dir():
        dest = dest / f"b{anumber.upper().lstrip('A')}.txt"
    with urllib.request.urlopen(bfile_url(anumber), timeout=timeout) as resp:
        text = resp.read().decode("utf-8")
    parse_bfile(text)
    dest.write_text(text)
    return dest


@dataclass(frozen=True)
class CrossCheckReport:
    family: str
    offset: int
    compared: int
    agree: bool
    first_mismatch: Optional[tuple] = None  # (bfile index, expected, found)

    def __str__(self):
        if self.agree:
            return f"{self.family}: agreement on {self.compared} terms (offset {self.offset})"
        if self.first_mismatch is None:
            return f"{self.family}: no b-file entries overlap the family at offset {self.offset}"
        idx, want, got = self.first_mismatch
        return (
            f"{self.family}: mismatch at b-file index {idx}: "
            f"b-file has {want}, family gives {got} (offset {self.offset})"
        )


def crosscheck_bfile(spec: FamilySpec, bf: BFile, offset: int = 0) -> CrossCheckReport:
    """Compare family term n against b-file index n + offset over the overlap."""
    if not spec.is_numeric():
        raise ValueError("b-file cross-checks need numeric parameter bindings")
    overlap = [(i, v) for i, v in bf.entries if i - offset >= 0]
    if not overlap:
        return CrossCheckReport(spec.name, offset, 0, False, None)
    terms = family_terms(spec, overlap[-1][0] - offset + 1)
    compared = 0
    for idx, value in overlap:
        got = terms[idx - offset].constant_value()
        compared += 1
        if got != value:
            return CrossCheckReport(spec.name, offset, compared, False, (idx, value, got))
    return CrossCheckReport(spec.name, offset, compared, True)


# OEIS identifiers for the numeric cross-checks: (family, bindings, A-number, offset).
OEIS_CROSSCHECKS = (
    ("k_fibonacci", {"k": 1}, "A000045", 1),
    ("k_pell", {"k": 1}, "A000129", 0),
    ("k_jacobsthal", {"k": 1}, "A001045", 0),
    ("k_mersenne", {"k": 1}, "A000225", 0),
    ("chebyshev_T", {"x": 2}, "A001075", 0),
    ("chebyshev_U", {"x": 2}, "A001353", 1),
)
