"""Symbol tables: named real symbols with interval enclosures.

The real values behind the symbols are declared (by the user) to be
algebraically independent over Q.  This contract is not verifiable from
enclosures alone; every exact zero test in the library is structural and
every nonzero sign is certified by an interval, so a violation of the
contract surfaces as a PrecisionExhausted error rather than a wrong answer.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction

from sympy import QQ
from sympy.polys.fields import FracField

from .errors import InputError

_NAME_RE = re.compile(r"[A-Za-z_][A-Za-z_0-9]*\Z")


def _to_fraction(x) -> Fraction:
    """Accept ints, Fractions, and decimal strings; reject binary floats
    silently losing precision is not an option for enclosure endpoints."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x.strip())
    if isinstance(x, float):
        return Fraction(x)
    raise InputError(f"cannot interpret {x!r} as an exact rational endpoint")


@dataclass(frozen=True)
class Symbol:
    name: str
    lo: Fraction
    hi: Fraction
    precision: int  # bits; enclosure width is at most 2**(-precision)

    def __post_init__(self):
        if not _NAME_RE.match(self.name):
            raise InputError(f"bad symbol name {self.name!r}")
        if not self.lo <= self.hi:
            raise InputError(f"empty enclosure for symbol {self.name}")
        if self.precision <= 0:
            raise InputError(f"symbol {self.name}: precision must be positive")
        if self.hi - self.lo > Fraction(1, 2**self.precision):
            raise InputError(
                f"symbol {self.name}: enclosure wider than 2^-{self.precision}"
            )


class SymbolTable:
    """An ordered collection of symbols plus the rational-function field
    Q(s_1, ..., s_k) they generate.  Immutable after construction."""

    def __init__(self, symbols=()):
        symbols = list(symbols)
        names = [s.name for s in symbols]
        if len(set(names)) != len(names):
            raise InputError("duplicate symbol names")
        self._symbols = tuple(symbols)
        self._by_name = {s.name: i for i, s in enumerate(symbols)}
        self.field = FracField(names, QQ)

    @classmethod
    def from_spec(cls, entries):
        """Build from JSON-style entries: {"name":..., "enclosure":[lo,hi],
        "precision": bits} (precision defaults to the width-implied value)."""
        syms = []
        for e in entries:
            lo = _to_fraction(e["enclosure"][0])
            hi = _to_fraction(e["enclosure"][1])
            prec = e.get("precision")
            if prec is None:
                width = hi - lo
                prec = 256 if width == 0 else _width_bits(width)
            syms.append(Symbol(e["name"], lo, hi, int(prec)))
        return cls(syms)

    def __len__(self):
        return len(self._symbols)

    def __iter__(self):
        return iter(self._symbols)

    def __getitem__(self, i) -> Symbol:
        return self._symbols[i]

    def names(self):
        return [s.name for s in self._symbols]

    def index(self, name: str) -> int:
        try:
            return self._by_name[name]
        except KeyError:
            raise InputError(f"unknown symbol '{name}'") from None

    def symbol(self, name: str) -> Symbol:
        return self._symbols[self.index(name)]

    def __contains__(self, name: str) -> bool:
        return name in self._by_name

    def to_spec(self):
        return [
            {
                "name": s.name,
                "enclosure": [str(s.lo), str(s.hi)],
                "precision": s.precision,
            }
            for s in self._symbols
        ]


def _width_bits(width: Fraction) -> int:
    """Largest p with width <= 2^-p."""
    p = 0
    w = Fraction(1)
    while w > width and p < 16384:
        w /= 2
        p += 1
    return max(1, p - 1)


EMPTY_TABLE = SymbolTable()
