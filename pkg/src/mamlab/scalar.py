"""Exact scalars: elements of Q(s_1,...,s_k) in canonical form.

A Scalar is a reduced fraction of multivariate polynomials over Q with a
fixed monomial order, so structural equality decides equality in the field
and the zero test is exact.  Sign of a nonzero scalar is certified by
interval arithmetic over the symbol enclosures, doubling the working
precision up to a caller-supplied bit budget.

Grammar (whitespace insignificant):

    expr   := term (('+'|'-') term)*
    term   := factor (('*'|'/') factor)*
    factor := rational-literal | symbol-name | '(' expr ')' | '-' factor
    rational-literal := integer ('/' positive-integer)?

A rational literal `p/q` tokenizes as p, '/', q; since '/' is exact field
division the denoted value is identical.
"""

from __future__ import annotations

from fractions import Fraction

from mpmath import iv
from sympy import QQ

from .errors import (
    DivisionByZeroScalar,
    InputError,
    ParseError,
    PrecisionExhausted,
    UnknownSymbolError,
)
from .symbols import SymbolTable

DEFAULT_MAX_BITS = 4096
_INITIAL_BITS = 64


class Scalar:
    """Immutable element of the rational-function field of a SymbolTable."""

    __slots__ = ("table", "frac")

    def __init__(self, table: SymbolTable, frac):
        self.table = table
        self.frac = frac  # sympy FracElement, canonical by construction

    # -- constructors -------------------------------------------------------

    @classmethod
    def from_rational(cls, table: SymbolTable, value) -> "Scalar":
        if isinstance(value, Scalar):
            if value.table is not table:
                raise InputError("scalar belongs to a different symbol table")
            return value
        if isinstance(value, Fraction):
            q = QQ(value.numerator, value.denominator)
        elif isinstance(value, int):
            q = QQ(value)
        else:
            raise InputError(f"cannot coerce {value!r} to a Scalar")
        return cls(table, table.field.ground_new(q))

    @classmethod
    def symbol(cls, table: SymbolTable, name: str) -> "Scalar":
        return cls(table, table.field.gens[table.index(name)])

    # -- arithmetic ----------------------------------------------------------

    def _coerce(self, other):
        if isinstance(other, Scalar):
            if other.table is not self.table:
                raise InputError("mixed symbol tables in scalar arithmetic")
            return other
        return Scalar.from_rational(self.table, other)

    def __add__(self, other):
        return Scalar(self.table, self.frac + self._coerce(other).frac)

    __radd__ = __add__

    def __sub__(self, other):
        return Scalar(self.table, self.frac - self._coerce(other).frac)

    def __rsub__(self, other):
        return Scalar(self.table, self._coerce(other).frac - self.frac)

    def __mul__(self, other):
        return Scalar(self.table, self.frac * self._coerce(other).frac)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = self._coerce(other)
        if other.is_zero():
            raise DivisionByZeroScalar("division by the zero scalar")
        return Scalar(self.table, self.frac / other.frac)

    def __rtruediv__(self, other):
        if self.is_zero():
            raise DivisionByZeroScalar("division by the zero scalar")
        return Scalar(self.table, self._coerce(other).frac / self.frac)

    def __neg__(self):
        return Scalar(self.table, -self.frac)

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Scalar.from_rational(self.table, other)
        if not isinstance(other, Scalar):
            return NotImplemented
        return self.table is other.table and self.frac == other.frac

    def __hash__(self):
        return hash(self.frac)

    def __bool__(self):
        return not self.is_zero()

    def __repr__(self):
        return f"Scalar({print_scalar(self)})"

    # -- predicates ----------------------------------------------------------

    def is_zero(self) -> bool:
        return self.frac == 0

    def is_rational(self) -> bool:
        return self.frac.numer.is_ground and self.frac.denom.is_ground

    def as_fraction(self) -> Fraction:
        if not self.is_rational():
            raise InputError("scalar is not a rational constant")
        n = self.frac.numer.coeffs()[0] if self.frac.numer.coeffs() else QQ(0)
        d = self.frac.denom.coeffs()[0]
        q = QQ(n) / QQ(d)
        return Fraction(int(q.numerator), int(q.denominator))


def zero(table: SymbolTable) -> Scalar:
    return Scalar.from_rational(table, 0)


def one(table: SymbolTable) -> Scalar:
    return Scalar.from_rational(table, 1)


# ---------------------------------------------------------------------------
# Parsing


class _Lexer:
    _PUNCT = set("+-*/()")

    def __init__(self, text: str):
        self.text = text
        self.pos = 0
        self.tokens = []
        self._scan()
        self.i = 0

    def _scan(self):
        text, n = self.text, len(self.text)
        pos = 0
        while pos < n:
            ch = text[pos]
            if ch.isspace():
                pos += 1
                continue
            if ch in self._PUNCT:
                self.tokens.append((ch, ch, pos))
                pos += 1
                continue
            if ch.isdigit():
                start = pos
                while pos < n and text[pos].isdigit():
                    pos += 1
                self.tokens.append(("int", text[start:pos], start))
                continue
            if ch.isalpha() or ch == "_":
                start = pos
                while pos < n and (text[pos].isalnum() or text[pos] == "_"):
                    pos += 1
                self.tokens.append(("name", text[start:pos], start))
                continue
            raise ParseError(f"unexpected character {ch!r}", pos)
        self.tokens.append(("end", "", n))

    def peek(self):
        return self.tokens[self.i]

    def next(self):
        tok = self.tokens[self.i]
        if tok[0] != "end":
            self.i += 1
        return tok


class _Parser:
    def __init__(self, text: str, table: SymbolTable):
        self.lex = _Lexer(text)
        self.table = table

    def parse(self) -> Scalar:
        value = self.expr()
        kind, _, pos = self.lex.peek()
        if kind != "end":
            raise ParseError("trailing input", pos)
        return value

    def expr(self) -> Scalar:
        value = self.term()
        while True:
            kind, _, _ = self.lex.peek()
            if kind == "+":
                self.lex.next()
                value = value + self.term()
            elif kind == "-":
                self.lex.next()
                value = value - self.term()
            else:
                return value

    def term(self) -> Scalar:
        value = self.factor()
        while True:
            kind, _, pos = self.lex.peek()
            if kind == "*":
                self.lex.next()
                value = value * self.factor()
            elif kind == "/":
                self.lex.next()
                rhs = self.factor()
                if rhs.is_zero():
                    raise ParseError("division by zero", pos)
                value = value / rhs
            else:
                return value

    def factor(self) -> Scalar:
        kind, text, pos = self.lex.next()
        if kind == "int":
            return Scalar.from_rational(self.table, int(text))
        if kind == "name":
            if text not in self.table:
                raise UnknownSymbolError(text, pos)
            return Scalar.symbol(self.table, text)
        if kind == "(":
            value = self.expr()
            kind2, _, pos2 = self.lex.next()
            if kind2 != ")":
                raise ParseError("expected ')'", pos2)
            return value
        if kind == "-":
            return -self.factor()
        raise ParseError(f"unexpected token {text!r}" if text else "unexpected end of input", pos)


def parse_scalar(expr: str, table: SymbolTable) -> Scalar:
    """Parse an expression in the scalar grammar into canonical form."""
    return _Parser(expr, table).parse()


# ---------------------------------------------------------------------------
# Printing (fully parenthesized; round-trips through parse_scalar)


def _print_coeff(c) -> str:
    n, d = int(c.numerator), int(c.denominator)
    if d == 1:
        return str(n) if n >= 0 else f"(-{-n})"
    if n >= 0:
        return f"({n}/{d})"
    return f"(-{-n}/{d})"


def _print_poly(poly, names) -> str:
    terms = sorted(poly.terms(), reverse=True)
    if not terms:
        return "0"
    parts = []
    for monom, coeff in terms:
        factors = [_print_coeff(coeff)]
        for name, power in zip(names, monom):
            factors.extend([name] * power)
        parts.append("(" + "*".join(factors) + ")" if len(factors) > 1 else factors[0])
    return "(" + "+".join(parts) + ")" if len(parts) > 1 else parts[0]


def print_scalar(x: Scalar) -> str:
    names = x.table.names()
    num = _print_poly(x.frac.numer, names)
    if x.frac.denom == x.table.field.ring.one:
        return num
    den = _print_poly(x.frac.denom, names)
    return f"({num}/{den})"


# ---------------------------------------------------------------------------
# Interval evaluation and sign determination


def _symbol_intervals(table: SymbolTable):
    """Enclosing intervals of the symbols at the current iv precision."""
    out = []
    for s in table:
        lo = iv.mpf(s.lo.numerator) / s.lo.denominator
        hi = iv.mpf(s.hi.numerator) / s.hi.denominator
        out.append(iv.mpf([lo.a, hi.b]))
    return out

def _eval_poly_iv(poly, sym_ivs):
    total = iv.mpf(0)
    for monom, coeff in poly.terms():
        term = iv.mpf(int(coeff.numerator)) / int(coeff.denominator)
        for val, power in zip(sym_ivs, monom):
            if power:
                term = term * val**power
        total = total + term
    return total


class _ivprec:
    """Temporarily set the interval context precision (iv.prec is global)."""

    def __init__(self, prec):
        self.prec = prec

    def __enter__(self):
        self.saved = iv.prec
        iv.prec = self.prec

    def __exit__(self, *exc):
        iv.prec = self.saved


def interval(x: Scalar, prec: int = 128):
    """An interval certainly containing the real value of x, computed at
    `prec` working bits.  The denominator interval must exclude zero."""
    with _ivprec(prec):
        syms = _symbol_intervals(x.table)
        num = _eval_poly_iv(x.frac.numer, syms)
        den = _eval_poly_iv(x.frac.denom, syms)
        if den.a <= 0 <= den.b:
            raise PrecisionExhausted(prec)
        return num / den


def sign(x: Scalar, table: SymbolTable = None, max_bits: int = DEFAULT_MAX_BITS) -> int:
    """-1, 0, or +1.  Zero is decided structurally (exact); a nonzero sign is
    certified by an interval excluding zero, refining up to max_bits."""
    if x.is_zero():
        return 0
    prec = _INITIAL_BITS
    while True:
        with _ivprec(prec):
            syms = _symbol_intervals(x.table)
            num = _eval_poly_iv(x.frac.numer, syms)
            den = _eval_poly_iv(x.frac.denom, syms)
            if not (num.a <= 0 <= num.b) and not (den.a <= 0 <= den.b):
                s_num = 1 if num.a > 0 else -1
                s_den = 1 if den.a > 0 else -1
                return s_num * s_den
        if prec >= max_bits:
            raise PrecisionExhausted(max_bits)
        prec = min(2 * prec, max_bits)


def to_float(x: Scalar, prec: int = 128) -> float:
    """Midpoint of the enclosing interval, as a double."""
    box = interval(x, prec)
    return float(box.mid)
