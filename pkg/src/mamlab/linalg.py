"""Exact linear algebra over Q(s_1,...,s_k) and over Q.

Field-level routines (rank, kernel, solve, annihilator) use fraction-full
Gaussian elimination; pivoting only needs the structural zero test, so no
interval refinement is involved.  Rational-kernel routines work with
Fraction matrices.  `rational_solution_space` bridges the two by expanding
field rows over their monomials ("monomial stacking"): since the symbols
are declared algebraically independent, a rational vector annihilates a
field row iff it annihilates every per-monomial rational coefficient row.
"""

from __future__ import annotations

from fractions import Fraction

from .errors import InputError
from .scalar import Scalar, zero
from .symbols import SymbolTable


class ScalarMatrix:
    """Rectangular matrix of Scalars over one symbol table."""

    def __init__(self, table: SymbolTable, entries):
        self.table = table
        self.entries = [list(row) for row in entries]
        self.rows = len(self.entries)
        self.cols = len(self.entries[0]) if self.rows else 0
        for row in self.entries:
            if len(row) != self.cols:
                raise InputError("ragged matrix")
            for x in row:
                if not isinstance(x, Scalar) or x.table is not table:
                    raise InputError("matrix entry from a different table")

    @classmethod
    def from_rows(cls, table, rows):
        conv = [[Scalar.from_rational(table, x) if not isinstance(x, Scalar) else x
                 for x in row] for row in rows]
        return cls(table, conv)

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i][j]

    def row(self, i):
        return list(self.entries[i])

    def col(self, j):
        return [self.entries[i][j] for i in range(self.rows)]

    def transpose(self) -> "ScalarMatrix":
        return ScalarMatrix(self.table, [self.col(j) for j in range(self.cols)])

    def matvec(self, v):
        if len(v) != self.cols:
            raise InputError("dimension mismatch")
        return [sum((self.entries[i][j] * v[j] for j in range(self.cols)),
                    zero(self.table)) for i in range(self.rows)]

    def __repr__(self):
        return f"ScalarMatrix({self.rows}x{self.cols})"


def _rref(entries, table):
    """Reduced row echelon form in place; returns pivot column list."""
    rows = len(entries)
    cols = len(entries[0]) if rows else 0
    pivots = []
    r = 0
    for c in range(cols):
        pivot_row = None
        for i in range(r, rows):
            if not entries[i][c].is_zero():
                pivot_row = i
                break
        if pivot_row is None:
            continue
        entries[r], entries[pivot_row] = entries[pivot_row], entries[r]
        pv = entries[r][c]
        entries[r] = [x / pv for x in entries[r]]
        for i in range(rows):
            if i != r and not entries[i][c].is_zero():
                f = entries[i][c]
                entries[i] = [a - f * b for a, b in zip(entries[i], entries[r])]
        pivots.append(c)
        r += 1
        if r == rows:
            break
    return pivots


def rank(M: ScalarMatrix) -> int:
    work = [list(row) for row in M.entries]
    return len(_rref(work, M.table))


def kernel_basis(M: ScalarMatrix):
    """Basis of {x : Mx = 0} over the field; len = cols - rank."""
    table = M.table
    work = [list(row) for row in M.entries]
    pivots = _rref(work, table)
    pivot_set = set(pivots)
    free = [c for c in range(M.cols) if c not in pivot_set]
    basis = []
    for fc in free:
        v = [zero(table)] * M.cols
        v[fc] = Scalar.from_rational(table, 1)
        for r, pc in enumerate(pivots):
            v[pc] = -work[r][fc]
        basis.append(v)
    return basis


def solve(M: ScalarMatrix, b):
    """One solution of Mx = b, or None if inconsistent."""
    table = M.table
    work = [M.row(i) + [b[i]] for i in range(M.rows)]
    pivots = _rref(work, table)
    aug_col = M.cols
    if aug_col in pivots:
        return None
    x = [zero(table)] * M.cols
    for r, pc in enumerate(pivots):
        x[pc] = work[r][aug_col]
    return x


def annihilator_basis(vectors, table: SymbolTable, dim: int):
    """Basis of {phi in F^dim : <phi, v> = 0 for all v}; the left kernel of
    the matrix whose columns are the given vectors."""
    if not vectors:
        M = ScalarMatrix.from_rows(table, [[0] * dim])
        return kernel_basis(M) if dim else []
    M = ScalarMatrix(table, [list(v) for v in vectors])  # rows = vectors
    return kernel_basis(M)


# ---------------------------------------------------------------------------
# Rational (Fraction) linear algebra


def _frac_rref(entries):
    rows = len(entries)
    cols = len(entries[0]) if rows else 0
    pivots = []
    r = 0
    for c in range(cols):
        pivot_row = None
        for i in range(r, rows):
            if entries[i][c] != 0:
                pivot_row = i
                break
        if pivot_row is None:
            continue
        entries[r], entries[pivot_row] = entries[pivot_row], entries[r]
        pv = entries[r][c]
        entries[r] = [x / pv for x in entries[r]]
        for i in range(rows):
            if i != r and entries[i][c] != 0:
                f = entries[i][c]
                entries[i] = [a - f * b for a, b in zip(entries[i], entries[r])]
        pivots.append(c)
        r += 1
        if r == rows:
            break
    return pivots


def frac_rank(rows) -> int:
    work = [[Fraction(x) for x in row] for row in rows]
    if not work:
        return 0
    return len(_frac_rref(work))


def frac_kernel(rows, cols: int):
    """Basis of the rational kernel of a matrix given as Fraction rows."""
    work = [[Fraction(x) for x in row] for row in rows]
    pivots = _frac_rref(work) if work else []
    pivot_set = set(pivots)
    free = [c for c in range(cols) if c not in pivot_set]
    basis = []
    for fc in free:
        v = [Fraction(0)] * cols
        v[fc] = Fraction(1)
        for r, pc in enumerate(pivots):
            v[pc] = -work[r][fc]
        basis.append(v)
    return basis


def frac_solve(rows, rhs, cols: int):
    """One rational solution of the system, or None."""
    work = [[Fraction(x) for x in row] + [Fraction(b)] for row, b in zip(rows, rhs)]
    if not work:
        return [Fraction(0)] * cols
    pivots = _frac_rref(work)
    if cols in pivots:
        return None
    x = [Fraction(0)] * cols
    for r, pc in enumerate(pivots):
        x[pc] = work[r][cols]
    return x


# ---------------------------------------------------------------------------
# Monomial stacking


def _mpq_to_fraction(c) -> Fraction:
    return Fraction(int(c.numerator), int(c.denominator))


def stack_rows(M: ScalarMatrix):
    """Expand each field row of M into rational rows, one per monomial.

    Denominators are cleared row-wise first, so entries become polynomials;
    the stacked system has the same rational kernel as M under the declared
    algebraic independence of the symbols.
    """
    table = M.table
    out = []
    for i in range(M.rows):
        row = M.row(i)
        cleared = row
        # multiply the row by every denominator present (polynomial entries)
        for x in row:
            den = x.frac.denom
            if not den.is_ground or den.coeffs() != [den.ring.domain.one]:
                den_s = Scalar(table, table.field.new(den, table.field.ring.one))
                cleared = [y * den_s for y in cleared]
        monoms = set()
        polys = []
        for x in cleared:
            assert x.frac.denom.is_ground
            dcoef = x.frac.denom.coeffs()
            scale = _mpq_to_fraction(dcoef[0]) if dcoef else Fraction(1)
            terms = {m: _mpq_to_fraction(c) / scale for m, c in x.frac.numer.terms()}
            polys.append(terms)
            monoms.update(terms)
        for m in sorted(monoms):
            out.append([p.get(m, Fraction(0)) for p in polys])
    return out


def rational_solution_space(M: ScalarMatrix):
    """Basis over Q of {x in Q^cols : Mx = 0}."""
    stacked = stack_rows(M)
    return frac_kernel(stacked, M.cols)
