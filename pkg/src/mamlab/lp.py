"""Exact LP feasibility over the ordered field Q(s_1,...,s_k).

Phase-1 simplex with Bland's anti-cycling rule (lowest eligible index
enters; among minimum-ratio rows the one whose basic variable has the
lowest index leaves), so runs are deterministic and certificates are
reproducible.  Free variables are split into nonnegative pairs; every
'>=' row gets a surplus variable; every row gets an artificial variable
and the sum of artificials is minimized.

Outcomes are verified before being returned: a Feasible point is
re-substituted into every constraint, an Infeasible certificate is checked
to be a valid Farkas witness (nonnegative on inequality rows, annihilating
the coefficient matrix, with positive pairing against the right-hand
sides).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import List, Optional, Tuple

from .errors import InputError, MamlabError
from .scalar import DEFAULT_MAX_BITS, Scalar, sign, zero
from .symbols import SymbolTable

GE = ">="
EQ = "="


@dataclass
class LPProblem:
    table: SymbolTable
    num_vars: int
    constraints: List[Tuple[list, str, Scalar]]  # (coeffs, rel, rhs)

    def __post_init__(self):
        conv = []
        for coeffs, rel, rhs in self.constraints:
            if rel not in (GE, EQ):
                raise InputError(f"bad relation {rel!r}")
            if len(coeffs) != self.num_vars:
                raise InputError("coefficient row length != variable count")
            conv.append((
                [Scalar.from_rational(self.table, c) for c in coeffs],
                rel,
                Scalar.from_rational(self.table, rhs),
            ))
        self.constraints = conv


@dataclass
class Feasible:
    point: list  # Scalar vector, satisfies every constraint exactly

    def __bool__(self):
        return True


@dataclass
class Infeasible:
    farkas: list  # one Scalar multiplier per constraint

    def __bool__(self):
        return False


class CertificateError(MamlabError):
    """Internal verification of an LP outcome failed (should not happen)."""


def _verify_feasible(p: LPProblem, x, max_bits) -> None:
    for coeffs, rel, rhs in p.constraints:
        val = sum((c * v for c, v in zip(coeffs, x)), zero(p.table)) - rhs
        if rel == EQ:
            if not val.is_zero():
                raise CertificateError("equality violated by claimed point")
        elif sign(val, p.table, max_bits) < 0:
            raise CertificateError("inequality violated by claimed point")


def _verify_farkas(p: LPProblem, y, max_bits) -> None:
    n = p.num_vars
    combo = [zero(p.table)] * n
    rhs_total = zero(p.table)
    for mult, (coeffs, rel, rhs) in zip(y, p.constraints):
        if rel == GE and sign(mult, p.table, max_bits) < 0:
            raise CertificateError("negative multiplier on an inequality row")
        for j in range(n):
            combo[j] = combo[j] + mult * coeffs[j]
        rhs_total = rhs_total + mult * rhs
    if any(not c.is_zero() for c in combo):
        raise CertificateError("certificate combination does not vanish")
    if sign(rhs_total, p.table, max_bits) <= 0:
        raise CertificateError("certificate right-hand side not positive")


def _lp_feasible_frac(p: LPProblem):
    """Same phase-1 simplex specialized to all-rational data: gmpy2
    rational arithmetic with exact comparisons replaces interval sign
    tests."""
    from gmpy2 import mpq as Fraction

    table = p.table
    n = p.num_vars
    m = len(p.constraints)

    def _q(x):
        f = x.as_fraction()
        return Fraction(f.numerator, f.denominator)

    cons = [
        ([_q(c) for c in coeffs], rel, _q(rhs))
        for coeffs, rel, rhs in p.constraints
    ]
    ge_rows = [i for i, (_, rel, _) in enumerate(cons) if rel == GE]
    surplus_of = {i: k for k, i in enumerate(ge_rows)}
    num_surplus = len(ge_rows)
    num_cols = 2 * n + num_surplus + m

    rows = []
    rhs = []
    sigma = []
    for i, (coeffs, rel, b) in enumerate(cons):
        flip = -1 if b < 0 else 1
        row = [Fraction(0)] * num_cols
        for j, c in enumerate(coeffs):
            if c:
                row[j] = c * flip
                row[n + j] = -c * flip
        if rel == GE:
            row[2 * n + surplus_of[i]] = Fraction(-flip)
        row[2 * n + num_surplus + i] = Fraction(1)
        rows.append(row)
        rhs.append(b * flip)
        sigma.append(flip)

    obj = [sum(rows[i][j] for i in range(m)) for j in range(num_cols)]
    for i in range(m):
        obj[2 * n + num_surplus + i] -= 1
    obj_val = sum(rhs)
    basis = [2 * n + num_surplus + i for i in range(m)]

    while True:
        entering = next((j for j in range(num_cols) if obj[j] > 0), None)
        if entering is None:
            break
        leaving = None
        best = None
        for i in range(m):
            a = rows[i][entering]
            if a <= 0:
                continue
            ratio = rhs[i] / a
            if (
                best is None
                or ratio < best
                or (ratio == best and basis[i] < basis[leaving])
            ):
                best, leaving = ratio, i
        if leaving is None:
            raise CertificateError("unbounded phase-1 objective")
        pv = rows[leaving][entering]
        rows[leaving] = [x / pv for x in rows[leaving]]
        rhs[leaving] = rhs[leaving] / pv
        for i in range(m):
            f = rows[i][entering]
            if i != leaving and f:
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[leaving])]
                rhs[i] = rhs[i] - f * rhs[leaving]
        f = obj[entering]
        if f:
            obj = [a - f * b for a, b in zip(obj, rows[leaving])]
            obj_val = obj_val - f * rhs[leaving]
        basis[leaving] = entering

    if obj_val == 0:
        xplus = [Fraction(0)] * n
        xminus = [Fraction(0)] * n
        for i, bv in enumerate(basis):
            if bv < n:
                xplus[bv] = rhs[i]
            elif bv < 2 * n:
                xminus[bv - n] = rhs[i]
        x = [a - b for a, b in zip(xplus, xminus)]
        for coeffs, rel, b in cons:
            val = sum(c * v for c, v in zip(coeffs, x)) - b
            if (rel == EQ and val != 0) or (rel == GE and val < 0):
                raise CertificateError("rational point fails re-substitution")
        from fractions import Fraction as PyFraction

        return Feasible(
            [
                Scalar.from_rational(table, PyFraction(v.numerator, v.denominator))
                for v in x
            ]
        )

    y = []
    for i in range(m):
        yi = obj[2 * n + num_surplus + i] + 1
        y.append(yi if sigma[i] > 0 else -yi)
    combo = [Fraction(0)] * n
    rhs_total = Fraction(0)
    for mult, (coeffs, rel, b) in zip(y, cons):
        if rel == GE and mult < 0:
            raise CertificateError("negative multiplier on an inequality row")
        for j in range(n):
            combo[j] += mult * coeffs[j]
        rhs_total += mult * b
    if any(combo) or rhs_total <= 0:
        raise CertificateError("rational certificate fails re-verification")
    from fractions import Fraction as PyFraction

    return Infeasible(
        [
            Scalar.from_rational(table, PyFraction(v.numerator, v.denominator))
            for v in y
        ]
    )


def lp_feasible(p: LPProblem, max_bits: int = DEFAULT_MAX_BITS):
    """Decide feasibility exactly; returns Feasible(point) or
    Infeasible(farkas).  Raises PrecisionExhausted if a pivot sign test
    cannot be certified within max_bits."""
    table = p.table
    n = p.num_vars
    m = len(p.constraints)
    if m == 0:
        return Feasible([zero(table)] * n)
    if all(
        rhs.is_rational() and all(c.is_rational() for c in coeffs)
        for coeffs, _, rhs in p.constraints
    ):
        return _lp_feasible_frac(p)

    s0 = zero(table)
    s1 = Scalar.from_rational(table, 1)

    ge_rows = [i for i, (_, rel, _) in enumerate(p.constraints) if rel == GE]
    surplus_of = {i: k for k, i in enumerate(ge_rows)}
    num_surplus = len(ge_rows)
    num_cols = 2 * n + num_surplus + m  # x+, x-, surplus, artificials

    # Build normalized tableau rows (rhs >= 0) and record the sign applied.
    rows = []
    rhs = []
    sigma = []
    for i, (coeffs, rel, b) in enumerate(p.constraints):
        sg = sign(b, table, max_bits)
        flip = -1 if sg < 0 else 1
        row = [s0] * num_cols
        for j, c in enumerate(coeffs):
            if not c.is_zero():
                row[j] = c if flip > 0 else -c
                row[n + j] = -c if flip > 0 else c
        if rel == GE:
            row[2 * n + surplus_of[i]] = Scalar.from_rational(table, -flip)
        row[2 * n + num_surplus + i] = s1
        rows.append(row)
        rhs.append(b if flip > 0 else -b)
        sigma.append(flip)

    # Objective row: z_j - c_j for min(sum of artificials); c_B = 1 initially.
    obj = [sum((rows[i][j] for i in range(m)), s0) for j in range(num_cols)]
    for i in range(m):
        obj[2 * n + num_surplus + i] = obj[2 * n + num_surplus + i] - s1
    obj_val = sum(rhs, s0)
    basis = [2 * n + num_surplus + i for i in range(m)]

    while True:
        entering = None
        for j in range(num_cols):
            if not obj[j].is_zero() and sign(obj[j], table, max_bits) > 0:
                entering = j
                break
        if entering is None:
            break
        # ratio test
        leaving = None
        best = None
        for i in range(m):
            a = rows[i][entering]
            if a.is_zero() or sign(a, table, max_bits) <= 0:
                continue
            ratio = rhs[i] / a
            if best is None:
                best, leaving = ratio, i
                continue
            d = ratio - best
            cmp = 0 if d.is_zero() else sign(d, table, max_bits)
            if cmp < 0 or (cmp == 0 and basis[i] < basis[leaving]):
                best, leaving = ratio, i
        if leaving is None:
            # phase-1 objective is bounded below by zero
            raise CertificateError("unbounded phase-1 objective")
        # pivot
        pv = rows[leaving][entering]
        rows[leaving] = [x / pv for x in rows[leaving]]
        rhs[leaving] = rhs[leaving] / pv
        for i in range(m):
            if i != leaving and not rows[i][entering].is_zero():
                f = rows[i][entering]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[leaving])]
                rhs[i] = rhs[i] - f * rhs[leaving]
        if not obj[entering].is_zero():
            f = obj[entering]
            obj = [a - f * b for a, b in zip(obj, rows[leaving])]
            obj_val = obj_val - f * rhs[leaving]
        basis[leaving] = entering

    if obj_val.is_zero():
        xplus = [s0] * n
        xminus = [s0] * n
        for i, bv in enumerate(basis):
            if bv < n:
                xplus[bv] = rhs[i]
            elif bv < 2 * n:
                xminus[bv - n] = rhs[i]
        x = [a - b for a, b in zip(xplus, xminus)]
        _verify_feasible(p, x, max_bits)
        return Feasible(x)

    # y_i = (objective row at artificial i) + 1; original multiplier sigma_i*y_i
    y = []
    for i in range(m):
        yi = obj[2 * n + num_surplus + i] + s1
        y.append(yi if sigma[i] > 0 else -yi)
    _verify_farkas(p, y, max_bits)
    return Infeasible(y)
