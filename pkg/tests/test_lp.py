"""Feasibility LP vs a brute-force oracle.

The oracle enumerates every subset of constraints, solves the corresponding
tight (equality) system, and tests each particular solution against the full
constraint set.  If the feasible region is nonempty it contains a minimal
face, which is an affine set cut out by some subset of tight constraints;
the particular solution returned by Gaussian elimination for that subset
lies on the face, so the oracle is complete.
"""

from fractions import Fraction
from itertools import combinations
from random import Random

import pytest

from mamlab.lp import (
    EQ,
    GE,
    Feasible,
    Infeasible,
    LPProblem,
    _verify_farkas,
    _verify_feasible,
    lp_feasible,
)
from mamlab.linalg import frac_solve
from mamlab.symbols import EMPTY_TABLE


def oracle_feasible(num_vars, constraints):
    idx = range(len(constraints))
    for size in range(min(num_vars, len(constraints)) + 1):
        for subset in combinations(idx, size):
            rows = [list(constraints[i][0]) for i in subset]
            rhs = [constraints[i][2] for i in subset]
            x = frac_solve(rows, rhs, num_vars) if rows else [Fraction(0)] * num_vars
            if x is None:
                continue
            if _satisfies(x, constraints):
                return x
    return None


def _satisfies(x, constraints):
    for coeffs, rel, rhs in constraints:
        v = sum(Fraction(a) * xi for a, xi in zip(coeffs, x))
        if rel == EQ and v != rhs:
            return False
        if rel == GE and v < rhs:
            return False
    return True


def _random_instance(rng):
    num_vars = rng.randrange(1, 5)
    num_cons = rng.randrange(1, 9)
    cons = []
    for _ in range(num_cons):
        coeffs = [Fraction(rng.randrange(-4, 5)) for _ in range(num_vars)]
        rel = EQ if rng.random() < 0.25 else GE
        rhs = Fraction(rng.randrange(-6, 7), rng.randrange(1, 3))
        cons.append((coeffs, rel, rhs))
    return num_vars, cons


def test_lp_matches_enumeration_oracle_500():
    rng = Random(42)
    agree = 0
    for _ in range(500):
        num_vars, cons = _random_instance(rng)
        p = LPProblem(EMPTY_TABLE, num_vars, cons)
        verdict = lp_feasible(p)
        expected = oracle_feasible(num_vars, cons)
        assert bool(verdict) == (expected is not None)
        agree += 1
    assert agree == 500


def test_feasible_point_reverifies():
    cons = [([1, 1], GE, Fraction(2)), ([1, -1], EQ, Fraction(0))]
    p = LPProblem(EMPTY_TABLE, 2, cons)
    res = lp_feasible(p)
    assert isinstance(res, Feasible)
    _verify_feasible(p, res.point, 4096)


def test_farkas_certificate_reverifies():
    # x >= 1 and -x >= 0 cannot both hold
    cons = [([1], GE, Fraction(1)), ([-1], GE, Fraction(0))]
    p = LPProblem(EMPTY_TABLE, 1, cons)
    res = lp_feasible(p)
    assert isinstance(res, Infeasible)
    _verify_farkas(p, res.farkas, 4096)


def test_equality_only_system():
    cons = [([1, 2], EQ, Fraction(5)), ([1, -1], EQ, Fraction(-1))]
    res = lp_feasible(LPProblem(EMPTY_TABLE, 2, cons))
    assert res
    assert [v.as_fraction() for v in res.point] == [Fraction(1), Fraction(2)]


def test_inconsistent_equalities_yield_farkas():
    cons = [([1, 1], EQ, Fraction(1)), ([2, 2], EQ, Fraction(3))]
    p = LPProblem(EMPTY_TABLE, 2, cons)
    res = lp_feasible(p)
    assert isinstance(res, Infeasible)
    _verify_farkas(p, res.farkas, 4096)


def test_symbolic_coefficients():
    from mamlab.scalar import Scalar
    from mamlab.symbols import Symbol, SymbolTable

    t = SymbolTable([Symbol("s", Fraction(3, 2), Fraction(3, 2) + Fraction(1, 2**64), 64)])
    s = Scalar.symbol(t, "s")
    # s*x >= 1, x >= 0 feasible since s > 0; s*x >= 1 with -x >= 0 is not
    res = lp_feasible(LPProblem(t, 1, [([s], GE, 1), ([1], GE, 0)]))
    assert res
    res2 = lp_feasible(LPProblem(t, 1, [([s], GE, 1), ([-1], GE, 0)]))
    assert isinstance(res2, Infeasible)
