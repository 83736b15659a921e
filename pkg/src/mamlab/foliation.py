"""Leaf classification of the holomorphic foliation attached to fan data.

The lattice Gamma_I controlling the leaf over a face I has rank
dim_Q V_I - dim_Q (V_I intersect Q^I), where V_I is the space of rational
vectors gamma with A gamma in the real span of {a_i : i in I}.

Derivation of the rank identity: Gamma_I consists of the vectors
2*pi*i*gamma + c(gamma) with gamma in Z^m and c(gamma) in C^I chosen so
that the sum lies in Ker A (complexified).  Such a correction exists iff
A gamma lies in span{a_i : i in I}, i.e. iff gamma is in V_I, and it is
unique because A is injective on C^I for a face I; gammas supported on I
itself give the zero element of the quotient.  Hence Gamma_I is the image
of the free abelian group V_I cap Z^m under a homomorphism with kernel
(V_I cap Z^I), so its rank is the dimension difference above.  The
brute-force lattice search oracle in the test suite validates this
identity on every fixture face.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Dict, List, Optional, Sequence, Tuple

from .errors import InputError, NotAFaceError
from .fan import FanData, is_complete, validate_fan
from .linalg import (
    ScalarMatrix,
    annihilator_basis,
    frac_kernel,
    rank,
    rational_solution_space,
    solve,
)
from .scalar import Scalar, zero
from .simplicial import SimplicialComplex, full_subcomplex
from .structure import PsiMap


def _v_space(F: FanData, I) -> List[List[Fraction]]:
    """Rational basis of V_I = {gamma in Q^m : A gamma in span{a_i : i in I}}."""
    if F.n == 0:
        e = []
        for i in range(F.m):
            v = [Fraction(0)] * F.m
            v[i] = Fraction(1)
            e.append(v)
        return e
    span_vecs = [list(F.vectors[i - 1]) for i in sorted(I)]
    phis = annihilator_basis(span_vecs, F.table, F.n)
    if not phis:
        e = []
        for i in range(F.m):
            v = [Fraction(0)] * F.m
            v[i] = Fraction(1)
            e.append(v)
        return e
    A = F.a_matrix()
    rows = []
    for phi in phis:
        rows.append(
            [
                sum((phi[r] * A[r, c] for r in range(F.n)), zero(F.table))
                for c in range(F.m)
            ]
        )
    return rational_solution_space(ScalarMatrix.from_rows(F.table, rows))


def gamma_rank(F: FanData, I) -> int:
    I = frozenset(I)
    if I and not F.complex.is_face(I):
        raise NotAFaceError(f"{sorted(I)} is not a face")
    V = _v_space(F, I)
    if not V:
        return 0
    # dimension of V intersect Q^I: coefficient vectors killing all
    # coordinates outside I
    outside = [j for j in range(F.m) if (j + 1) not in I]
    rows = [[v[j] for v in V] for j in outside]
    inter = frac_kernel(rows, len(V)) if rows else [
        [Fraction(1) if k == i else Fraction(0) for k in range(len(V))]
        for i in range(len(V))
    ]
    return len(V) - len(inter)


@dataclass
class LeafReport:
    I: List[int]
    rank: int
    g_leaf: Tuple[int, int]  # (torus rank, affine rank)
    f_leaf: str
    compact: bool


def leaf_type(F: FanData, psi: Optional[PsiMap], I) -> LeafReport:
    ell = F.ell
    rk = gamma_rank(F, I)
    compact = rk == 2 * ell
    desc = f"C^{ell} / (lattice of rank {rk})"
    if compact:
        desc += " (compact complex torus)"
    return LeafReport(sorted(I), rk, (rk, 2 * ell - rk), desc, compact)


# -- Seifert / rationality -------------------------------------------------------


def _primitive_int_vector(v: Sequence[Fraction]) -> List[int]:
    from math import lcm

    den = 1
    for x in v:
        den = lcm(den, x.denominator)
    ints = [int(x * den) for x in v]
    g = 0
    for x in ints:
        g = gcd(g, abs(x))
    if g > 1:
        ints = [x // g for x in ints]
    return ints


@dataclass
class SeifertReport:
    rational: bool
    lattice_basis: List[List[int]]  # integer basis of Ker A cap Q^m
    generators_primitive: Optional[bool]
    primitive_flags: Optional[Dict[int, bool]]  # non-ghost index -> primitive?


def detect_seifert(F: FanData) -> SeifertReport:
    """Rationality of Ker A, and primitivity of each generator in the
    lattice they span (the unbranched-Seifert criterion)."""
    if F.n == 0:
        basis = []
        for i in range(F.m):
            v = [0] * F.m
            v[i] = 1
            basis.append(v)
        return SeifertReport(True, basis, True, {})
    space = rational_solution_space(F.a_matrix())
    rational = len(space) == F.m - F.n
    basis = [_primitive_int_vector(v) for v in space]
    if not rational:
        return SeifertReport(False, basis, None, None)

    # integer coordinates on N_Z: pick an integer matrix C whose rational
    # kernel is Ker A; then e_i -> a_i factors through gamma -> C gamma and
    # a_i is primitive in N_Z iff column c_i is primitive in the lattice
    # spanned by all columns of C
    rows = frac_kernel([[Fraction(x) for x in b] for b in basis], F.m)
    C = [_primitive_int_vector(r) for r in rows]  # n rows, m cols
    from sympy import Matrix, Rational
    from sympy.matrices.normalforms import hermite_normal_form

    H = hermite_normal_form(Matrix(C))  # n x n column basis of the lattice
    Hinv = H.inv()
    flags: Dict[int, bool] = {}
    for i in sorted(F.complex.vertices()):
        ci = Matrix([C[r][i - 1] for r in range(len(C))])
        coords = Hinv * ci
        ints = [int(x) for x in coords]
        g = 0
        for x in ints:
            g = gcd(g, abs(x))
        flags[i] = g == 1
    return SeifertReport(rational, basis, all(flags.values()) if flags else True, flags)


# -- coordinate submanifolds -----------------------------------------------------


@dataclass
class CoordinateSubmanifold:
    J: List[int]
    subcomplex: SimplicialComplex  # on the relabeled ground set [|J|]
    m_J: int
    span_dim: int
    valid_fan: bool
    complete: bool


def _restricted_fan(F: FanData, J: Sequence[int]) -> Optional[FanData]:
    """Fan of {a_j : j in J} written in coordinates on their span, with the
    full subcomplex K_J relabeled to the ground set [|J|]."""
    S = sorted(J)
    relabel = {j: k + 1 for k, j in enumerate(S)}
    KJ = full_subcomplex(F.complex, J)
    faces = [[relabel[i] for i in f] for f in KJ.maximal_faces]
    Ksub = SimplicialComplex.create(len(S), faces)
    if not S:
        return FanData.create(F.table, 0, [], Ksub)
    sub = F.submatrix(S)
    d = rank(sub)
    # basis from pivot columns of the submatrix
    pivots: List[int] = []
    work = [sub.row(i) for i in range(sub.rows)]
    from .linalg import _rref

    pivots = _rref(work, F.table)
    basis_cols = [sub.col(c) for c in pivots]
    B = ScalarMatrix.from_rows(F.table, basis_cols).transpose() if basis_cols else None
    coords = []
    for k in range(len(S)):
        target = sub.col(k)
        if B is None:
            coords.append([])
            continue
        x = solve(B, target)
        if x is None:
            return None
        coords.append(x)
    return FanData.create(F.table, d, coords, Ksub)


def coordinate_submanifolds(
    F: FanData,
    psi: Optional[PsiMap] = None,
    subsets: Optional[List[List[int]]] = None,
) -> List[CoordinateSubmanifold]:
    if subsets is None:
        if F.m > 16:
            raise InputError("ground set too large; pass an explicit subset list")
        subsets = []
        for mask in range(1 << F.m):
            subsets.append([i + 1 for i in range(F.m) if mask >> i & 1])
    out = []
    for J in subsets:
        sub = _restricted_fan(F, J)
        if sub is None:
            continue
        ok = validate_fan(sub).ok
        comp = bool(ok and is_complete(sub).complete)
        out.append(
            CoordinateSubmanifold(sorted(J), sub.complex, len(J), sub.n, ok, comp)
        )
    out.sort(key=lambda r: (len(r.J), r.J))
    return out
