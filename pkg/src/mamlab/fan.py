"""Simplicial fan data: axiom validation, completeness, normal fans of
simple polytopes, weak-normality certificates, and quotient fans.

A fan is given by a simplicial complex K on [m] together with generator
vectors a_1..a_m in Scalar^n (cone sigma_I = nonnegative span of {a_i :
i in I}).  All decisions are exact: rank computations over the scalar
field, relative-interior disjointness / certificate search through the
exact LP module, strict sign tests via interval refinement.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from fractions import Fraction
from typing import Dict, FrozenSet, List, Optional, Tuple

from .errors import InputError, NotAFaceError
from .linalg import ScalarMatrix, annihilator_basis, kernel_basis, rank, solve
from .lp import EQ, GE, Feasible, Infeasible, LPProblem, lp_feasible
from .scalar import DEFAULT_MAX_BITS, Scalar, sign, zero
from .simplicial import SimplicialComplex, link, nerve_complex
from .symbols import SymbolTable

Face = FrozenSet[int]


@dataclass(frozen=True)
class FanData:
    table: SymbolTable
    n: int
    vectors: Tuple[Tuple[Scalar, ...], ...]  # m vectors, each length n
    complex: SimplicialComplex

    @staticmethod
    def create(table, n, vectors, complex_) -> "FanData":
        vecs = []
        for v in vectors:
            row = tuple(Scalar.from_rational(table, c) for c in v)
            if len(row) != n:
                raise InputError("generator vector length != n")
            vecs.append(row)
        if complex_.m != len(vecs):
            raise InputError("ground-set size != number of generator vectors")
        return FanData(table, n, tuple(vecs), complex_)

    @property
    def m(self) -> int:
        return len(self.vectors)

    @property
    def ell(self) -> int:
        if (self.m - self.n) % 2 != 0:
            raise InputError("m - n is odd; no complex-dimension parameter")
        return (self.m - self.n) // 2

    def submatrix(self, I) -> ScalarMatrix:
        """Columns a_i for i in sorted(I), as an n x |I| matrix."""
        idx = sorted(I)
        rows = [[self.vectors[i - 1][r] for i in idx] for r in range(self.n)]
        return ScalarMatrix.from_rows(self.table, rows)

    def a_matrix(self) -> ScalarMatrix:
        """The n x m matrix A with columns a_1..a_m."""
        return self.submatrix(range(1, self.m + 1))


@dataclass
class FanReport:
    ok: bool
    violations: List[dict]


@dataclass
class CompletenessReport:
    complete: bool
    diagnostics: List[str]


@dataclass(frozen=True)
class PolytopeH:
    table: SymbolTable
    n: int
    vectors: Tuple[Tuple[Scalar, ...], ...]
    offsets: Tuple[Scalar, ...]

    @staticmethod
    def create(table, n, vectors, offsets, max_bits=DEFAULT_MAX_BITS) -> "PolytopeH":
        vecs = tuple(tuple(Scalar.from_rational(table, c) for c in v) for v in vectors)
        offs = tuple(Scalar.from_rational(table, b) for b in offsets)
        if len(vecs) != len(offs):
            raise InputError("offsets length != number of normals")
        if any(len(v) != n for v in vecs):
            raise InputError("normal vector length != n")
        P = PolytopeH(table, n, vecs, offs)
        P._check_bounded(max_bits)
        P._check_full_dim(max_bits)
        return P

    @property
    def m(self) -> int:
        return len(self.vectors)

    def _check_bounded(self, max_bits) -> None:
        # bounded iff the recession cone {u : <a_i,u> >= 0} is {0}
        for k in range(self.n):
            for sgn in (1, -1):
                cons = [(list(a), GE, 0) for a in self.vectors]
                e = [0] * self.n
                e[k] = sgn
                cons.append((e, GE, 1))
                if lp_feasible(LPProblem(self.table, self.n, cons), max_bits):
                    raise InputError("polytope is unbounded")

    def _check_full_dim(self, max_bits) -> None:
        # full-dimensional iff {<a_i,u> + b_i*t >= 1, t >= 1} is feasible:
        # scaling an interior point by t clears any small slack
        cons = [(list(a) + [b], GE, 1) for a, b in zip(self.vectors, self.offsets)]
        cons.append(([0] * self.n + [1], GE, 1))
        if not lp_feasible(LPProblem(self.table, self.n + 1, cons), max_bits):
            raise InputError("polytope is empty or not full-dimensional")


@dataclass
class VertexRecord:
    point: List[Scalar]
    active: Face  # facet indices with <a_i,u> + b_i = 0


@dataclass
class WeakNormalCertificate:
    b: List[Scalar]
    vertices: Dict[Face, List[Scalar]]  # maximal face -> u_I
    betas: Dict[Face, List[Scalar]]  # maximal face -> beta_I


@dataclass
class NotWeaklyNormal:
    farkas: List[Scalar]
    constraints: List[Tuple[list, str, object]]  # the refuted system


def validate_fan(F: FanData, max_bits: int = DEFAULT_MAX_BITS) -> FanReport:
    """Check simplicial-fan axioms: generators of every face are linearly
    independent, and relative interiors of distinct cones are disjoint.

    Overlap is tested on every incomparable pair of nonempty faces, not
    just maximal ones: two distinct cones with equal generators (e.g.
    duplicated rays) overlap at ray level while all maximal interiors
    stay disjoint.
    """
    violations: List[dict] = []
    for M in F.complex.maximal_faces:
        if rank(F.submatrix(M)) != len(M):
            violations.append({"kind": "dependent", "faces": [sorted(M)]})
    faces = [f for f in F.complex.faces() if f]
    for I, J in combinations(faces, 2):
        if I <= J or J <= I:
            continue
        # mu_i >= 1, nu_j >= 1, sum mu_i a_i = sum nu_j a_j: by homogeneity
        # of cones, any common relative-interior point rescales to this
        idx_i = sorted(I)
        idx_j = sorted(J)
        union = sorted(I | J)
        if rank(F.submatrix(frozenset(union))) == len(union):
            # jointly independent generators span a simplicial cone in
            # which both faces sit; their relative interiors are disjoint
            continue
        nv = len(idx_i) + len(idx_j)
        cons = []
        for r in range(F.n):
            row = [F.vectors[i - 1][r] for i in idx_i]
            row += [-F.vectors[j - 1][r] for j in idx_j]
            cons.append((row, EQ, 0))
        for k in range(nv):
            e = [0] * nv
            e[k] = 1
            cons.append((e, GE, 1))
        if lp_feasible(LPProblem(F.table, nv, cons), max_bits):
            violations.append({"kind": "overlap", "faces": [idx_i, idx_j]})
    violations.sort(key=lambda v: (v["kind"], v["faces"]))
    return FanReport(not violations, violations)


def _ridge_functional(F: FanData, ridge: Face, max_bits):
    """A functional annihilating span{a_r : r in ridge}, from a basis of
    the annihilator (dimension 1 when the ridge generators have rank n-1)."""
    vecs = [list(F.vectors[i - 1]) for i in sorted(ridge)]
    basis = annihilator_basis(vecs, F.table, F.n)
    if len(basis) != 1:
        return None
    return basis[0]


def is_complete(F: FanData, max_bits: int = DEFAULT_MAX_BITS) -> CompletenessReport:
    """A validated simplicial fan covers R^n iff every maximal cone is
    n-dimensional, every ridge separates exactly two maximal cones whose
    free generators lie strictly on opposite sides of the ridge
    hyperplane, and the dual graph is connected."""
    diags: List[str] = []
    maxes = list(F.complex.maximal_faces)
    if F.n == 0:
        if maxes:
            diags.append("n = 0 but K has a nonempty face")
        return CompletenessReport(not diags, diags)
    if not maxes:
        return CompletenessReport(False, ["K has no maximal faces"])
    for M in maxes:
        if len(M) != F.n:
            diags.append(f"maximal face {sorted(M)} has size {len(M)} != n = {F.n}")
    if diags:
        return CompletenessReport(False, diags)

    ridges: Dict[Face, List[int]] = {}
    for mi, M in enumerate(maxes):
        for drop in sorted(M):
            ridges.setdefault(M - {drop}, []).append(mi)
    adjacency = {i: set() for i in range(len(maxes))}
    for R in sorted(ridges, key=lambda r: sorted(r)):
        owners = ridges[R]
        if len(owners) != 2:
            diags.append(
                f"ridge {sorted(R)} lies in {len(owners)} maximal faces, expected 2"
            )
            continue
        mi, mj = owners
        phi = _ridge_functional(F, R, max_bits)
        if phi is None:
            diags.append(f"ridge {sorted(R)} generators are degenerate")
            continue
        p = next(iter(maxes[mi] - R))
        q = next(iter(maxes[mj] - R))
        sp = _pair_sign(phi, F.vectors[p - 1], F.table, max_bits)
        sq = _pair_sign(phi, F.vectors[q - 1], F.table, max_bits)
        if sp * sq >= 0:
            diags.append(
                f"opposite generators of ridge {sorted(R)} do not straddle "
                f"its hyperplane"
            )
            continue
        adjacency[mi].add(mj)
        adjacency[mj].add(mi)
    if diags:
        return CompletenessReport(False, diags)

    seen = {0}
    stack = [0]
    while stack:
        for nb in adjacency[stack.pop()]:
            if nb not in seen:
                seen.add(nb)
                stack.append(nb)
    if len(seen) != len(maxes):
        diags.append("dual graph of maximal cones is disconnected")
    return CompletenessReport(not diags, diags)


def _pair_sign(phi, vec, table, max_bits) -> int:
    val = sum((p * v for p, v in zip(phi, vec)), zero(table))
    if val.is_zero():
        return 0
    return sign(val, table, max_bits)


@dataclass
class NormalFanResult:
    fan: Optional[FanData]
    vertices: List[VertexRecord]
    simple: bool


def normal_fan(P: PolytopeH, max_bits: int = DEFAULT_MAX_BITS) -> NormalFanResult:
    """Vertex enumeration over n-subsets of the bounding hyperplanes; the
    normal fan has one maximal cone per vertex, spanned by the normals of
    the facets through it."""
    table = P.table
    n = P.n
    records: List[VertexRecord] = []
    seen_active = set()
    for subset in combinations(range(1, P.m + 1), n):
        M = []
        rhs = []
        for i in subset:
            M.append(list(P.vectors[i - 1]))
            rhs.append(-P.offsets[i - 1])
        mat = ScalarMatrix.from_rows(table, M)
        if rank(mat) != n:
            continue
        u = solve(mat, rhs)
        if u is None:
            continue
        slacks = []
        ok = True
        for a, b in zip(P.vectors, P.offsets):
            s = sum((ai * ui for ai, ui in zip(a, u)), zero(table)) + b
            if not s.is_zero() and sign(s, table, max_bits) < 0:
                ok = False
                break
            slacks.append(s)
        if not ok:
            continue
        active = frozenset(i for i, s in enumerate(slacks, start=1) if s.is_zero())
        if active in seen_active:
            continue
        seen_active.add(active)
        records.append(VertexRecord(u, active))
    records.sort(key=lambda r: sorted(r.active))
    if not records:
        raise InputError("no vertices found; polytope empty or degenerate")
    simple = all(len(r.active) == n for r in records)
    fan = None
    if simple:
        K = nerve_complex(P.m, [r.active for r in records])
        fan = FanData.create(table, n, P.vectors, K)
    return NormalFanResult(fan, records, simple)


def _weak_normal_lp(F, strict_pairs, all_pairs, max_bits):
    """System in unknowns (b_1..b_m, u_I per maximal I); pairs in
    strict_pairs get slack >= 1, the rest >= 0."""
    maxes = list(F.complex.maximal_faces)
    nv = F.m + F.n * len(maxes)
    cons = []
    for t, M in enumerate(maxes):
        off = F.m + F.n * t
        for i in range(1, F.m + 1):
            row = [zero(F.table)] * nv
            row[i - 1] = Scalar.from_rational(F.table, 1)
            for r in range(F.n):
                row[off + r] = F.vectors[i - 1][r]
            if i in M:
                cons.append((row, EQ, 0))
            elif (t, i) in strict_pairs:
                cons.append((row, GE, 1))
            else:
                cons.append((row, GE, 0))
    return lp_feasible(LPProblem(F.table, nv, cons), max_bits), cons


def weak_normal_certificate(F: FanData, max_bits: int = DEFAULT_MAX_BITS):
    """Search for offsets b and per-cone vertices u_I realizing the fan as
    (a subdivision of) the normal fan of {u : <a_i,u> + b_i >= 0}.

    First tries strict slack (>= 1) on every off-cone pair; if that
    fails, each pair is tested individually and only the jointly
    realizable ones are kept strict (non-simple polytope case), the rest
    pinned at >= 0.  Returns WeakNormalCertificate or NotWeaklyNormal.
    """
    maxes = list(F.complex.maximal_faces)
    all_pairs = [
        (t, i)
        for t, M in enumerate(maxes)
        for i in range(1, F.m + 1)
        if i not in M
    ]
    result, cons = _weak_normal_lp(F, set(all_pairs), all_pairs, max_bits)
    if isinstance(result, Infeasible):
        farkas_strict, cons_strict = result.farkas, cons
        # non-simple polytope case: keep strict only the individually
        # realizable pairs (their joint system is feasible by averaging
        # and rescaling, since all constraints are homogeneous)
        strict = set()
        for pair in all_pairs:
            r, _ = _weak_normal_lp(F, {pair}, all_pairs, max_bits)
            if isinstance(r, Feasible):
                strict.add(pair)
        result, cons = _weak_normal_lp(F, strict, all_pairs, max_bits)
        if isinstance(result, Infeasible):
            return NotWeaklyNormal(result.farkas, cons)
        # a genuine certificate must describe a bounded, full-dimensional
        # polytope; the relaxed system admits degenerate solutions (b = 0)
        try:
            PolytopeH.create(F.table, F.n, F.vectors, result.point[: F.m], max_bits)
        except InputError:
            return NotWeaklyNormal(farkas_strict, cons_strict)

    x = result.point
    b = x[: F.m]
    vertices: Dict[Face, List[Scalar]] = {}
    betas: Dict[Face, List[Scalar]] = {}
    for t, M in enumerate(maxes):
        u = x[F.m + F.n * t : F.m + F.n * (t + 1)]
        beta = []
        for i in range(1, F.m + 1):
            v = sum(
                (F.vectors[i - 1][r] * u[r] for r in range(F.n)), zero(F.table)
            ) + b[i - 1]
            beta.append(v)
        vertices[M] = u
        betas[M] = beta

    # scale by the smallest power of two making every nonzero beta entry >= 2
    nonzero = [v for beta in betas.values() for v in beta if not v.is_zero()]
    if nonzero:
        mn = nonzero[0]
        for v in nonzero[1:]:
            d = v - mn
            if not d.is_zero() and sign(d, F.table, max_bits) < 0:
                mn = v
        factor = Fraction(1)
        while sign(mn * factor - 2, F.table, max_bits) < 0:
            factor *= 2
        while sign(mn * (factor / 2) - 2, F.table, max_bits) >= 0:
            factor /= 2
        if factor != 1:
            b = [v * factor for v in b]
            vertices = {M: [v * factor for v in u] for M, u in vertices.items()}
            betas = {M: [v * factor for v in beta] for M, beta in betas.items()}
    return WeakNormalCertificate(b, vertices, betas)


def quotient_fan(F: FanData, I) -> FanData:
    """Project along span{a_i : i in I}; ground complex is link(K, I)."""
    I = frozenset(I)
    if not F.complex.is_face(I):
        raise NotAFaceError(f"{sorted(I)} is not a face")
    if not I:
        return F
    span_vecs = [list(F.vectors[i - 1]) for i in sorted(I)]
    phis = annihilator_basis(span_vecs, F.table, F.n)
    new_n = F.n - len(I)
    if len(phis) != new_n:
        raise InputError("face generators are dependent; no quotient defined")
    projected = []
    for a in F.vectors:
        projected.append(
            [sum((p * c for p, c in zip(phi, a)), zero(F.table)) for phi in phis]
        )
    return FanData.create(F.table, new_n, projected, link(F.complex, I))
