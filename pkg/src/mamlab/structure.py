"""Complex-structure data on a fan: the kernel of A, the column map Psi,
its admissibility conditions, genericity tests, irrationality-of-subspace
checks, torus periods (n = 0), and diagonal Hopf data (ell = 1).

Complex scalars are (real, imaginary) pairs of exact Scalars; complex
linear algebra runs on doubled real systems or with explicit pair
arithmetic.  The coefficient field is formally real, so c^2 + d^2 = 0
forces c = d = 0 and complex division needs no sign tests.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from random import Random
from typing import Dict, List, Optional, Sequence, Tuple

from mpmath import iv

from .errors import InputError
from .fan import FanData
from .linalg import (
    ScalarMatrix,
    kernel_basis,
    rank,
    rational_solution_space,
    solve,
)
from .scalar import DEFAULT_MAX_BITS, Scalar, interval, sign, to_float, zero
from .simplicial import SimplicialComplex
from .symbols import SymbolTable

CNum = Tuple[Scalar, Scalar]  # (real part, imaginary part)


# -- complex pair arithmetic ---------------------------------------------------


def c_add(a: CNum, b: CNum) -> CNum:
    return (a[0] + b[0], a[1] + b[1])


def c_sub(a: CNum, b: CNum) -> CNum:
    return (a[0] - b[0], a[1] - b[1])


def c_mul(a: CNum, b: CNum) -> CNum:
    return (a[0] * b[0] - a[1] * b[1], a[0] * b[1] + a[1] * b[0])


def c_div(a: CNum, b: CNum) -> CNum:
    d = b[0] * b[0] + b[1] * b[1]
    return ((a[0] * b[0] + a[1] * b[1]) / d, (a[1] * b[0] - a[0] * b[1]) / d)


def c_is_zero(a: CNum) -> bool:
    return a[0].is_zero() and a[1].is_zero()


def c_neg(a: CNum) -> CNum:
    return (-a[0], -a[1])


def complex_kernel(rows: List[List[CNum]], table: SymbolTable, cols: int):
    """Basis of the right kernel of a complex matrix given as pair rows."""
    czero = (zero(table), zero(table))
    cone = (Scalar.from_rational(table, 1), zero(table))
    work = [list(r) for r in rows]
    pivots: List[int] = []
    r = 0
    for c in range(cols):
        pr = next(
            (i for i in range(r, len(work)) if not c_is_zero(work[i][c])), None
        )
        if pr is None:
            continue
        work[r], work[pr] = work[pr], work[r]
        pv = work[r][c]
        work[r] = [c_div(x, pv) for x in work[r]]
        for i in range(len(work)):
            if i != r and not c_is_zero(work[i][c]):
                f = work[i][c]
                work[i] = [c_sub(x, c_mul(f, y)) for x, y in zip(work[i], work[r])]
        pivots.append(c)
        r += 1
        if r == len(work):
            break
    pivot_set = set(pivots)
    basis = []
    for fc in range(cols):
        if fc in pivot_set:
            continue
        v = [czero] * cols
        v[fc] = cone
        for rr, pc in enumerate(pivots):
            v[pc] = c_neg(work[rr][fc])
        basis.append(v)
    return basis


# -- Psi ----------------------------------------------------------------------


@dataclass(frozen=True)
class PsiMap:
    table: SymbolTable
    entries: Tuple[Tuple[CNum, ...], ...]  # m rows, ell columns

    @property
    def m(self) -> int:
        return len(self.entries)

    @property
    def ell(self) -> int:
        return len(self.entries[0]) if self.entries else 0

    @staticmethod
    def create(table, entries) -> "PsiMap":
        rows = []
        for row in entries:
            rows.append(
                tuple(
                    (
                        Scalar.from_rational(table, re)
                        if not isinstance(re, Scalar)
                        else re,
                        Scalar.from_rational(table, im)
                        if not isinstance(im, Scalar)
                        else im,
                    )
                    for re, im in row
                )
            )
        if len({len(r) for r in rows}) > 1:
            raise InputError("ragged psi matrix")
        return PsiMap(table, tuple(rows))

    def column(self, j: int) -> List[CNum]:
        return [self.entries[i][j] for i in range(self.m)]

    def real_matrix(self) -> ScalarMatrix:
        """The m x 2ell matrix of Re(Psi) as a real-linear map R^{2ell} -> R^m:
        w = x + iy maps to sum_j (Re psi_j) x_j - (Im psi_j) y_j."""
        rows = []
        for i in range(self.m):
            row = []
            for j in range(self.ell):
                re, im = self.entries[i][j]
                row.extend([re, -im])
            rows.append(row)
        return ScalarMatrix.from_rows(self.table, rows)


@dataclass
class PsiReport:
    ok: bool
    condition_a: bool  # Re o Psi injective (rank 2*ell)
    condition_b: bool  # A o Re o Psi = 0
    details: List[str]


def kernel_of_A(F: FanData) -> List[List[Scalar]]:
    """Basis of Ker A for the n x m matrix with columns a_1..a_m; requires
    the a_i to span R^n, so the kernel has dimension m - n."""
    if F.n == 0:
        one = Scalar.from_rational(F.table, 1)
        z = zero(F.table)
        return [[one if j == i else z for j in range(F.m)] for i in range(F.m)]
    A = F.a_matrix()
    if rank(A) != F.n:
        raise InputError("generator vectors do not span R^n")
    return kernel_basis(A)


def check_psi(F: FanData, psi: PsiMap, max_bits: int = DEFAULT_MAX_BITS) -> PsiReport:
    ell = F.ell
    if psi.m != F.m or psi.ell != ell:
        raise InputError(
            f"psi shape {psi.m}x{psi.ell} does not match m={F.m}, ell={ell}"
        )
    R = psi.real_matrix()
    cond_a = rank(R) == 2 * ell
    details = []
    if not cond_a:
        details.append("real part of psi is not injective on R^{2l}")
    cond_b = True
    if F.n > 0:
        A = F.a_matrix()
        for j in range(2 * ell):
            col = R.col(j)
            if any(not v.is_zero() for v in A.matvec(col)):
                cond_b = False
                details.append("A composed with Re(psi) is nonzero")
                break
    return PsiReport(cond_a and cond_b, cond_a, cond_b, details)


def sample_psi(F: FanData, seed: int = 0, retries: int = 32) -> PsiMap:
    """Canonical admissible Psi: pair up a (seeded, rationally recombined)
    basis w_1..w_{2l} of Ker A into columns w_{2j-1} + i w_{2j}."""
    basis = kernel_of_A(F)
    ell = F.ell
    if len(basis) != 2 * ell:
        raise InputError("kernel dimension != 2*ell")
    rng = Random(seed)
    table = F.table
    for _ in range(retries):
        coeffs = [
            [Fraction(rng.randint(-3, 3)) for _ in range(2 * ell)]
            for _ in range(2 * ell)
        ]
        mixed = []
        for row in coeffs:
            v = [zero(table)] * F.m
            for c, w in zip(row, basis):
                if c:
                    v = [x + w_i * c for x, w_i in zip(v, w)]
            mixed.append(v)
        M = ScalarMatrix.from_rows(table, mixed)
        if rank(M) != 2 * ell:
            continue
        entries = []
        for i in range(F.m):
            entries.append(
                [(mixed[2 * j][i], mixed[2 * j + 1][i]) for j in range(ell)]
            )
        psi = PsiMap.create(table, entries)
        if check_psi(F, psi).ok:
            return psi
    raise InputError("could not sample an admissible psi (retries exhausted)")


# -- genericity ----------------------------------------------------------------


@dataclass
class Lemma417Report:
    status: str  # "verified" | "counterexample" | "skipped"
    scope: str
    height: Optional[int]
    candidates_checked: int
    counterexample: Optional[dict]


@dataclass
class GenericityReport:
    g1_witness: Optional[List[Fraction]]  # None = holds
    g2_witness: Optional[List[Fraction]]
    psi_417: Optional[Lemma417Report]

    @property
    def g1_holds(self) -> bool:
        return self.g1_witness is None

    @property
    def g2_holds(self) -> bool:
        return self.g2_witness is None


def _normalized_witness(v: List[Fraction]) -> List[Fraction]:
    lead = next((x for x in v if x), None)
    if lead is not None and lead < 0:
        v = [-x for x in v]
    return list(v)


def genericity_g1(F: FanData) -> Optional[List[Fraction]]:
    """None when no rational functional vanishes on Ker A; otherwise a
    nonzero rational witness functional."""
    basis = kernel_of_A(F)
    if not basis:
        # Ker A = 0: every functional vanishes on it
        return [Fraction(1)] + [Fraction(0)] * (F.m - 1)
    M = ScalarMatrix.from_rows(F.table, basis)
    space = rational_solution_space(M)
    return _normalized_witness(space[0]) if space else None


def genericity_g2(F: FanData) -> Optional[List[Fraction]]:
    """None when Ker A contains no rational vector; otherwise a witness."""
    if F.n == 0:
        return [Fraction(1)] + [Fraction(0)] * (F.m - 1)
    space = rational_solution_space(F.a_matrix())
    return _normalized_witness(space[0]) if space else None


def _real_span_matrix(table, vectors):
    return ScalarMatrix.from_rows(table, vectors) if vectors else None


def _dim(table, vectors) -> int:
    if not vectors:
        return 0
    return rank(ScalarMatrix.from_rows(table, vectors))


def _complex_span_doubled(psi: PsiMap, extra_imag: List[List[Fraction]]):
    """Real spanning set in R^{2m} = (Re, Im) of the complex span of the
    psi columns together with i*w for rational vectors w: each complex
    generator v contributes the doubled vectors v and iv."""
    table = psi.table
    z = zero(table)
    gens = []
    for j in range(psi.ell):
        col = psi.column(j)
        re = [c[0] for c in col]
        im = [c[1] for c in col]
        gens.append(re + im)  # v
        gens.append([-x for x in im] + re)  # iv
    for w in extra_imag:
        ws = [Scalar.from_rational(table, c) for c in w]
        gens.append([z] * psi.m + ws)  # iw
        gens.append([-x for x in ws] + [z] * psi.m)  # i(iw) = -w
    return gens


def _conjugate_span_doubled(psi: PsiMap):
    gens = []
    for j in range(psi.ell):
        col = psi.column(j)
        re = [c[0] for c in col]
        im = [-c[1] for c in col]
        gens.append(re + im)
        gens.append([-x for x in im] + re)
    return gens


def _height_vectors(m: int, height: int):
    """Nonzero integer vectors with entries in [-height, height], one per
    projective class (first nonzero entry positive, content 1)."""
    from math import gcd

    out = []
    ranges = [range(-height, height + 1)] * m

    def rec(prefix):
        if len(prefix) == m:
            v = list(prefix)
            nz = [x for x in v if x]
            if not nz or nz[0] < 0:
                return
            g = 0
            for x in nz:
                g = gcd(g, abs(x))
            if g == 1:
                out.append([Fraction(x) for x in v])
            return
        for x in range(-height, height + 1):
            rec(prefix + [x])

    rec([])
    return out


def psi_lemma417_check(
    F: FanData,
    psi: PsiMap,
    candidates: Optional[List[List[List[Fraction]]]] = None,
    height: int = 1,
    max_candidates: int = 20000,
) -> Lemma417Report:
    """Search for a proper complex subspace L with c subset of L, nonzero
    conj(c) intersection L, and L meeting iR^m in a given rational
    subspace W; candidates W are supplied explicitly or enumerated as
    spans of subsets of integer vectors of bounded height.

    When ell = 1 and no rational functional vanishes on Ker A, a proper
    violating L would force an odd-dimensional space carrying a complex
    structure, which is impossible; that parity argument certifies all
    candidates at once.
    """
    table = F.table
    ell = F.ell
    if ell == 1 and genericity_g1(F) is None:
        return Lemma417Report(
            "verified",
            "all rational subspaces (parity: a violating subspace would have "
            "odd real dimension yet carry a complex structure)",
            None,
            0,
            None,
        )

    if candidates is None:
        vecs = _height_vectors(F.m, height)
        cand_list = []
        for size in range(1, 2 * ell + 1):
            for S in combinations(vecs, size):
                cand_list.append([list(v) for v in S])
                if len(cand_list) > max_candidates:
                    return Lemma417Report(
                        "skipped",
                        f"candidate enumeration exceeded cap {max_candidates}",
                        height,
                        0,
                        None,
                    )
        scope = f"subspaces spanned by <= {2 * ell} integer vectors of height <= {height}"
    else:
        cand_list = candidates
        scope = "explicitly supplied candidate subspaces"

    cbar = _conjugate_span_doubled(psi)
    checked = 0
    for W in cand_list:
        checked += 1
        L = _complex_span_doubled(psi, W)
        dim_L = _dim(table, L)
        if dim_L >= 2 * F.m:
            continue  # L = C^m, allowed
        dim_cbar = _dim(table, cbar)
        dim_sum = _dim(table, L + cbar)
        dim_int = dim_L + dim_cbar - dim_sum
        if dim_int > 0:
            return Lemma417Report(
                "counterexample",
                scope,
                height if candidates is None else None,
                checked,
                {
                    "W": [[str(c) for c in v] for v in W],
                    "dim_C_L": dim_L // 2,
                    "dim_R_conj_intersection": dim_int,
                },
            )
    return Lemma417Report(
        "verified", scope, height if candidates is None else None, checked, None
    )


def genericity(F: FanData, psi: Optional[PsiMap] = None, height: int = 1) -> GenericityReport:
    g1 = genericity_g1(F)
    g2 = genericity_g2(F)
    report_417 = None
    if psi is not None:
        report_417 = psi_lemma417_check(F, psi, height=height)
    return GenericityReport(g1, g2, report_417)


# -- torus periods (n = 0) ------------------------------------------------------


@dataclass
class TorusPeriods:
    projection: List[List[CNum]]  # ell x m complex matrix P with P psi = 0
    periods_exact: List[List[CNum]]  # 2l generators: columns of P (times 2*pi*i)
    periods_numeric: List[List[complex]]  # 2*pi*i * P columns at working precision


def torus_periods(
    F: FanData, psi: PsiMap, precision: int = 53
) -> TorusPeriods:
    """Lattice generators of the torus C^l / image(2*pi*i Z^m) for n = 0:
    project C^m onto a complement of the psi-column span via a full-rank
    left annihilator P, then push the 2*pi*i coordinate vectors through."""
    if F.n != 0 or F.complex.maximal_faces:
        raise InputError("torus periods require n = 0 and K = {emptyset}")
    rep = check_psi(F, psi)
    if not rep.ok:
        raise InputError("psi fails admissibility; no torus structure")
    table = F.table
    ell = F.ell
    # rows of Psi^T are the columns psi_j; left-annihilate: kernel of Psi^T
    rows = [psi.column(j) for j in range(ell)]
    basis = complex_kernel(rows, table, F.m)
    if len(basis) != ell:
        raise InputError("psi columns are complex-linearly dependent")
    P = basis  # ell vectors of length m; P[j][k] = entry (j, k)
    import math

    two_pi = 2 * math.pi
    periods_exact = []
    periods_numeric = []
    for k in range(F.m):
        col = [P[j][k] for j in range(ell)]
        periods_exact.append(col)
        num = []
        for re, im in col:
            a = to_float(re, precision)
            b = to_float(im, precision)
            # 2*pi*i * (a + bi) = -2*pi*b + 2*pi*a i
            num.append(complex(-two_pi * b, two_pi * a))
        periods_numeric.append(num)
    # real rank check on the 2l doubled-coordinate vectors
    import numpy as np

    mat = []
    for num in periods_numeric:
        row = []
        for c in num:
            row.extend([c.real, c.imag])
        mat.append(row)
    if np.linalg.matrix_rank(np.array(mat), tol=1e-9) != 2 * ell:
        raise InputError("period vectors do not have full real rank")
    return TorusPeriods(P, periods_exact, periods_numeric)


# -- Hopf data (ell = 1) ---------------------------------------------------------


@dataclass
class HopfData:
    ghost: int
    lam: List[Scalar]  # positive part of the normalized kernel basis
    mu: List[Scalar]
    alpha: Tuple[float, float]  # numeric (Re, Im) of the raw alpha
    zetas: List[CNum]  # normalized so the multiplier moduli are e^{-2 pi lam}
    multipliers: List[complex]
    moduli: List[object]  # mpmath iv.mpf intervals


def _hopf_shape(K: SimplicialComplex) -> int:
    """Ghost index when K is the boundary of a simplex on the remaining
    vertices (with exactly one ghost); raises otherwise."""
    ghosts = sorted(K.ghosts())
    if len(ghosts) != 1:
        raise InputError("expected exactly one ghost vertex")
    g = ghosts[0]
    verts = sorted(set(range(1, K.m + 1)) - {g})
    n = K.m - 2
    expected = {frozenset(c) for c in combinations(verts, n)} if n > 0 else set()
    if set(K.maximal_faces) != expected:
        raise InputError("complex is not the boundary of a simplex plus a ghost")
    return g


def hopf_data(
    F: FanData, psi: PsiMap, precision: int = 53, max_bits: int = DEFAULT_MAX_BITS
) -> HopfData:
    table = F.table
    if F.ell != 1:
        raise InputError("hopf data requires ell = 1")
    g = _hopf_shape(F.complex)
    others = [i for i in range(1, F.m + 1) if i != g]

    basis = kernel_of_A(F)
    if len(basis) != 2:
        raise InputError("kernel dimension != 2")
    w1, w2 = basis
    # normalize to v1 = (lam, 0), v2 = (mu, 1) in the (others..., ghost) split
    gi = g - 1
    if not w2[gi].is_zero():
        v2 = [x / w2[gi] for x in w2]
        v1 = [a - w1[gi] * b for a, b in zip(w1, v2)]
    elif not w1[gi].is_zero():
        v2 = [x / w1[gi] for x in w1]
        v1 = [a - w2[gi] * b for a, b in zip(w2, v2)]
    else:
        raise InputError("kernel does not see the ghost coordinate")
    if all(v.is_zero() for v in v1):
        raise InputError("degenerate kernel basis")

    lam_signs = []
    for i in others:
        x = v1[i - 1]
        if x.is_zero():
            raise InputError("lambda-positivity failure: zero coordinate")
        lam_signs.append(sign(x, table, max_bits))
    if all(s < 0 for s in lam_signs):
        v1 = [-x for x in v1]
    elif not all(s > 0 for s in lam_signs):
        raise InputError("lambda-positivity failure: mixed signs")

    # psi column = z1 * v1 + z2 * v2 with z2 read off at the ghost coordinate
    col = psi.column(0)
    z2 = col[gi]
    if c_is_zero(z2):
        raise InputError("psi column vanishes at the ghost coordinate")
    k0 = others[0] - 1
    num = c_sub(col[k0], c_mul(z2, (v2[k0], zero(table))))
    z1 = c_div(num, (v1[k0], zero(table)))
    alpha = c_div(z1, z2)
    # consistency across the remaining coordinates
    for i in others[1:]:
        lhs = col[i - 1]
        rhs = c_add(
            c_mul(z1, (v1[i - 1], zero(table))),
            c_mul(z2, (v2[i - 1], zero(table))),
        )
        if not c_is_zero(c_sub(lhs, rhs)):
            raise InputError("psi column is not in the kernel span")

    a_re, a_im = alpha
    if a_im.is_zero():
        raise InputError("alpha is real; no complex structure")
    flip = sign(a_im, table, max_bits) < 0
    if flip:
        a_re, a_im = -a_re, -a_im
    # zeta = mu' + i lam' with lam' = Im(alpha) lam, mu' = mu + Re(alpha) lam
    lam_p = []
    mu_p = []
    zetas: List[CNum] = []
    for i in others:
        l = v1[i - 1]
        m_ = v2[i - 1]
        if flip:
            m_ = -m_
        lp = a_im * l
        mp = m_ + a_re * l
        lam_p.append(lp)
        mu_p.append(mp)
        zetas.append((mp, lp))

    multipliers = []
    moduli = []
    import math

    for (mp, lp) in zetas:
        lv = to_float(lp, max(precision, 64))
        mv = to_float(mp, max(precision, 64))
        modulus = math.exp(-2 * math.pi * lv)
        angle = 2 * math.pi * mv
        multipliers.append(
            complex(modulus * math.cos(angle), modulus * math.sin(angle))
        )
        box = interval(lp, precision)
        moduli.append(iv.exp(-2 * iv.pi * box))
    return HopfData(g, lam_p, mu_p,
                    (to_float(a_re, 64), to_float(a_im, 64)),
                    zetas, multipliers, moduli)
