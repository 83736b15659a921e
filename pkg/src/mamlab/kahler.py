"""Transverse-Kahler potential audits and the Hermitian-quadric realization.

Exactness boundary: the beta exponent vectors and the relation matrix
Gamma are exact (Scalar) objects with exact invariants; the potential,
radial form, Hessian, residual, and nondegeneracy checks are numeric
audits in float64 with stated tolerances.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from random import Random
from typing import Dict, FrozenSet, List, Optional, Sequence, Tuple

import numpy as np

from . import _kernels
from .errors import InputError
from .fan import FanData, PolytopeH, WeakNormalCertificate, normal_fan
from .linalg import ScalarMatrix, solve
from .scalar import DEFAULT_MAX_BITS, Scalar, sign, to_float, zero
from .simplicial import SimplicialComplex
from .structure import kernel_of_A

Face = FrozenSet[int]


@dataclass
class BetaSystem:
    faces: List[Face]  # maximal faces, fixed order
    betas_exact: List[List[Scalar]]  # matching order
    B: np.ndarray  # (K, m) float matrix of the same vectors
    m: int


def beta_vectors(
    F: FanData, cert: WeakNormalCertificate, max_bits: int = DEFAULT_MAX_BITS
) -> BetaSystem:
    """Exact beta system from a weak-normality certificate, with invariant
    checks: beta_I vanishes exactly on I, nonzero entries are >= 2, and
    beta_I - beta_J lies in the row space of A for every pair."""
    table = F.table
    faces = sorted(cert.betas, key=sorted)
    betas = []
    for M in faces:
        beta = cert.betas[M]
        for i in range(1, F.m + 1):
            v = beta[i - 1]
            if i in M:
                if not v.is_zero():
                    raise InputError(f"beta_{sorted(M)} nonzero on its own face")
            elif not v.is_zero() and sign(v - 2, table, max_bits) < 0:
                raise InputError(f"beta_{sorted(M)} has a nonzero entry below 2")
        betas.append(list(beta))
    if F.n > 0:
        At = F.a_matrix().transpose()  # m x n
        base = betas[0]
        for other in betas[1:]:
            diff = [a - b for a, b in zip(other, base)]
            if solve(At, diff) is None:
                raise InputError("beta difference outside the row space of A")
    B = np.array(
        [[to_float(v) for v in beta] for beta in betas], dtype=float
    )
    return BetaSystem(faces, betas, B, F.m)


def _zero_set(z: Sequence[complex]) -> Face:
    return frozenset(i + 1 for i, v in enumerate(z) if v == 0)


def membership(K: SimplicialComplex, z: Sequence[complex], margin: float = 1e-12) -> dict:
    """in_U: the exact zero set of z is a face; in_ZK: all moduli <= 1 and
    the strictly-sub-unit set is a face (decided with the given margin)."""
    zeros = _zero_set(z)
    in_u = K.is_face(zeros)
    moduli = [abs(v) for v in z]
    in_zk = all(r <= 1 + margin for r in moduli) and K.is_face(
        frozenset(i + 1 for i, r in enumerate(moduli) if r < 1 - margin)
    )
    return {"in_U": in_u, "in_ZK": in_zk, "zero_set": sorted(zeros)}


def potential(B: BetaSystem, K: SimplicialComplex, z: Sequence[complex]) -> float:
    """f(z) = log sum_I |z|^{beta_I}, with 0^0 = 1: a zero coordinate
    kills exactly the terms whose exponent is positive there."""
    zeros = _zero_set(z)
    if not K.is_face(zeros):
        raise InputError("point outside U(K): zero set is not a face")
    logs = [math.log(abs(v)) if v != 0 else 0.0 for v in z]
    exponents = []
    for beta in B.B:
        if any(beta[i - 1] != 0 for i in zeros):
            continue  # factor 0 from a zero coordinate with positive exponent
        exponents.append(sum(b * x for b, x in zip(beta, logs) if b != 0))
    if not exponents:
        raise InputError("all terms vanish; point outside U(K)")
    mx = max(exponents)
    return mx + math.log(sum(math.exp(e - mx) for e in exponents))


def radial_form(B: BetaSystem, z: Sequence[complex], lam: Sequence[float]) -> float:
    """Second derivative of the potential along the radial flow
    z_k -> e^{lam_k t} z_k: the variance of <beta_I, lam> under the
    softmax weights |z|^{beta_I}."""
    if any(v == 0 for v in z):
        raise InputError("radial form needs all coordinates nonzero")
    x = [math.log(abs(v)) for v in z]
    return float(_kernels.radial_batch(B.B, [x], [list(lam)])[0])


def hessian_log(B: BetaSystem, x: Sequence[float]) -> np.ndarray:
    return _kernels.hessian(B.B, np.asarray(x, dtype=float))


@dataclass
class QuadricSystem:
    gamma_exact: List[List[Scalar]]  # (m - n) rows
    rhs_exact: List[Scalar]
    G: np.ndarray
    rhs: np.ndarray


def gamma_matrix(F: FanData, b: Sequence) -> QuadricSystem:
    """Relation matrix whose rows are a Ker A basis, with rhs Gamma b;
    Gamma A^T = 0 is re-verified exactly."""
    table = F.table
    rows = kernel_of_A(F)
    bs = [Scalar.from_rational(table, x) if not isinstance(x, Scalar) else x for x in b]
    if len(bs) != F.m:
        raise InputError("offset vector length != m")
    if F.n > 0:
        A = F.a_matrix()
        for row in rows:
            for r in range(F.n):
                v = sum((A[r, c] * row[c] for c in range(F.m)), zero(table))
                if not v.is_zero():
                    raise InputError("relation row does not annihilate A")
    rhs = [
        sum((g * x for g, x in zip(row, bs)), zero(table)) for row in rows
    ]
    G = np.array([[to_float(g) for g in row] for row in rows], dtype=float)
    return QuadricSystem(rows, rhs, G, np.array([to_float(x) for x in rhs]))


def quadric_residual(Q: QuadricSystem, z: Sequence[complex]) -> np.ndarray:
    y = np.array([abs(v) ** 2 for v in z], dtype=float)
    return Q.G @ y - Q.rhs


def sample_ZP(
    P: PolytopeH,
    seed: int = 0,
    count: int = 100,
    max_rejects: int = 200000,
) -> List[List[complex]]:
    """Rejection-sample u from the vertex bounding box of P, lift to
    z_k = sqrt(<a_k, u> + b_k) e^{i theta_k} with seeded phases."""
    records = normal_fan(P).vertices
    verts = np.array(
        [[to_float(c) for c in r.point] for r in records], dtype=float
    )
    lo = verts.min(axis=0)
    hi = verts.max(axis=0)
    A = np.array(
        [[to_float(c) for c in row] for row in P.vectors], dtype=float
    )
    b = np.array([to_float(c) for c in P.offsets], dtype=float)
    rng = Random(seed)
    out: List[List[complex]] = []
    rejects = 0
    while len(out) < count:
        u = np.array([rng.uniform(l, h) for l, h in zip(lo, hi)])
        y = A @ u + b
        if np.any(y < 0):
            rejects += 1
            if rejects > max_rejects:
                raise InputError("rejection sampling exhausted")
            continue
        z = [
            math.sqrt(max(yk, 0.0)) * cmath.exp(1j * rng.uniform(0, 2 * math.pi))
            for yk in y
        ]
        out.append(z)
    return out


@dataclass
class NondegeneracyReport:
    full_rank: bool
    min_singular_value: float
    tolerance: float
    samples: int


def nondegeneracy_check(
    Q: QuadricSystem,
    K: SimplicialComplex,
    samples: Sequence[Sequence[complex]],
    tolerance: float = 1e-8,
) -> NondegeneracyReport:
    """Jacobian of z -> Gamma mu(z) in the radial coordinates: row j has
    entries gamma_{jk} * 2|z_k|; full rank m - n needed at each sample."""
    min_sv = math.inf
    for z in samples:
        radii = np.array([2 * abs(v) for v in z], dtype=float)
        J = Q.G * radii[None, :]
        sv = np.linalg.svd(J, compute_uv=False)
        min_sv = min(min_sv, float(sv[-1]) if len(sv) else 0.0)
    return NondegeneracyReport(min_sv > tolerance, min_sv, tolerance, len(samples))
