"""Acceptance gate: one test (and one pass/fail line) per shipped criterion.

Run with `pytest -v tests/test_acceptance.py` to see the per-criterion lines.
Each test also prints an `ACCEPTANCE n: PASS` line on success so the gate is
visible in captured output.
"""

import json
import math
import time
from fractions import Fraction
from random import Random

import numpy as np

from mamlab.cli import main as cli_main
from mamlab.fan import (
    FanData,
    NotWeaklyNormal,
    PolytopeH,
    WeakNormalCertificate,
    is_complete,
    validate_fan,
    weak_normal_certificate,
)
from mamlab.fixtures import fixture
from mamlab.foliation import detect_seifert, gamma_rank
from mamlab.io import load_data
from mamlab.kahler import (
    beta_vectors,
    gamma_matrix,
    membership,
    nondegeneracy_check,
    quadric_residual,
    sample_ZP,
)
from mamlab.linalg import frac_rank
from mamlab.lp import LPProblem, _verify_farkas, lp_feasible
from mamlab.scalar import Scalar, parse_scalar, print_scalar, sign, to_float
from mamlab.simplicial import SimplicialComplex
from mamlab.structure import (
    genericity,
    genericity_g1,
    genericity_g2,
    hopf_data,
    kernel_of_A,
    torus_periods,
)
from mamlab.symbols import EMPTY_TABLE

import test_foliation
import test_lp
import test_scalar

E2PI = math.exp(-2 * math.pi)


def _fan(name):
    return load_data(fixture(name)).fan


def _done(num, label):
    print(f"ACCEPTANCE {num} ({label}): PASS")


def test_acceptance_1_fan_axioms_and_completeness():
    positives = ["hopf-rational", "square", "simplex-2", "simplex-3", "simplex-4"]
    for name in positives:
        t0 = time.perf_counter()
        F = _fan(name)
        assert validate_fan(F).ok, name
        assert is_complete(F).complete, name
        assert time.perf_counter() - t0 < 1.0, name
    t0 = time.perf_counter()
    rep = validate_fan(_fan("overlap"))
    assert not rep.ok
    assert any(v["kind"] == "overlap" and len(v["faces"]) == 2 for v in rep.violations)
    assert time.perf_counter() - t0 < 1.0
    t0 = time.perf_counter()
    comp = is_complete(_fan("quadrant"))
    assert not comp.complete
    assert comp.diagnostics  # named ridge/face
    assert time.perf_counter() - t0 < 1.0
    _done(1, "fan axioms and completeness")


def test_acceptance_2_weak_normality_and_farkas():
    for name in ["hopf-rational", "hopf-generic", "square", "simplex-2", "simplex-3"]:
        F = _fan(name)
        cert = weak_normal_certificate(F)
        assert isinstance(cert, WeakNormalCertificate), name
        for face, beta in cert.betas.items():
            for i in range(1, F.m + 1):
                v = beta[i - 1]
                if i in face:
                    assert v.is_zero()
                elif not v.is_zero():
                    assert sign(v - 2, F.table) >= 0
    F = _fan("square")
    cert = weak_normal_certificate(F)
    beta = cert.betas[frozenset({1, 2})]
    assert [v.as_fraction() for v in beta] == [0, 0, 2, 2]
    # constructed infeasible instance: opposite cones on one ray
    K = SimplicialComplex.create(2, [[1], [2]])
    bad = FanData.create(EMPTY_TABLE, 1, [[1], [1]], K)
    res = weak_normal_certificate(bad)
    assert isinstance(res, NotWeaklyNormal)
    p = LPProblem(EMPTY_TABLE, max(len(c[0]) for c in res.constraints), res.constraints)
    _verify_farkas(p, res.farkas, 4096)
    _done(2, "weak normality certificates")


def test_acceptance_3_genericity():
    t0 = time.perf_counter()
    # rational Hopf: g2 fails with a re-verifying rational witness
    F = _fan("hopf-rational")
    w = genericity_g2(F)
    assert w is not None and any(w)
    for k in range(F.n):
        total = sum(
            F.vectors[i][k] * Scalar.from_rational(F.table, w[i]) for i in range(F.m)
        )
        assert total.is_zero()
    assert detect_seifert(F).rational
    assert gamma_rank(F, frozenset()) == 2 * F.ell == 2
    # generic Hopf (4 symbols): both hold, candidate check verifies at height 1
    inp = load_data(fixture("hopf-generic"))
    assert len(inp.table) == 4
    rep = genericity(inp.fan, inp.psi, height=1)
    assert rep.g1_holds and rep.g2_holds
    assert rep.psi_417.status == "verified"
    # two-symbol variant: canonical g1 witness
    w1 = genericity_g1(_fan("hopf-irr"))
    assert w1 == [Fraction(1), Fraction(-1), Fraction(0), Fraction(0)]
    assert time.perf_counter() - t0 < 5.0
    _done(3, "genericity and candidate subspaces")


def test_acceptance_4_leaf_ranks_vs_lattice_oracle():
    t0 = time.perf_counter()
    for name in test_foliation.ORACLE_FIXTURES:
        F = _fan(name)
        for face in F.complex.faces():
            assert gamma_rank(F, face) == test_foliation.oracle_gamma_rank(
                F, face, box=5
            ), (name, sorted(face))
    F = _fan("hopf-generic")
    assert gamma_rank(F, frozenset()) == 0
    for face in F.complex.maximal_faces:
        assert gamma_rank(F, face) == 2
    assert time.perf_counter() - t0 < 30.0
    _done(4, "leaf lattice ranks against brute-force oracle")


def _audit(name, samples=100):
    path = f"/tmp/accept-{name}.json"
    with open(path, "w") as fh:
        json.dump(fixture(name), fh)
    from mamlab.cli import HANDLERS, build_parser

    args = build_parser().parse_args(
        ["kahler-audit", path, "--samples", str(samples), "--seed", "0"]
    )
    from mamlab.io import load_file

    body, code = HANDLERS["kahler-audit"](load_file(path), args)
    return body, code


def test_acceptance_5_kahler_audit():
    t0 = time.perf_counter()
    for name in ["square", "hopf-rational", "hopf-generic"]:
        body, code = _audit(name, samples=100)
        assert code == 0, (name, body)
        assert body["radial_vanishes_on_kernel"]["ok"]
        assert body["radial_vanishes_on_kernel"]["max_relative"] < 1e-10
        assert body["radial_positive_off_kernel"]["ok"]
        assert body["radial_positive_off_kernel"]["min_value"] > 0
        assert body["hessian"]["ok"]
        assert body["hessian"]["max_principal_angle"] <= 1e-6
        assert body["finite_difference"]["ok"]
        assert body["finite_difference"]["max_relative_error"] < 1e-6
    assert time.perf_counter() - t0 < 10.0
    _done(5, "transverse Kahler potential audit")


def test_acceptance_6_quadrics():
    t0 = time.perf_counter()
    for name in ["square", "hopf-rational"]:
        F = _fan(name)
        cert = weak_normal_certificate(F)
        Q = gamma_matrix(F, cert.b)
        A = np.array([[to_float(c) for c in row] for row in F.vectors], dtype=float)
        assert np.max(np.abs(Q.G @ A)) < 1e-12
        P = PolytopeH.create(F.table, F.n, [list(v) for v in F.vectors], list(cert.b))
        pts = sample_ZP(P, seed=0, count=100)
        for z in pts:
            assert np.max(np.abs(quadric_residual(Q, z))) < 1e-10
            assert membership(F.complex, z)["in_U"]
        rep = nondegeneracy_check(Q, F.complex, pts)
        assert rep.full_rank  # rank m - n at every sample
    F = _fan("square")
    cert = weak_normal_certificate(F)
    Q = gamma_matrix(F, cert.b)
    assert {tuple(int(x) for x in row) for row in Q.G} == {
        (1, 0, 1, 0),
        (0, 1, 0, 1),
    }
    assert list(Q.rhs) == [2.0, 2.0]
    assert time.perf_counter() - t0 < 5.0
    _done(6, "Hermitian quadric realization")


def test_acceptance_7_torus_periods():
    inp = load_data(fixture("torus-1"))
    tp = torus_periods(inp.fan, inp.psi)
    nums = [p[0] for p in tp.periods_numeric]
    assert all(abs(abs(c) - 2 * math.pi) < 1e-12 for c in nums)
    ratio = nums[1] / nums[0]
    assert abs(ratio - 1j) < 1e-12 or abs(ratio + 1j) < 1e-12
    _done(7, "torus period lattice")


def test_acceptance_8_hopf_multipliers():
    inp = load_data(fixture("hopf-rational"))
    h = hopf_data(inp.fan, inp.psi)
    for iv in h.moduli:
        assert float(iv.a) <= E2PI <= float(iv.b)
    inp = load_data(fixture("hopf-generic"))
    h = hopf_data(inp.fan, inp.psi)
    mods = [abs(c) for c in h.multipliers]
    assert all(x < 1 for x in mods)
    assert len({round(x, 9) for x in mods}) == len(mods)
    _done(8, "Hopf multiplier moduli")


def test_acceptance_9_infrastructure():
    # LP verdicts vs enumeration oracle on 500 seeded instances
    rng = Random(42)
    for _ in range(500):
        num_vars, cons = test_lp._random_instance(rng)
        verdict = lp_feasible(LPProblem(EMPTY_TABLE, num_vars, cons))
        expected = test_lp.oracle_feasible(num_vars, cons)
        assert bool(verdict) == (expected is not None)
    # parser round-trips 1000 random expressions
    t = test_scalar._table("s", "t", "u")
    rng = Random(20260826)
    atoms = [Scalar.symbol(t, n) for n in ("s", "t", "u")] + [
        Scalar.from_rational(t, Fraction(rng.randrange(-9, 10), rng.randrange(1, 8)))
        for _ in range(8)
    ]
    for _ in range(1000):
        x = test_scalar._random_scalar(rng, atoms)
        assert parse_scalar(print_scalar(x), t) == x
    # reports deterministic given (input, seed, precision)
    path = "/tmp/accept-square.json"
    with open(path, "w") as fh:
        json.dump(fixture("square"), fh)
    outs = []
    for k in range(2):
        out = f"/tmp/accept-report-{k}.json"
        assert cli_main(["kahler-audit", path, "--seed", "3", "--out", out]) == 0
        rep = json.load(open(out))
        rep.pop("timestamp")
        outs.append(json.dumps(rep, sort_keys=True))
    assert outs[0] == outs[1]
    _done(9, "LP oracle, parser round-trip, determinism")
