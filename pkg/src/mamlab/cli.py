"""Command-line entry point: one JSON input file in, one JSON report out.

Exit codes: 0 all verdicts positive; 1 a check failed (report carries the
witness); 2 input or usage error; 3 sign determination ran out of
precision (see the symbols module for the independence contract).
"""

from __future__ import annotations

import argparse
import json
import math
import sys
import time
from fractions import Fraction
from random import Random
from typing import List, Optional

import numpy as np

from . import __version__, fixtures, kahler
from .errors import InputError, MamlabError, PrecisionExhausted
from .fan import (
    FanData,
    NotWeaklyNormal,
    PolytopeH,
    WeakNormalCertificate,
    is_complete,
    normal_fan,
    quotient_fan,
    validate_fan,
    weak_normal_certificate,
)
from .foliation import coordinate_submanifolds, detect_seifert, gamma_rank, leaf_type
from .io import InputData, dump_data, load_file
from .kahler import (
    beta_vectors,
    gamma_matrix,
    hessian_log,
    membership,
    nondegeneracy_check,
    potential,
    quadric_residual,
    radial_form,
    sample_ZP,
)
from .scalar import DEFAULT_MAX_BITS, print_scalar, to_float
from .structure import (
    check_psi,
    genericity_g1,
    genericity_g2,
    hopf_data,
    kernel_of_A,
    psi_lemma417_check,
    sample_psi,
    torus_periods,
)

COMMANDS = [
    "validate-fan",
    "complete",
    "normal-fan",
    "weak-normal",
    "quadrics",
    "psi-check",
    "psi-sample",
    "genericity",
    "leaves",
    "seifert",
    "coordinate-subs",
    "kahler-audit",
    "torus-periods",
    "hopf",
    "fixtures",
]


def _frac_list(v) -> List[str]:
    return [str(Fraction(x)) for x in v]


def _scalars(v) -> List[str]:
    return [print_scalar(x) for x in v]


def _need_psi(inp: InputData):
    if inp.psi is None:
        raise InputError('this command needs a "psi" section in the input')
    return inp.psi


def _offsets_or_certificate(inp: InputData, max_bits):
    if inp.offsets is not None:
        return inp.offsets
    cert = weak_normal_certificate(inp.fan, max_bits)
    if isinstance(cert, NotWeaklyNormal):
        raise InputError(
            "no offsets given and no weak-normality certificate exists"
        )
    return cert.b


def cmd_validate_fan(inp, args):
    rep = validate_fan(inp.fan, args.max_bits)
    return {"ok": rep.ok, "violations": rep.violations}, 0 if rep.ok else 1


def cmd_complete(inp, args):
    vrep = validate_fan(inp.fan, args.max_bits)
    if not vrep.ok:
        return {"ok": False, "violations": vrep.violations}, 1
    rep = is_complete(inp.fan, args.max_bits)
    return {"ok": rep.complete, "diagnostics": rep.diagnostics}, 0 if rep.complete else 1


def cmd_normal_fan(inp, args):
    if inp.offsets is None:
        raise InputError('normal-fan needs an "offsets" section')
    P = PolytopeH.create(
        inp.table, inp.fan.n, inp.fan.vectors, inp.offsets, args.max_bits
    )
    res = normal_fan(P, args.max_bits)
    report = {
        "simple": res.simple,
        "vertices": [
            {"point": _scalars(r.point), "active": sorted(r.active)}
            for r in res.vertices
        ],
    }
    if res.fan is not None:
        report["complex"] = res.fan.complex.to_spec()
    return report, 0 if res.simple else 1


def cmd_weak_normal(inp, args):
    vrep = validate_fan(inp.fan, args.max_bits)
    crep = is_complete(inp.fan, args.max_bits)
    res = weak_normal_certificate(inp.fan, args.max_bits)
    if isinstance(res, NotWeaklyNormal):
        return {
            "ok": False,
            "fan_valid": vrep.ok,
            "fan_complete": crep.complete,
            "farkas": _scalars(res.farkas),
        }, 1
    return {
        "ok": True,
        "fan_valid": vrep.ok,
        "fan_complete": crep.complete,
        "b": _scalars(res.b),
        "vertices": [
            {"I": sorted(M), "u": _scalars(res.vertices[M])}
            for M in sorted(res.vertices, key=sorted)
        ],
        "betas": [
            {"I": sorted(M), "beta": _scalars(res.betas[M])}
            for M in sorted(res.betas, key=sorted)
        ],
    }, 0


def cmd_quadrics(inp, args):
    b = _offsets_or_certificate(inp, args.max_bits)
    Q = gamma_matrix(inp.fan, b)
    report = {
        "gamma": [_scalars(row) for row in Q.gamma_exact],
        "rhs": _scalars(Q.rhs_exact),
    }
    code = 0
    if inp.fan.n > 0:
        P = PolytopeH.create(inp.table, inp.fan.n, inp.fan.vectors, b, args.max_bits)
        samples = sample_ZP(P, seed=args.seed, count=args.samples)
        residual = max(
            float(np.abs(quadric_residual(Q, z)).max()) for z in samples
        )
        member = all(
            membership(inp.fan.complex, z)["in_U"] for z in samples
        )
        nd = nondegeneracy_check(Q, inp.fan.complex, samples)
        report.update(
            {
                "samples": len(samples),
                "max_residual": residual,
                "all_in_U": member,
                "nondegenerate": nd.full_rank,
                "min_singular_value": nd.min_singular_value,
            }
        )
        if residual > 1e-10 or not member or not nd.full_rank:
            code = 1
    return report, code


def cmd_psi_check(inp, args):
    psi = _need_psi(inp)
    rep = check_psi(inp.fan, psi, args.max_bits)
    return {
        "ok": rep.ok,
        "condition_a": rep.condition_a,
        "condition_b": rep.condition_b,
        "details": rep.details,
    }, 0 if rep.ok else 1


def cmd_psi_sample(inp, args):
    psi = sample_psi(inp.fan, seed=args.seed)
    out = InputData(inp.table, inp.fan, psi, inp.offsets)
    return {"ok": True, "input_with_psi": dump_data(out)}, 0


def cmd_genericity(inp, args):
    g1 = genericity_g1(inp.fan)
    g2 = genericity_g2(inp.fan)
    report = {
        "g1": {"holds": g1 is None, "witness": _frac_list(g1) if g1 else None},
        "g2": {"holds": g2 is None, "witness": _frac_list(g2) if g2 else None},
    }
    ok = g1 is None and g2 is None
    if inp.psi is not None:
        rep = psi_lemma417_check(inp.fan, inp.psi, height=args.height)
        report["lemma_417"] = {
            "status": rep.status,
            "scope": rep.scope,
            "height": rep.height,
            "candidates_checked": rep.candidates_checked,
            "counterexample": rep.counterexample,
        }
        ok = ok and rep.status == "verified"
    else:
        report["lemma_417"] = {"status": "skipped", "scope": "no psi in input"}
    return report, 0 if ok else 1


def cmd_leaves(inp, args):
    reports = []
    for I in inp.fan.complex.faces():
        rep = leaf_type(inp.fan, inp.psi, I)
        reports.append(
            {
                "I": rep.I,
                "rank": rep.rank,
                "g_leaf": {"torus": rep.g_leaf[0], "affine": rep.g_leaf[1]},
                "f_leaf": rep.f_leaf,
                "compact": rep.compact,
            }
        )
    seifert = detect_seifert(inp.fan)
    return {"leaves": reports, "seifert": seifert.rational}, 0


def cmd_seifert(inp, args):
    rep = detect_seifert(inp.fan)
    return {
        "rational": rep.rational,
        "lattice_basis": rep.lattice_basis,
        "generators_primitive": rep.generators_primitive,
        "primitive_flags": {str(k): v for k, v in (rep.primitive_flags or {}).items()}
        if rep.primitive_flags is not None
        else None,
    }, 0


def cmd_coordinate_subs(inp, args):
    subs = coordinate_submanifolds(inp.fan, inp.psi)
    return {
        "submanifolds": [
            {
                "J": r.J,
                "m_J": r.m_J,
                "span_dim": r.span_dim,
                "subcomplex": r.subcomplex.to_spec(),
                "valid_fan": r.valid_fan,
                "complete": r.complete,
            }
            for r in subs
        ]
    }, 0


def cmd_kahler_audit(inp, args):
    F = inp.fan
    if F.n == 0 or not F.complex.maximal_faces:
        raise InputError("transverse Kahler audit requires a fan with n >= 1")
    cert = weak_normal_certificate(F, args.max_bits)
    if isinstance(cert, NotWeaklyNormal):
        return {"ok": False, "reason": "fan is not weakly normal"}, 1
    B = beta_vectors(F, cert, args.max_bits)
    kernel = kernel_of_A(F)
    ker_np = np.array(
        [[to_float(c) for c in v] for v in kernel], dtype=float
    )
    rng = Random(args.seed)
    m = F.m
    npts = args.samples

    def rand_x():
        return [rng.uniform(-1.0, 1.0) for _ in range(m)]

    # (i) radial form vanishes along Ker A
    max_ker = 0.0
    for _ in range(npts):
        x = rand_x()
        z = [math.exp(xi) * complex(math.cos(a), math.sin(a))
             for xi, a in ((xi, rng.uniform(0, 2 * math.pi)) for xi in x)]
        coeffs = [rng.uniform(-1, 1) for _ in kernel]
        lam = list(np.array(coeffs) @ ker_np) if len(kernel) else [0.0] * m
        scale = max(1.0, float(np.linalg.norm(lam)) ** 2)
        max_ker = max(max_ker, abs(radial_form(B, z, lam)) / scale)
    vanishes = max_ker < 1e-10

    # (ii) strictly positive off Ker A (projection residual >= 0.1)
    qk = np.linalg.qr(ker_np.T)[0] if len(kernel) else np.zeros((m, 0))
    min_off = math.inf
    for _ in range(npts):
        x = rand_x()
        z = [math.exp(xi) + 0j for xi in x]
        while True:
            lam = np.array([rng.uniform(-1, 1) for _ in range(m)])
            resid = lam - qk @ (qk.T @ lam)
            nr = float(np.linalg.norm(resid))
            if nr >= 0.1:
                break
        min_off = min(min_off, radial_form(B, z, list(lam)))
    positive = min_off > 0.0

    # (iii) Hessian: PSD, null dimension m - n, alignment with Ker A
    tol_eig = args.tol_eig
    hess_ok = True
    max_angle = 0.0
    for _ in range(npts):
        x = rand_x()
        H = hessian_log(B, x)
        w, V = np.linalg.eigh(H)
        spectral = max(abs(w[0]), abs(w[-1]), 1e-300)
        if w[0] < -1e-8 * spectral:
            hess_ok = False
        null_dim = int(np.sum(np.abs(w) < 1e-8 * spectral))
        if null_dim != m - F.n:
            hess_ok = False
            continue
        if len(kernel):
            qn = V[:, : m - F.n]
            svals = np.linalg.svd(qk.T @ np.linalg.qr(qn)[0], compute_uv=False)
            angle = math.acos(min(1.0, float(svals[-1])))
            max_angle = max(max_angle, angle)
    aligned = max_angle <= tol_eig

    # (iv) finite-difference oracle on the potential
    h = 1e-4
    max_fd_err = 0.0
    for _ in range(2 * npts):
        x = rand_x()
        lam = [rng.uniform(-1, 1) for _ in range(m)]
        z = [math.exp(xi) + 0j for xi in x]
        rf = radial_form(B, z, lam)

        def f(t):
            zz = [math.exp(xi + t * li) + 0j for xi, li in zip(x, lam)]
            return potential(B, F.complex, zz)

        fd = (f(h) - 2 * f(0.0) + f(-h)) / (h * h)
        max_fd_err = max(max_fd_err, abs(fd - rf) / max(1.0, abs(rf)))
    fd_ok = max_fd_err < 1e-6

    ok = vanishes and positive and hess_ok and aligned and fd_ok
    return {
        "ok": ok,
        "radial_vanishes_on_kernel": {"ok": vanishes, "max_relative": max_ker},
        "radial_positive_off_kernel": {"ok": positive, "min_value": min_off},
        "hessian": {
            "ok": hess_ok and aligned,
            "psd_and_null_dim": hess_ok,
            "max_principal_angle": max_angle,
            "tolerance": tol_eig,
        },
        "finite_difference": {"ok": fd_ok, "max_relative_error": max_fd_err},
        "points": npts,
    }, 0 if ok else 1


def cmd_torus_periods(inp, args):
    psi = _need_psi(inp)
    tp = torus_periods(inp.fan, psi, precision=args.precision)
    return {
        "ok": True,
        "projection": [
            [{"re": print_scalar(c[0]), "im": print_scalar(c[1])} for c in row]
            for row in tp.projection
        ],
        "periods": [
            [{"re": c.real, "im": c.imag} for c in gen]
            for gen in tp.periods_numeric
        ],
    }, 0


def cmd_hopf(inp, args):
    psi = _need_psi(inp)
    hd = hopf_data(inp.fan, psi, precision=args.precision, max_bits=args.max_bits)
    return {
        "ok": True,
        "ghost": hd.ghost,
        "lambda": _scalars(hd.lam),
        "mu": _scalars(hd.mu),
        "alpha": {"re": hd.alpha[0], "im": hd.alpha[1]},
        "zetas": [
            {"re": print_scalar(re), "im": print_scalar(im)} for re, im in hd.zetas
        ],
        "multipliers": [{"re": c.real, "im": c.imag} for c in hd.multipliers],
        "moduli": [
            {"low": float(b.a), "high": float(b.b)} for b in hd.moduli
        ],
    }, 0


HANDLERS = {
    "validate-fan": cmd_validate_fan,
    "complete": cmd_complete,
    "normal-fan": cmd_normal_fan,
    "weak-normal": cmd_weak_normal,
    "quadrics": cmd_quadrics,
    "psi-check": cmd_psi_check,
    "psi-sample": cmd_psi_sample,
    "genericity": cmd_genericity,
    "leaves": cmd_leaves,
    "seifert": cmd_seifert,
    "coordinate-subs": cmd_coordinate_subs,
    "kahler-audit": cmd_kahler_audit,
    "torus-periods": cmd_torus_periods,
    "hopf": cmd_hopf,
}


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="mamlab",
        description="Certify fan, complex-structure, foliation, and "
        "transverse-Kahler properties of moment-angle manifold data.",
    )
    p.add_argument("command", choices=COMMANDS)
    p.add_argument(
        "input",
        help="input JSON file (or fixture name for the fixtures command)",
    )
    p.add_argument("--precision", type=int, default=53, metavar="BITS",
                   help="working precision for numeric output")
    p.add_argument("--max-bits", type=int, default=DEFAULT_MAX_BITS,
                   help="interval refinement budget for exact sign tests")
    p.add_argument("--seed", type=int, default=0, metavar="N")
    p.add_argument("--samples", type=int, default=100, metavar="N")
    p.add_argument("--height", type=int, default=1, metavar="H",
                   help="height bound for rational-subspace candidates")
    p.add_argument("--tol-eig", type=float, default=1e-6, metavar="X",
                   help="principal-angle tolerance for eigenspace alignment")
    p.add_argument("--out", metavar="FILE", help="write the report to FILE")
    return p


def _jsonable(x):
    if isinstance(x, dict):
        return {k: _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    if isinstance(x, np.bool_):
        return bool(x)
    if isinstance(x, (np.integer,)):
        return int(x)
    if isinstance(x, (np.floating,)):
        return float(x)
    if isinstance(x, float) and not math.isfinite(x):
        return repr(x)
    return x


def _emit(report: dict, args) -> None:
    text = json.dumps(_jsonable(report), indent=2, sort_keys=True)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text + "\n")
    else:
        print(text)


def main(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    report = {
        "command": args.command,
        "input": args.input,
        "version": __version__,
        "options": {
            "precision": args.precision,
            "seed": args.seed,
            "samples": args.samples,
            "height": args.height,
            "tol_eig": args.tol_eig,
        },
    }
    try:
        if args.command == "fixtures":
            body = fixtures.fixture(args.input)
            report["fixture"] = body
            code = 0
        else:
            inp = load_file(args.input)
            body, code = HANDLERS[args.command](inp, args)
            report["report"] = body
        report["exit_code"] = code
        report["timestamp"] = time.strftime("%Y-%m-%dT%H:%M:%SZ", time.gmtime())
        _emit(report, args)
        return code
    except PrecisionExhausted as exc:
        print(f"mamlab: precision exhausted: {exc}", file=sys.stderr)
        return 3
    except (InputError, MamlabError) as exc:
        print(f"mamlab: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
