"""Command-line entry point.

Exit codes: 0 success, 1 verification failure, 2 usage or parse error,
3 runtime error (singular evaluation, aborted trajectory).
"""
from __future__ import annotations

import argparse
import datetime
import json
import sys
from pathlib import Path

import numpy as np

from . import verification
from .covariant_spin import SSCKind, rest_spin_four_vector, spin_tensor_from_vector, spin_vector_from_tensor, ssc_residual
from .dynamics import Integrator, SingularityAbort, evolve
from .errors import DomainError, SingularPointError
from .hamiltonian import ParticleState
from .mathcore import four_velocity, norm
from .scenario_io import ScenarioError, load_scenario, parse_vector, write_trajectory

EXIT_OK, EXIT_VERIFY, EXIT_USAGE, EXIT_RUNTIME = 0, 1, 2, 3


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_USAGE)


def _fmt(x: float) -> str:
    return f"{x: .16e}"


def _vec(v) -> str:
    return "(" + ", ".join(_fmt(float(x)) for x in v) + ")"


def _emit_json(obj):
    print(json.dumps(obj, indent=2, sort_keys=True))


def _load(path):
    try:
        return load_scenario(path)
    except OSError as exc:
        print(f"error: cannot read scenario {path}: {exc.strerror or exc}", file=sys.stderr)
        raise SystemExit(EXIT_USAGE)
    except ScenarioError as exc:
        print(f"error: {path}: {exc} [{exc.kind}]", file=sys.stderr)
        raise SystemExit(EXIT_USAGE)


def cmd_terms(args) -> int:
    sc = _load(args.scenario)
    t = sc.t0 if args.at is None else args.at
    integ = Integrator(sc.field, sc.constants, sc.mask, sc.acceleration, sc.r_min)
    st0 = sc.initial_state()
    st = ParticleState(st0.r, st0.p, t, st0.spinor)
    try:
        terms = integ.breakdown(st)
        prec = integ.precession(st)
    except (SingularPointError, SingularityAbort, DomainError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_RUNTIME
    if args.json:
        _emit_json({"t": t, "terms": terms.as_dict(), "precession": prec.as_dict()})
        return EXIT_OK
    print(f"t = {t!r}")
    print("term      energy")
    for name, val in terms.as_dict().items():
        print(f"{name:<8}  {_fmt(val)}")
    print()
    print("precession  angular velocity")
    for name, val in prec.as_dict().items():
        print(f"{name:<13} {_vec(val)}")
    return EXIT_OK


def cmd_evolve(args) -> int:
    sc = _load(args.scenario)
    base = Path(args.scenario).resolve().parent
    status = EXIT_OK
    try:
        rec = evolve(sc)
    except SingularityAbort as exc:
        print(f"error: {exc}", file=sys.stderr)
        rec = exc.record
        status = EXIT_RUNTIME
    except (SingularPointError, DomainError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_RUNTIME
    if rec is not None and rec.samples:
        for path, fmt in ((sc.output_csv, "csv"), (sc.output_jsonl, "jsonl")):
            if path:
                (base / path).write_bytes(write_trajectory(rec, fmt))
    if rec is None or not rec.samples:
        return status
    first, last = rec.samples[0], rec.samples[-1]
    p0, p1 = norm(first.p), norm(last.p)
    summary = {
        "steps": rec.steps,
        "samples": len(rec.samples),
        "completed": status == EXIT_OK,
        "final": {"t": last.t, "r": [float(x) for x in last.r], "p": [float(x) for x in last.p],
                  "sigma": [float(x) for x in last.sigma]},
        "max_norm_drift": rec.max_norm_drift,
        "momentum_magnitude_change": abs(p1 - p0),
        "h0_change": last.terms.h0 - first.terms.h0,
    }
    if args.json:
        _emit_json(summary)
        return status
    print(f"steps                  {rec.steps}")
    print(f"samples                {len(rec.samples)}")
    print(f"completed              {'yes' if status == EXIT_OK else 'no (aborted)'}")
    print(f"final t                {last.t!r}")
    print(f"final r                {_vec(last.r)}")
    print(f"final p                {_vec(last.p)}")
    print(f"final <sigma>          {_vec(last.sigma)}")
    print(f"max spinor norm drift  {_fmt(rec.max_norm_drift)}")
    print(f"| |p| change |         {_fmt(abs(p1 - p0))}")
    print(f"h0 change              {_fmt(last.terms.h0 - first.terms.h0)}")
    return status


def cmd_verify(args) -> int:
    names = list(verification.SUITES) if args.all else [args.suite]
    for name in names:
        if name not in verification.SUITES:
            print(f"error: unknown suite {name!r}; choose from {', '.join(verification.SUITES)}", file=sys.stderr)
            return EXIT_USAGE
    results = {name: verification.run_suite(name, args.seed) for name in names}
    ok = all(c.passed for checks in results.values() for c in checks)
    if args.json:
        _emit_json({"seed": args.seed, "passed": ok,
                    "suites": {n: [c.as_dict() for c in cs] for n, cs in results.items()}})
    else:
        for name, checks in results.items():
            print(f"[{name}]")
            for c in checks:
                print(f"  {'PASS' if c.passed else 'FAIL'}  residual {c.residual:.3e} <= {c.tolerance:.0e}  {c.name}")
        print("all checks passed" if ok else "verification FAILED")
    return EXIT_OK if ok else EXIT_VERIFY


def cmd_tensor(args) -> int:
    try:
        spin = np.array(parse_vector(args.spin))
        beta = np.array(parse_vector(args.beta))
    except ScenarioError as exc:
        print(f"error: malformed vector: {exc.detail}", file=sys.stderr)
        return EXIT_USAGE
    if not norm(beta) < 1.0:
        print(f"error: |beta| = {norm(beta)!r} must be < 1", file=sys.stderr)
        return EXIT_USAGE
    kind = SSCKind(args.ssc)
    U = four_velocity(beta)
    S4 = rest_spin_four_vector(spin, beta)
    T = spin_tensor_from_vector(S4, U)
    back = spin_vector_from_tensor(T, U)
    res = ssc_residual(T, U, kind)
    if args.json:
        _emit_json({"U": U.tolist(), "S4": S4.tolist(), "tensor": T.matrix.tolist(),
                    "round_trip": back.tolist(), "ssc": kind.value, "residual": res.tolist(),
                    "max_abs_residual": float(np.max(np.abs(res)))})
        return EXIT_OK
    print(f"U          {_vec(U)}")
    print(f"S4         {_vec(S4)}")
    print("S^{ab}")
    for row in T.matrix:
        print("  " + "  ".join(_fmt(float(x)) for x in row))
    print(f"round trip {_vec(back)}")
    print(f"{kind.value} residual {_vec(res)}")
    print(f"max |residual| {_fmt(float(np.max(np.abs(res))))}")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="hiddenspin", description=__doc__.splitlines()[0])
    parser.add_argument("--timestamps", action="store_true", help="print a UTC timestamp line first")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("terms", help="energy terms and precession vectors of a scenario's initial state")
    p.add_argument("scenario")
    p.add_argument("--at", type=float, default=None, help="field evaluation time (default t0)")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_terms)

    p = sub.add_parser("evolve", help="integrate a scenario and write its trajectory")
    p.add_argument("scenario")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_evolve)

    p = sub.add_parser("verify", help="run identity checks")
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--suite")
    g.add_argument("--all", action="store_true")
    p.add_argument("--seed", type=int, default=verification.DEFAULT_SEED)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("tensor", help="spin tensor of a boosted rest-frame spin")
    p.add_argument("--spin", required=True, help="rest-frame spin '(sx, sy, sz)'")
    p.add_argument("--beta", required=True, help="velocity over c '(bx, by, bz)'")
    p.add_argument("--ssc", choices=[k.value for k in SSCKind], default="moller")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_tensor)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if args.timestamps:
        print(f"# {datetime.datetime.now(datetime.timezone.utc).isoformat()}")
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
