"""Command-line driver: every verification in the package behind one entry.

Exit codes are uniform across subcommands: 0 when all requested checks pass,
1 on a verification failure (a nonzero residual, an unsolvable covariance
system, a failing table row), 2 on input errors (bad flags, malformed files,
out-of-range parameters).
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path
from typing import List, Optional

from . import algfile, report
from .cocycle import central_extensions, jacobi_check
from .errors import (
    AlgebraFileError,
    BadMass,
    BadParameter,
    BadRank,
    BadSpin,
    GalkappaError,
)
from .exactscalar import parse_scalar
from .fieldcheck import (
    check_boost_covariance,
    check_conservation,
    check_rotation_covariance,
    multispinor_equations,
)
from .galrealize import (
    default_table,
    extend_lambda,
    kappa_shift,
    literal_table,
    realize_levyleblond,
    realize_multispinor,
    realize_schrodinger,
    verify_structure,
)
from .numtrunc import run_numeric_check

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_USAGE = 2

MODELS = ("schrodinger", "levyleblond", "multispinor")


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="galkappa",
        description="Exact checks on planar kinematical symmetry and its "
        "free-field realizations.",
    )
    sub = p.add_subparsers(dest="command", required=True)

    alg = sub.add_parser("algebra", help="parse and analyze an algebra file")
    alg_sub = alg.add_subparsers(dest="subcommand", required=True)
    verify = alg_sub.add_parser("verify", help="check the Jacobi identity")
    cohom = alg_sub.add_parser(
        "cohomology", help="compute the central-extension space"
    )
    for s in (verify, cohom):
        s.add_argument(
            "source",
            help="path to an algebra file, or the name of a bundled one "
            f"({', '.join(algfile.bundled_names())})",
        )

    re_p = sub.add_parser("realize", help="build generators and verify brackets")
    re_p.add_argument("model", choices=MODELS)
    re_p.add_argument("--spin-s", dest="spin_s", type=int, default=1,
                      help="spin label, +1 or -1")
    re_p.add_argument("--rank", type=int, default=1,
                      help="multispinor rank (1..4)")
    re_p.add_argument("--lambda", dest="lam", default=None, metavar="VALUE",
                      help="shift the rotation generator by VALUE times the "
                      "identity (exact literal like 1/2 or the symbol lam)")
    re_p.add_argument("--shift", default=None, metavar="VALUE",
                      help="redefine the boosts with parameter VALUE "
                      "(exact literal or the symbol c)")
    re_p.add_argument("--strict-literal-table", action="store_true",
                      help="verify against the literal table variant, whose "
                      "boost-time rows are pinned to zero")

    fc = sub.add_parser("fieldcheck", help="field-level identity checks")
    fc.add_argument("check", choices=("conservation", "boost", "rotation",
                                      "multispinor-eqs"))
    fc.add_argument("--index", type=int, choices=(1, 2), default=None,
                    help="restrict the conservation check to one free index")
    fc.add_argument("--spin-s", dest="spin_s", type=int, default=None,
                    help="restrict to one spin label (+1 or -1)")
    fc.add_argument("--variant", choices=("corrected", "literal"),
                    default="corrected",
                    help="which transcription of the current to test")
    fc.add_argument("--rank", type=int, default=1,
                    help="multispinor rank for multispinor-eqs")

    nc = sub.add_parser("numcheck", help="floating-point truncation cross-check")
    nc.add_argument("--model", choices=MODELS, default="schrodinger")
    nc.add_argument("--nmax", type=int, default=24,
                    help="highest oscillator mode kept per axis")
    nc.add_argument("--low", type=int, default=8,
                    help="low-mode block used for residual measurement")
    nc.add_argument("--m", type=float, default=1.0, help="mass value")
    nc.add_argument("--t", type=float, default=0.5, help="time value")
    nc.add_argument("--tol", type=float, default=1e-9,
                    help="residual tolerance")
    nc.add_argument("--spin-s", dest="spin_s", type=int, default=1)
    nc.add_argument("--rank", type=int, default=1)
    return p


def _load_algebra(source: str):
    path = Path(source)
    if path.exists():
        return algfile.load(path)
    return algfile.load_bundled(source)


def _param_value(registry, text: str):
    """A CLI parameter: an exact scalar literal or a registered symbol name."""
    if text in ("c", "lam"):
        return registry.symbol(text)
    try:
        return registry.const(parse_scalar(text))
    except ValueError:
        raise BadParameter(
            f"cannot read {text!r} as an exact scalar or a parameter symbol "
            "(use forms like 2, -1/2, 3/4*i, or the names c / lam)"
        ) from None


def _emit(name: str, payload: dict) -> None:
    path = report.write(name, payload)
    if path is not None:
        print(f"report written: {path}")


def _cmd_algebra(args) -> int:
    spec = _load_algebra(args.source)
    if args.subcommand == "verify":
        res = jacobi_check(spec)
        detail = {
            "source": args.source,
            "generators": list(spec.names),
            "ok": res.ok,
        }
        if not res.ok:
            detail["failing_triple"] = list(res.triple)
            detail["residual"] = {k: str(v) for k, v in res.residual.items()}
            print(f"jacobi identity: FAIL at {res.triple}")
        else:
            print(f"jacobi identity: PASS ({spec.dim} generators)")
        payload = report.build_payload(
            "algebra verify", [report.check_record("jacobi-identity", res.ok, detail)]
        )
        _emit("algebra-verify", payload)
        return EXIT_OK if res.ok else EXIT_FAIL

    ext = central_extensions(spec)
    reps = []
    for r in range(ext.h2):
        support = ext.representative_support(r)
        reps.append({f"{a},{b}": str(c) for (a, b), c in support.items()})
    detail = {
        "source": args.source,
        "generators": list(spec.names),
        "cocycle_dim": ext.cocycle_dim,
        "coboundary_dim": ext.coboundary_dim,
        "h2": ext.h2,
        "representatives": reps,
    }
    print(f"cocycle space dimension:    {ext.cocycle_dim}")
    print(f"coboundary space dimension: {ext.coboundary_dim}")
    print(f"independent central classes: {ext.h2}")
    for k, rep_support in enumerate(reps):
        terms = ", ".join(f"b({pair}) = {c}" for pair, c in sorted(rep_support.items()))
        print(f"  class {k + 1}: {terms if terms else '0'}")
    payload = report.build_payload(
        "algebra cohomology", [report.check_record("extension-space", True, detail)]
    )
    _emit("algebra-cohomology", payload)
    return EXIT_OK


def _cmd_realize(args) -> int:
    if args.model == "schrodinger":
        g = realize_schrodinger()
    elif args.model == "levyleblond":
        g = realize_levyleblond(s=args.spin_s)
    else:
        g = realize_multispinor(s=args.spin_s, N=args.rank)
    reg = g.registry
    if args.lam is not None:
        g = extend_lambda(g, _param_value(reg, args.lam))
    if args.shift is not None:
        g = kappa_shift(g, _param_value(reg, args.shift))

    table = literal_table() if args.strict_literal_table else default_table()
    rep = verify_structure(g, table)

    mass_ok = rep.mass is not None and (rep.mass - reg.symbol("m")).is_zero
    checks = [
        report.check_record("structure-table", rep.overall, rep.to_dict()),
        report.check_record(
            "second-extension-parameter",
            rep.kappa is not None,
            {"value": None if rep.kappa is None else str(rep.kappa)},
        ),
        report.check_record(
            "mass-parameter",
            mass_ok,
            {"value": None if rep.mass is None else str(rep.mass)},
        ),
    ]

    print(f"model: {args.model}   table: {table.name}")
    print(f"extracted second extension parameter: "
          f"{'<none>' if rep.kappa is None else rep.kappa}")
    print(f"extracted mass: {'<none>' if rep.mass is None else rep.mass}")
    for row in rep.rows:
        mark = "pass" if row.passed else "FAIL"
        line = f"  [{row.lhs},{row.rhs}] {mark}"
        if not row.passed:
            line += f"  computed {row.computed}, expected {row.expected}"
            if row.note:
                line += f"  ({row.note})"
        print(line)
    overall = rep.overall and rep.kappa is not None and mass_ok
    print(f"result: {'PASS' if overall else 'FAIL'}")

    payload = report.build_payload(f"realize {args.model}", checks)
    _emit(f"realize-{args.model}", payload)
    return EXIT_OK if overall else EXIT_FAIL


def _cmd_fieldcheck(args) -> int:
    if args.check == "conservation":
        indices = (args.index,) if args.index else (1, 2)
        spins = (args.spin_s,) if args.spin_s else (1, -1)
        rows = []
        for i in indices:
            for s in spins:
                resid = check_conservation(i, s, variant=args.variant)
                rows.append({
                    "index": i,
                    "spin": s,
                    "residual": str(resid),
                    "zero": resid.is_zero,
                })
                mark = "pass" if resid.is_zero else "FAIL"
                print(f"  divergence (index {i}, spin {s:+d}): {mark}")
                if not resid.is_zero:
                    print(f"    residual: {resid}")
        ok = all(r["zero"] for r in rows)
        payload = report.build_payload(
            "fieldcheck conservation",
            [report.check_record("conservation-law",
                                 ok, {"variant": args.variant, "rows": rows})],
        )
        _emit("fieldcheck-conservation", payload)
        return EXIT_OK if ok else EXIT_FAIL

    if args.check in ("boost", "rotation"):
        spins = (args.spin_s,) if args.spin_s else (1, -1)
        checks = []
        anchor = "boost-covariance" if args.check == "boost" else "rotation-covariance"
        for s in spins:
            if args.check == "boost":
                res = check_boost_covariance(s)
            else:
                res = check_rotation_covariance(s)
            checks.append(report.check_record(anchor, True, res.to_dict()))
            print(f"spin {s:+d}: intertwining matrix")
            for row in res.lam:
                print("   [" + ", ".join(str(e) for e in row) + "]")
        payload = report.build_payload(f"fieldcheck {args.check}", checks)
        _emit(f"fieldcheck-{args.check}", payload)
        return EXIT_OK

    # multispinor-eqs
    s = args.spin_s if args.spin_s else 1
    res = multispinor_equations(args.rank, s)
    print(f"rank {res.rank}: reduced system has 2 distinct equations; "
          f"{res.nullity} symmetric component(s) unconstrained; "
          f"second-row scale {res.row_scale}")
    payload = report.build_payload(
        "fieldcheck multispinor-eqs",
        [report.check_record("multispinor-redundancy", True, res.to_dict())],
    )
    _emit("fieldcheck-multispinor-eqs", payload)
    return EXIT_OK


def _cmd_numcheck(args) -> int:
    rep = run_numeric_check(
        model=args.model,
        m=args.m,
        t=args.t,
        n_max=args.nmax,
        low=args.low,
        tol=args.tol,
        spin_s=args.spin_s,
        rank=args.rank,
    )
    for row in rep.rows:
        tag = "exact zero" if row.exact_zero else f"{row.residual:.3e}"
        mark = "pass" if row.passed else "FAIL"
        print(f"  [{row.lhs},{row.rhs}] residual {tag}  {mark}")
    print(f"result: {'PASS' if rep.overall else 'FAIL'} "
          f"(n_max {rep.n_max}, low block {rep.low_cutoff}, tol {rep.tol:g})")
    payload = report.build_payload(
        "numcheck", [report.check_record("numeric-residuals", rep.overall,
                                         rep.to_dict())]
    )
    _emit("numcheck", payload)
    return EXIT_OK if rep.overall else EXIT_FAIL


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        if args.command == "algebra":
            return _cmd_algebra(args)
        if args.command == "realize":
            return _cmd_realize(args)
        if args.command == "fieldcheck":
            return _cmd_fieldcheck(args)
        return _cmd_numcheck(args)
    except (AlgebraFileError, BadSpin, BadRank, BadMass, BadParameter) as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ValueError as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except GalkappaError as exc:
        print(f"verification failure: {exc}", file=sys.stderr)
        return EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
