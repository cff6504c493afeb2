"""Command-line front end.

Exit status: 0 on success, 1 when a computed result contradicts a bound or a
theorem, 2 on usage, input or budget errors.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import Sequence

from . import report
from .channel import simulate
from .errors import BudgetExceeded, InsdelCodesError
from .gf import FieldSpec, find_primitive, make_field
from .insdel import check_bounds, min_insdel_exhaustive, witness_report
from .kernels import BACKEND
from .lincode import LinearCode, rs_code
from .rs2opt import (
    ExponentSet,
    build_rs2,
    corollary_c_exponents,
    explore_condition1,
    min_insdel_normalized,
    verify_theorem_b,
)

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _ints(text: str) -> list[int]:
    try:
        return [int(t) for t in text.replace(" ", "").split(",") if t]
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from exc


def _field(args) -> FieldSpec:
    return make_field(args.p, args.e, args.modulus)


def _theta(spec: FieldSpec, value: int | None):
    return spec(value) if value is not None else find_primitive(spec)


def _load_code(path: str) -> tuple[LinearCode, dict]:
    try:
        data = json.loads(Path(path).read_text(encoding="utf-8"))
    except (OSError, json.JSONDecodeError) as exc:
        raise UsageError(f"cannot read code descriptor {path}: {exc}") from exc
    try:
        return LinearCode.from_json(data), data
    except (KeyError, TypeError) as exc:
        raise UsageError(f"malformed code descriptor {path}: {exc}") from exc


def _write(text: str, args) -> None:
    if getattr(args, "output", None):
        Path(args.output).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def cmd_field_info(args) -> int:
    spec = _field(args)
    theta = find_primitive(spec)
    info = {
        "schema_version": report.SCHEMA_VERSION,
        "kind": "field_info",
        "field": spec.to_json(),
        "q": spec.q,
        "primitive_element": list(theta.coeffs),
        "primitive_encoding": theta.value,
    }
    _write(report.emit(info, "json" if args.format == "csv" else args.format), args)
    return EXIT_OK


def cmd_construct(args) -> int:
    spec = _field(args)
    if args.family == "rs":
        code = rs_code(spec, args.locators, args.k)
        data = code.to_json()
    else:
        theta = _theta(spec, args.theta)
        exps = ExponentSet(args.exps)
        code = build_rs2(spec, theta, exps)
        data = code.to_json()
        data["rs2"] = {"exps": list(exps.exps), "theta": list(theta.coeffs)}
    data = {"schema_version": report.SCHEMA_VERSION, "kind": "code", **data}
    _write(json.dumps(data, indent=2, sort_keys=True) + "\n", args)
    return EXIT_OK


def cmd_analyze(args) -> int:
    code, data = _load_code(args.code)
    if args.method == "exhaustive":
        rep = min_insdel_exhaustive(code, workers=args.workers)
    elif args.method == "witness":
        rep = witness_report(code)
    else:
        rs2 = data.get("rs2")
        if rs2 is None:
            raise UsageError("normalized search needs a descriptor written by `construct rs2`")
        theta = code.spec(rs2["theta"])
        rep = min_insdel_normalized(code.spec, theta, rs2["exps"], workers=args.workers)
    _write(report.emit(rep, args.format), args)
    return EXIT_OK if check_bounds(rep).ok else EXIT_FAIL


def cmd_verify_theorem_b(args) -> int:
    spec = _field(args)
    theta = _theta(spec, args.theta)
    verdict = verify_theorem_b(args.exps, spec, theta, check_distance=args.check_distance, workers=args.workers)
    _write(report.emit(verdict, args.format), args)
    return EXIT_OK if verdict.holds else EXIT_FAIL


def cmd_corollary_c(args) -> int:
    exps, min_e = corollary_c_exponents(args.n)
    e = args.e if args.e is not None else min_e
    spec = make_field(args.p, e, args.modulus)
    theta = _theta(spec, args.theta)
    verdict = verify_theorem_b(exps, spec, theta, check_distance=not args.no_distance, workers=args.workers)
    if args.format != "json":
        _write(report.emit(verdict, args.format), args)
    else:
        code = build_rs2(spec, theta, exps)
        doc = {
            "schema_version": report.SCHEMA_VERSION,
            "kind": "corollary_c",
            "n": args.n,
            "p": args.p,
            "e": e,
            "min_e": min_e,
            "exps": list(exps.exps),
            "theta": list(theta.coeffs),
            "code": code.to_json(),
            "verdict": report.verdict_to_dict(verdict),
        }
        _write(json.dumps(doc, indent=2, sort_keys=True) + "\n", args)
    return EXIT_OK if verdict.holds else EXIT_FAIL


def cmd_simulate(args) -> int:
    code, _ = _load_code(args.code)
    traces = simulate(code, args.t_ins, args.t_del, args.trials, args.seed)
    _write(report.emit(traces, args.format, spec=code.spec), args)
    ok = sum(bool(t.success) for t in traces)
    print(f"summary: {ok}/{len(traces)} decoded correctly, seed {args.seed}", file=sys.stderr)
    return EXIT_OK


def cmd_explore(args) -> int:
    spec = _field(args)
    found = [
        {"exps": list(x.exps), "d_insdel": rep.d_insdel}
        for x, rep in explore_condition1(spec, args.n, limit=args.limit)
    ]
    doc = {"schema_version": report.SCHEMA_VERSION, "kind": "explore_condition1",
           "field": spec.to_json(), "n": args.n, "found": found}
    _write(json.dumps(doc, indent=2, sort_keys=True) + "\n", args)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=["json", "csv", "human"], default="json")
    common.add_argument("--workers", type=int, default=1, help="threads for chunked searches")
    common.add_argument("--output", help="write the report to this path instead of stdout")

    fieldargs = argparse.ArgumentParser(add_help=False)
    fieldargs.add_argument("--p", type=int, required=True)
    fieldargs.add_argument("--e", type=int, default=1)
    fieldargs.add_argument("--modulus", type=_ints, help="monic modulus coefficients, constant term first")

    parser = argparse.ArgumentParser(prog="insdelcodes", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"%(prog)s 0.1.0 (kernels: {BACKEND})")
    sub = parser.add_subparsers(dest="command", required=True)

    p_field = sub.add_parser("field", help="finite field utilities")
    fsub = p_field.add_subparsers(dest="action", required=True)
    fsub.add_parser("info", parents=[common, fieldargs]).set_defaults(func=cmd_field_info)

    p_con = sub.add_parser("construct", help="write a code descriptor")
    csub = p_con.add_subparsers(dest="family", required=True)
    p_rs = csub.add_parser("rs", parents=[common, fieldargs], help="Reed-Solomon code")
    p_rs.add_argument("--k", type=int, required=True)
    p_rs.add_argument("--locators", type=_ints, required=True, help="element encodings, comma-separated")
    p_rs.set_defaults(func=cmd_construct)
    p_rs2 = csub.add_parser("rs2", parents=[common, fieldargs], help="two-dimensional code on powers of theta")
    p_rs2.add_argument("--exps", type=_ints, required=True)
    p_rs2.add_argument("--theta", type=int, help="primitive element encoding (default: first primitive)")
    p_rs2.set_defaults(func=cmd_construct)

    p_an = sub.add_parser("analyze", parents=[common], help="minimum insdel distance of a code")
    p_an.add_argument("--code", required=True)
    p_an.add_argument("--method", choices=["exhaustive", "witness", "normalized"], default="exhaustive")
    p_an.set_defaults(func=cmd_analyze)

    p_tb = sub.add_parser("verify-theorem-b", parents=[common, fieldargs])
    p_tb.add_argument("--exps", type=_ints, required=True)
    p_tb.add_argument("--theta", type=int)
    p_tb.add_argument("--check-distance", action="store_true")
    p_tb.set_defaults(func=cmd_verify_theorem_b)

    p_cc = sub.add_parser("corollary-c", parents=[common])
    p_cc.add_argument("--n", type=int, required=True)
    p_cc.add_argument("--p", type=int, required=True)
    p_cc.add_argument("--e", type=int)
    p_cc.add_argument("--modulus", type=_ints)
    p_cc.add_argument("--theta", type=int)
    p_cc.add_argument("--no-distance", action="store_true", help="skip the normalized distance search")
    p_cc.set_defaults(func=cmd_corollary_c)

    p_sim = sub.add_parser("simulate", parents=[common])
    p_sim.add_argument("--code", required=True)
    p_sim.add_argument("--t-ins", type=int, default=0)
    p_sim.add_argument("--t-del", type=int, default=0)
    p_sim.add_argument("--trials", type=int, default=10)
    p_sim.add_argument("--seed", type=int, default=0)
    p_sim.set_defaults(func=cmd_simulate)

    p_ex = sub.add_parser("explore-cond1", parents=[common, fieldargs],
                          help="exploratory: sets violating condition (1) that still reach 2n-4")
    p_ex.add_argument("--n", type=int, required=True)
    p_ex.add_argument("--limit", type=int, default=10)
    p_ex.set_defaults(func=cmd_explore)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "workers", 1) < 1:
        parser.error("--workers must be positive")
    try:
        return args.func(args)
    except BudgetExceeded as exc:
        print(f"budget exceeded: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (UsageError, InsdelCodesError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
