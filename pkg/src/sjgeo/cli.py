"""Command-line surface.

Subcommands:
  verify <check|all>   run verification suites, write JSON/CSV reports
  eval <target>        evaluate metric / laplacian / operator / field values
  sample <kind>        emit a deterministic random point or group element

Machine output goes to stdout; progress lines go to stderr.  Exit codes:
0 all requested checks passed, 1 at least one check failed, 2 bad
configuration or invalid input.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys

from .geometry import point_from_json, point_to_json, random_point, validate_point
from .groups import element_to_json, random_jacobi, random_jacobistar
from .metrics import (
    MetricParams,
    evaluate_form,
    form_kind_for_point,
    tangent_from_json,
)
from .operators import (
    DomainMargin,
    field_registry_ids,
    lap_disk,
    lap_upper,
    named_field,
    op_invariant,
    test_field_suite,
)
from .verify import CHECK_NAMES, DEFAULT_TOLERANCES, UnknownCheck, run_check

_EVAL_TARGETS = ("metric", "laplacian", "D", "L", "Dtilde", "Ltilde", "field")


def _log(msg: str):
    print(msg, file=sys.stderr)


def _tolerance_table() -> str:
    rows = [f"  {name:<26s} {tol:g}" for name, tol in DEFAULT_TOLERANCES.items()]
    return "default tolerances per check:\n" + "\n".join(rows)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="sjgeo",
        description="Jacobi group actions, invariant metrics and Laplacians "
                    "on the Siegel-Jacobi space and disk.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    pv = sub.add_parser(
        "verify", help="run one named verification suite, or all of them",
        epilog=_tolerance_table(),
        formatter_class=argparse.RawDescriptionHelpFormatter,
    )
    pv.add_argument("check", help="check name or 'all'")
    pv.add_argument("--n", type=int, default=1)
    pv.add_argument("--m", type=int, default=1)
    pv.add_argument("--A", type=float, default=1.0, dest="a")
    pv.add_argument("--B", type=float, default=1.0, dest="b")
    pv.add_argument("--samples", type=int, default=50)
    pv.add_argument("--seed", type=int, default=42)
    pv.add_argument("--tol", type=float, default=None,
                    help="override the per-check default tolerance")
    pv.add_argument("--out", default=None, help="write the report file here")
    pv.add_argument("--format", choices=("json", "csv"), default="json")
    pv.add_argument("--threads", type=int,
                    default=int(os.environ.get("SJGEO_THREADS", "1")))

    pe = sub.add_parser("eval", help="evaluate a metric, Laplacian, operator or field")
    pe.add_argument("target", choices=_EVAL_TARGETS)
    pe.add_argument("--point", required=True, help="point JSON file")
    pe.add_argument("--tangent", default=None, help="tangent JSON file (metric)")
    pe.add_argument("--field", default=None,
                    help="field id (laplacian / operators / field)")
    pe.add_argument("--A", type=float, default=1.0, dest="a")
    pe.add_argument("--B", type=float, default=1.0, dest="b")
    pe.add_argument("--seed", type=int, default=42,
                    help="seed for seeded suite fields")

    ps = sub.add_parser("sample", help="emit a deterministic random object")
    ps.add_argument("kind", choices=("point", "element"))
    ps.add_argument("--model", choices=("upper", "disk"), default="disk")
    ps.add_argument("--n", type=int, default=1)
    ps.add_argument("--m", type=int, default=1)
    ps.add_argument("--seed", type=int, default=42)
    return parser


def _validate_common(args) -> str | None:
    if getattr(args, "n", 1) < 1 or getattr(args, "m", 1) < 1:
        return "n and m must be >= 1"
    if getattr(args, "a", 1.0) <= 0 or getattr(args, "b", 1.0) <= 0:
        return "A and B must be positive"
    if getattr(args, "samples", 1) < 1:
        return "samples must be >= 1"
    if getattr(args, "tol", None) is not None and args.tol <= 0:
        return "tol must be positive"
    return None


def _reports_to_csv(reports: list[dict]) -> str:
    buf = io.StringIO()
    fields = ["check", "n", "m", "A", "B", "samples", "seed",
              "max_abs", "max_rel", "tol", "pass", "constant", "retries", "ms"]
    writer = csv.DictWriter(buf, fieldnames=fields, extrasaction="ignore")
    writer.writeheader()
    for rep in reports:
        writer.writerow({k: rep.get(k) for k in fields})
    return buf.getvalue()


def _cmd_verify(args) -> int:
    problem = _validate_common(args)
    if problem:
        _log(f"error: {problem}")
        return 2
    names = CHECK_NAMES if args.check == "all" else [args.check]
    params = MetricParams(args.a, args.b)
    reports = []
    all_pass = True
    for name in names:
        try:
            rep = run_check(name, args.n, args.m, params, args.samples,
                            args.seed, tol=args.tol, threads=args.threads)
        except UnknownCheck as exc:
            _log(f"error: {exc}")
            return 2
        reports.append(rep.to_json())
        all_pass &= rep.passed
        _log(f"{name:<26s} {'pass' if rep.passed else 'FAIL'} "
             f"max_rel={rep.max_rel:.3e} tol={rep.tol:g} ({rep.ms:.0f} ms)")
    if args.format == "csv":
        text = _reports_to_csv(reports)
    else:
        payload = reports[0] if args.check != "all" else reports
        text = json.dumps(payload, sort_keys=True, indent=2) + "\n"
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
        _log(f"report written to {args.out}")
    else:
        sys.stdout.write(text)
    return 0 if all_pass else 1


def _load_point(path: str):
    with open(path) as fh:
        obj = json.load(fh)
    point = point_from_json(obj)
    problems = validate_point(point)
    if problems:
        raise ValueError("invalid point: " + "; ".join(problems))
    return point


def _resolve_field(model: str, n: int, m: int, name: str, seed: int):
    suite = {f.name: f for f in test_field_suite(model, n, m, seed)}
    if name in suite:
        return suite[name]
    return named_field(model, n, m, name)


def _cmd_eval(args) -> int:
    problem = _validate_common(args)
    if problem:
        _log(f"error: {problem}")
        return 2
    try:
        point = _load_point(args.point)
    except (OSError, ValueError, KeyError, json.JSONDecodeError) as exc:
        _log(f"error: {exc}")
        return 2
    model = "upper" if form_kind_for_point(point) == "upper" else "disk"
    params = MetricParams(args.a, args.b)
    try:
        if args.target == "metric":
            if not args.tangent:
                _log("error: eval metric needs --tangent")
                return 2
            with open(args.tangent) as fh:
                tangent = tangent_from_json(json.load(fh))
            if tangent.model != model:
                _log("error: tangent model does not match the point")
                return 2
            value = evaluate_form(model, point, tangent, params)
        elif args.target in ("laplacian", "D", "L", "Dtilde", "Ltilde", "field"):
            if not args.field:
                _log(f"error: eval {args.target} needs --field "
                     f"(known ids: {', '.join(field_registry_ids(model))})")
                return 2
            f = _resolve_field(model, point.n, point.m, args.field, args.seed)
            if args.target == "field":
                value = f(point)
            elif args.target == "laplacian":
                value = (lap_upper(f, point, params) if model == "upper"
                         else lap_disk(f, point, params))
            else:
                value = op_invariant(args.target, f, point)
        else:
            _log(f"error: unknown target {args.target}")
            return 2
    except (KeyError, ValueError, DomainMargin, OSError,
            json.JSONDecodeError) as exc:
        _log(f"error: {exc}")
        return 2
    print(f"{value:.15g}")
    return 0


def _cmd_sample(args) -> int:
    problem = _validate_common(args)
    if problem:
        _log(f"error: {problem}")
        return 2
    if args.kind == "point":
        obj = point_to_json(random_point(args.model, args.n, args.m, args.seed))
    else:
        if args.model == "upper":
            obj = element_to_json(random_jacobi(args.n, args.m, args.seed))
        else:
            obj = element_to_json(random_jacobistar(args.n, args.m, args.seed))
    print(json.dumps(obj, sort_keys=True))
    return 0


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse uses exit code 2 for usage errors already
        return int(exc.code or 0)
    if args.command == "verify":
        return _cmd_verify(args)
    if args.command == "eval":
        return _cmd_eval(args)
    return _cmd_sample(args)


if __name__ == "__main__":
    sys.exit(main())
