"""Command line entry point ``sblab``.

Exit codes: 0 success, 1 verdict failure, 2 input error, 3 resource guardrail.
"""

from __future__ import annotations

import argparse
import sys

from .basis import minimalize, reduce_basis, standard_basis, tangent_cone
from .errors import InputError, ResourceError, SblabError
from .experiments import (
    artin_rees_experiment, growth_experiment, paper_example_check, prop4_experiment,
    render_report,
)
from .parser import parse_problem

EXIT_OK, EXIT_VERDICT, EXIT_INPUT, EXIT_RESOURCE = 0, 1, 2, 3


def _load(path):
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from exc
    return parse_problem(text).validate()


def _say(args, *parts):
    """Human-readable summary; moves to stderr when a report goes to stdout."""
    to_stdout = "-" in (getattr(args, "json", None), getattr(args, "csv", None))
    print(*parts, file=sys.stderr if to_stdout else sys.stdout)


def _emit(report, args):
    for fmt in ("json", "csv"):
        path = getattr(args, fmt, None)
        if path is None:
            continue
        text = render_report(report, fmt)
        if path == "-":
            sys.stdout.write(text)
        else:
            with open(path, "w", encoding="utf-8", newline="") as fh:
                fh.write(text)


def _cmd_basis(args):
    spec = _load(args.file)
    ring = spec.ring
    order = ring.local_order() if args.order == "local" else ring.graded_order()
    basis = standard_basis(list(spec.J) + list(spec.I), order)
    if args.minimal or args.reduced:
        basis = minimalize(basis)
    if args.reduced:
        basis = reduce_basis(basis)
    print(f"# {args.order} order, {len(basis)} elements")
    for f, e, o in zip(basis.elements, basis.leading_exps, basis.orders):
        print(f"{f}    [exp {e}, ord {o}]")
    return EXIT_OK


def _cmd_tangent_cone(args):
    spec = _load(args.file)
    cone = tangent_cone(list(spec.J) + list(spec.I), spec.ring)
    for g in cone.generators:
        print(f"{g.poly}    [degree {g.degree}]")
    return EXIT_OK


def _cmd_growth(args):
    spec = _load(args.file)
    report = growth_experiment(spec, args.nmax, workers=args.workers)
    for r in report.rows:
        _say(args, f"n={r.n}  p_n={r.p_n}  max_ord={r.max_ord}  ords={r.ord_list}")
    _say(args, f"lambda_hat={report.lambda_hat}  slope={report.slope_estimate}")
    _emit(report, args)
    if report.truncated:
        print(f"truncated: {report.truncation_reason}", file=sys.stderr)
        return EXIT_RESOURCE
    return EXIT_OK


def _cmd_artin_rees(args):
    spec = _load(args.file)
    report = artin_rees_experiment(spec, args.mmax, args.npad, args.lambda_bound)
    if report.lambda_min is not None:
        _say(args, f"lambda_min={report.lambda_min}")
    else:
        _say(args, f"no lambda found within {report.not_found_within}")
    _emit(report, args)
    if report.truncated:
        print(f"truncated: {report.truncation_reason}", file=sys.stderr)
        return EXIT_RESOURCE
    return EXIT_OK


def _cmd_prop4(args):
    spec = _load(args.file)
    report = prop4_experiment(spec, args.l, args.mmax)
    _say(args, f"l={report.l}  r(l)={report.r_of_l}")
    _say(args, f"lhs per m: {report.lhs_holds}")
    _say(args, f"rhs: {report.rhs_holds}  consistent: {report.consistent}")
    if not report.covers_decisive_range:
        _say(args, f"note: m up to {report.decisive_m} would be needed to decide every m")
    _emit(report, args)
    return EXIT_OK if report.consistent else EXIT_VERDICT


def _cmd_worked_example(args):
    report = paper_example_check(args.nmax)
    for r in report.rows:
        _say(args, f"n={r.n}  {'ok' if r.passed else 'FAIL'}")
    _emit(report, args)
    if not report.passed:
        for r in report.rows:
            if not r.passed:
                print(f"n={r.n}: cone {r.cone_generators} vs formula {r.formula_generators}",
                      file=sys.stderr)
        return EXIT_VERDICT
    return EXIT_OK


def build_parser():
    parser = argparse.ArgumentParser(prog="sblab", description="Standard bases in local rings.")
    sub = parser.add_subparsers(dest="command", required=True)

    def reports(p):
        p.add_argument("--json", metavar="PATH", help="write the JSON report ('-' for stdout)")
        p.add_argument("--csv", metavar="PATH", help="write the CSV rows ('-' for stdout)")

    p = sub.add_parser("basis", help="standard basis of J + I")
    p.add_argument("file")
    p.add_argument("--order", choices=("local", "global"), default="local")
    p.add_argument("--minimal", action="store_true")
    p.add_argument("--reduced", action="store_true")
    p.set_defaults(func=_cmd_basis)

    p = sub.add_parser("tangent-cone", help="leading-form ideal of J + I")
    p.add_argument("file")
    p.set_defaults(func=_cmd_tangent_cone)

    p = sub.add_parser("growth", help="orders of minimal standard bases of J + I^n")
    p.add_argument("file")
    p.add_argument("--nmax", type=int, required=True)
    p.add_argument("--workers", type=int, default=None)
    reports(p)
    p.set_defaults(func=_cmd_growth)

    p = sub.add_parser("artin-rees", help="least uniform Artin-Rees exponent on a grid")
    p.add_argument("file")
    p.add_argument("--mmax", type=int, required=True)
    p.add_argument("--npad", type=int, required=True)
    p.add_argument("--lambda-bound", type=int, required=True)
    reports(p)
    p.set_defaults(func=_cmd_artin_rees)

    p = sub.add_parser("prop4", help="check the intersection identity against basis conditions")
    p.add_argument("file")
    p.add_argument("--l", type=int, required=True)
    p.add_argument("--mmax", type=int, required=True)
    reports(p)
    p.set_defaults(func=_cmd_prop4)

    p = sub.add_parser("paper-example", help="verify tangent cones of powers of (x^2, y^3 - xy)")
    p.add_argument("--nmax", type=int, required=True)
    reports(p)
    p.set_defaults(func=_cmd_worked_example)
    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ResourceError as exc:
        print(f"sblab: resource limit: {exc}", file=sys.stderr)
        return EXIT_RESOURCE
    except (SblabError, ValueError) as exc:
        print(f"sblab: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
