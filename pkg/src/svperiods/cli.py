"""Command-line surface: kloosterman, poincare, sv, table, verify.

Exit codes: 0 success, 1 verification failure, 2 usage, 3 tolerance
unreachable, 4 route unavailable.  Text output uses 12-digit numerics;
JSON emits full binary doubles with a fixed key order so identical runs
are byte-identical.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys

from . import arith, catalog, poincare, svp

EXIT_OK = 0
EXIT_VERIFY = 1
EXIT_USAGE = 2
EXIT_TOL = 3
EXIT_ROUTE = 4


def _emit(text, path):
    if path:
        with open(path, "w", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _rows_to_text(rows, columns):
    out = ["\t".join(columns)]
    for row in rows:
        out.append("\t".join(_fmt(row[c]) for c in columns))
    return "\n".join(out) + "\n"


def _fmt(v):
    if isinstance(v, float):
        return "%.12g" % v
    return str(v)


def _rows_to_csv(rows, columns):
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\r\n")
    w.writerow(columns)
    for row in rows:
        w.writerow([_fmt(row[c]) for c in columns])
    return buf.getvalue()


def _rows_to_json(rows, columns):
    ordered = [{c: row[c] for c in columns} for row in rows]
    return json.dumps(ordered, indent=2) + "\n"


def _render(rows, columns, fmt, path):
    if fmt == "json":
        _emit(_rows_to_json(rows, columns), path)
    elif fmt == "csv":
        _emit(_rows_to_csv(rows, columns), path)
    else:
        _emit(_rows_to_text(rows, columns), path)


def cmd_kloosterman(args):
    value = arith.kloosterman(args.a, args.b, args.c)
    print("%.12f" % value)
    return EXIT_OK


def cmd_poincare(args):
    exp = poincare.poincare_qexp(args.m, args.weight, args.N, args.n_max,
                                 c_max=args.c_max, tol=args.tol, cap=args.cap,
                                 threads=args.threads)
    rows = []
    unreachable = False
    for c in exp.coefficients:
        row = {"n": c.n, "value": c.value, "tail_estimate": c.tail_estimate,
               "c_max": c.c_max, "warning": "" if c.tolerance_met else "tolerance unreachable"}
        unreachable |= not c.tolerance_met
        rows.append(row)
    _render(rows, ["n", "value", "tail_estimate", "c_max", "warning"], args.format, args.output)
    return EXIT_TOL if unreachable else EXIT_OK


def cmd_sv(args):
    try:
        case = catalog.lookup_case(args.N, args.weight)
    except KeyError as exc:
        print("error: %s" % exc, file=sys.stderr)
        return EXIT_USAGE
    rows = []
    route_a = route_b = None
    if args.route in ("periods", "both"):
        if case.weight != 2:
            print("error: route 'periods' needs a weight-2 curve level", file=sys.stderr)
            return EXIT_ROUTE
        route_a = svp.rank2_rho(case, route="A")
        rows.append({"route": "periods", "c": route_a.c, "rho": route_a.rho,
                     "residual": route_a.residuals.get("det_P_minus_2pi_i", 0.0)})
    if args.route in ("poincare", "both"):
        cres = svp.rank2_c_from_poincare(case, c_max=args.c_max, tol=args.tol)
        rho_res = svp.rank2_rho(case, route="B", c_max=args.c_max, tol=args.tol)
        worst = max((abs(v) for v in rho_res.residuals.values()), default=0.0)
        route_b = (cres, rho_res)
        rows.append({"route": "poincare", "c": cres.c, "rho": rho_res.rho, "residual": worst})
    if args.route == "both":
        rows.append({"route": "deviation", "c": abs(route_a.c - route_b[0].c),
                     "rho": abs(route_a.rho - route_b[1].rho), "residual": 0.0})
    _render(rows, ["route", "c", "rho", "residual"], args.format, args.output)
    return EXIT_OK


def cmd_table(args):
    rows = []
    failures = 0
    for case in catalog.rank_two_table():
        row = {"level": case.level, "weight": case.weight, "cm": case.cm,
               "recipe": catalog.recipe_kind(case),
               "c_periods": "", "rho_periods": "", "c_poincare": "", "rho_poincare": "",
               "cm_verdict": "", "error": ""}
        try:
            if case.weight == 2:
                a = svp.rank2_rho(case, route="A")
                row["c_periods"], row["rho_periods"] = a.c, a.rho
            c_max = args.c_max or (40_000 if case.weight == 2 else 5_000)
            cres = svp.rank2_c_from_poincare(case, c_max=c_max)
            row["c_poincare"] = cres.c
            rho = svp.rank2_rho(case, route="B", n_max=4, c_max=c_max)
            row["rho_poincare"] = rho.rho
            if case.cm or (case.level, case.weight) in ((11, 2), (1, 12)):
                cm_c_max = args.c_max or (2 * 10**5 if case.weight == 2 else 10**4)
                verdict = svp.cm_rationality_check(case, n_max=6, c_max=cm_c_max)["verdict"]
                row["cm_verdict"] = "pass" if verdict else "fail"
        except Exception as exc:
            row["error"] = str(exc)
            failures += 1
        rows.append(row)
    _render(rows, ["level", "weight", "cm", "recipe", "c_periods", "rho_periods",
                   "c_poincare", "rho_poincare", "cm_verdict", "error"],
            args.format, args.output)
    return EXIT_OK if failures < len(rows) else EXIT_VERIFY


def cmd_verify(args):
    from .verify import run_suite

    results = run_suite(suite=args.suite)
    return EXIT_OK if all(r.passed for r in results) else EXIT_VERIFY


def _positive_int(text):
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError("must be a positive integer")
    return value


def _nonzero_int(text):
    value = int(text)
    if value == 0:
        raise argparse.ArgumentTypeError("index m = 0 (Eisenstein) is not supported")
    return value


def build_parser():
    ap = argparse.ArgumentParser(prog="svp", description=__doc__)
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("kloosterman", help="Kloosterman sum K(a, b; c)")
    p.add_argument("--a", type=int, required=True)
    p.add_argument("--b", type=int, required=True)
    p.add_argument("--c", type=_positive_int, required=True)
    p.set_defaults(fn=cmd_kloosterman)

    p = sub.add_parser("poincare", help="Fourier coefficients a_n(P_{m,weight,N})")
    p.add_argument("--N", type=_positive_int, required=True)
    p.add_argument("--weight", type=int, required=True)
    p.add_argument("--m", type=_nonzero_int, required=True)
    p.add_argument("--n-max", type=_positive_int, default=8)
    ctrl = p.add_mutually_exclusive_group()
    ctrl.add_argument("--c-max", type=_positive_int)
    ctrl.add_argument("--tol", type=float)
    p.add_argument("--cap", type=_positive_int,
                   help="hard modulus cap for --tol mode (default 10^6)")
    p.add_argument("--threads", type=_positive_int)
    p.add_argument("--format", choices=("text", "json", "csv"), default="text")
    p.add_argument("--output")
    p.set_defaults(fn=cmd_poincare)

    p = sub.add_parser("sv", help="single-valued data (c, rho) of a rank-2 case")
    p.add_argument("--N", type=_positive_int, required=True)
    p.add_argument("--weight", type=int, required=True)
    p.add_argument("--route", choices=("periods", "poincare", "both"), default="both")
    ctrl = p.add_mutually_exclusive_group()
    ctrl.add_argument("--c-max", type=_positive_int)
    ctrl.add_argument("--tol", type=float)
    p.add_argument("--format", choices=("text", "json", "csv"), default="text")
    p.add_argument("--output")
    p.set_defaults(fn=cmd_sv)

    p = sub.add_parser("table", help="survey of all 29 rank-2 cases")
    p.add_argument("--c-max", type=_positive_int)
    p.add_argument("--format", choices=("text", "json", "csv"), default="text")
    p.add_argument("--output")
    p.set_defaults(fn=cmd_table)

    p = sub.add_parser("verify", help="run the ground-truth verification suite")
    p.add_argument("--suite", choices=("all", "fast"), default="all")
    p.set_defaults(fn=cmd_verify)

    return ap


def main(argv=None):
    args = build_parser().parse_args(argv)
    if args.command == "poincare" and args.c_max is None and args.tol is None:
        args.c_max = poincare.DEFAULT_C_MAX
    try:
        return args.fn(args)
    except (ValueError, OverflowError, KeyError) as exc:
        print("error: %s" % exc, file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
