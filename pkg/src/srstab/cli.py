"""Command-line front end emitting CSV data plus reproducibility manifests.

Subcommands: bounds, threshold, empirical, distance, funcs, verify.  Every
CSV is accompanied by a ``<basename>.manifest.json`` sidecar recording the
subcommand, all parameters, the seed, the tool version and the quadrature
tolerance, so any output can be regenerated byte-for-byte.

Exit codes: 0 success, 1 verification failure, 2 argument error, 3 I/O
failure, 4 numerical bracket failure, 5 infeasible configuration.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from pathlib import Path

from . import __version__
from .bounds import NoSignChange, bound_curve, stability_threshold
from .experiments import (
    InfeasibleSeparation,
    run_empirical_extremes,
    run_function_profiles,
    run_resolution_limit,
    run_verification_suite,
)

EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_USAGE = 2
EXIT_IO = 3
EXIT_BRACKET = 4
EXIT_INFEASIBLE = 5


class _UsageError(Exception):
    pass


def _fmt(x: float) -> str:
    # shortest decimal string that round-trips to the identical double
    return repr(float(x))


def _parse_floats(text: str) -> list:
    try:
        return [float(part) for part in text.split(",") if part != ""]
    except ValueError:
        raise _UsageError(f"expected a comma-separated list of numbers, got {text!r}")


def _parse_ints(text: str) -> list:
    try:
        return [int(part) for part in text.split(",") if part != ""]
    except ValueError:
        raise _UsageError(f"expected a comma-separated list of integers, got {text!r}")


def _parse_t_range(text: str) -> tuple:
    parts = text.split(":")
    if len(parts) != 3:
        raise _UsageError(f"t range must be min:max:step, got {text!r}")
    try:
        t_min, t_max, step = (float(p) for p in parts)
    except ValueError:
        raise _UsageError(f"t range must be numeric, got {text!r}")
    if step <= 0 or t_max <= t_min:
        raise _UsageError("t range needs max > min and step > 0")
    return t_min, t_max, step


def _write_csv(path: str, header: str, rows) -> None:
    with open(path, "w", newline="\n") as fh:
        fh.write(header + "\n")
        for row in rows:
            fh.write(",".join(row) + "\n")


def _write_manifest(out_path: str, subcommand: str, params: dict,
                    seed: int, quad_tol: float) -> None:
    manifest = {
        "subcommand": subcommand,
        "params": params,
        "seed": seed,
        "version": __version__,
        "quad_tol": quad_tol,
    }
    path = Path(out_path).with_suffix(".manifest.json")
    with open(path, "w", newline="\n") as fh:
        json.dump(manifest, fh, indent=2, sort_keys=True)
        fh.write("\n")


def cmd_bounds(args) -> int:
    if args.alpha_min <= 0 or args.alpha_max <= args.alpha_min:
        raise _UsageError("need 0 < alpha-min < alpha-max")
    if args.steps < 2:
        raise _UsageError("need at least 2 grid steps")
    curve = bound_curve(args.alpha_min, args.alpha_max, args.steps, args.quad_tol)
    rows = ([_fmt(a), _fmt(hm), _fmt(hp)]
            for a, hm, hp in zip(curve.alphas, curve.h_minus, curve.h_plus))
    _write_csv(args.out, "alpha,h_minus,h_plus", rows)
    _write_manifest(args.out, "bounds",
                    {"alpha_min": args.alpha_min, "alpha_max": args.alpha_max,
                     "steps": args.steps, "out": args.out},
                    args.seed, args.quad_tol)
    return EXIT_OK


def cmd_threshold(args) -> int:
    if not 1e-6 <= args.tol <= 1e-2:
        raise _UsageError("tol must lie in [1e-6, 1e-2]")
    alpha_star = stability_threshold(args.tol, args.quad_tol)
    digits = math.ceil(-math.log10(args.tol) - 1e-9)
    print(f"{alpha_star:.{digits}f}")
    return EXIT_OK


def cmd_empirical(args) -> int:
    if args.n % 2 == 0 or args.n < 3:
        raise _UsageError("N must be an odd integer >= 3")
    alphas = _parse_floats(args.alphas)
    if not alphas or min(alphas) < 2.0:
        raise _UsageError("each alpha must be at least 2")
    if args.trials < 1:
        raise _UsageError("need at least one trial")
    if args.kappa < 1.0:
        raise _UsageError("kappa must be >= 1")
    if args.sigma2 <= 0.0:
        raise _UsageError("sigma2 must be positive")
    records = run_empirical_extremes(args.n, alphas, args.trials,
                                     args.kappa, args.sigma2, args.seed)
    rows = ([str(rec.trial_id), str(rec.seed), _fmt(rec.alpha), str(rec.N),
             str(rec.r), _fmt(rec.lambda_min), _fmt(rec.lambda_max),
             _fmt(rec.sigma_min_sq), _fmt(rec.sigma_max_sq)]
            for rec in records)
    _write_csv(args.out,
               "trial,seed,alpha,N,r,lambda_min,lambda_max,sigma_min_sq,sigma_max_sq",
               rows)
    _write_manifest(args.out, "empirical",
                    {"N": args.n, "alphas": alphas, "trials": args.trials,
                     "kappa": args.kappa, "sigma2": args.sigma2, "out": args.out},
                    args.seed, args.quad_tol)
    return EXIT_OK


def cmd_distance(args) -> int:
    alphas = _parse_floats(args.alphas)
    n_list = _parse_ints(args.n_list)
    if not alphas or not n_list:
        raise _UsageError("need at least one alpha and one N")
    for n in n_list:
        if n % 2 == 0 or n < 31:
            raise _UsageError("each N must be odd and at least 31")
    rows_data = run_resolution_limit(alphas, n_list)
    rows = ([_fmt(alpha), str(n), str(r), _fmt(dist)]
            for alpha, n, r, dist in rows_data)
    _write_csv(args.out, "alpha,N,r,distance", rows)
    _write_manifest(args.out, "distance",
                    {"alphas": alphas, "N_list": n_list, "out": args.out},
                    args.seed, args.quad_tol)
    return EXIT_OK


def cmd_funcs(args) -> int:
    alphas = _parse_floats(args.alphas)
    if not alphas or min(alphas) <= 0:
        raise _UsageError("each alpha must be positive")
    t_min, t_max, step = _parse_t_range(args.t_range)
    rows_data = run_function_profiles(alphas, t_min, t_max, step)
    rows = ([_fmt(alpha), _fmt(t), _fmt(gm), _fmt(gp), _fmt(bx)]
            for alpha, t, gm, gp, bx in rows_data)
    _write_csv(args.out, "alpha,t,g_minus,g_plus,box", rows)
    _write_manifest(args.out, "funcs",
                    {"alphas": alphas, "t_range": [t_min, t_max, step],
                     "out": args.out},
                    args.seed, args.quad_tol)
    return EXIT_OK


def cmd_verify(args) -> int:
    report = run_verification_suite(args.level, args.quad_tol)
    name_w = max(len(c.name) for c in report.checks)
    print(f"{'check':<{name_w}}  {'residual':>12}  {'tolerance':>12}  status")
    for c in report.checks:
        status = "PASS" if c.passed else "FAIL"
        print(f"{c.name:<{name_w}}  {c.residual:>12.3e}  {c.tolerance:>12.3e}  {status}")
    return EXIT_OK if report.passed else EXIT_CHECK_FAILED


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=0,
                        help="base seed for randomized subcommands (default 0)")
    common.add_argument("--quad-tol", type=float, default=1e-10,
                        help="quadrature panel tolerance (default 1e-10)")

    parser = argparse.ArgumentParser(
        prog="srstab",
        description="Stability bounds for super-resolution Fisher information")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("bounds", parents=[common],
                       help="tabulate the h_-/h_+ bound curves as CSV")
    p.add_argument("--alpha-min", type=float, required=True)
    p.add_argument("--alpha-max", type=float, required=True)
    p.add_argument("--steps", type=int, required=True)
    p.add_argument("--out", required=True)
    p.set_defaults(handler=cmd_bounds)

    p = sub.add_parser("threshold", parents=[common],
                       help="locate the smallest alpha with h_- > 0")
    p.add_argument("--tol", type=float, required=True,
                   help="bisection tolerance in [1e-6, 1e-2]")
    p.set_defaults(handler=cmd_threshold)

    p = sub.add_parser("empirical", parents=[common],
                       help="randomized extremal eigenvalue trials as CSV")
    p.add_argument("--n", "--N", dest="n", type=int, required=True,
                   help="odd number of moments")
    p.add_argument("--alphas", required=True, help="comma-separated separations")
    p.add_argument("--trials", type=int, required=True)
    p.add_argument("--kappa", type=float, default=1.0)
    p.add_argument("--sigma2", type=float, default=1.0)
    p.add_argument("--out", required=True)
    p.set_defaults(handler=cmd_empirical)

    p = sub.add_parser("distance", parents=[common],
                       help="two-cluster signal distance versus N as CSV")
    p.add_argument("--alphas", required=True)
    p.add_argument("--n-list", "--N-list", dest="n_list", required=True,
                   help="comma-separated odd signal lengths (>= 31)")
    p.add_argument("--out", required=True)
    p.set_defaults(handler=cmd_distance)

    p = sub.add_parser("funcs", parents=[common],
                       help="dense approximant/box profiles as CSV")
    p.add_argument("--alphas", required=True)
    p.add_argument("--t-range", required=True, help="min:max:step (use --t-range=...)")
    p.add_argument("--out", required=True)
    p.set_defaults(handler=cmd_funcs)

    p = sub.add_parser("verify", parents=[common],
                       help="run the numeric verification suite")
    p.add_argument("--level", choices=["fast", "full"], default="fast")
    p.set_defaults(handler=cmd_verify)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    try:
        return args.handler(args)
    except _UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except InfeasibleSeparation as exc:
        print(f"error: infeasible configuration: {exc}", file=sys.stderr)
        return EXIT_INFEASIBLE
    except NoSignChange as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BRACKET
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


def run() -> None:
    sys.exit(main())


if __name__ == "__main__":
    run()
