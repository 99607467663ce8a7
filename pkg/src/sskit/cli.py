"""Command-line harness: run a verification suite, print a summary, and
optionally write the full JSON report.  Exit status is nonzero when any
check fails."""

from __future__ import annotations

import argparse
import os
import sys

from .report import DEFAULT_SEED, SUITES, RunConfig, report_to_json, run_suite


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="sskit",
        description="Numerical verification of shifted-form identities on "
                    "simplicial models of Lie groups.")
    sub = parser.add_subparsers(dest="command", required=True)
    verify = sub.add_parser("verify", help="run a verification suite")
    verify.add_argument("suite", choices=sorted(SUITES),
                        help="which family of checks to run")
    verify.add_argument("--algebra", default="so3",
                        help="builtin Lie algebra name or JSON config path")
    verify.add_argument("--triple", default="aff1-double",
                        help="builtin Manin triple name or JSON config path")
    verify.add_argument("--grid", type=int, default=36,
                        help="base grid resolution (loops use multiples of 6)")
    verify.add_argument("--fd-step", type=float, default=1e-4,
                        help="finite-difference step for the de Rham differential")
    verify.add_argument("--samples", type=int, default=3,
                        help="random samples per check")
    verify.add_argument("--seed", type=int, default=None,
                        help="RNG seed (default: SSKIT_SEED env var or builtin)")
    verify.add_argument("--fuzz", type=int, default=2000,
                        help="number of words in the simplicial identity fuzz")
    verify.add_argument("--json", metavar="OUT", default=None,
                        help="write the full JSON report to this path ('-' for stdout)")
    verify.add_argument("--tol-scale", type=float, default=1.0,
                        help="multiply every tolerance by this factor")
    return parser


def resolve_seed(arg_seed: int | None) -> int:
    if arg_seed is not None:
        return arg_seed
    env = os.environ.get("SSKIT_SEED")
    if env is not None:
        return int(env)
    return DEFAULT_SEED


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    if args.fd_step <= 0:
        print("error: --fd-step must be positive", file=sys.stderr)
        return 2
    cfg = RunConfig(algebra=args.algebra, triple=args.triple, grid=args.grid,
                    fd_step=args.fd_step, samples=args.samples,
                    seed=resolve_seed(args.seed), tol_scale=args.tol_scale,
                    fuzz=args.fuzz)
    try:
        report = run_suite(args.suite, cfg)
    except (ValueError, RuntimeError, FileNotFoundError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2

    for c in report["checks"]:
        status = "PASS" if c["pass"] else "FAIL"
        extra = ""
        if "tolerance" in c:
            extra = f" (tol {c['tolerance']:.1e})"
        elif "min_order" in c:
            shown = "exact" if c.get("machine_exact") else (
                "order ?" if c.get("order") is None else f"order {c['order']:.2f}")
            extra = f" ({shown}, need >= {c['min_order']:.1f})"
        print(f"[{status}] {c['label']}: residual {c['residual']:.3e}{extra}")
    verdict = "PASS" if report["pass"] else "FAIL"
    print(f"suite {report['suite']}: {verdict}")

    if args.json:
        body = report_to_json(report)
        if args.json == "-":
            print(body)
        else:
            with open(args.json, "w") as fh:
                fh.write(body + "\n")
    return 0 if report["pass"] else 1


if __name__ == "__main__":
    sys.exit(main())
