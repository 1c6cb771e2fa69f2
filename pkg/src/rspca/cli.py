"""Command-line surface: solve, generate, experiment, deflate, verify.

Exit codes: 0 success, 1 input/usage error, 2 convergence or size-guard
error.
"""

import argparse
import math
import os
import sys

from .evaluation import SizeGuardError
from .experiment import (ExperimentConfig, run_bound_check, run_deflation,
                         run_experiment, run_generate, run_solve)
from .linalg import ConvergenceError
from .synthetic import SyntheticSpec

__all__ = ["build_parser", "main"]

THETA_DEFAULT = 0.27 * math.pi


class _Parser(argparse.ArgumentParser):
    # usage problems are input errors: exit 1, not argparse's default 2
    def error(self, message):
        self.print_usage(sys.stderr)
        sys.stderr.write("error: %s\n" % message)
        raise SystemExit(1)


def _onoff(value):
    if value not in ("on", "off"):
        raise argparse.ArgumentTypeError("expected 'on' or 'off'")
    return value == "on"


def _csv_list(value):
    return tuple(item.strip() for item in value.split(",") if item.strip())


def _int_list(value):
    return tuple(int(item) for item in _csv_list(value))


def _add_source_args(p, synthetic_switch=True):
    p.add_argument("--input", help="matrix file to load")
    p.add_argument("--format", choices=["matrix-market", "csv"],
                   help="input format (default: inferred from extension)")
    if synthetic_switch:
        p.add_argument("--synthetic", action="store_true",
                       help="use the built-in generator instead of --input")
    p.add_argument("--m", type=int, default=128)
    p.add_argument("--n", type=int, default=4096)
    p.add_argument("--theta", type=float, default=THETA_DEFAULT,
                   help="rotation angle in radians (default 0.27*pi)")
    p.add_argument("--sigma1", type=float, default=100.0)
    p.add_argument("--noise-std", type=float, default=1e-3)


def _add_common_args(p):
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out-dir", default=".")
    p.add_argument("--scale-rows", type=_onoff, default=True,
                   metavar="{on,off}")
    p.add_argument("--center", type=_onoff, default=False, metavar="{on,off}")


def _add_solver_args(p):
    p.add_argument("--tol", type=float, default=1e-8)
    p.add_argument("--max-iter", type=int, default=5000)
    p.add_argument("--restarts", type=int, default=8)


def _add_rounding_args(p):
    p.add_argument("--s", type=int, default=None,
                   help="expected-sparsity target (default: k)")
    p.add_argument("--trials", type=int, default=32)
    p.add_argument("--epsilon", type=float, default=None)


def build_parser():
    parser = _Parser(prog="rspca",
                     description="sparse PCA by relaxation and rounding")
    sub = parser.add_subparsers(dest="command", required=True,
                                parser_class=_Parser)

    p = sub.add_parser("solve", help="one sparse direction for one matrix")
    _add_source_args(p)
    _add_common_args(p)
    _add_solver_args(p)
    _add_rounding_args(p)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--normalization", choices=["naive", "svd"], default="svd")

    p = sub.add_parser("generate", help="write a synthetic matrix + truth")
    _add_source_args(p, synthetic_switch=False)
    _add_common_args(p)

    p = sub.add_parser("experiment", help="quality-vs-sparsity curve sweep")
    _add_source_args(p)
    _add_common_args(p)
    _add_solver_args(p)
    _add_rounding_args(p)
    p.add_argument("--grid", type=_int_list, required=True,
                   help="comma-separated k values")
    p.add_argument("--methods", type=_csv_list, default=("rspca", "maxcomp"))
    p.add_argument("--normalizations", type=_csv_list,
                   default=("naive", "svd"))

    p = sub.add_parser("deflate", help="extract several sparse components")
    _add_source_args(p)
    _add_common_args(p)
    _add_solver_args(p)
    _add_rounding_args(p)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--components", type=int, required=True)
    p.add_argument("--normalization", choices=["naive", "svd"], default="svd")

    p = sub.add_parser("verify", help="Monte Carlo check of rounding bounds")
    _add_source_args(p)
    _add_common_args(p)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--epsilon", type=float, default=0.5)
    p.add_argument("--trials", type=int, default=1000,
                   help="Monte Carlo sample count")

    return parser


def _spec_from(args):
    return SyntheticSpec(m=args.m, n=args.n, theta=args.theta,
                         sigma1=args.sigma1, noise_std=args.noise_std,
                         seed=args.seed)


def _source_kwargs(args):
    if getattr(args, "synthetic", False):
        return {"synthetic": _spec_from(args)}
    if args.input is None:
        raise ValueError("either --input or --synthetic is required")
    return {"input_path": args.input, "input_format": args.format}


def _dispatch(args):
    if args.command == "generate":
        data = run_generate(_spec_from(args), args.out_dir)
        print("wrote %dx%d matrix to %s" % (
            data.X.shape[0], data.X.shape[1],
            os.path.join(args.out_dir, "X.mtx")))
        return 0

    if args.command == "solve":
        out = run_solve(k=args.k, s=args.s, trials=args.trials,
                        epsilon=args.epsilon,
                        normalization=args.normalization,
                        scale_rows=args.scale_rows, center=args.center,
                        seed=args.seed, out_dir=args.out_dir, tol=args.tol,
                        max_iter=args.max_iter, restarts=args.restarts,
                        **_source_kwargs(args))
        print("nnz=%d f=%.6g objective=%.6g -> %s" % (
            out["nnz"], out["f_value"], out["relaxation_objective"],
            os.path.join(args.out_dir, "solution.json")))
        return 0

    if args.command == "experiment":
        cfg = ExperimentConfig(methods=args.methods,
                               normalizations=args.normalizations,
                               grid=args.grid, s=args.s, trials=args.trials,
                               epsilon=args.epsilon,
                               scale_rows=args.scale_rows,
                               center=args.center, tol=args.tol,
                               max_iter=args.max_iter,
                               restarts=args.restarts, seed=args.seed,
                               out_dir=args.out_dir, **_source_kwargs(args))
        result = run_experiment(cfg)
        print("wrote %d curve files and %s" % (
            len(result.curve_files), result.manifest_file))
        for record in result.failures:
            print("point k=%d failed: %s" % (record["k"], record["error"]))
        return 0

    if args.command == "deflate":
        cs = run_deflation(n_components=args.components, k=args.k,
                           s=args.s, trials=args.trials,
                           epsilon=args.epsilon,
                           normalization=args.normalization,
                           scale_rows=args.scale_rows, center=args.center,
                           seed=args.seed, out_dir=args.out_dir,
                           tol=args.tol, max_iter=args.max_iter,
                           restarts=args.restarts, **_source_kwargs(args))
        print("extracted %d/%d components%s -> %s" % (
            len(cs.V), cs.requested,
            " (truncated)" if cs.truncated else "",
            os.path.join(args.out_dir, "components.json")))
        return 0

    if args.command == "verify":
        report = run_bound_check(k=args.k, epsilon=args.epsilon,
                                 n_trials=args.trials,
                                 scale_rows=args.scale_rows,
                                 center=args.center, seed=args.seed,
                                 out_dir=args.out_dir,
                                 **_source_kwargs(args))
        for name, ok in report.checks().items():
            print("%-28s %s" % (name, "PASS" if ok else "FAIL"))
        print("overall: %s" % ("PASS" if report.all_ok() else "FAIL"))
        return 0

    raise ValueError("unknown command %r" % (args.command,))


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return _dispatch(args)
    except (ConvergenceError, SizeGuardError) as err:
        sys.stderr.write("error: %s\n" % err)
        return 2
    except (ValueError, OSError) as err:
        sys.stderr.write("error: %s\n" % err)
        return 1


if __name__ == "__main__":
    sys.exit(main())
