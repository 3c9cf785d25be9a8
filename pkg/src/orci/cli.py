"""Command-line interface.

Exit status: 0 success, 1 bad usage, 2 invalid input, 3 numerical failure,
4 standard interval does not exist.
"""

from __future__ import annotations

import argparse
import contextlib
import csv
import io
import json
import math
import sys

from .counts import TwoArmCounts
from .coverage import EXACT, STANDARD, coverage_curve
from .errors import DomainError, NumericError, UndefinedIntervalError
from .exact import exact_ci, minimal_sample_size
from .support import extended_or, outcome_distribution
from .wald import standard_ci

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_DOMAIN = 2
EXIT_NUMERIC = 3
EXIT_UNDEFINED = 4


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _fmt(x, digits):
    if x == math.inf:
        return "Inf"
    return f"{x:.{digits}f}"


def _json_number(x):
    return None if x == math.inf else float(x)


def _csv_number(x):
    return "" if x == math.inf else repr(float(x))


def _counts(args):
    for flag in ("na", "nb", "xa", "xb"):
        if getattr(args, flag) is None:
            raise DomainError(f"--{flag} is required")
    return TwoArmCounts(args.na, args.nb, args.xa, args.xb)


def _render_interval(method, counts, level, interval, or_hat, fmt):
    if fmt == "json":
        return json.dumps({
            "method": method,
            "left": _json_number(interval.left),
            "right": _json_number(interval.right),
            "level": level,
            "or_hat": _json_number(or_hat),
            "n_a": counts.n_a,
            "n_b": counts.n_b,
            "x_a": counts.x_a,
            "x_b": counts.x_b,
            "sided": interval.sided,
        }) + "\n"
    if fmt == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["method", "left", "right", "level", "or_hat", "n_a", "n_b", "x_a", "x_b"])
        writer.writerow([method, _csv_number(interval.left), _csv_number(interval.right), level,
                         _csv_number(or_hat), counts.n_a, counts.n_b, counts.x_a, counts.x_b])
        return buf.getvalue()
    return (
        f"Confidence interval for odds ratio ({_fmt(interval.left, 5)}, {_fmt(interval.right, 5)}) "
        f"at the confidence level {level}\n"
        f"Sample odds ratio equals {_fmt(or_hat, 4)}; n1={counts.n_a}, n2={counts.n_b}\n"
    )


def _cmd_exact(args):
    counts = _counts(args)
    interval = exact_ci(counts, args.level)
    return _render_interval("exact", counts, args.level, interval, float(extended_or(counts)), args.format)


def _cmd_standard(args):
    counts = _counts(args)
    interval = standard_ci(counts, args.level)
    or_hat = counts.x_a * counts.f_b / (counts.f_a * counts.x_b)
    return _render_interval("standard", counts, args.level, interval, or_hat, args.format)


def _cmd_dist(args):
    if args.r is None:
        raise DomainError("--r is required")
    if args.na is None or args.nb is None:
        raise DomainError("--na and --nb are required")
    dist = outcome_distribution(args.r, args.na, args.nb)
    rows = [(c.x_a, c.x_b, float(v), p) for c, v, p in dist.entries]
    if args.format == "json":
        return json.dumps({
            "r": dist.r, "n_a": dist.n_a, "n_b": dist.n_b,
            "outcomes": [{"x_a": a, "x_b": b, "or_hat": _json_number(v), "prob": p} for a, b, v, p in rows],
        }) + "\n"
    if args.format == "csv":
        lines = ["x_a,x_b,or_hat,prob"]
        lines.extend(f"{a},{b},{_csv_number(v)},{p!r}" for a, b, v, p in rows)
        return "\n".join(lines) + "\n"
    lines = [f"Distribution of the sample odds ratio at r={dist.r}; n1={dist.n_a}, n2={dist.n_b}",
             f"{'x_a':>5} {'x_b':>5} {'or_hat':>12} {'prob':>14}"]
    lines.extend(f"{a:>5} {b:>5} {_fmt(v, 4):>12} {p:>14.6e}" for a, b, v, p in rows)
    return "\n".join(lines) + "\n"


def _cmd_coverage(args):
    if args.na is None or args.nb is None:
        raise DomainError("--na and --nb are required")
    curve = coverage_curve(EXACT if args.method == "exact" else STANDARD, args.na, args.nb,
                           args.level, args.rmin, args.rmax, args.points,
                           spacing=args.spacing, workers=args.workers)
    if args.format == "json":
        return json.dumps({
            "method": args.method, "n_a": curve.n_a, "n_b": curve.n_b, "level": curve.level,
            "points": [{"r": r, "coverage": c} for r, c in curve.points],
        }) + "\n"
    if args.format == "csv":
        return curve.to_csv()
    lines = [f"Coverage probability of the {args.method} interval; n1={curve.n_a}, n2={curve.n_b}, "
             f"level {curve.level}",
             f"{'r':>10} {'coverage':>10}"]
    lines.extend(f"{r:>10.4f} {c:>10.6f}" for r, c in curve.points)
    return "\n".join(lines) + "\n"


def _cmd_minsize(args):
    n = minimal_sample_size(args.level)
    if args.format == "json":
        return json.dumps({"level": args.level, "minimal_n_a": n}) + "\n"
    if args.format == "csv":
        return f"level,minimal_n_a\n{args.level},{n}\n"
    return f"{n}\n"


COMMANDS = {
    "exact": _cmd_exact,
    "standard": _cmd_standard,
    "dist": _cmd_dist,
    "coverage": _cmd_coverage,
    "minsize": _cmd_minsize,
}


def build_parser():
    parser = _Parser(prog="orci", description="Confidence intervals for the odds ratio of two binomial samples.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    common = _Parser(add_help=False)
    common.add_argument("--level", type=float, default=0.95, help="confidence level (default 0.95)")
    common.add_argument("--format", choices=("text", "json", "csv"), default="text")
    common.add_argument("--out", metavar="PATH", help="write output to PATH instead of stdout")

    sizes = _Parser(add_help=False)
    sizes.add_argument("--na", type=int, help="size of group A")
    sizes.add_argument("--nb", type=int, help="size of group B")

    table = _Parser(add_help=False)
    table.add_argument("--xa", type=int, help="successes in group A")
    table.add_argument("--xb", type=int, help="successes in group B")

    sub.add_parser("exact", parents=[common, sizes, table], help="exact interval")
    sub.add_parser("standard", parents=[common, sizes, table], help="asymptotic (Wald) interval")
    p = sub.add_parser("dist", parents=[common, sizes], help="distribution of the sample odds ratio at r")
    p.add_argument("--r", type=float, help="true odds ratio")
    p = sub.add_parser("coverage", parents=[common, sizes], help="coverage-probability curve")
    p.add_argument("--method", choices=("exact", "standard"), default="exact")
    p.add_argument("--rmin", type=float, default=0.05)
    p.add_argument("--rmax", type=float, default=2.0)
    p.add_argument("--points", type=int, default=40)
    p.add_argument("--spacing", choices=("linear", "log"), default="linear")
    p.add_argument("--workers", type=int, default=None, help="threads for grid evaluation")
    sub.add_parser("minsize", parents=[common], help="minimal n_a for a two-sided exact interval")
    return parser


def run(argv=None, stdout=None):
    """Parse ``argv``, run the command and return the exit status."""
    stdout = stdout or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code not in (0, None) else EXIT_OK
    try:
        output = COMMANDS[args.command](args)
    except UndefinedIntervalError as exc:
        print(f"orci: {exc}", file=sys.stderr)
        return EXIT_UNDEFINED
    except DomainError as exc:
        print(f"orci: invalid input: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    except NumericError as exc:
        print(f"orci: numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    if args.out:
        with open(args.out, "w", newline="") as fh:
            fh.write(output)
    else:
        with contextlib.suppress(BrokenPipeError):
            stdout.write(output)
    return EXIT_OK


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
