"""besselsum command line: ``eval``, ``table`` and ``verify``.

Every tolerance is a flag whose default is the library default; no
environment variable is consulted for numerical settings.
"""
import argparse
import csv
import json
import math
import os
import sys
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from .closed_form import MU_ZERO_MESSAGE, ClosedFormConfig, p_closed
from .meijer_g import MeijerSpec, p_meijer
from .quadrature import QuadSpec
from .summation import TruncationPolicy, default_policy, p_series
from .verify import SUITES, run_suite

CSV_COLUMNS = ("mu", "x", "method", "value", "err_bound", "work_units", "elapsed_us")
REPORT_COLUMNS = ("check_id", "params", "observed", "expected", "tolerance", "passed", "elapsed", "claim")
METHODS = ("series", "closed", "meijer")

_QUAD = QuadSpec()
_TRUNC = TruncationPolicy()
_MEIJER = MeijerSpec()


class UsageError(Exception):
    """Bad flag combination; maps to exit status 2."""


@dataclass(frozen=True)
class GridSpec:
    mu_list: tuple
    x_values: tuple
    method: str

    def __post_init__(self):
        if not self.mu_list or not self.x_values:
            raise UsageError("the grid is empty")
        if any(not (x > 0.0 and math.isfinite(x)) for x in self.x_values):
            raise UsageError("all x values must be finite and > 0")
        if self.method != "series" and 0 in self.mu_list:
            raise UsageError(f"mu = 0 needs --method series: {MU_ZERO_MESSAGE}")

    @property
    def methods(self):
        return METHODS if self.method == "all" else (self.method,)

    def points(self):
        return [(mu, x, m) for mu in self.mu_list for x in self.x_values for m in self.methods]


# --------------------------------------------------------------------------
# flag parsing helpers

def _parse_mu(text):
    out = []
    for part in text.split(","):
        part = part.strip()
        if not part:
            continue
        if ":" in part[1:]:
            cut = part.index(":", 1)
            lo, hi = int(part[:cut]), int(part[cut + 1:])
            step = 1 if hi >= lo else -1
            out.extend(range(lo, hi + step, step))
        else:
            out.append(int(part))
    if not out:
        raise argparse.ArgumentTypeError("empty mu list")
    return tuple(out)


def _parse_floats(text):
    try:
        vals = tuple(float(v) for v in text.split(",") if v.strip())
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None
    if not vals:
        raise argparse.ArgumentTypeError("empty x list")
    return vals


def _parse_range(text):
    parts = text.split(":")
    if len(parts) != 3:
        raise argparse.ArgumentTypeError("expected start:stop:count")
    try:
        start, stop, count = float(parts[0]), float(parts[1]), int(parts[2])
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None
    if count < 1:
        raise argparse.ArgumentTypeError("count must be >= 1")
    return start, stop, count


def _x_values(args, default=None):
    chosen = [v for v in (args.x, args.x_geom, args.x_lin) if v is not None]
    if len(chosen) > 1:
        raise UsageError("give only one of --x, --x-geom, --x-lin")
    if args.x is not None:
        return args.x
    if args.x_geom is not None:
        start, stop, count = args.x_geom
        if start <= 0 or stop <= 0:
            raise UsageError("--x-geom needs positive endpoints")
        return tuple(float(v) for v in np.geomspace(start, stop, count))
    if args.x_lin is not None:
        start, stop, count = args.x_lin
        return tuple(float(v) for v in np.linspace(start, stop, count))
    if default is None:
        raise UsageError("one of --x, --x-geom, --x-lin is required")
    return default


# --------------------------------------------------------------------------
# evaluation

def _evaluator(args):
    quad = QuadSpec(rel_tol=args.rel_tol, abs_tol=args.abs_tol,
                    split_point_factor=args.split_factor, max_panels=args.max_panels)
    cfg = ClosedFormConfig(quad=quad)
    contour = MeijerSpec(contour_height=args.contour_height, nodes=args.nodes, ray_angle=args.ray_angle)
    trunc = dict(abs_floor=args.abs_floor, streak=args.streak, n_max=args.n_max)

    def run(point):
        mu, x, method = point
        t0 = time.perf_counter()
        try:
            if method == "series":
                res = p_series(mu, x, default_policy(mu, x, **trunc))
            elif method == "closed":
                res = p_closed(mu, x, cfg)
            else:
                res = p_meijer(mu, x, contour)
            row = (mu, x, method, res.value, res.tail_bound, res.terms_used)
            err = None
        except Exception as exc:  # reported per row
            row = (mu, x, method, math.nan, math.nan, 0)
            err = f"mu={mu} x={x!r} method={method}: {type(exc).__name__}: {exc}"
        return row + (int(round(1e6 * (time.perf_counter() - t0))),), err

    return run


def _fmt(v):
    if isinstance(v, float):
        return "%.17g" % v
    return str(v)


def _json_value(v):
    if isinstance(v, float) and not math.isfinite(v):
        return None
    return v


def _emit(rows, columns, fmt, stream):
    if fmt == "csv":
        writer = csv.writer(stream, lineterminator="\n")
        writer.writerow(columns)
        for row in rows:
            writer.writerow([_fmt(v) for v in row])
    else:
        for row in rows:
            stream.write(json.dumps({k: _json_value(v) for k, v in zip(columns, row)}) + "\n")


def _open_out(path):
    if path is None or path == "-":
        return sys.stdout, False
    return open(path, "w", encoding="utf-8", newline=""), True


def _run_grid(args, default_x):
    grid = GridSpec(args.mu, _x_values(args, default_x), args.method)
    points = grid.points()
    run = _evaluator(args)
    if args.threads <= 1:
        results = [run(p) for p in points]
    else:
        with ThreadPoolExecutor(max_workers=args.threads) as pool:
            results = list(pool.map(run, points))
    stream, close = _open_out(args.out)
    try:
        _emit([r for r, _ in results], CSV_COLUMNS, args.format, stream)
    finally:
        if close:
            stream.close()
    errors = [e for _, e in results if e]
    for e in errors:
        print(f"error: {e}", file=sys.stderr)
    return 1 if errors else 0


def cmd_eval(args):
    return _run_grid(args, (1.0,))


def cmd_table(args):
    return _run_grid(args, None)


def cmd_verify(args):
    reports = run_suite(args.suite, threads=args.threads)
    as_text = args.format == "csv"
    rows = [(r.check_id, json.dumps(r.params, sort_keys=True) if as_text else r.params, r.observed, r.expected,
             r.tolerance, r.passed, r.elapsed, r.claim) for r in reports]
    stream, close = _open_out(args.out)
    try:
        _emit(rows, REPORT_COLUMNS, args.format, stream)
    finally:
        if close:
            stream.close()
    failed = [r for r in reports if not r.passed]
    for r in failed:
        detail = r.error or f"|{r.observed!r} - {r.expected!r}| > {r.tolerance:g}"
        print(f"FAILED {r.check_id} {r.params}: {detail}", file=sys.stderr)
    print(f"{len(reports) - len(failed)}/{len(reports)} checks passed", file=sys.stderr)
    return 1 if failed else 0


# --------------------------------------------------------------------------
# argument parser

def _common(p):
    p.add_argument("--format", choices=("csv", "json"), default="csv",
                   help="csv with a header row, or one JSON object per line (default: csv)")
    p.add_argument("--out", default=None, help="output file (default: stdout)")
    p.add_argument("--threads", type=int, default=os.cpu_count() or 1,
                   help="worker threads; output order does not depend on it (default: CPU count)")


def _grid_flags(p, mu_default):
    p.add_argument("--mu", type=_parse_mu, default=mu_default,
                   help="orders as a list '1,2,-3' or an inclusive range '1:4'")
    p.add_argument("--x", type=_parse_floats, default=None, help="comma-separated arguments")
    p.add_argument("--x-geom", type=_parse_range, default=None, metavar="START:STOP:COUNT",
                   help="geometric range of arguments")
    p.add_argument("--x-lin", type=_parse_range, default=None, metavar="START:STOP:COUNT",
                   help="linear range of arguments")
    p.add_argument("--method", choices=METHODS + ("all",), default="series",
                   help="evaluation route (default: series)")
    t = p.add_argument_group("tolerances")
    t.add_argument("--abs-floor", type=float, default=_TRUNC.abs_floor,
                   help=f"series: term floor relative to max(1, |partial sum|) (default: {_TRUNC.abs_floor:g})")
    t.add_argument("--streak", type=int, default=_TRUNC.streak,
                   help=f"series: consecutive small terms before stopping (default: {_TRUNC.streak})")
    t.add_argument("--n-max", type=int, default=_TRUNC.n_max,
                   help=f"series: hard cap on the number of terms (default: {_TRUNC.n_max})")
    t.add_argument("--rel-tol", type=float, default=_QUAD.rel_tol,
                   help=f"closed form: relative quadrature tolerance (default: {_QUAD.rel_tol:g})")
    t.add_argument("--abs-tol", type=float, default=_QUAD.abs_tol,
                   help=f"closed form: absolute quadrature tolerance (default: {_QUAD.abs_tol:g})")
    t.add_argument("--split-factor", type=float, default=_QUAD.split_point_factor,
                   help="closed form: tail handover T = factor * max(x, 30) "
                        f"(default: {_QUAD.split_point_factor:g})")
    t.add_argument("--max-panels", type=int, default=_QUAD.max_panels,
                   help=f"closed form: panel budget (default: {_QUAD.max_panels})")
    t.add_argument("--contour-height", type=float, default=_MEIJER.contour_height,
                   help=f"meijer: largest |Im s| on the contour (default: {_MEIJER.contour_height:g})")
    t.add_argument("--nodes", type=int, default=_MEIJER.nodes,
                   help=f"meijer: quadrature nodes per ray (default: {_MEIJER.nodes})")
    t.add_argument("--ray-angle", type=float, default=_MEIJER.ray_angle,
                   help=f"meijer: angle of the contour rays in radians (default: {_MEIJER.ray_angle:g})")


def build_parser():
    parser = argparse.ArgumentParser(
        prog="besselsum",
        description="Evaluate P_mu(x) by series, closed form or Meijer-G route, and run the checks.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("eval", help="evaluate P_mu(x) at a few points (x defaults to 1.0)")
    _grid_flags(p, (1,))
    _common(p)
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("table", help="evaluate P_mu(x) over a full grid")
    _grid_flags(p, (1,))
    _common(p)
    p.set_defaults(func=cmd_table)

    p = sub.add_parser("verify", help="run a verification suite")
    p.add_argument("--suite", choices=SUITES + ("all",), default="all")
    _common(p)
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"besselsum {args.command}: error: {exc}", file=sys.stderr)
        return 2
    except ValueError as exc:
        # invalid tolerance values rejected by the config dataclasses
        print(f"besselsum {args.command}: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
