"""Command-line front end.

    quantres report opinion
    quantres rq system.json --lost 2
    quantres reach spacecraft --lost 4 --target 667 0.067 2 2 2 2
    quantres sweep opinion --lost 0 --plane 0 1 --samples 720 --out sweep.csv
    quantres scenario opinion > opinion.json
    quantres verify-geometry --seed 1 --cases 20

Column indices given on the command line and stored in JSON are 0-based;
tables print them 1-based.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from pathlib import Path

import numpy as np

from . import geometry, reach, resilience
from .core import ResilienceError, Tolerances, ValidationError, load_system_and_lost, split
from .scenarios import SCENARIOS


def _positive(kind):
    def parse(text):
        try:
            v = kind(text)
        except ValueError:
            raise argparse.ArgumentTypeError(f"invalid value {text!r}") from None
        if not v > 0:
            raise argparse.ArgumentTypeError(f"must be positive, got {text}")
        return v

    return parse


def _num(x: float, digits: int = 4) -> str:
    if math.isinf(x):
        return "inf" if x > 0 else "-inf"
    return f"{x:.{digits}g}"


class InputError(ResilienceError):
    pass


def _load(source: str):
    if source == "-":
        text = sys.stdin.read()
    elif not Path(source).exists() and source in SCENARIOS:
        return SCENARIOS[source](), None
    else:
        try:
            text = Path(source).read_text()
        except OSError as exc:
            raise InputError(f"cannot read {source}: {exc.strerror}") from None
    return load_system_and_lost(text)


def _tol(args) -> Tolerances:
    return Tolerances(feas_tol=args.feas_tol, rank_tol=args.rank_tol, vertex_cap=args.vertex_cap)


def _split(args):
    sys_spec, lost = _load(args.source)
    lost = args.lost if args.lost is not None else lost
    if lost is None:
        raise ValidationError("lost", "no lost columns given (--lost or \"lost\" in the spec)")
    return split(sys_spec, lost)


def cmd_report(args, out):
    sys_spec, _ = _load(args.source)
    report = resilience.full_report(sys_spec, _tol(args))
    if args.format == "json":
        out.write(json.dumps(report.to_dict(), indent=2) + "\n")
    else:
        out.write(resilience.format_table(report) + "\n")


def cmd_rq(args, out):
    ms = _split(args)
    tol = _tol(args)
    verdict = resilience.resilience_verdict(ms, tol)
    cols = " ".join(str(j + 1) for j in ms.lost)
    out.write(f"lost column(s): {cols}\nverdict: {verdict.value}\n")
    if ms.p == 1:
        out.write(f"lambda* = {_num(resilience.lambda_star(ms, tol))}\n")
        out.write(f"r_max = {_num(resilience.r_max(ms, tol))}\n")
        out.write(f"r_q = {_num(resilience.quantitative_resilience(ms, tol))}\n")
    else:
        out.write(f"note: {resilience.MULTI_ACTUATOR_NOTE}\n")


def cmd_reach(args, out):
    ms = _split(args)
    tol = _tol(args)
    d = np.array(args.target, dtype=float)
    t_n = reach.nominal_reach_time(ms.system, d, tol)
    t_m, w = reach.malfunctioning_reach_time(ms, d, tol)
    ratio = reach.time_ratio(ms, d, tol)
    out.write(f"T_N* = {_num(t_n, 12)}\nT_M* = {_num(t_m, 12)}\nt(d) = {_num(ratio, 12)}\n")
    out.write("worst vertex = [" + ", ".join(_num(v) for v in w) + "]\n")


def cmd_sweep(args, out):
    ms = _split(args)
    n = ms.system.n
    i, j = args.plane
    if not (0 <= i < n and 0 <= j < n) or i == j:
        raise ValidationError("plane", f"need two distinct axes in [0, {n})")
    rows = reach.sweep_ratio(ms, np.eye(n)[i], np.eye(n)[j], args.samples, _tol(args))
    if args.out:
        with open(args.out, "w", newline="") as fh:
            reach.write_sweep_csv(rows, fh)
    else:
        reach.write_sweep_csv(rows, out)


def cmd_scenario(args, out):
    out.write(json.dumps(SCENARIOS[args.name]().to_dict()) + "\n")


def verify_geometry(seed: int, cases: int, n_dirs: int = 720, grid: int = 16) -> dict[str, int]:
    """Run the three theorem checks on ``cases`` random 2-D instances; return pass counts."""
    rng = np.random.default_rng(seed)
    passed = {"vertex_minimum": 0, "collinear_maximum": 0, "segment_maximum": 0}
    for _ in range(cases):
        y = geometry.random_zonotope(rng)
        x_inner = geometry.random_inner_zonotope(rng, y)
        theta = rng.uniform(0, 2 * np.pi)
        d = np.array([np.cos(theta), np.sin(theta)])
        passed["vertex_minimum"] += geometry.check_vertex_minimum(x_inner, y, d, grid)
        x = geometry.random_interior_point(rng, y)
        passed["collinear_maximum"] += geometry.check_collinear_maximum(y, x, n_dirs, rng).passed
        seg = geometry.Segment(geometry.random_interior_point(rng, y))
        passed["segment_maximum"] += geometry.check_segment_maximum(seg, y, n_dirs, rng).passed
    return passed


def cmd_verify_geometry(args, out):
    counts = verify_geometry(args.seed, args.cases, args.dirs, args.grid)
    for name, k in counts.items():
        out.write(f"{name}: {k}/{args.cases} passed\n")
    return 0 if all(k == args.cases for k in counts.values()) else 1


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--feas-tol", type=_positive(float), default=Tolerances.feas_tol)
    common.add_argument("--rank-tol", type=_positive(float), default=Tolerances.rank_tol)
    common.add_argument("--vertex-cap", type=_positive(int), default=Tolerances.vertex_cap)

    parser = argparse.ArgumentParser(prog="quantres", description="Reach times and quantitative resilience "
                                     "of driftless linear systems under loss of actuator authority.")
    sub = parser.add_subparsers(dest="command", required=True)
    src_help = "system JSON path, '-' for stdin, or a scenario name"

    p = sub.add_parser("report", parents=[common], help="resilience of each single lost column")
    p.add_argument("source", help=src_help)
    p.add_argument("--format", choices=["table", "json"], default="table")
    p.set_defaults(func=cmd_report)

    p = sub.add_parser("rq", parents=[common], help="quantitative resilience for one malfunction")
    p.add_argument("source", help=src_help)
    p.add_argument("--lost", type=int, nargs="+")
    p.set_defaults(func=cmd_rq)

    p = sub.add_parser("reach", parents=[common], help="reach times toward a target")
    p.add_argument("source", help=src_help)
    p.add_argument("--lost", type=int, nargs="+")
    p.add_argument("--target", type=float, nargs="+", required=True)
    p.set_defaults(func=cmd_reach)

    p = sub.add_parser("sweep", parents=[common], help="time ratio over directions in a coordinate plane")
    p.add_argument("source", help=src_help)
    p.add_argument("--lost", type=int, nargs="+")
    p.add_argument("--plane", type=int, nargs=2, default=[0, 1], metavar=("I", "J"))
    p.add_argument("--samples", type=int, default=720)
    p.add_argument("--out")
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("scenario", help="emit a built-in system as JSON")
    p.add_argument("name", choices=sorted(SCENARIOS))
    p.set_defaults(func=cmd_scenario)

    p = sub.add_parser("verify-geometry", help="sampled checks of the polytope theorems")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--cases", type=_positive(int), default=20)
    p.add_argument("--dirs", type=_positive(int), default=720)
    p.add_argument("--grid", type=int, default=16)
    p.set_defaults(func=cmd_verify_geometry)
    return parser


def run(argv=None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        code = args.func(args, out)
    except ResilienceError as exc:
        err.write(f"{type(exc).__name__}: {exc}\n")
        return 1
    return code or 0


def main():
    sys.exit(run())
