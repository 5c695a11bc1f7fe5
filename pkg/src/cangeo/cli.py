"""Command-line front end.

    cangeo solve --surface can:h=1.4674 --a rim1:angle=0 --b rim2:angle=3.14159 --json
    cangeo critical side-diaxial --c 0
    cangeo oracle --surface cup:s=2 --a side:angle=0,slant=1.5 --b rim:angle=3
    cangeo flatmodel --surface can:h=1 --svg can.svg
    cangeo roulette --R 2 --t 1.0 --t 2.0

Exit status is 0 on success, 2 when an argument or a point description does not parse or
names a point off the surface, and 3 when a computation fails.
"""
from __future__ import annotations

import argparse
import json
import math
import sys
from pathlib import Path

import numpy as np

from . import critical
from .errors import CangeoError, OutOfRange, ParseError
from .flatmodel import flat_model_svg, paths_svg, unroll
from .geometry import format_point, parse_point, parse_surface
from .oracle import build_mesh, mesh_distance
from .roulette import (RouletteTrace, curvature, max_radius_of_curvature,
                       normal_line_defect, trace_point)
from .solver import SolverConfig, solve

EXIT_OK, EXIT_SPEC, EXIT_SOLVE = 0, 2, 3


def _plain(obj):
    """Convert numpy scalars, tuples and non-finite floats for JSON."""
    if isinstance(obj, dict):
        return {str(k): _plain(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple, np.ndarray)):
        return [_plain(v) for v in obj]
    if isinstance(obj, (bool, np.bool_)):
        return bool(obj)
    if isinstance(obj, (int, np.integer)):
        return int(obj)
    if isinstance(obj, (float, np.floating)):
        v = float(obj)
        return v if math.isfinite(v) else None
    if hasattr(obj, "value"):       # enums
        return obj.value
    return obj


def dumps(obj) -> str:
    """Deterministic JSON: sorted keys, shortest round-trip floats."""
    return json.dumps(_plain(obj), sort_keys=True, indent=2, allow_nan=False)


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise ParseError(message)


def _common(p: argparse.ArgumentParser, points: bool = True):
    p.add_argument("--surface", required=True, help="can:h=<f> or cup:s=<f>")
    if points:
        p.add_argument("--a", required=True, help="point spec for A")
        p.add_argument("--b", required=True, help="point spec for B")
        p.add_argument("--degrees", action="store_true", help="angles in degrees")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="cangeo", description="Minimal paths on a soup can or a conical cup.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("solve", help="all minimal paths between two points")
    _common(p)
    p.add_argument("--grid", type=int, default=SolverConfig.grid_n)
    p.add_argument("--tol", type=float, default=SolverConfig.tol)
    p.add_argument("--tie-tol", type=float, default=SolverConfig.tie_tol)
    p.add_argument("--json", action="store_true", help="print the full JSON report")
    p.add_argument("--svg", type=Path, help="write one flat model per path")

    p = sub.add_parser("critical", help="critical configurations (JSON output)")
    csub = p.add_subparsers(dest="which", required=True, parser_class=_Parser)
    q = csub.add_parser("side-diaxial")
    q.add_argument("--c", type=float, required=True, help="depth of A below the lid")
    q = csub.add_parser("cup-three-path")
    q.add_argument("--s", type=float, required=True, help="slant height")
    q.add_argument("--a", type=float, required=True, help="distance of A from the cone point")
    q = csub.add_parser("rim-chord")
    q.add_argument("--bp", type=float, required=True)

    p = sub.add_parser("oracle", help="graph distance on a discretized surface")
    _common(p)
    p.add_argument("--mesh-resolution", type=int, default=512)
    p.add_argument("--obj", type=Path, help="write the graph as an OBJ file")
    p.add_argument("--compare", action="store_true", help="also run solve and report the ratio")
    p.add_argument("--json", action="store_true")

    p = sub.add_parser("flatmodel", help="draw an unrolled surface")
    _common(p, points=False)
    p.add_argument("--tangency", type=float, action="append", default=[],
                   help="rim angle where a disk touches the side (lid rim first)")
    p.add_argument("--svg", type=Path, required=True)
    p.add_argument("--degrees", action="store_true")

    p = sub.add_parser("roulette", help="cycloid or epicycloid traced by a rim point")
    p.add_argument("--R", type=float, help="fixed circle radius (omit for a cycloid)")
    p.add_argument("--t", type=float, action="append", default=[], help="roll parameter")
    p.add_argument("--json", action="store_true")
    return parser


def _points(args):
    surface = parse_surface(args.surface)
    A = parse_point(args.a, degrees=args.degrees)
    B = parse_point(args.b, degrees=args.degrees)
    return surface, A, B


def _cmd_solve(args, out) -> int:
    surface, A, B = _points(args)
    cfg = SolverConfig(grid_n=args.grid, tol=args.tol, tie_tol=args.tie_tol)
    report = solve(surface, A, B, cfg)
    if args.svg:
        args.svg.write_text(paths_svg(report.paths))
    if args.json:
        print(dumps(report.to_dict()), file=out)
        return EXIT_OK
    print(f"surface     {surface.spec()}", file=out)
    print(f"A           {format_point(report.A, surface)}", file=out)
    print(f"B           {format_point(report.B, surface)}", file=out)
    print(f"min length  {report.min_length!r}", file=out)
    print(f"paths       {report.multiplicity}", file=out)
    for fam, path, d in zip(report.path_families, report.paths, report.defects):
        print(f"  {fam:40s} length={path.total_length!r} defect={d:.2e}", file=out)
    for msg in report.diagnostics:
        print(f"note: {msg}", file=out)
    return EXIT_OK


def _cmd_critical(args, out) -> int:
    if args.which == "side-diaxial":
        res = {"h": critical.critical_height_side_diaxial(args.c)}
    elif args.which == "cup-three-path":
        b = critical.cup_three_path_partner(args.s, args.a)
        res = {"b": b, "length": 2 * args.s - args.a - b + 2,
               "r_max": critical.r_max(args.s)}
    else:
        root = critical.solve_rim_chord_theta(args.bp)
        res = {"theta": root.theta, "h": root.h, "residual": root.residual,
               "beyond_pi": root.beyond_pi}
    print(dumps(res), file=out)
    return EXIT_OK


def _cmd_oracle(args, out) -> int:
    surface, A, B = _points(args)
    mesh = build_mesh(surface, args.mesh_resolution)
    if args.obj:
        args.obj.write_text(mesh.to_obj())
    res = {"mesh_distance": mesh_distance(mesh, A, B), "resolution": mesh.resolution,
           "n_vertices": mesh.n_vertices, "n_edges": mesh.n_edges}
    if args.compare:
        exact = solve(surface, A, B).min_length
        res.update(min_length=exact, ratio=res["mesh_distance"] / exact)
    if args.json:
        print(dumps(res), file=out)
    else:
        for k in sorted(res):
            print(f"{k:14s}{res[k]!r}", file=out)
    return EXIT_OK


def _cmd_flatmodel(args, out) -> int:
    surface = parse_surface(args.surface)
    tang = [math.radians(a) if args.degrees else a for a in args.tangency]
    if len(tang) > len(surface.rims):
        raise ParseError(f"{surface.spec()} has only {len(surface.rims)} rim(s)")
    model = unroll(surface, tang)
    args.svg.write_text(flat_model_svg(model))
    print(f"wrote {args.svg}", file=out)
    return EXIT_OK


def _cmd_roulette(args, out) -> int:
    trace = RouletteTrace.cycloid() if args.R is None else RouletteTrace.epicycloid(args.R)
    res: dict = {"kind": "cycloid" if args.R is None else "epicycloid", "R": args.R}
    if args.R is not None:
        res["r_max"] = max_radius_of_curvature(args.R)
    samples = []
    for t in args.t:
        samples.append({"t": t, "point": trace_point(trace, t),
                        "curvature": float(curvature(trace, t)),
                        "normal_line_defect": normal_line_defect(trace, t)})
    res["samples"] = samples
    if args.json:
        print(dumps(res), file=out)
    else:
        if "r_max" in res:
            print(f"r_max {res['r_max']!r}", file=out)
        for smp in samples:
            print(f"t={smp['t']!r} curvature={smp['curvature']!r} "
                  f"normal_line_defect={smp['normal_line_defect']:.2e}", file=out)
    return EXIT_OK


_COMMANDS = {"solve": _cmd_solve, "critical": _cmd_critical, "oracle": _cmd_oracle,
             "flatmodel": _cmd_flatmodel, "roulette": _cmd_roulette}


def run(argv=None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    try:
        args = build_parser().parse_args(argv)
        return _COMMANDS[args.command](args, out)
    except (ParseError, OutOfRange) as exc:
        print(f"cangeo: error: {exc}", file=err)
        return EXIT_SPEC
    except (CangeoError, ValueError, ArithmeticError) as exc:
        print(f"cangeo: {type(exc).__name__}: {exc}", file=err)
        return EXIT_SOLVE


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
