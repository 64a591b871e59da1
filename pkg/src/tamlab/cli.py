"""Command line driver: run, pump-scan, fit, directed.

Every command reads files named by flags, prints exactly one JSON report to
stdout, and is byte-deterministic for fixed inputs: reports have sorted
keys, a version tag and no timestamps.  Exit codes partition outcomes:

    0   success (for pump-scan: no violations; for directed: directed)
    2   engine or input errors propagated from run / pump-scan
    3   pump-scan found a violation (a long path with no pumpable segment)
    4   fit search space exceeded its cap (partial report emitted)
    5   directed: conflict witness found
    6   directed: inconclusive within budget
    64  usage errors, and malformed inputs for fit / directed
"""

from __future__ import annotations

import argparse
import hashlib
import json
import sys
from pathlib import Path
from typing import Optional, Sequence

from . import engine, paths, periodic, pointset, render, tasfile
from .errors import (
    ParseError,
    SearchSpaceExceeded,
    TamlabError,
    WrongTemperature,
)
from .model import Window
from .paths import TilePath

REPORT_VERSION = "tamlab-report/1"

EXIT_OK = 0
EXIT_ERROR = 2
EXIT_VIOLATION = 3
EXIT_SEARCH_SPACE = 4
EXIT_CONFLICT = 5
EXIT_INCONCLUSIVE = 6
EXIT_USAGE = 64


class _UsageExit(Exception):
    def __init__(self, message: str):
        self.message = message


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):
        raise _UsageExit(message)


def _sha256(path: Path) -> str:
    return "sha256:" + hashlib.sha256(path.read_bytes()).hexdigest()


def _window(values: Sequence[int]) -> Window:
    x0, y0, x1, y1 = values
    if x0 > x1 or y0 > y1:
        raise _UsageExit(f"empty window {values}")
    return Window(x_min=x0, y_min=y0, x_max=x1, y_max=y1)


def _window_json(w: Window) -> list[int]:
    return [w.x_min, w.y_min, w.x_max, w.y_max]


def _path_json(path: TilePath) -> list[list]:
    return [[pl.pos[0], pl.pos[1], pl.tile.name] for pl in path.steps]


def _trace_json(trace) -> list[list]:
    return [[pos[0], pos[1], name] for pos, name in trace]


def _emit(report: dict) -> None:
    sys.stdout.write(json.dumps(report, sort_keys=True, indent=2) + "\n")


def _report(command: str, inputs: dict, parameters: dict, outcome: dict) -> dict:
    return {
        "command": command,
        "version": REPORT_VERSION,
        "inputs": inputs,
        "parameters": parameters,
        "outcome": outcome,
    }


def _load_system(tas_path: str):
    path = Path(tas_path)
    doc = tasfile.parse_tas(path.read_text())
    return tasfile.to_system(doc), _sha256(path)


def cmd_run(args) -> int:
    system, tas_hash = _load_system(args.tas)
    window = _window(args.window)
    assembly, exhausted = engine.run_to_quiescence(system, window, step_budget=args.budget)
    black = engine.black_set(assembly)
    out_dir = Path(args.out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    files = {}
    if args.out == "ascii":
        render_path = out_dir / "assembly.txt"
        render_path.write_text(render.render_ascii(assembly, window, glyphs=args.glyphs))
        files["render"] = render_path.name
    elif args.out == "svg":
        render_path = out_dir / "assembly.svg"
        render_path.write_text(
            render.render_svg(assembly, window, system.seed.positions())
        )
        files["render"] = render_path.name
    black_path = out_dir / "black.points"
    black_path.write_text(pointset.serialize_points(black))
    files["black"] = black_path.name
    _emit(
        _report(
            "run",
            {"tas": tas_hash},
            {
                "window": _window_json(window),
                "out": args.out,
                "budget": args.budget,
                "glyphs": args.glyphs,
            },
            {
                "files": files,
                "placements": len(assembly),
                "black_count": len(black),
                "exhausted": exhausted,
            },
        )
    )
    return EXIT_OK


def cmd_pump_scan(args) -> int:
    system, tas_hash = _load_system(args.tas)
    report = paths.pumpability_scan(system, args.max_len)
    outcome = {
        "max_len_scanned": report.max_len_scanned,
        "paths_scanned": report.paths_scanned,
        "c_estimate": report.c_estimate,
        "tile_type_count": report.tile_type_count,
        "pigeonhole_reached": report.pigeonhole_reached,
        "longest_path": report.longest_path,
        "violations": [_path_json(p) for p in report.violations],
        "blocked_examples": [
            {
                "path": _path_json(p),
                "i": i,
                "j": j,
                "copy_index": blocked.copy_index,
                "collision_pos": list(blocked.collision_pos),
            }
            for p, i, j, blocked in report.blocked_examples
        ],
        "property": "seed-rooted simple bonded paths at temperature 1, "
        "scanned up to the step bound",
    }
    _emit(_report("pump-scan", {"tas": tas_hash}, {"max_len": args.max_len}, outcome))
    return EXIT_VIOLATION if report.violations else EXIT_OK


def cmd_fit(args) -> int:
    points_path = Path(args.points)
    try:
        observed = pointset.parse_points(points_path.read_text())
    except ParseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    window = _window(args.window)
    sample = {p for p in observed if window.contains(p)}
    inputs = {"points": _sha256(points_path)}
    parameters = {
        "window": _window_json(window),
        "max_parts": args.max_parts,
        "max_coord": args.max_coord,
        "predict_window": list(args.predict_window) if args.predict_window else None,
    }
    try:
        union = periodic.fit_union(
            sample,
            window,
            args.max_parts,
            args.max_coord,
            candidate_cap=args.candidate_cap,
            work_cap=args.work_cap,
        )
    except SearchSpaceExceeded as exc:
        _emit(
            _report(
                "fit",
                inputs,
                parameters,
                {"status": "search_space_exceeded", "detail": str(exc)},
            )
        )
        return EXIT_SEARCH_SPACE
    outcome: dict = {"sample_size": len(sample)}
    if union is None:
        outcome["status"] = "nofit"
    else:
        outcome["status"] = "fit"
        outcome["parts"] = [
            [p.b[0], p.b[1], p.u[0], p.u[1], p.v[0], p.v[1]] for p in union.parts
        ]
        if args.predict_window:
            predict = _window(args.predict_window)
            equal = periodic.predictive_check(union, observed, window, predict)
            predicted = periodic.window_points(union, predict)
            expected = {p for p in observed if predict.contains(p)}
            diff = sorted(predicted ^ expected)
            outcome["predictive_check"] = {
                "window": _window_json(predict),
                "equal": equal,
                "first_mismatch": list(diff[0]) if diff else None,
            }
    _emit(_report("fit", inputs, parameters, outcome))
    return EXIT_OK


def cmd_directed(args) -> int:
    try:
        system, tas_hash = _load_system(args.tas)
    except ParseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    window = _window(args.window)
    verdict = engine.check_directed(system, window, budget=args.budget)
    outcome: dict = {
        "verdict": verdict.kind,
        "scope": "windowed",
        "window": _window_json(window),
    }
    if verdict.kind == "conflict":
        outcome["conflict"] = {
            "pos": list(verdict.pos),
            "tile_a": verdict.tile_a,
            "tile_b": verdict.tile_b,
            "trace_a": _trace_json(verdict.trace_a),
            "trace_b": _trace_json(verdict.trace_b),
        }
    if verdict.kind == "inconclusive":
        outcome["reason"] = verdict.reason
    _emit(
        _report(
            "directed",
            {"tas": tas_hash},
            {"window": _window_json(window), "budget": args.budget},
            outcome,
        )
    )
    if verdict.kind == "directed":
        return EXIT_OK
    if verdict.kind == "conflict":
        return EXIT_CONFLICT
    return EXIT_INCONCLUSIVE


def _build_parser() -> _Parser:
    parser = _Parser(prog="tamlab", description="tile self-assembly lab")
    sub = parser.add_subparsers(dest="command", required=True)

    run = sub.add_parser("run", help="grow to quiescence in a window and render")
    run.add_argument("--tas", required=True)
    run.add_argument("--window", type=int, nargs=4, required=True, metavar=("X0", "Y0", "X1", "Y1"))
    run.add_argument("--out", choices=("ascii", "svg", "json"), default="ascii")
    run.add_argument("--out-dir", required=True)
    run.add_argument("--budget", type=int, default=None)
    run.add_argument("--glyphs", choices=("compact", "names"), default="compact")
    run.set_defaults(func=cmd_run)

    scan = sub.add_parser("pump-scan", help="scan producible paths for pumpable segments")
    scan.add_argument("--tas", required=True)
    scan.add_argument("--max-len", type=int, required=True)
    scan.set_defaults(func=cmd_pump_scan)

    fit = sub.add_parser("fit", help="fit a bounded periodic union to a point set")
    fit.add_argument("--points", required=True)
    fit.add_argument("--window", type=int, nargs=4, required=True, metavar=("X0", "Y0", "X1", "Y1"))
    fit.add_argument("--max-parts", type=int, required=True)
    fit.add_argument("--max-coord", type=int, required=True)
    fit.add_argument(
        "--predict-window", type=int, nargs=4, default=None, metavar=("X0", "Y0", "X1", "Y1")
    )
    fit.add_argument("--candidate-cap", type=int, default=300_000)
    fit.add_argument("--work-cap", type=int, default=60_000_000)
    fit.set_defaults(func=cmd_fit)

    directed = sub.add_parser("directed", help="decide windowed directedness")
    directed.add_argument("--tas", required=True)
    directed.add_argument("--window", type=int, nargs=4, required=True, metavar=("X0", "Y0", "X1", "Y1"))
    directed.add_argument("--budget", type=int, default=10_000_000)
    directed.set_defaults(func=cmd_directed)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except _UsageExit as exc:
        print(f"usage error: {exc.message}", file=sys.stderr)
        return EXIT_USAGE
    try:
        return args.func(args)
    except _UsageExit as exc:
        print(f"usage error: {exc.message}", file=sys.stderr)
        return EXIT_USAGE
    except WrongTemperature as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR
    except FileNotFoundError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR
    except TamlabError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
