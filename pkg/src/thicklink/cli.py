"""Command-line front end: plan a query, emit path.json + scene.svg + stats.

Exit codes: 0 = PATH, 2 = NO-PATH, 3 = TIMEOUT, 1 = input error.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from pathlib import Path

from .bench import SCENE_KINDS, generate, rows_to_csv, rows_to_table, run_suite
from .cspace import Config, RobotSpec
from .environment import EnvironmentError_, Environment, parse_environment
from .geometry import Rect
from .oracle import validate_path
from .planner import (
    GBF,
    NO_PATH,
    PATH,
    STRATEGIES,
    TIMEOUT,
    InvalidRequest,
    Planner,
    PlanRequest,
)

EXIT_OK = 0
EXIT_INPUT = 1
EXIT_NO_PATH = 2
EXIT_TIMEOUT = 3

_STATUS_COLORS = {
    "FREE": "#79c879",
    "STUCK": "#d96459",
    "YELLOW": "#e8d26a",
    "GRAY": "#bdbdbd",
}


def parse_angle(text: str) -> float:
    """Angle in radians; a `deg` suffix converts from degrees."""
    t = text.strip().lower()
    if t.endswith("deg"):
        return math.radians(float(t[:-3]))
    if t.endswith("rad"):
        return float(t[:-3])
    return float(t)


def parse_config(text: str) -> Config:
    parts = text.split(",")
    if len(parts) != 4:
        raise ValueError("configuration needs x,y,theta1,theta2")
    return Config(float(parts[0]), float(parts[1]), parse_angle(parts[2]), parse_angle(parts[3]))


def _leaf_color(state: str, has_parts: bool, width: float, eps: float) -> str:
    if state == "FREE" or (state == "RSPLIT" and has_parts):
        return _STATUS_COLORS["FREE"]
    if state == "STUCK":
        return _STATUS_COLORS["STUCK"]
    if width >= eps and state == "MIXED":
        return _STATUS_COLORS["YELLOW"]
    return _STATUS_COLORS["GRAY"]


def _collect_leaves(planner: Planner):
    out = []
    stack = [planner.root]
    while stack:
        node = stack.pop()
        if node.state == "SPLIT":
            stack.extend(node.children)
        else:
            out.append(node)
    out.sort(key=lambda n: n.id)
    return out


def render_svg(env: Environment, leaves, path, robot: RobotSpec | None, epsilon: float) -> str:
    """Deterministic SVG: obstacles, leaf boxes by status, robot trace.

    Leaves are (rect, state, has_parts) triples; FREE boxes are green,
    STUCK red, unresolved MIXED yellow when still splittable and gray
    below the tolerance; rotationally split leaves holding free parts
    count as green.  Thick links are drawn as round-capped strokes, which
    renders the capsule footprint exactly.
    """
    bb = env.bbox
    w = bb.x1 - bb.x0
    h = bb.y1 - bb.y0
    out = []
    out.append(
        '<svg xmlns="http://www.w3.org/2000/svg" viewBox="%.3f %.3f %.3f %.3f" width="800" height="%d">'
        % (bb.x0, bb.y0, w, h, int(800 * h / w))
    )
    out.append('<g transform="translate(0,%.3f) scale(1,-1)">' % (bb.y1 + bb.y0))
    out.append(
        '<rect x="%.3f" y="%.3f" width="%.3f" height="%.3f" fill="#ffffff" stroke="#000000" stroke-width="%.3f"/>'
        % (bb.x0, bb.y0, w, h, 0.002 * w)
    )
    for rect, state, has_parts in leaves:
        color = _leaf_color(state, has_parts, rect.width(), epsilon)
        out.append(
            '<rect x="%.3f" y="%.3f" width="%.3f" height="%.3f" fill="%s" fill-opacity="0.5" stroke="#888888" stroke-width="%.3f"/>'
            % (rect.x0, rect.y0, rect.x1 - rect.x0, rect.y1 - rect.y0, color, 0.0005 * w)
        )
    for poly in env.polygons:
        pts = " ".join("%.3f,%.3f" % (x, y) for x, y in poly)
        out.append('<polygon points="%s" fill="#30343a" stroke="none"/>' % pts)
    if path and robot is not None:
        stride = max(1, len(path) // 24)
        samples = list(path[::stride])
        if tuple(samples[-1]) != tuple(path[-1]):
            samples.append(path[-1])
        for c in samples:
            x, y, t1, t2 = tuple(c)
            for ell, th, color in ((robot.ell1, t1, "#2c6fbb"), (robot.ell2, t2, "#7a4fbb")):
                out.append(
                    '<line x1="%.3f" y1="%.3f" x2="%.3f" y2="%.3f" stroke="%s" stroke-opacity="0.45" stroke-width="%.3f" stroke-linecap="round"/>'
                    % (x, y, x + ell * math.cos(th), y + ell * math.sin(th), color, 2 * robot.tau)
                )
        trace = " ".join("%.3f,%.3f" % (c.x, c.y) for c in path)
        out.append('<polyline points="%s" fill="none" stroke="#c22525" stroke-width="%.3f"/>' % (trace, 0.004 * w))
    out.append("</g>")
    out.append("</svg>")
    return "\n".join(out) + "\n"


def path_json(req: PlanRequest, outcome: str, path, stats) -> str:
    d = {
        "format": 1,
        "robot": {
            "l1": req.robot.ell1,
            "l2": req.robot.ell2,
            "tau": req.robot.tau,
            "kappa": req.robot.kappa,
        },
        "epsilon": req.epsilon,
        "outcome": outcome,
        "path": [[c.x, c.y, c.theta1, c.theta2] for c in path] if path else None,
        "stats": {k: v for k, v in stats.as_dict().items() if k != "time_ms"},
    }
    return json.dumps(d, indent=2, sort_keys=True) + "\n"


def _build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="thicklink")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("plan", help="plan one query and write artifacts")
    p.add_argument("--env", required=True, help="environment file")
    p.add_argument("--l1", type=float, required=True)
    p.add_argument("--l2", type=float, required=True)
    p.add_argument("--tau", type=float, required=True)
    p.add_argument("--kappa", type=parse_angle, required=True, help="radians, or e.g. 7deg; negative allows crossing")
    p.add_argument("--eps", type=float, required=True)
    p.add_argument("--start", type=parse_config, required=True, help="x,y,theta1,theta2")
    p.add_argument("--goal", type=parse_config, required=True)
    p.add_argument("--strategy", choices=STRATEGIES, default=GBF)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--timeout", type=float, default=None, help="seconds")
    p.add_argument("--out", default="out", help="output directory")
    p.add_argument("--validate", action="store_true", help="densified oracle check of the path")
    p.add_argument("--threads", type=int, default=1, help="accepted for compatibility; classification runs single-threaded and results do not depend on it")

    b = sub.add_parser("bench", help="run the scene suite and write CSV + table")
    b.add_argument("--out", default="out")
    b.add_argument("--runs", type=int, default=3)
    b.add_argument("--seed", type=int, default=1)
    b.add_argument("--triangles", type=int, default=100)
    return ap


def _cmd_plan(args) -> int:
    try:
        env = parse_environment(Path(args.env).read_text(encoding="utf-8"))
        robot = RobotSpec(args.l1, args.l2, args.tau, args.kappa)
        req = PlanRequest(
            env, robot, args.start, args.goal, args.eps,
            strategy=args.strategy, seed=args.seed, timeout=args.timeout,
        )
        planner = Planner(req)
    except (OSError, EnvironmentError_, InvalidRequest, ValueError) as exc:
        print("error: %s" % exc, file=sys.stderr)
        return EXIT_INPUT
    res = planner.plan()
    outdir = Path(args.out)
    outdir.mkdir(parents=True, exist_ok=True)
    (outdir / "path.json").write_text(path_json(req, res.outcome, res.path, res.stats), encoding="utf-8")
    leaves = [(n.bt, n.state, bool(n.parts)) for n in _collect_leaves(planner)]
    (outdir / "scene.svg").write_text(
        render_svg(env, leaves, res.path, robot, req.epsilon), encoding="utf-8"
    )
    s = res.stats
    print(
        "outcome=%s time_ms=%.1f boxes=%d free=%d stuck=%d mixed=%d"
        % (res.outcome, s.time_ms, s.created, s.free, s.stuck, s.mixed)
    )
    if args.validate and res.path:
        rep = validate_path(res.path, env, robot, robot.kappa)
        print(
            "validate clearance=%.6f band_dist=%.6f band_margin=%.6f"
            % (rep.min_clearance, rep.min_band_dist, rep.band_margin)
        )
        if not rep.ok:
            print("error: path failed validation", file=sys.stderr)
            return EXIT_INPUT
    if res.outcome == PATH:
        return EXIT_OK
    if res.outcome == TIMEOUT:
        return EXIT_TIMEOUT
    return EXIT_NO_PATH


def _default_suite(seed: int, triangles: int):
    return [
        ("empty", seed, {}),
        ("t_room", seed, {}),
        ("maze", seed, {}),
        ("hole_in_wall", seed, {}),
        ("corridor_8way", seed, {}),
        ("bugtrap", seed, {}),
        ("random_triangles", seed, {"n": triangles}),
        ("corridor", seed, {"w": 20.0}),
        ("corridor", seed, {"w": 20.0, "blocked": True}),
    ]


def _cmd_bench(args) -> int:
    rows = run_suite(_default_suite(args.seed, args.triangles), runs=args.runs)
    outdir = Path(args.out)
    outdir.mkdir(parents=True, exist_ok=True)
    (outdir / "bench.csv").write_text(rows_to_csv(rows), encoding="utf-8")
    table = rows_to_table(rows)
    (outdir / "bench.txt").write_text(table, encoding="utf-8")
    print(table, end="")
    return EXIT_OK


def run(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    if args.command == "plan":
        return _cmd_plan(args)
    return _cmd_bench(args)


def main() -> None:
    raise SystemExit(run())


if __name__ == "__main__":
    main()
