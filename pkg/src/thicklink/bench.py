"""Seeded scene generators and the benchmark harness.

The scenes regenerate the qualitative structure of the usual experiment
families (T-room, maze, hole-in-wall, 8-way corridor, double bugtrap,
random triangles, parametric corridor); exact coordinates and timings of
any published runs are out of scope.  Same seed, same scene, same plan.
"""

from __future__ import annotations

import math
import random
import statistics
import time
from dataclasses import dataclass, field

from .cspace import Config, RobotSpec
from .environment import Environment, make_environment
from .geometry import Rect
from .planner import GBF, NO_PATH, PATH, PlanRequest, plan

SCENE_KINDS = (
    "empty",
    "t_room",
    "maze",
    "hole_in_wall",
    "corridor_8way",
    "bugtrap",
    "random_triangles",
    "corridor",
)


@dataclass
class Scene:
    kind: str
    env: Environment
    alpha: Config
    beta: Config
    robot: RobotSpec
    epsilon: float
    params: dict = field(default_factory=dict)

    def request(self, strategy: str = GBF, timeout: float | None = None) -> PlanRequest:
        return PlanRequest(
            self.env, self.robot, self.alpha, self.beta, self.epsilon,
            strategy=strategy, timeout=timeout,
        )


def _rect_poly(x0, y0, x1, y1):
    return [(x0, y0), (x1, y0), (x1, y1), (x0, y1)]


def generate(scene_kind: str, seed: int = 0, **params) -> Scene:
    if scene_kind not in SCENE_KINDS:
        raise ValueError("unknown scene kind %r" % scene_kind)
    return _GENERATORS[scene_kind](seed, params)


def _gen_empty(seed, params):
    size = params.get("size", 128.0)
    env = make_environment([], Rect(0, 0, size, size))
    robot = params.get("robot", RobotSpec(8, 6, 2, params.get("kappa", -1.0)))
    return Scene(
        "empty", env,
        Config(size * 0.15, size * 0.15, 0.5, 1.5),
        Config(size * 0.85, size * 0.85, 3.0, 4.2),
        robot, params.get("epsilon", 4.0),
    )


def _gen_t_room(seed, params):
    """Vertical stem under a wide top bar; swiveling room only at the junction.

    The stem is too narrow to swing a link through horizontal (w <= min
    link reach + 2 tau), so reordering the links (a non-crossing run with
    swapped goal angles) forces a detour up to the junction.  A short lip
    at the stem mouth caps the link separation of anything passing it,
    which makes the non-crossing answer flip to NO-PATH once the bandwidth
    (or the resolution parameter) grows past a critical value while the
    crossing run is unaffected.
    """
    size = 256.0
    w = params.get("corridor", 27.5)  # stem width
    bar = params.get("bar", 80.0)  # top bar height
    lipw = params.get("lip", 17.0)  # opening at the stem mouth
    liph = 8.0
    tilt = 0.25
    x0 = (size - w) / 2
    x1 = (size + w) / 2
    lx0 = (size - lipw) / 2
    lx1 = (size + lipw) / 2
    ytop = size - bar
    env = make_environment(
        [
            _rect_poly(0, 0, x0, ytop),
            _rect_poly(x1, 0, size, ytop),
            _rect_poly(x0, ytop - liph, lx0, ytop),
            _rect_poly(lx1, ytop - liph, x1, ytop),
        ],
        Rect(0, 0, size, size),
    )
    robot = params.get("robot", RobotSpec(22, 18, 5, params.get("kappa", 0.12)))
    alpha = Config(size / 2, 120.0, math.pi / 2 + tilt, math.pi / 2 - tilt)
    beta = Config(size / 2, 48.0, math.pi / 2 - tilt, math.pi / 2 + tilt)
    return Scene(
        "t_room", env, alpha, beta, robot, params.get("epsilon", 2.0),
        {"corridor": w, "bar": bar, "lip": lipw, "ytop": ytop},
    )


def _gen_maze(seed, params):
    """Three staggered baffles forming an S-shaped passage."""
    size = 256.0
    gap = params.get("gap", 48.0)
    t = 10.0
    env = make_environment(
        [
            _rect_poly(0, 64, size - gap, 64 + t),
            _rect_poly(gap, 128, size, 128 + t),
            _rect_poly(0, 192, size - gap, 192 + t),
        ],
        Rect(0, 0, size, size),
    )
    robot = params.get("robot", RobotSpec(16, 10, 4, params.get("kappa", -1.0)))
    return Scene(
        "maze", env,
        Config(32, 24, 0.4, 1.6), Config(224, 236, 3.2, 4.4),
        robot, params.get("epsilon", 4.0), {"gap": gap},
    )


def _gen_hole_in_wall(seed, params):
    size = 256.0
    hole = params.get("hole", 52.0)
    t = 12.0
    y0 = (size - t) / 2
    x0 = (size - hole) / 2
    env = make_environment(
        [
            _rect_poly(0, y0, x0, y0 + t),
            _rect_poly(x0 + hole, y0, size, y0 + t),
        ],
        Rect(0, 0, size, size),
    )
    robot = params.get("robot", RobotSpec(18, 12, 4, params.get("kappa", -1.0)))
    return Scene(
        "hole_in_wall", env,
        Config(128, 40, 0.3, 1.8), Config(128, 216, 3.4, 4.8),
        robot, params.get("epsilon", 4.0), {"hole": hole},
    )


def _gen_corridor_8way(seed, params):
    """Four blocks leaving a plus of corridors and a central room."""
    size = 256.0
    w = params.get("corridor", 52.0)
    lo = (size - w) / 2
    hi = (size + w) / 2
    inset = 24.0
    env = make_environment(
        [
            _rect_poly(inset, inset, lo, lo),
            _rect_poly(hi, inset, size - inset, lo),
            _rect_poly(inset, hi, lo, size - inset),
            _rect_poly(hi, hi, size - inset, size - inset),
        ],
        Rect(0, 0, size, size),
    )
    robot = params.get("robot", RobotSpec(18, 12, 4, params.get("kappa", -1.0)))
    return Scene(
        "corridor_8way", env,
        Config(128, 10, 0.2, 1.5), Config(10, 128, 3.0, 4.6),
        robot, params.get("epsilon", 4.0), {"corridor": w},
    )


def _gen_bugtrap(seed, params):
    """Two C-shaped traps with facing mouths; start inside one, goal in the other."""
    size = 256.0
    mouth = params.get("mouth", 56.0)
    t = 10.0
    # left trap opens right, centered at y=128
    def trap(x0, x1, open_right):
        y0, y1 = 48.0, 208.0
        polys = [
            _rect_poly(x0, y0, x1, y0 + t),
            _rect_poly(x0, y1 - t, x1, y1),
        ]
        closed = x0 if open_right else x1 - t
        polys.append(_rect_poly(closed, y0, closed + t, y1))
        lip0 = (128.0 - mouth / 2)
        lip1 = (128.0 + mouth / 2)
        mouth_x = x1 - t if open_right else x0
        polys.append(_rect_poly(mouth_x, y0, mouth_x + t, lip0))
        polys.append(_rect_poly(mouth_x, lip1, mouth_x + t, y1))
        return polys
    env = make_environment(
        trap(24, 104, True) + trap(152, 232, False),
        Rect(0, 0, size, size),
    )
    robot = params.get("robot", RobotSpec(14, 9, 3, params.get("kappa", -1.0)))
    return Scene(
        "bugtrap", env,
        Config(60, 128, 0.4, 1.7), Config(196, 128, 3.1, 4.5),
        robot, params.get("epsilon", 4.0), {"mouth": mouth},
    )


def _gen_random_triangles(seed, params):
    size = params.get("size", 512.0)
    n = params.get("n", 100)
    rmin, rmax = params.get("rmin", 6.0), params.get("rmax", 22.0)
    rng = random.Random(seed)
    margin = 56.0
    polys = []
    while len(polys) < n:
        cx = rng.uniform(margin, size - margin)
        cy = rng.uniform(margin, size - margin)
        # keep start/goal pockets clear
        if math.hypot(cx - 40, cy - 40) < margin or math.hypot(cx - (size - 40), cy - (size - 40)) < margin:
            continue
        pts = []
        for _ in range(3):
            ang = rng.uniform(0, 2 * math.pi)
            rad = rng.uniform(rmin, rmax)
            pts.append((min(size, max(0.0, cx + rad * math.cos(ang))),
                        min(size, max(0.0, cy + rad * math.sin(ang)))))
        area = abs(
            (pts[1][0] - pts[0][0]) * (pts[2][1] - pts[0][1])
            - (pts[2][0] - pts[0][0]) * (pts[1][1] - pts[0][1])
        ) / 2
        if area < 8.0:
            continue
        polys.append(pts)
    env = make_environment(polys, Rect(0, 0, size, size))
    robot = params.get("robot", RobotSpec(16, 10, 4, params.get("kappa", -1.0)))
    # antipodal link angles stay outside the diagonal band for every kappa < pi
    return Scene(
        "random_triangles", env,
        Config(40, 40, 0.4, 0.4 + math.pi), Config(size - 40, size - 40, 4.2, 4.2 - math.pi),
        robot, params.get("epsilon", 8.0), {"n": n, "seed": seed},
    )


def _gen_corridor(seed, params):
    """Straight corridor of width w between two rooms; optionally sealed."""
    size = 128.0
    w = params.get("w", 20.0)
    blocked = params.get("blocked", False)
    y0 = 56.0
    t = 16.0
    x0 = (size - w) / 2
    x1 = (size + w) / 2
    polys = [
        _rect_poly(0, y0, x0, y0 + t),
        _rect_poly(x1, y0, size, y0 + t),
    ]
    if blocked:
        polys.append(_rect_poly(x0, y0, x1, y0 + t))
    env = make_environment(polys, Rect(0, 0, size, size))
    robot = params.get("robot", RobotSpec(10, 0.5, 3, params.get("kappa", -1.0)))
    return Scene(
        "corridor", env,
        Config(64, 24, 0.3, 1.2), Config(64, 104, 0.3, 1.2),
        robot, params.get("epsilon", 2.0), {"w": w, "blocked": blocked},
    )


_GENERATORS = {
    "empty": _gen_empty,
    "t_room": _gen_t_room,
    "maze": _gen_maze,
    "hole_in_wall": _gen_hole_in_wall,
    "corridor_8way": _gen_corridor_8way,
    "bugtrap": _gen_bugtrap,
    "random_triangles": _gen_random_triangles,
    "corridor": _gen_corridor,
}


# ---------------------------------------------------------------------------
# harness


@dataclass
class BenchRow:
    scene: str
    seed: int
    robot: RobotSpec
    epsilon: float
    strategy: str
    outcome: str
    avg_ms: float
    best_ms: float
    std_ms: float
    success: float
    result_path: list | None = None


CSV_HEADER = "scene,seed,l1,l2,tau,kappa,eps,strategy,outcome,avg_ms,best_ms,std_ms,success"


def run_suite(rows: list[tuple[str, int, dict]], runs: int = 3, strategy: str = GBF) -> list[BenchRow]:
    """Run each (scene_kind, seed, params) experiment `runs` times.

    The planner is deterministic, so repeated runs only measure timing
    noise; Success is 1 whenever a definitive answer (PATH or NO-PATH)
    arrives, matching how subdivision runs are scored against samplers.
    """
    out = []
    for kind, seed, params in rows:
        scene = generate(kind, seed, **params)
        times = []
        outcome = None
        path = None
        for _ in range(runs):
            t0 = time.perf_counter()
            res = plan(scene.request(strategy=strategy))
            times.append((time.perf_counter() - t0) * 1000.0)
            if outcome is None:
                outcome = res.outcome
                path = res.path
            elif res.outcome != outcome:
                raise RuntimeError("nondeterministic outcome in %s" % kind)
        out.append(
            BenchRow(
                kind, seed, scene.robot, scene.epsilon, strategy, outcome,
                statistics.fmean(times), min(times),
                statistics.pstdev(times) if len(times) > 1 else 0.0,
                1.0 if outcome in (PATH, NO_PATH) else 0.0,
                path,
            )
        )
    return out


def rows_to_csv(rows: list[BenchRow]) -> str:
    lines = [CSV_HEADER]
    for r in rows:
        lines.append(
            "%s,%d,%g,%g,%g,%g,%g,%s,%s,%.1f,%.1f,%.1f,%g"
            % (
                r.scene, r.seed, r.robot.ell1, r.robot.ell2, r.robot.tau,
                r.robot.kappa, r.epsilon, r.strategy, r.outcome,
                r.avg_ms, r.best_ms, r.std_ms, r.success,
            )
        )
    return "\n".join(lines) + "\n"


def rows_to_table(rows: list[BenchRow]) -> str:
    headers = ("Scene", "Outcome", "Avg", "Best", "STD", "Success")
    body = [
        (r.scene, r.outcome, "%.1f" % r.avg_ms, "%.1f" % r.best_ms, "%.1f" % r.std_ms, "%g" % r.success)
        for r in rows
    ]
    widths = [max(len(h), *(len(b[i]) for b in body)) if body else len(h) for i, h in enumerate(headers)]
    fmt = "  ".join("%%-%ds" % w for w in widths)
    lines = [fmt % headers, fmt % tuple("-" * w for w in widths)]
    lines += [fmt % row for row in body]
    return "\n".join(lines) + "\n"
