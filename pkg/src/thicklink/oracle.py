"""Independent brute-force validators.

Everything here is built from first principles on top of the geometry and
environment modules only; it never imports the forbidden-zone calculus or
the box classifier, so agreement between the two sides is meaningful
evidence.
"""

from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass

import numpy as np

from .environment import Environment, point_in_obstacle, sep_to_boundary
from .geometry import (
    TWO_PI,
    AngularInterval,
    AngularSet,
    LinkGeom,
    Point2,
    Segment2,
    norm_angle,
)


# ---------------------------------------------------------------------------
# configuration collision checking


def _link_endpoints(c, r):
    x, y, t1, t2 = c
    a0 = (x, y)
    a1 = (x + r.ell1 * math.cos(t1), y + r.ell1 * math.sin(t1))
    a2 = (x + r.ell2 * math.cos(t2), y + r.ell2 * math.sin(t2))
    return a0, a1, a2


def _seg_poly_sep(a: Point2, b: Point2, poly) -> float:
    from .geometry import sep_segment_segment

    best = math.inf
    n = len(poly)
    seg = Segment2(a, b)
    for i in range(n):
        d = sep_segment_segment(seg, Segment2(poly[i], poly[(i + 1) % n]))
        if d < best:
            best = d
    return best


def config_clearance(c, env: Environment, r) -> float:
    """Signed clearance of a configuration: min thin-separation minus tau.

    Negative when a thick link overlaps the closed obstacle set; a link
    endpoint buried inside an obstacle reports minus its boundary distance.
    """
    a0, a1, a2 = _link_endpoints(c, r)
    best = math.inf
    for poly in env.polygons:
        best = min(best, _seg_poly_sep(a0, a1, poly), _seg_poly_sep(a0, a2, poly))
    best -= r.tau
    for p in (a0, a1, a2):
        if point_in_obstacle(env, p):
            best = min(best, -sep_to_boundary(env, p) - r.tau)
    return best


def config_free(c, env: Environment, r) -> bool:
    """True iff the thick footprint avoids the closed obstacle set."""
    return config_clearance(c, env, r) > 0.0


# ---------------------------------------------------------------------------
# vectorized clearance helpers (arrays of configurations / angles)


def _pt_to_segs_dist(px, py, ax, ay, bx, by):
    """Distances from points (px,py) to segments (a,b), all arrays."""
    dx = bx - ax
    dy = by - ay
    L2 = dx * dx + dy * dy
    L2 = np.where(L2 <= 0.0, 1.0, L2)
    u = ((px - ax) * dx + (py - ay) * dy) / L2
    u = np.clip(u, 0.0, 1.0)
    return np.hypot(px - (ax + u * dx), py - (ay + u * dy))


def _segs_cross(ax, ay, bx, by, px, py, qx, qy):
    """Proper-or-touching intersection of segments (a,b) and (p,q)."""

    def orient(ox, oy, ux, uy, vx, vy):
        return (ux - ox) * (vy - oy) - (uy - oy) * (vx - ox)

    d1 = orient(px, py, qx, qy, ax, ay)
    d2 = orient(px, py, qx, qy, bx, by)
    d3 = orient(ax, ay, bx, by, px, py)
    d4 = orient(ax, ay, bx, by, qx, qy)
    proper = ((d1 > 0) != (d2 > 0)) & (d1 != 0) & (d2 != 0) & ((d3 > 0) != (d4 > 0)) & (d3 != 0) & (d4 != 0)
    return proper


def seg_feature_dist_batch(ax, ay, bx, by, feature) -> np.ndarray:
    """Thin separations between segments (a,b)[i] and one fixed feature."""
    if isinstance(feature, Segment2) and not feature.is_degenerate():
        (px, py), (qx, qy) = feature.a, feature.b
        d = np.minimum(
            _pt_to_segs_dist(px, py, ax, ay, bx, by),
            _pt_to_segs_dist(qx, qy, ax, ay, bx, by),
        )
        d = np.minimum(d, _pt_to_segs_dist(ax, ay, px, py, qx, qy))
        d = np.minimum(d, _pt_to_segs_dist(bx, by, px, py, qx, qy))
        cross = _segs_cross(ax, ay, bx, by, px, py, qx, qy)
        return np.where(cross, 0.0, d)
    c = feature.a if isinstance(feature, Segment2) else feature
    return _pt_to_segs_dist(c[0], c[1], ax, ay, bx, by)


def _points_in_polygon_batch(px, py, poly) -> np.ndarray:
    inside = np.zeros(px.shape, dtype=bool)
    n = len(poly)
    for i in range(n):
        x0, y0 = poly[i]
        x1, y1 = poly[(i + 1) % n]
        cond = (y0 > py) != (y1 > py)
        with np.errstate(divide="ignore", invalid="ignore"):
            xc = x0 + (py - y0) * (x1 - x0) / (y1 - y0)
        inside ^= cond & (px < xc)
    return inside


def clearance_batch(xs, ys, t1s, t2s, env: Environment, r, polygons=None) -> np.ndarray:
    """Vectorized config_clearance over parallel coordinate arrays."""
    xs = np.asarray(xs, dtype=float)
    ys = np.asarray(ys, dtype=float)
    if polygons is None:
        polygons = env.polygons
    u1x = xs + r.ell1 * np.cos(t1s)
    u1y = ys + r.ell1 * np.sin(t1s)
    u2x = xs + r.ell2 * np.cos(t2s)
    u2y = ys + r.ell2 * np.sin(t2s)
    best = np.full(xs.shape, np.inf)
    for poly in polygons:
        n = len(poly)
        for i in range(n):
            wall = Segment2(poly[i], poly[(i + 1) % n])
            best = np.minimum(best, seg_feature_dist_batch(xs, ys, u1x, u1y, wall))
            best = np.minimum(best, seg_feature_dist_batch(xs, ys, u2x, u2y, wall))
    best = best - r.tau
    buried = np.zeros(xs.shape, dtype=bool)
    for poly in polygons:
        for px, py in ((xs, ys), (u1x, u1y), (u2x, u2y)):
            buried |= _points_in_polygon_batch(px, py, poly)
    return np.where(buried, np.minimum(best, -abs(best) - 1e-9), best)


# ---------------------------------------------------------------------------
# angle-sweep forbidden-zone oracle


@dataclass
class SweepResult:
    n: int
    samples: np.ndarray  # bool, True = forbidden
    intervals: AngularSet  # conservative reconstruction (one-sample widening)


def sweep_forbidden(bases: list[Point2], feature, g: LinkGeom, n: int = 36000) -> SweepResult:
    """Mark angle k*2*pi/n forbidden iff some base's thick link meets the feature."""
    thetas = np.arange(n) * (TWO_PI / n)
    cos_t = np.cos(thetas)
    sin_t = np.sin(thetas)
    forbidden = np.zeros(n, dtype=bool)
    for bx, by in bases:
        ax = np.full(n, bx)
        ay = np.full(n, by)
        ux = bx + g.ell * cos_t
        uy = by + g.ell * sin_t
        d = seg_feature_dist_batch(ax, ay, ux, uy, feature)
        forbidden |= d <= g.tau
    return SweepResult(n, forbidden, _samples_to_set(forbidden, n))


def _samples_to_set(forbidden: np.ndarray, n: int) -> AngularSet:
    step = TWO_PI / n
    if forbidden.all():
        return AngularSet.full()
    if not forbidden.any():
        return AngularSet.empty()
    # Runs of consecutive forbidden samples, widened by one sample each way.
    idx = np.flatnonzero(forbidden)
    breaks = np.flatnonzero(np.diff(idx) > 1)
    starts = np.concatenate(([idx[0]], idx[breaks + 1]))
    ends = np.concatenate((idx[breaks], [idx[-1]]))
    # wrap-around run
    arcs = []
    if forbidden[0] and forbidden[-1] and len(starts) > 1:
        arcs.append(AngularInterval.make((starts[-1] - 1) * step, (ends[0] + 1) * step))
        starts, ends = starts[1:-1], ends[1:-1]
        pairs = zip(starts, ends)
    else:
        pairs = zip(starts, ends)
    for s, e in pairs:
        arcs.append(AngularInterval.make((s - 1) * step, (e + 1) * step))
    return AngularSet(arcs)


# ---------------------------------------------------------------------------
# 4D lattice planner (conservative cross-check)


@dataclass
class GridPlanResult:
    outcome: str  # "PATH" | "NO_PATH"
    path: list | None


def grid_plan(env: Environment, r, alpha, beta, nx: int, ny: int, ntheta: int) -> GridPlanResult:
    """Conservative BFS over a 4D lattice; PATH answers are sound.

    A cell is free iff its center clears the obstacles by at least half the
    cell diagonal (workspace plus link-sweep contribution), so any returned
    lattice path is collision free; NO_PATH is inconclusive.
    """
    cells = nx * ny * ntheta * ntheta
    if cells > 10_000_000:
        raise ValueError("grid too large: %d cells" % cells)
    bb = env.bbox
    dx = (bb.x1 - bb.x0) / nx
    dy = (bb.y1 - bb.y0) / ny
    dth = TWO_PI / ntheta
    margin = 0.5 * math.hypot(dx, dy) + 0.5 * dth * max(r.ell1, r.ell2)

    xs = bb.x0 + (np.arange(nx) + 0.5) * dx
    ys = bb.y0 + (np.arange(ny) + 0.5) * dy
    ths = np.arange(ntheta) * dth
    X, Y, T1, T2 = np.meshgrid(xs, ys, ths, ths, indexing="ij")
    clear = clearance_batch(X.ravel(), Y.ravel(), T1.ravel(), T2.ravel(), env, r)
    free = (clear > margin).reshape(nx, ny, ntheta, ntheta)
    if r.kappa >= 0.0:
        band = np.minimum(np.abs(T1 - T2), TWO_PI - np.abs(T1 - T2)) <= r.kappa + dth
        free &= ~band

    def locate(c):
        x, y, t1, t2 = tuple(c)
        ix = min(nx - 1, max(0, int((x - bb.x0) / dx)))
        iy = min(ny - 1, max(0, int((y - bb.y0) / dy)))
        i1 = int(round(norm_angle(t1) / dth)) % ntheta
        i2 = int(round(norm_angle(t2) / dth)) % ntheta
        return ix, iy, i1, i2

    start, goal = locate(alpha), locate(beta)
    if not free[start] or not free[goal]:
        return GridPlanResult("NO_PATH", None)
    prev = {start: None}
    dq = deque([start])
    while dq:
        cur = dq.popleft()
        if cur == goal:
            break
        ix, iy, i1, i2 = cur
        for nxt in (
            (ix - 1, iy, i1, i2),
            (ix + 1, iy, i1, i2),
            (ix, iy - 1, i1, i2),
            (ix, iy + 1, i1, i2),
            (ix, iy, (i1 - 1) % ntheta, i2),
            (ix, iy, (i1 + 1) % ntheta, i2),
            (ix, iy, i1, (i2 - 1) % ntheta),
            (ix, iy, i1, (i2 + 1) % ntheta),
        ):
            if 0 <= nxt[0] < nx and 0 <= nxt[1] < ny and nxt not in prev and free[nxt]:
                prev[nxt] = cur
                dq.append(nxt)
    if goal not in prev:
        return GridPlanResult("NO_PATH", None)
    cells_path = []
    cur = goal
    while cur is not None:
        cells_path.append(cur)
        cur = prev[cur]
    cells_path.reverse()
    path = [
        (bb.x0 + (ix + 0.5) * dx, bb.y0 + (iy + 0.5) * dy, i1 * dth, i2 * dth)
        for ix, iy, i1, i2 in cells_path
    ]
    return GridPlanResult("PATH", path)


# ---------------------------------------------------------------------------
# path validation


@dataclass
class ValidationReport:
    min_clearance: float
    min_band_dist: float
    band_margin: float  # min_band_dist - kappa, or +inf when crossing is allowed

    @property
    def ok(self) -> bool:
        return self.min_clearance > 0.0 and self.band_margin > 0.0


def _arc_lerp(a: float, b: float, ts: np.ndarray) -> np.ndarray:
    delta = math.remainder(b - a, TWO_PI)
    return a + ts * delta


# Scenes with many polygons are validated per segment against the nearby
# polygons only; any excluded polygon is provably farther than _SLACK from
# the thick footprint, so clearances below _SLACK stay exact and larger
# ones are reported as at least _SLACK.
_PREFILTER_MIN_POLYS = 16
_SLACK = 16.0


def _segment_polys(env: Environment, bbox, reach: float):
    from .environment import _poly_index

    x0, y0, x1, y1 = bbox
    sel = []
    excluded = False
    for px0, py0, px1, py1, poly in _poly_index(env):
        dx = max(px0 - x1, 0.0, x0 - px1)
        dy = max(py0 - y1, 0.0, y0 - py1)
        if math.hypot(dx, dy) <= reach:
            sel.append(poly)
        else:
            excluded = True
    return sel, excluded


def validate_path(path, env: Environment, r, kappa: float, density: int = 1000) -> ValidationReport:
    """Densify each path segment and report worst clearance and band distance."""
    if not path:
        raise ValueError("empty path")
    pts = [tuple(c) for c in path]
    if len(pts) == 1:
        pts = pts * 2
    ts = np.linspace(0.0, 1.0, density)
    prefilter = len(env.polygons) > _PREFILTER_MIN_POLYS
    reach = max(r.ell1, r.ell2) + r.tau + _SLACK
    min_clear = math.inf
    min_band = math.inf
    for (x0, y0, a1, a2), (x1, y1, b1, b2) in zip(pts[:-1], pts[1:]):
        X = x0 + ts * (x1 - x0)
        Y = y0 + ts * (y1 - y0)
        T1 = _arc_lerp(a1, b1, ts)
        T2 = _arc_lerp(a2, b2, ts)
        if prefilter:
            bbox = (min(x0, x1), min(y0, y1), max(x0, x1), max(y0, y1))
            polys, excluded = _segment_polys(env, bbox, reach)
            seg_min = float(clearance_batch(X, Y, T1, T2, env, r, polygons=polys).min())
            if excluded and seg_min > _SLACK:
                seg_min = _SLACK
        else:
            seg_min = float(clearance_batch(X, Y, T1, T2, env, r).min())
        min_clear = min(min_clear, seg_min)
        dband = np.minimum(np.abs(T1 - T2) % TWO_PI, TWO_PI - (np.abs(T1 - T2) % TWO_PI))
        min_band = min(min_band, float(dband.min()))
    margin = min_band - kappa if kappa >= 0.0 else math.inf
    return ValidationReport(min_clear, min_band, margin)
