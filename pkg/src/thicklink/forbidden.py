"""Forbidden-angle calculus for a single thick link.

For sets S, T in the plane, an angle theta is forbidden when some
placement of the link with origin in S makes the thick footprint meet T.
This module provides closed forms for the point-point and vertex-wall
zones, the side-corner zone by reflection (Forb(S,T) = pi + Forb(T,S)),
and conservative zones for whole translational boxes.

Box zones are emitted as a single cone: the true zone of a box against
one feature is one connected arc (the reachable base set is convex and
the per-base arcs vary continuously), so we take the hull of the
vertex-wall / side-corner sub-zones and certify or extend its endpoints
with an exact separation predicate.  The result always contains the true
zone and converges to it as the box shrinks.

The *_bounds kernels are plain-float versions of the zone formulas; the
box classifier evaluates them hundreds of thousands of times per run.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .geometry import (
    EPS,
    TWO_PI,
    AngularInterval,
    AngularSet,
    LinkGeom,
    Point2,
    Rect,
    Segment2,
    norm_angle,
    polar_angle,
    pt_seg_dist,
    seg_seg_dist,
    sep_point_rect,
    sep_point_segment,
    sep_segment_rect,
)

# Outward widening applied to every computed zone endpoint so floating-point
# error can never shrink a forbidden zone.
WIDEN = 1e-12

CASE0 = "CASE0"
CASE_I = "I"
CASE_II = "II"
CASE_III = "III"

EMPTY = "empty"
FULLC = "full"
ARC = "arc"


@dataclass(frozen=True)
class Cone:
    """One connected forbidden interval with its provenance."""

    interval: AngularInterval
    source: tuple


@dataclass(frozen=True)
class StopPair:
    left: Point2
    right: Point2
    case_tag: tuple[str, str]


def theta_nominal(V: Point2, C: Point2) -> float:
    """Polar angle of C - V (the nominal angle of Forb(V, C))."""
    dx, dy = C[0] - V[0], C[1] - V[1]
    if dx == 0.0 and dy == 0.0:
        raise ValueError("nominal direction undefined for coincident points")
    return polar_angle((dx, dy))


def _delta(d: float, ell: float, tau: float) -> float:
    """Correction half-angle for tau < d <= ell + tau.

    Short range (d^2 <= tau^2 + ell^2): the obstacle point meets the
    straight part of the footprint boundary, delta = arcsin(tau/d).
    Long range: it meets the circular end cap, delta from the cosine law.
    """
    if d * d <= tau * tau + ell * ell:
        t = tau / d
        return math.asin(1.0 if t > 1.0 else t)
    c = (ell * ell + d * d - tau * tau) / (2.0 * d * ell)
    return math.acos(-1.0 if c < -1.0 else (1.0 if c > 1.0 else c))


def delta_correction(d: float, g: LinkGeom) -> float:
    return _delta(d, g.ell, g.tau)


def pp_bounds(vx, vy, cx, cy, ell, tau):
    """Point-point zone as (kind, lo, hi) with lo <= hi in radians."""
    dx, dy = cx - vx, cy - vy
    d = math.hypot(dx, dy)
    if d > ell + tau:
        return (EMPTY, 0.0, 0.0)
    if d <= tau:
        return (FULLC, 0.0, 0.0)
    nu = math.atan2(dy, dx)
    delta = _delta(d, ell, tau)
    return (ARC, nu - delta - WIDEN, nu + delta + WIDEN)


def _stop_xs(xl: float, xr: float, xmax: float) -> tuple[float, float]:
    lx = xl if xmax <= xl else (xmax if xmax < xr else xr)
    if xr <= -xmax:
        rx = xr
    elif -xmax > xl:
        rx = -xmax
    else:
        rx = xl
    return lx, rx


def vw_bounds(vx, vy, ax, ay, bx, by, ell, tau):
    """Vertex-wall zone as (kind, lo, hi); performs all case reductions."""
    wx, wy = bx - ax, by - ay
    wlen = math.hypot(wx, wy)
    if wlen <= EPS:
        return pp_bounds(vx, vy, ax, ay, ell, tau)
    sep = pt_seg_dist(vx, vy, ax, ay, bx, by)
    if sep <= tau:
        return (FULLC, 0.0, 0.0)
    reach = ell + tau
    if sep > reach:
        return (EMPTY, 0.0, 0.0)
    # clip the wall to the reach disc around V: only points within ell+tau
    # can witness a forbidden angle
    rx0, ry0 = ax - vx, ay - vy
    qa = wlen * wlen
    qb = rx0 * wx + ry0 * wy
    qc = rx0 * rx0 + ry0 * ry0 - reach * reach
    disc = qb * qb - qa * qc
    if disc < 0.0:
        return (EMPTY, 0.0, 0.0)
    sq = math.sqrt(disc)
    t0 = (-qb - sq) / qa
    t1 = (-qb + sq) / qa
    if t0 < 0.0:
        t0 = 0.0
    if t1 > 1.0:
        t1 = 1.0
    if t1 < t0:
        return (EMPTY, 0.0, 0.0)
    x0c, y0c = ax + t0 * wx, ay + t0 * wy
    x1c, y1c = ax + t1 * wx, ay + t1 * wy
    if (t1 - t0) * wlen <= 1e-9:  # tangential sliver: a single direction
        nu = math.atan2(0.5 * (y0c + y1c) - vy, 0.5 * (x0c + x1c) - vx)
        return (ARC, nu - WIDEN, nu + WIDEN)
    ux, uy = wx / wlen, wy / wlen
    nx, ny = -uy, ux
    s = nx * (vx - x0c) + ny * (vy - y0c)
    if s > 0.0:  # orient so V sits at (0, -sigma)
        ux, uy, nx, ny, s = -ux, -uy, -nx, -ny, -s
    sigma = -s
    if sigma <= tau:
        # nearest clipped point is a corner (the perpendicular foot would
        # have triggered the sep <= tau test); reduce to point-point
        da = math.hypot(x0c - vx, y0c - vy)
        db = math.hypot(x1c - vx, y1c - vy)
        if da <= db:
            return pp_bounds(vx, vy, x0c, y0c, ell, tau)
        return pp_bounds(vx, vy, x1c, y1c, ell, tau)
    ox, oy = vx + sigma * nx, vy + sigma * ny
    xa = ux * (x0c - ox) + uy * (y0c - oy)
    xb = ux * (x1c - ox) + uy * (y1c - oy)
    if xa > xb:
        xa, xb = xb, xa
    m2 = ell * ell - (sigma - tau) * (sigma - tau)
    xmax = math.sqrt(m2) if m2 > 0.0 else 0.0
    lx, rx = _stop_xs(xa, xb, xmax)
    fa = math.atan2(uy, ux)
    alpha = math.atan2(sigma, lx) - _delta(math.hypot(lx, sigma), ell, tau)
    beta = math.atan2(sigma, rx) + _delta(math.hypot(rx, sigma), ell, tau)
    return (ARC, fa + alpha - WIDEN, fa + beta + WIDEN)


def sc_bounds(sx0, sy0, sx1, sy1, cx, cy, ell, tau):
    """Side-corner zone: pi + vertex-wall with the roles swapped."""
    kind, lo, hi = vw_bounds(cx, cy, sx0, sy0, sx1, sy1, ell, tau)
    if kind != ARC:
        return (kind, lo, hi)
    return (ARC, lo + math.pi, hi + math.pi)


def _bounds_to_set(kind, lo, hi) -> AngularSet:
    if kind == EMPTY:
        return AngularSet.empty()
    if kind == FULLC:
        return AngularSet.full()
    return AngularSet.of(lo, hi)


def forb_point_point(V: Point2, C: Point2, g: LinkGeom) -> AngularSet:
    return _bounds_to_set(*pp_bounds(V[0], V[1], C[0], C[1], g.ell, g.tau))


def forb_vertex_wall(V: Point2, W: Segment2, g: LinkGeom) -> AngularSet:
    """Forb(V, W) with all case reductions performed internally."""
    return _bounds_to_set(*vw_bounds(V[0], V[1], W.a[0], W.a[1], W.b[0], W.b[1], g.ell, g.tau))


def forb_side_corner(S: Segment2, C: Point2, g: LinkGeom) -> AngularSet:
    """Forb(S, C) by reflection symmetry: pi + Forb(C, S)."""
    return _bounds_to_set(*sc_bounds(S.a[0], S.a[1], S.b[0], S.b[1], C[0], C[1], g.ell, g.tau))


def stops_vertex_wall(V: Point2, W: Segment2, g: LinkGeom) -> StopPair:
    """Left and right stops of (V, W) in the canonical frame.

    Requires tau < sigma < ell + tau and both wall corners inside the open
    annulus (tau, ell + tau) around V; otherwise the caller must reduce to
    the point-point case or clip first.
    """
    ell, tau = g.ell, g.tau
    wx, wy = W.b[0] - W.a[0], W.b[1] - W.a[1]
    wlen = math.hypot(wx, wy)
    if wlen <= EPS:
        raise ValueError("degenerate wall; treat as a corner")
    ux, uy = wx / wlen, wy / wlen
    nx, ny = -uy, ux
    s = nx * (V[0] - W.a[0]) + ny * (V[1] - W.a[1])
    if s > 0.0:
        ux, uy, nx, ny, s = -ux, -uy, -nx, -ny, -s
    sigma = -s
    if not (tau < sigma < ell + tau):
        raise ValueError("sigma outside (tau, ell+tau); use the reduction lemmas")
    for corner in (W.a, W.b):
        d = math.hypot(corner[0] - V[0], corner[1] - V[1])
        if not (tau < d < ell + tau):
            raise ValueError("wall corner outside the annulus; clip first")
    ox, oy = V[0] + sigma * nx, V[1] + sigma * ny
    xa = ux * (W.a[0] - ox) + uy * (W.a[1] - oy)
    xb = ux * (W.b[0] - ox) + uy * (W.b[1] - oy)
    if xa > xb:
        xa, xb = xb, xa
    xmax = math.sqrt(ell * ell - (sigma - tau) ** 2)
    if xmax <= xa:
        lcase, lx = "L1", xa
    elif xmax < xb:
        lcase, lx = "L2", xmax
    else:
        lcase, lx = "L3", xb
    if xb <= -xmax:
        rcase, rx = "R1", xb
    elif -xmax > xa:
        rcase, rx = "R2", -xmax
    else:
        rcase, rx = "R3", xa
    assert (lcase, rcase) not in (("L1", "R1"), ("L1", "R2"), ("L2", "R1"))
    return StopPair(
        (ox + lx * ux, oy + lx * uy),
        (ox + rx * ux, oy + rx * uy),
        (lcase, rcase),
    )


# ---------------------------------------------------------------------------
# wall disposition relative to a box


def classify_wall_case(bt: Rect, W: Segment2, tau: float) -> str:
    """CASE0 if W meets the tau-thickened box, else the half-space cases."""
    if sep_segment_rect(W, bt) <= tau:
        return CASE0
    sides = 0
    for inside in (
        W.a[0] < bt.x0 and W.b[0] < bt.x0,
        W.a[0] > bt.x1 and W.b[0] > bt.x1,
        W.a[1] < bt.y0 and W.b[1] < bt.y0,
        W.a[1] > bt.y1 and W.b[1] > bt.y1,
    ):
        if inside:
            sides += 1
    if sides >= 2:
        return CASE_II
    if sides == 1:
        return CASE_I
    return CASE_III


# ---------------------------------------------------------------------------
# exact per-angle predicates (used to certify box-zone endpoints)


def _swept_hull(bt: Rect, vx: float, vy: float) -> tuple:
    """Convex hull of bt union (bt + v), counterclockwise, as flat coords."""
    x0, y0, x1, y1 = bt.x0, bt.y0, bt.x1, bt.y1
    if vx >= 0.0:
        if vy >= 0.0:
            return (x0, y0, x1, y0, x1 + vx, y0 + vy, x1 + vx, y1 + vy, x0 + vx, y1 + vy, x0, y1)
        return (x0, y0, x0 + vx, y0 + vy, x1 + vx, y0 + vy, x1 + vx, y1 + vy, x1, y1, x0, y1)
    if vy >= 0.0:
        return (x0, y0, x1, y0, x1, y1, x1 + vx, y1 + vy, x0 + vx, y1 + vy, x0 + vx, y0 + vy)
    return (x0 + vx, y0 + vy, x1 + vx, y0 + vy, x1, y0, x1, y1, x0, y1, x0 + vx, y1 + vy)


def box_wall_forbidden_at(bt: Rect, W: Segment2, g: LinkGeom, theta: float) -> bool:
    """Exact test: does some placement in bt at angle theta hit the wall?

    Equivalent to Sep(W, hull(bt, bt + ell*e(theta))) <= tau since the swept
    footprints form the Minkowski sum of the box with the link capsule.
    """
    h = _swept_hull(bt, g.ell * math.cos(theta), g.ell * math.sin(theta))
    (pax, pay), (pbx, pby) = W.a, W.b
    # inside test for one endpoint (hull is CCW); crossings are caught by
    # the edge distances below
    inside = True
    for i in range(0, 12, 2):
        ax, ay = h[i], h[i + 1]
        bx, by = h[(i + 2) % 12], h[(i + 3) % 12]
        if (bx - ax) * (pay - ay) - (by - ay) * (pax - ax) < 0.0:
            inside = False
            break
    if inside:
        return True
    tau = g.tau
    for i in range(0, 12, 2):
        d = seg_seg_dist(
            pax, pay, pbx, pby, h[i], h[i + 1], h[(i + 2) % 12], h[(i + 3) % 12]
        )
        if d <= tau:
            return True
    return False


def box_corner_forbidden_at(bt: Rect, C: Point2, g: LinkGeom, theta: float) -> bool:
    """Exact test for a corner feature: bt must meet the reversed capsule."""
    seg = Segment2(C, (C[0] - g.ell * math.cos(theta), C[1] - g.ell * math.sin(theta)))
    return sep_segment_rect(seg, bt) <= g.tau


# ---------------------------------------------------------------------------
# box zones


def _closest_pair_rect_segment(bt: Rect, W: Segment2):
    """Closest (box point, wall point) pair for disjoint bt and W."""
    best_d = math.inf
    best = ((0.0, 0.0), (0.0, 0.0))
    vs = bt.vertices()
    for i in range(4):
        sa = vs[i]
        sb = vs[(i + 1) % 4]
        for p, (qa, qb) in ((W.a, (sa, sb)), (W.b, (sa, sb)), (sa, (W.a, W.b)), (sb, (W.a, W.b))):
            d = pt_seg_dist(p[0], p[1], qa[0], qa[1], qb[0], qb[1])
            if d < best_d:
                best_d = d
                proj = _project(p, qa, qb)
                best = (proj, p) if qa is sa else (p, proj)
    return best


def _project(p, a, b):
    dx, dy = b[0] - a[0], b[1] - a[1]
    L2 = dx * dx + dy * dy
    if L2 <= EPS * EPS:
        return a
    u = ((p[0] - a[0]) * dx + (p[1] - a[1]) * dy) / L2
    u = 0.0 if u < 0.0 else (1.0 if u > 1.0 else u)
    return (a[0] + u * dx, a[1] + u * dy)


_PROBE = 1e-9
_MARCH = math.pi / 8.0
_BISECT_TOL = 1e-12


def _certified_arc(anchor: float, lo: float, hi: float, forbidden_at):
    """Extend [anchor+lo, anchor+hi] until its outsides test free.

    The true forbidden set is a single arc containing the anchor, so any
    forbidden probe lies inside that arc and bisection against a free
    sample pins the arc end.  Returns (kind, lo, hi) in absolute radians.
    """
    for sign in (1.0, -1.0):
        bound = hi if sign > 0 else -lo
        probe = bound + _PROBE
        if forbidden_at(norm_angle(anchor + sign * probe)):
            inside = probe
            step = _MARCH
            while True:
                if inside + (hi if sign < 0 else -lo) >= TWO_PI:
                    return (FULLC, 0.0, 0.0)
                outside = inside + step
                if not forbidden_at(norm_angle(anchor + sign * outside)):
                    break
                inside = outside
                step *= 2.0
            while outside - inside > _BISECT_TOL:
                mid = 0.5 * (inside + outside)
                if forbidden_at(norm_angle(anchor + sign * mid)):
                    inside = mid
                else:
                    outside = mid
            bound = outside
        else:
            bound = probe
        if sign > 0:
            hi = bound
        else:
            lo = -bound
    if hi - lo >= TWO_PI:
        return (FULLC, 0.0, 0.0)
    return (ARC, anchor + lo - WIDEN, anchor + hi + WIDEN)


def _box_wall_arc(bt: Rect, W: Segment2, g: LinkGeom):
    (wax, way), (wbx, wby) = W.a, W.b
    sep = sep_segment_rect(W, bt)
    ell, tau = g.ell, g.tau
    if sep <= tau:
        return (FULLC, None)
    if sep > ell + tau:
        return (EMPTY, None)
    pb, pw = _closest_pair_rect_segment(bt, W)
    anchor = math.atan2(pw[1] - pb[1], pw[0] - pb[0])
    lo = hi = 0.0
    for vx, vy in bt.vertices():
        kind, l, h = vw_bounds(vx, vy, wax, way, wbx, wby, ell, tau)
        if kind == ARC:
            rl = math.remainder(l - anchor, TWO_PI)
            rh = rl + (h - l)
            if rl < lo:
                lo = rl
            if rh > hi:
                hi = rh
    vs = bt.vertices()
    for i in range(4):
        sx0, sy0 = vs[i]
        sx1, sy1 = vs[(i + 1) % 4]
        for cx, cy in (W.a, W.b):
            kind, l, h = sc_bounds(sx0, sy0, sx1, sy1, cx, cy, ell, tau)
            if kind == ARC:
                rl = math.remainder(l - anchor, TWO_PI)
                rh = rl + (h - l)
                if rl < lo:
                    lo = rl
                if rh > hi:
                    hi = rh
    kind, l, h = _certified_arc(anchor, lo, hi, lambda th: box_wall_forbidden_at(bt, W, g, th))
    if kind == FULLC:
        return (FULLC, None)
    return (ARC, AngularInterval.make(l, h))


def _box_corner_arc(bt: Rect, C: Point2, g: LinkGeom):
    cx, cy = C
    sep = sep_point_rect(C, bt)
    ell, tau = g.ell, g.tau
    if sep <= tau:
        return (FULLC, None)
    if sep > ell + tau:
        return (EMPTY, None)
    px = cx if bt.x0 <= cx <= bt.x1 else (bt.x0 if cx < bt.x0 else bt.x1)
    py = cy if bt.y0 <= cy <= bt.y1 else (bt.y0 if cy < bt.y0 else bt.y1)
    anchor = math.atan2(cy - py, cx - px)
    lo = hi = 0.0
    vs = bt.vertices()
    for vx, vy in vs:
        kind, l, h = pp_bounds(vx, vy, cx, cy, ell, tau)
        if kind == ARC:
            rl = math.remainder(l - anchor, TWO_PI)
            rh = rl + (h - l)
            if rl < lo:
                lo = rl
            if rh > hi:
                hi = rh
    for i in range(4):
        sx0, sy0 = vs[i]
        sx1, sy1 = vs[(i + 1) % 4]
        kind, l, h = sc_bounds(sx0, sy0, sx1, sy1, cx, cy, ell, tau)
        if kind == ARC:
            rl = math.remainder(l - anchor, TWO_PI)
            rh = rl + (h - l)
            if rl < lo:
                lo = rl
            if rh > hi:
                hi = rh
    kind, l, h = _certified_arc(anchor, lo, hi, lambda th: box_corner_forbidden_at(bt, C, g, th))
    if kind == FULLC:
        return (FULLC, None)
    return (ARC, AngularInterval.make(l, h))


def forb_box_wall(bt: Rect, W: Segment2, g: LinkGeom) -> AngularSet:
    """Conservative forbidden zone of a box against a wall (one cone)."""
    kind, arc = _box_wall_arc(bt, W, g)
    if kind == FULLC:
        return AngularSet.full()
    if kind == EMPTY:
        return AngularSet.empty()
    return AngularSet([arc])


def forb_box_corner(bt: Rect, C: Point2, g: LinkGeom) -> AngularSet:
    kind, arc = _box_corner_arc(bt, C, g)
    if kind == FULLC:
        return AngularSet.full()
    if kind == EMPTY:
        return AngularSet.empty()
    return AngularSet([arc])


def cone_decomposition(bt: Rect, feature, g: LinkGeom) -> list[Cone]:
    """Cones of the box-feature zone with provenance; at most three."""
    if isinstance(feature, Segment2) and not feature.is_degenerate():
        case = classify_wall_case(bt, feature, g.tau)
        kind, arc = _box_wall_arc(bt, feature, g)
    else:
        c = feature.a if isinstance(feature, Segment2) else feature
        case = CASE0 if sep_point_rect(c, bt) <= g.tau else "corner"
        kind, arc = _box_corner_arc(bt, c, g)
    if kind == EMPTY:
        cones: list[Cone] = []
    elif kind == FULLC:
        cones = [Cone(AngularInterval.full_circle(), (case, "all"))]
    else:
        cones = [Cone(arc, (case, "arc"))]
    assert len(cones) <= 3
    return cones


def box_feature_arc(bt: Rect, feature, g: LinkGeom):
    """Zone of a box against a feature shape as ("full"|"empty"|"arc", arc)."""
    if isinstance(feature, Segment2) and not feature.is_degenerate():
        return _box_wall_arc(bt, feature, g)
    c = feature.a if isinstance(feature, Segment2) else feature
    return _box_corner_arc(bt, c, g)


def box_feature_zone(bt: Rect, feature, g: LinkGeom) -> AngularSet:
    """Zone of a box against a corner or wall feature shape."""
    kind, arc = box_feature_arc(bt, feature, g)
    if kind == FULLC:
        return AngularSet.full()
    if kind == EMPTY:
        return AngularSet.empty()
    return AngularSet([arc])
