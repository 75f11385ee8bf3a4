"""Scalar, planar and circle (S^1) primitives.

Angles live on [0, 2*pi) with 0 and 2*pi identified.  Angular intervals
use the wrap convention: [s, t] means {theta : s <= theta <= t} when
s <= t, and [s, 2*pi] + [0, t] when s > t.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

TWO_PI = 2.0 * math.pi

# Working tolerance for angle equality and interval merging.  All the
# forbidden-zone formulas emit arcsin/arccos values, so exactness is out of
# reach; conservative rounding absorbs the slack.
EPS = 1e-12

Point2 = tuple[float, float]


def norm_angle(a: float) -> float:
    """Normalize an angle into [0, 2*pi)."""
    a = math.fmod(a, TWO_PI)
    if a < 0.0:
        a += TWO_PI
    return a


def angle_dist(a: float, b: float) -> float:
    """Riemannian circle metric d(a,b) = min(|a-b|, 2*pi-|a-b|)."""
    d = abs(norm_angle(a) - norm_angle(b))
    return min(d, TWO_PI - d)


def polar_angle(v: Point2) -> float:
    """Polar angle of a non-zero vector, in [0, 2*pi)."""
    return norm_angle(math.atan2(v[1], v[0]))


@dataclass(frozen=True)
class AngularInterval:
    """Closed angular interval under the wrap convention, or all of S^1."""

    s: float
    t: float
    full: bool = False

    @staticmethod
    def make(s: float, t: float) -> "AngularInterval":
        # A raw span of 2*pi or more is the whole circle; [2*pi, 0] wraps
        # down to the singleton {0}.
        if t - s >= TWO_PI:
            return AngularInterval(0.0, 0.0, full=True)
        return AngularInterval(norm_angle(s), norm_angle(t))

    @staticmethod
    def full_circle() -> "AngularInterval":
        return AngularInterval(0.0, 0.0, full=True)

    def width(self) -> float:
        if self.full:
            return TWO_PI
        w = self.t - self.s
        return w if w >= 0.0 else w + TWO_PI

    def contains(self, theta: float) -> bool:
        if self.full:
            return True
        th = norm_angle(theta)
        if self.s <= self.t:
            return self.s <= th <= self.t
        return th >= self.s or th <= self.t

    def shifted(self, delta: float) -> "AngularInterval":
        if self.full:
            return self
        return AngularInterval(norm_angle(self.s + delta), norm_angle(self.t + delta))


def interval_contains(interval: AngularInterval, theta: float) -> bool:
    """Membership under the wrap convention."""
    return interval.contains(theta)


class AngularSet:
    """Normalized union of pairwise-disjoint angular intervals.

    Stored as (start, end) arcs with end = start + width, width in [0, 2*pi];
    arcs are sorted by start and merged whenever they overlap or come within
    EPS of touching.
    """

    __slots__ = ("_arcs", "_full")

    def __init__(self, intervals: "list[AngularInterval] | tuple" = ()):
        arcs = []
        full = False
        for it in intervals:
            if it.full:
                full = True
                break
            arcs.append((it.s, it.s + it.width()))
        if full:
            self._arcs: tuple = ()
            self._full = True
            return
        self._arcs, self._full = _normalize_arcs(arcs)

    @staticmethod
    def empty() -> "AngularSet":
        return AngularSet()

    @staticmethod
    def full() -> "AngularSet":
        return AngularSet([AngularInterval.full_circle()])

    @staticmethod
    def of(s: float, t: float) -> "AngularSet":
        return AngularSet([AngularInterval.make(s, t)])

    @staticmethod
    def _from_arcs(arcs: list[tuple[float, float]]) -> "AngularSet":
        out = AngularSet()
        out._arcs, out._full = _normalize_arcs(arcs)
        return out

    @property
    def is_empty(self) -> bool:
        return not self._full and not self._arcs

    @property
    def is_full(self) -> bool:
        return self._full

    def intervals(self) -> list[AngularInterval]:
        if self._full:
            return [AngularInterval.full_circle()]
        return [AngularInterval.make(s, e) for s, e in self._arcs]

    def arcs(self) -> tuple:
        return self._arcs

    def measure(self) -> float:
        if self._full:
            return TWO_PI
        return sum(e - s for s, e in self._arcs)

    def contains(self, theta: float) -> bool:
        if self._full:
            return True
        th = norm_angle(theta)
        for s, e in self._arcs:
            if s <= th <= e or s <= th + TWO_PI <= e:
                return True
        return False

    def union(self, other: "AngularSet") -> "AngularSet":
        if self._full or other._full:
            return AngularSet.full()
        return AngularSet._from_arcs(list(self._arcs) + list(other._arcs))

    def complement(self) -> "AngularSet":
        """Closure of the set complement (gaps between the arcs)."""
        if self._full:
            return AngularSet.empty()
        if not self._arcs:
            return AngularSet.full()
        gaps = []
        n = len(self._arcs)
        for i in range(n):
            e = self._arcs[i][1]
            s_next = self._arcs[(i + 1) % n][0] + (TWO_PI if i == n - 1 else 0.0)
            gaps.append((e, s_next))
        return AngularSet._from_arcs(gaps)

    def intersect(self, other: "AngularSet") -> "AngularSet":
        if self._full:
            return AngularSet._from_arcs(list(other._arcs)) if not other._full else AngularSet.full()
        if other._full:
            return AngularSet._from_arcs(list(self._arcs))
        out = []
        for s1, e1 in self._arcs:
            for s2, e2 in other._arcs:
                for shift in (-TWO_PI, 0.0, TWO_PI):
                    lo = max(s1, s2 + shift)
                    hi = min(e1, e2 + shift)
                    if hi >= lo:
                        out.append((lo, hi))
        return AngularSet._from_arcs(out)

    def shifted(self, delta: float) -> "AngularSet":
        if self._full:
            return self
        return AngularSet._from_arcs([(s + delta, e + delta) for s, e in self._arcs])

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, AngularSet):
            return NotImplemented
        if self._full != other._full:
            return False
        if len(self._arcs) != len(other._arcs):
            return False
        return all(
            abs(a[0] - b[0]) <= 1e-9 and abs(a[1] - b[1]) <= 1e-9
            for a, b in zip(self._arcs, other._arcs)
        )

    def __repr__(self) -> str:
        if self._full:
            return "AngularSet(S1)"
        return "AngularSet(%s)" % (", ".join("[%.6f,%.6f]" % (s, norm_angle(e) if e > TWO_PI else e) for s, e in self._arcs))


def _normalize_arcs(arcs: list[tuple[float, float]]) -> tuple[tuple, bool]:
    """Sort, wrap and merge raw (start, end) arcs; detect full coverage."""
    cleaned = []
    for s, e in arcs:
        if e - s >= TWO_PI - EPS:
            return (), True
        if e < s:
            raise ValueError("arc end before start: (%r, %r)" % (s, e))
        sn = norm_angle(s)
        cleaned.append((sn, sn + (e - s)))
    if not cleaned:
        return (), False
    cleaned.sort()
    merged = [cleaned[0]]
    for s, e in cleaned[1:]:
        ps, pe = merged[-1]
        if s <= pe + EPS:
            merged[-1] = (ps, max(pe, e))
        else:
            merged.append((s, e))
    # Wrap-around merge: last arc may spill past 2*pi into the first ones.
    while len(merged) > 1:
        ls, le = merged[-1]
        fs, fe = merged[0]
        if le >= fs + TWO_PI - EPS:
            merged[-1] = (ls, max(le, fe + TWO_PI))
            merged.pop(0)
        else:
            break
    if merged[0][1] - merged[0][0] >= TWO_PI - EPS:
        return (), True
    return tuple(merged), False


def arcs_cover_circle(arcs: list[tuple[float, float]]) -> bool:
    """Do raw (start, end) arcs (end >= start) cover all of S^1?"""
    return _normalize_arcs(arcs)[1]


def set_union(a: AngularSet, b: AngularSet) -> AngularSet:
    return a.union(b)


def set_complement(a: AngularSet) -> AngularSet:
    return a.complement()


def set_intersect(a: AngularSet, b: AngularSet) -> AngularSet:
    return a.intersect(b)


@dataclass(frozen=True)
class Segment2:
    a: Point2
    b: Point2

    def length(self) -> float:
        return math.hypot(self.b[0] - self.a[0], self.b[1] - self.a[1])

    def is_degenerate(self, tol: float = EPS) -> bool:
        return self.length() <= tol


@dataclass(frozen=True)
class Rect:
    """Axis-aligned rectangle [x0,x1] x [y0,y1]."""

    x0: float
    y0: float
    x1: float
    y1: float

    def width(self) -> float:
        return max(self.x1 - self.x0, self.y1 - self.y0)

    def radius(self) -> float:
        """Circumradius (half diagonal)."""
        return 0.5 * math.hypot(self.x1 - self.x0, self.y1 - self.y0)

    def mid(self) -> Point2:
        return (0.5 * (self.x0 + self.x1), 0.5 * (self.y0 + self.y1))

    def vertices(self) -> tuple[Point2, Point2, Point2, Point2]:
        return ((self.x0, self.y0), (self.x1, self.y0), (self.x1, self.y1), (self.x0, self.y1))

    def sides(self) -> tuple[Segment2, Segment2, Segment2, Segment2]:
        v = self.vertices()
        return (Segment2(v[0], v[1]), Segment2(v[1], v[2]), Segment2(v[2], v[3]), Segment2(v[3], v[0]))

    def contains_point(self, p: Point2) -> bool:
        return self.x0 <= p[0] <= self.x1 and self.y0 <= p[1] <= self.y1

    def quadrants(self) -> tuple["Rect", "Rect", "Rect", "Rect"]:
        mx, my = self.mid()
        return (
            Rect(self.x0, self.y0, mx, my),
            Rect(mx, self.y0, self.x1, my),
            Rect(self.x0, my, mx, self.y1),
            Rect(mx, my, self.x1, self.y1),
        )


@dataclass(frozen=True)
class LinkGeom:
    """One thick link: length ell > 0, thickness tau >= 0."""

    ell: float
    tau: float

    def __post_init__(self) -> None:
        if self.ell <= 0.0:
            raise ValueError("link length must be positive")
        if self.tau < 0.0:
            raise ValueError("link thickness must be nonnegative")


def sep_point_point(p: Point2, q: Point2) -> float:
    return math.hypot(p[0] - q[0], p[1] - q[1])


def sep_point_segment(p: Point2, s: Segment2) -> float:
    """Euclidean distance from a point to a closed segment."""
    ax, ay = s.a
    bx, by = s.b
    dx, dy = bx - ax, by - ay
    L2 = dx * dx + dy * dy
    if L2 <= EPS * EPS:
        return math.hypot(p[0] - ax, p[1] - ay)
    u = ((p[0] - ax) * dx + (p[1] - ay) * dy) / L2
    u = 0.0 if u < 0.0 else (1.0 if u > 1.0 else u)
    return math.hypot(p[0] - (ax + u * dx), p[1] - (ay + u * dy))


def _orient(a: Point2, b: Point2, c: Point2) -> float:
    return (b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0])


def segments_intersect(s1: Segment2, s2: Segment2) -> bool:
    """Closed-segment intersection test (touching counts)."""
    d1 = _orient(s2.a, s2.b, s1.a)
    d2 = _orient(s2.a, s2.b, s1.b)
    d3 = _orient(s1.a, s1.b, s2.a)
    d4 = _orient(s1.a, s1.b, s2.b)
    if ((d1 > 0 and d2 < 0) or (d1 < 0 and d2 > 0)) and ((d3 > 0 and d4 < 0) or (d3 < 0 and d4 > 0)):
        return True
    def on(seg: Segment2, p: Point2) -> bool:
        return (
            abs(_orient(seg.a, seg.b, p)) <= EPS
            and min(seg.a[0], seg.b[0]) - EPS <= p[0] <= max(seg.a[0], seg.b[0]) + EPS
            and min(seg.a[1], seg.b[1]) - EPS <= p[1] <= max(seg.a[1], seg.b[1]) + EPS
        )
    return on(s2, s1.a) or on(s2, s1.b) or on(s1, s2.a) or on(s1, s2.b)


def seg_seg_dist(ax, ay, bx, by, px, py, qx, qy) -> float:
    """Distance between segments (a,b) and (p,q), scalar coordinates.

    Touching configurations are covered by the endpoint distances, so only
    proper interior crossings need the orientation test.
    """
    d1 = (qx - px) * (ay - py) - (qy - py) * (ax - px)
    d2 = (qx - px) * (by - py) - (qy - py) * (bx - px)
    if (d1 > 0.0) != (d2 > 0.0) and d1 != 0.0 and d2 != 0.0:
        d3 = (bx - ax) * (py - ay) - (by - ay) * (px - ax)
        d4 = (bx - ax) * (qy - ay) - (by - ay) * (qx - ax)
        if (d3 > 0.0) != (d4 > 0.0) and d3 != 0.0 and d4 != 0.0:
            return 0.0
    return min(
        pt_seg_dist(ax, ay, px, py, qx, qy),
        pt_seg_dist(bx, by, px, py, qx, qy),
        pt_seg_dist(px, py, ax, ay, bx, by),
        pt_seg_dist(qx, qy, ax, ay, bx, by),
    )


def pt_seg_dist(px, py, ax, ay, bx, by) -> float:
    """Distance from point (px,py) to segment (a,b), scalar coordinates."""
    dx, dy = bx - ax, by - ay
    L2 = dx * dx + dy * dy
    if L2 <= EPS * EPS:
        return math.hypot(px - ax, py - ay)
    u = ((px - ax) * dx + (py - ay) * dy) / L2
    if u < 0.0:
        u = 0.0
    elif u > 1.0:
        u = 1.0
    return math.hypot(px - (ax + u * dx), py - (ay + u * dy))


def sep_segment_segment(s1: Segment2, s2: Segment2) -> float:
    return seg_seg_dist(s1.a[0], s1.a[1], s1.b[0], s1.b[1], s2.a[0], s2.a[1], s2.b[0], s2.b[1])


def sep_point_rect(p: Point2, r: Rect) -> float:
    dx = max(r.x0 - p[0], 0.0, p[0] - r.x1)
    dy = max(r.y0 - p[1], 0.0, p[1] - r.y1)
    return math.hypot(dx, dy)


def sep_segment_rect(s: Segment2, r: Rect) -> float:
    if r.contains_point(s.a) or r.contains_point(s.b):
        return 0.0
    best = math.inf
    for side in r.sides():
        d = sep_segment_segment(s, side)
        if d < best:
            best = d
            if best == 0.0:
                return 0.0
    return best


FeatureShape = "Point2 | Segment2"


def link_segment(base: Point2, theta: float, ell: float) -> Segment2:
    return Segment2(base, (base[0] + ell * math.cos(theta), base[1] + ell * math.sin(theta)))


def link_clearance(base: Point2, theta: float, g: LinkGeom, feature) -> float:
    """Thin separation of the link axis from a feature, minus tau.

    Negative means the thick link overlaps the feature, zero means touching.
    A degenerate segment feature is treated as a corner.
    """
    axis = link_segment(base, theta, g.ell)
    if isinstance(feature, Segment2):
        if feature.is_degenerate():
            return sep_point_segment(feature.a, axis) - g.tau
        return sep_segment_segment(feature, axis) - g.tau
    return sep_point_segment(feature, axis) - g.tau
