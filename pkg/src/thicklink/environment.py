"""Polygonal obstacle set, its boundary features, and the text file format.

File format (UTF-8, line oriented, `#` starts a comment):

    bbox x0 y0 x1 y1
    poly x1 y1 x2 y2 ... xk yk

Obstacles are closed sets and may overlap; the obstacle region is their
union.  Polygons are normalized counterclockwise on load so every wall
knows which side the obstacle interior is on.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

from .geometry import EPS, Point2, Rect, Segment2, sep_point_segment

Polygon = tuple[Point2, ...]


class EnvironmentError_(ValueError):
    """Syntax or validation error in an environment file."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = "line %d: %s" % (line, message)
        super().__init__(message)


@dataclass(frozen=True)
class Feature:
    """One boundary feature: a corner point or an open wall segment."""

    kind: str  # "corner" | "wall"
    shape: "Point2 | Segment2"
    id: int


@dataclass(frozen=True)
class Environment:
    polygons: tuple[Polygon, ...]
    bbox: Rect

    def features(self) -> list[Feature]:
        return features(self)


def _dedupe_vertices(pts: list[Point2]) -> list[Point2]:
    out: list[Point2] = []
    for p in pts:
        if out and math.hypot(p[0] - out[-1][0], p[1] - out[-1][1]) <= EPS:
            continue
        out.append(p)
    if len(out) > 1 and math.hypot(out[0][0] - out[-1][0], out[0][1] - out[-1][1]) <= EPS:
        out.pop()
    return out


def _signed_area(pts: list[Point2]) -> float:
    s = 0.0
    n = len(pts)
    for i in range(n):
        x0, y0 = pts[i]
        x1, y1 = pts[(i + 1) % n]
        s += x0 * y1 - x1 * y0
    return 0.5 * s


def _normalize_polygon(pts: list[Point2], line: int | None = None) -> Polygon:
    pts = _dedupe_vertices(pts)
    if len(pts) < 3:
        raise EnvironmentError_("polygon needs at least 3 distinct vertices", line)
    if _signed_area(pts) < 0.0:
        pts.reverse()
    return tuple(pts)


def make_environment(polygons: list[list[Point2]], bbox: Rect) -> Environment:
    if bbox.x1 <= bbox.x0 or bbox.y1 <= bbox.y0:
        raise EnvironmentError_("bbox must have positive extent")
    polys = []
    for poly in polygons:
        norm = _normalize_polygon(list(poly))
        for x, y in norm:
            if not bbox.contains_point((x, y)):
                raise EnvironmentError_("vertex (%g, %g) outside bbox" % (x, y))
        polys.append(norm)
    return Environment(tuple(polys), bbox)


def parse_environment(text: str) -> Environment:
    bbox: Rect | None = None
    polygons: list[Polygon] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        tag, args = parts[0], parts[1:]
        try:
            vals = [float(v) for v in args]
        except ValueError:
            raise EnvironmentError_("malformed number in %r" % raw.strip(), lineno)
        if tag == "bbox":
            if len(vals) != 4:
                raise EnvironmentError_("bbox needs 4 numbers", lineno)
            bbox = Rect(vals[0], vals[1], vals[2], vals[3])
            if bbox.x1 <= bbox.x0 or bbox.y1 <= bbox.y0:
                raise EnvironmentError_("bbox must have positive extent", lineno)
        elif tag == "poly":
            if len(vals) < 6 or len(vals) % 2 != 0:
                raise EnvironmentError_("poly needs an even count of >= 6 numbers", lineno)
            pts = [(vals[i], vals[i + 1]) for i in range(0, len(vals), 2)]
            polygons.append(_normalize_polygon(pts, lineno))
        else:
            raise EnvironmentError_("unknown directive %r" % tag, lineno)
    if bbox is None:
        raise EnvironmentError_("missing bbox line")
    for poly in polygons:
        for x, y in poly:
            if not bbox.contains_point((x, y)):
                raise EnvironmentError_("vertex (%g, %g) outside bbox" % (x, y))
    return Environment(tuple(polygons), bbox)


def serialize_environment(env: Environment) -> str:
    lines = ["bbox %.6f %.6f %.6f %.6f" % (env.bbox.x0, env.bbox.y0, env.bbox.x1, env.bbox.y1)]
    for poly in env.polygons:
        coords = " ".join("%.6f %.6f" % (x, y) for x, y in poly)
        lines.append("poly " + coords)
    return "\n".join(lines) + "\n"


def features(env: Environment) -> list[Feature]:
    """Boundary features: k corners plus k walls per k-vertex polygon.

    Ids are assigned in polygon order, corners before walls, and are stable
    across runs.
    """
    out: list[Feature] = []
    fid = 0
    for poly in env.polygons:
        n = len(poly)
        for v in poly:
            out.append(Feature("corner", v, fid))
            fid += 1
        for i in range(n):
            out.append(Feature("wall", Segment2(poly[i], poly[(i + 1) % n]), fid))
            fid += 1
    return out


def _point_in_polygon(p: Point2, poly: Polygon) -> bool:
    # Boundary counts as inside (closed obstacles).
    n = len(poly)
    for i in range(n):
        if sep_point_segment(p, Segment2(poly[i], poly[(i + 1) % n])) <= EPS:
            return True
    x, y = p
    inside = False
    for i in range(n):
        x0, y0 = poly[i]
        x1, y1 = poly[(i + 1) % n]
        if (y0 > y) != (y1 > y):
            xcross = x0 + (y - y0) * (x1 - x0) / (y1 - y0)
            if x < xcross:
                inside = not inside
    return inside


@lru_cache(maxsize=64)
def _poly_index(env: Environment) -> tuple:
    """Per-polygon bounding boxes for quick rejection."""
    out = []
    for poly in env.polygons:
        xs = [p[0] for p in poly]
        ys = [p[1] for p in poly]
        out.append((min(xs) - EPS, min(ys) - EPS, max(xs) + EPS, max(ys) + EPS, poly))
    return tuple(out)


def point_in_obstacle(env: Environment, p: Point2) -> bool:
    """True iff p lies in the closed union of the obstacle polygons."""
    x, y = p
    for x0, y0, x1, y1, poly in _poly_index(env):
        if x0 <= x <= x1 and y0 <= y <= y1 and _point_in_polygon(p, poly):
            return True
    return False


def sep_to_boundary(env: Environment, p: Point2) -> float:
    """Distance from p to the obstacle boundary (inf if no obstacles)."""
    best = math.inf
    for poly in env.polygons:
        n = len(poly)
        for i in range(n):
            d = sep_point_segment(p, Segment2(poly[i], poly[(i + 1) % n]))
            if d < best:
                best = d
    return best
