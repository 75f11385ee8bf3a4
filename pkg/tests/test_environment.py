import math
import random

import pytest

from thicklink.environment import (
    EnvironmentError_,
    features,
    make_environment,
    parse_environment,
    point_in_obstacle,
    serialize_environment,
)
from thicklink.geometry import Rect


TRIANGLE = "bbox 0 0 16 16\npoly 0 0 4 0 0 3\n"


def test_parse_triangle():
    env = parse_environment(TRIANGLE)
    assert len(env.polygons) == 1
    feats = features(env)
    assert sum(1 for f in feats if f.kind == "corner") == 3
    assert sum(1 for f in feats if f.kind == "wall") == 3


def test_parse_empty_obstacles():
    env = parse_environment("bbox 0 0 10 10\n")
    assert env.polygons == ()
    assert features(env) == []


def test_repeated_consecutive_vertex_dropped():
    env = parse_environment("bbox 0 0 16 16\npoly 0 0 4 0 4 0 0 3\n")
    assert len(env.polygons[0]) == 3


def test_parse_errors_carry_line_numbers():
    with pytest.raises(EnvironmentError_, match="line 2"):
        parse_environment("bbox 0 0 8 8\npoly 0 0 1 1\n")
    with pytest.raises(EnvironmentError_, match="line 1"):
        parse_environment("bbox 0 0 x 8\n")
    with pytest.raises(EnvironmentError_, match="outside bbox"):
        parse_environment("bbox 0 0 8 8\npoly 0 0 9 0 0 3\n")
    with pytest.raises(EnvironmentError_, match="missing bbox"):
        parse_environment("# nothing\n")


def test_round_trip_identity():
    rng = random.Random(3)
    polys = []
    for _ in range(5):
        cx, cy = rng.uniform(4, 12), rng.uniform(4, 12)
        pts = []
        for k in range(3):
            ang = 2 * math.pi * (k / 3.0) + rng.uniform(0, 0.5)
            r = rng.uniform(1, 3)
            pts.append((round(cx + r * math.cos(ang), 6), round(cy + r * math.sin(ang), 6)))
        polys.append(pts)
    env = make_environment(polys, Rect(0, 0, 16, 16))
    again = parse_environment(serialize_environment(env))
    assert again == env


def test_polygons_normalized_ccw():
    env = parse_environment("bbox 0 0 16 16\npoly 0 0 0 3 4 0\n")  # clockwise input
    poly = env.polygons[0]
    area = 0.0
    n = len(poly)
    for i in range(n):
        x0, y0 = poly[i]
        x1, y1 = poly[(i + 1) % n]
        area += x0 * y1 - x1 * y0
    assert area > 0


def test_point_in_obstacle():
    env = parse_environment(TRIANGLE)
    assert point_in_obstacle(env, (1.0, 0.5))
    assert not point_in_obstacle(env, (10.0, 10.0))
    assert point_in_obstacle(env, (2.0, 0.0))  # on an edge: closed convention


def _winding_number_inside(p, poly) -> bool:
    # Independent oracle: winding number via summed signed angles.
    total = 0.0
    n = len(poly)
    for i in range(n):
        ax, ay = poly[i][0] - p[0], poly[i][1] - p[1]
        bx, by = poly[(i + 1) % n][0] - p[0], poly[(i + 1) % n][1] - p[1]
        cross = ax * by - ay * bx
        dot = ax * bx + ay * by
        total += math.atan2(cross, dot)
    return abs(total) > math.pi


def test_point_in_obstacle_matches_winding_number():
    rng = random.Random(17)
    env = make_environment(
        [
            [(2, 2), (9, 3), (6, 9)],
            [(8, 8), (14, 8), (14, 14), (8, 14)],
            [(1, 10), (5, 10), (5, 15), (3, 13), (1, 15)],  # non-convex
        ],
        Rect(0, 0, 16, 16),
    )
    for _ in range(10_000):
        p = (rng.uniform(0, 16), rng.uniform(0, 16))
        expected = any(_winding_number_inside(p, poly) for poly in env.polygons)
        got = point_in_obstacle(env, p)
        if got != expected:
            # Disagreement allowed only within a hair of a boundary.
            from thicklink.environment import sep_to_boundary

            assert sep_to_boundary(env, p) < 1e-9
