import math
import random

import pytest

from thicklink.forbidden import (
    CASE0,
    CASE_I,
    CASE_II,
    CASE_III,
    box_corner_forbidden_at,
    box_wall_forbidden_at,
    classify_wall_case,
    cone_decomposition,
    delta_correction,
    forb_box_corner,
    forb_box_wall,
    forb_point_point,
    forb_side_corner,
    forb_vertex_wall,
    stops_vertex_wall,
    theta_nominal,
)
from thicklink.geometry import TWO_PI, AngularSet, LinkGeom, Rect, Segment2, angle_dist
from thicklink.oracle import sweep_forbidden


def _endpoints_match(computed: AngularSet, swept: AngularSet, tol: float) -> bool:
    if computed.is_full or swept.is_full:
        return computed.is_full == swept.is_full
    ci = computed.intervals()
    si = swept.intervals()
    if len(ci) != len(si):
        return False
    return all(
        angle_dist(a.s, b.s) <= tol and angle_dist(a.t, b.t) <= tol
        for a, b in zip(ci, si)
    )


def test_theta_nominal():
    assert theta_nominal((0, 0), (1, 0)) == pytest.approx(0.0)
    assert theta_nominal((0, 0), (0, -1)) == pytest.approx(3 * math.pi / 2)
    assert theta_nominal((1, 1), (2, 2)) == pytest.approx(math.pi / 4)
    with pytest.raises(ValueError):
        theta_nominal((1, 1), (1, 1))


def test_forb_point_point_examples():
    g = LinkGeom(3, 1)
    assert forb_point_point((0, 0), (5, 0), g).is_empty
    got = forb_point_point((0, 0), (2, 0), g).intervals()[0]
    assert angle_dist(got.s, -math.pi / 6) < 1e-9
    assert angle_dist(got.t, math.pi / 6) < 1e-9
    g2 = LinkGeom(1, 1)
    got2 = forb_point_point((0, 0), (1.5, 0), g2).intervals()[0]
    assert got2.t == pytest.approx(math.acos(0.75), abs=1e-9)
    assert forb_point_point((0, 0), (0.5, 0), g2).is_full
    # d == ell + tau: singleton up to widening
    got3 = forb_point_point((0, 0), (2.0, 0), g2).intervals()[0]
    assert got3.width() <= 1e-9


def test_point_lemma_branch_seam_continuity():
    rng = random.Random(2)
    for _ in range(1000):
        ell = rng.uniform(0.2, 5.0)
        tau = rng.uniform(0.01, 3.0)
        d = math.sqrt(tau * tau + ell * ell)
        g = LinkGeom(ell, tau)
        short = math.asin(tau / d)
        longb = math.acos((ell * ell + d * d - tau * tau) / (2 * d * ell))
        assert short == pytest.approx(longb, abs=1e-9)
        assert delta_correction(d, g) == pytest.approx(short, abs=1e-9)


def test_forb_point_point_against_sweep():
    rng = random.Random(31)
    n = 7200
    tol = TWO_PI / n + 1e-9
    for _ in range(120):
        ell = rng.uniform(0.5, 4.0)
        tau = rng.uniform(0.0, 2.0)
        g = LinkGeom(ell, tau)
        regime = rng.randrange(4)
        if regime == 0:
            d = rng.uniform((ell + tau) * 1.01, (ell + tau) * 2 + 0.1)
        elif regime == 1:
            d = rng.uniform(tau * 0.1, tau) if tau > 0 else 0.0
        elif regime == 2:
            d = rng.uniform(tau + 1e-3, math.sqrt(tau * tau + ell * ell))
        else:
            d = rng.uniform(math.sqrt(tau * tau + ell * ell), ell + tau)
        ang = rng.uniform(0, TWO_PI)
        V = (rng.uniform(-1, 1), rng.uniform(-1, 1))
        C = (V[0] + d * math.cos(ang), V[1] + d * math.sin(ang))
        got = forb_point_point(V, C, g)
        swept = sweep_forbidden([V], C, g, n).intervals
        if got.measure() <= 2 * TWO_PI / n or swept.is_empty and got.measure() <= 4 * TWO_PI / n:
            continue  # zone thinner than the sweep resolution
        assert _endpoints_match(got, swept, tol), (V, C, ell, tau, d)


def test_stops_examples():
    g = LinkGeom(5, 1)
    V = (0.0, -3.0)
    sp = stops_vertex_wall(V, Segment2((-2, 0), (2, 0)), g)
    assert sp.case_tag == ("L3", "R3")
    assert sp.left == pytest.approx((2.0, 0.0))
    assert sp.right == pytest.approx((-2.0, 0.0))
    sp2 = stops_vertex_wall(V, Segment2((-5, 0), (5, 0)), g)
    assert sp2.case_tag == ("L2", "R2")
    assert sp2.left[0] == pytest.approx(math.sqrt(21))
    assert sp2.right[0] == pytest.approx(-math.sqrt(21))
    sp3 = stops_vertex_wall(V, Segment2((4.8, 0), (5.0, 0)), g)
    assert sp3.case_tag == ("L1", "R3")
    assert sp3.left == pytest.approx((4.8, 0.0))
    assert sp3.right == pytest.approx((4.8, 0.0))


def test_stops_preconditions():
    g = LinkGeom(5, 1)
    with pytest.raises(ValueError):
        stops_vertex_wall((0, -0.5), Segment2((-2, 0), (2, 0)), g)  # sigma <= tau
    with pytest.raises(ValueError):
        stops_vertex_wall((0, -3), Segment2((-20, 0), (20, 0)), g)  # corners break (vc)


def _random_vertex_wall(rng):
    ell = rng.uniform(0.5, 5.0)
    tau = rng.uniform(0.0, 2.0)
    g = LinkGeom(ell, tau)
    V = (rng.uniform(-1, 1), rng.uniform(-1, 1))
    ang = rng.uniform(0, TWO_PI)
    off = rng.uniform(0.0, (ell + tau) * 1.4)
    mid = (V[0] + off * math.cos(ang), V[1] + off * math.sin(ang))
    wang = rng.uniform(0, TWO_PI)
    h1, h2 = rng.uniform(0.05, 4.0), rng.uniform(0.05, 4.0)
    W = Segment2(
        (mid[0] - h1 * math.cos(wang), mid[1] - h1 * math.sin(wang)),
        (mid[0] + h2 * math.cos(wang), mid[1] + h2 * math.sin(wang)),
    )
    return V, W, g


def test_forb_vertex_wall_against_sweep():
    rng = random.Random(77)
    n = 7200
    tol = TWO_PI / n + 1e-9
    checked = 0
    for _ in range(400):
        V, W, g = _random_vertex_wall(rng)
        got = forb_vertex_wall(V, W, g)
        swept = sweep_forbidden([V], W, g, n).intervals
        if got.is_full or swept.is_full:
            assert got.is_full == swept.is_full
            continue
        if got.measure() <= 4 * TWO_PI / n:
            continue
        assert _endpoints_match(got, swept, tol), (V, W, g)
        checked += 1
    assert checked > 200


def test_forb_vertex_wall_special_cases():
    g = LinkGeom(5, 1)
    assert forb_vertex_wall((0, -10), Segment2((-1, 0), (1, 0)), g).is_empty
    assert forb_vertex_wall((0, -0.5), Segment2((-1, 0), (1, 0)), g).is_full
    got = forb_vertex_wall((0.0, -3.0), Segment2((-2, 0), (2, 0)), g).intervals()[0]
    alpha = math.atan2(3, 2) - math.asin(1 / math.sqrt(13))
    beta = math.atan2(3, -2) + math.asin(1 / math.sqrt(13))
    assert got.s == pytest.approx(alpha, abs=1e-9)
    assert got.t == pytest.approx(beta, abs=1e-9)


def test_forb_side_corner_reflection():
    rng = random.Random(13)
    for _ in range(10_000 // 10):
        ell = rng.uniform(0.5, 4.0)
        tau = rng.uniform(0.0, 1.5)
        g = LinkGeom(ell, tau)
        S = Segment2((rng.uniform(-3, 3), rng.uniform(-3, 3)), (rng.uniform(-3, 3), rng.uniform(-3, 3)))
        if S.is_degenerate(1e-6):
            continue
        C = (rng.uniform(-3, 3), rng.uniform(-3, 3))
        a = forb_side_corner(S, C, g)
        b = forb_vertex_wall(C, S, g).shifted(math.pi)
        assert a == b  # identical code path, but pin the symmetry contract
        if not a.is_empty and not a.is_full:
            ia, ib = a.intervals()[0], b.intervals()[0]
            assert angle_dist(ia.s, ib.s) <= 1e-12
            assert angle_dist(ia.t, ib.t) <= 1e-12


def test_forb_side_corner_unreachable():
    g = LinkGeom(1, 0.1)
    assert forb_side_corner(Segment2((0, 0), (1, 0)), (10, 10), g).is_empty


def test_monotone_in_tau():
    rng = random.Random(41)
    for _ in range(2000):
        V, W, g = _random_vertex_wall(rng)
        tau2 = g.tau + rng.uniform(0.01, 0.5)
        bigger = forb_vertex_wall(V, W, LinkGeom(g.ell, tau2))
        smaller = forb_vertex_wall(V, W, g)
        assert smaller.intersect(bigger) == smaller  # containment


def test_thin_limit_matches_visibility():
    # tau = 0: zone endpoints are the angles to the ell-clipped wall ends.
    rng = random.Random(59)
    for _ in range(500):
        V, W, _ = _random_vertex_wall(rng)
        ell = rng.uniform(0.5, 5.0)
        g = LinkGeom(ell, 0.0)
        got = forb_vertex_wall(V, W, g)
        clipped = _clip_independent(W, V, ell)
        if clipped is None:
            assert got.is_empty or got.measure() <= 1e-9
            continue
        (a_ang, b_ang) = clipped
        if got.is_empty:
            continue
        iv = got.intervals()[0]
        ok1 = angle_dist(iv.s, a_ang) <= 1e-9 and angle_dist(iv.t, b_ang) <= 1e-9
        ok2 = angle_dist(iv.s, b_ang) <= 1e-9 and angle_dist(iv.t, a_ang) <= 1e-9
        assert ok1 or ok2


def _clip_independent(W: Segment2, V, radius):
    # quadratic clip computed independently with numpy roots
    import numpy as np

    ax, ay = W.a[0] - V[0], W.a[1] - V[1]
    dx, dy = W.b[0] - W.a[0], W.b[1] - W.a[1]
    coef = [dx * dx + dy * dy, 2 * (ax * dx + ay * dy), ax * ax + ay * ay - radius * radius]
    roots = np.roots(coef)
    if np.iscomplexobj(roots) and np.any(np.abs(roots.imag) > 1e-12):
        return None
    t0, t1 = sorted(float(r.real) for r in roots)
    t0, t1 = max(0.0, t0), min(1.0, t1)
    if t1 < t0 or t1 - t0 < 1e-9:
        return None
    p0 = (W.a[0] + t0 * dx, W.a[1] + t0 * dy)
    p1 = (W.a[0] + t1 * dx, W.a[1] + t1 * dy)
    return (theta_nominal(V, p0), theta_nominal(V, p1))


def test_classify_wall_case():
    bt = Rect(0, 0, 1, 1)
    assert classify_wall_case(bt, Segment2((-1, -1), (2, 2)), 0.1) == CASE0
    assert classify_wall_case(bt, Segment2((-3, -4), (3, -4)), 1.0) == CASE_I
    assert classify_wall_case(bt, Segment2((-3, -4), (-2, -4)), 0.5) == CASE_II
    assert classify_wall_case(bt, Segment2((-0.5, -3), (3, 1.5)), 0.2) == CASE_III
    # within tau of the box: CASE0 even without crossing
    assert classify_wall_case(bt, Segment2((1.05, 0), (1.05, 1)), 0.1) == CASE0


def _grid_bases(bt: Rect, k: int = 8):
    xs = [bt.x0 + (bt.x1 - bt.x0) * i / (k - 1) for i in range(k)] if bt.x1 > bt.x0 else [bt.x0]
    ys = [bt.y0 + (bt.y1 - bt.y0) * i / (k - 1) for i in range(k)] if bt.y1 > bt.y0 else [bt.y0]
    return [(x, y) for x in xs for y in ys]


def _random_box_wall(rng):
    ell = rng.uniform(0.5, 4.0)
    tau = rng.uniform(0.0, 1.5)
    g = LinkGeom(ell, tau)
    w = rng.uniform(0.05, 2.5)
    x0, y0 = rng.uniform(-2, 2), rng.uniform(-2, 2)
    bt = Rect(x0, y0, x0 + w, y0 + rng.uniform(0.05, 2.5))
    ang = rng.uniform(0, TWO_PI)
    off = rng.uniform(0.0, (ell + tau) * 1.3)
    mid = (bt.mid()[0] + off * math.cos(ang), bt.mid()[1] + off * math.sin(ang))
    wang = rng.uniform(0, TWO_PI)
    h = rng.uniform(0.05, 3.0)
    W = Segment2(
        (mid[0] - h * math.cos(wang), mid[1] - h * math.sin(wang)),
        (mid[0] + h * math.cos(wang), mid[1] + h * math.sin(wang)),
    )
    return bt, W, g


def test_forb_box_wall_point_box_equals_vertex_wall():
    rng = random.Random(3)
    for _ in range(50):
        _, W, g = _random_vertex_wall(rng)
        V = (rng.uniform(-1, 1), rng.uniform(-1, 1))
        box = Rect(V[0], V[1], V[0], V[1])
        a = forb_box_wall(box, W, g)
        b = forb_vertex_wall(V, W, g)
        if a.is_full or b.is_full:
            assert a.is_full == b.is_full
            continue
        if a.is_empty or b.is_empty:
            assert a.measure() <= 1e-6 and b.measure() <= 1e-6
            continue
        ia, ib = a.intervals()[0], b.intervals()[0]
        assert angle_dist(ia.s, ib.s) <= 1e-8
        assert angle_dist(ia.t, ib.t) <= 1e-8


def test_forb_box_wall_conservative_and_few_cones():
    rng = random.Random(8)
    n = 720
    for _ in range(250):
        bt, W, g = _random_box_wall(rng)
        zone = forb_box_wall(bt, W, g)
        cones = cone_decomposition(bt, W, g)
        assert len(cones) <= 3
        swept = sweep_forbidden(_grid_bases(bt), W, g, n)
        for k in range(n):
            if swept.samples[k]:
                assert zone.contains(k * TWO_PI / n), (bt, W, g, k)


def test_forb_box_corner_conservative():
    rng = random.Random(9)
    n = 720
    for _ in range(250):
        bt, W, g = _random_box_wall(rng)
        C = W.a
        zone = forb_box_corner(bt, C, g)
        if zone.is_full:
            continue
        swept = sweep_forbidden(_grid_bases(bt), C, g, n)
        for k in range(n):
            if swept.samples[k]:
                assert zone.contains(k * TWO_PI / n), (bt, C, g, k)


def test_forb_box_corner_inside_thickened_box():
    g = LinkGeom(2, 0.5)
    assert forb_box_corner(Rect(0, 0, 1, 1), (1.2, 0.5), g).is_full
    assert forb_box_corner(Rect(0, 0, 1, 1), (9, 9), g).is_empty


def test_box_zone_shrinks_toward_point_zone():
    # Halving the box around a fixed center drives the excess measure down.
    g = LinkGeom(3, 0.6)
    W = Segment2((-1.5, -2.2), (2.0, -2.6))
    center = (0.3, 0.4)
    exact = forb_vertex_wall(center, W, g).measure()
    prev = None
    for level in range(6):
        half = 1.0 / (2 ** level)
        bt = Rect(center[0] - half, center[1] - half, center[0] + half, center[1] + half)
        zone = forb_box_wall(bt, W, g)
        excess = zone.measure() - exact
        assert excess >= -1e-9
        if prev is not None:
            assert excess <= prev + 1e-9
        prev = excess
    assert prev <= 0.1


def test_exact_predicates_agree_with_clearance():
    from thicklink.geometry import link_clearance

    rng = random.Random(21)
    for _ in range(300):
        bt, W, g = _random_box_wall(rng)
        theta = rng.uniform(0, TWO_PI)
        pred = box_wall_forbidden_at(bt, W, g, theta)
        # oracle: fine grid of bases
        hit = any(link_clearance(b, theta, g, W) <= 0 for b in _grid_bases(bt, 6))
        if hit:
            assert pred  # sampled hit must be detected
        C = W.a
        predc = box_corner_forbidden_at(bt, C, g, theta)
        hitc = any(link_clearance(b, theta, g, C) <= 0 for b in _grid_bases(bt, 6))
        if hitc:
            assert predc
