import math
import random

import pytest

from thicklink.geometry import (
    TWO_PI,
    AngularInterval,
    AngularSet,
    LinkGeom,
    Segment2,
    angle_dist,
    interval_contains,
    link_clearance,
    norm_angle,
    sep_point_segment,
    set_complement,
    set_intersect,
    set_union,
)


def test_angle_dist_basics():
    assert angle_dist(0.0, math.pi) == pytest.approx(math.pi)
    assert angle_dist(0.1, TWO_PI - 0.1) == pytest.approx(0.2)
    assert angle_dist(1.234, 1.234) == 0.0


def test_angle_dist_metric_axioms():
    rng = random.Random(7)
    for _ in range(100_000):
        a, b, c = (rng.uniform(0, TWO_PI) for _ in range(3))
        dab = angle_dist(a, b)
        assert 0.0 <= dab <= math.pi + 1e-15
        assert dab == pytest.approx(angle_dist(b, a), abs=1e-15)
        assert dab <= angle_dist(a, c) + angle_dist(c, b) + 1e-12


def test_interval_contains_wrap_convention():
    assert interval_contains(AngularInterval.make(3 * math.pi / 2, math.pi / 2), 0.0)
    assert not interval_contains(AngularInterval.make(math.pi / 4, math.pi / 2), math.pi)
    # [2*pi, 0] = [0, 0] and [0, 2*pi] = S^1
    assert interval_contains(AngularInterval.make(TWO_PI, 0.0), 0.0)
    assert not interval_contains(AngularInterval.make(TWO_PI, 0.0), 0.1)
    assert AngularInterval.make(0.0, TWO_PI).full


def test_interval_contains_matches_two_branch_definition():
    rng = random.Random(11)
    for _ in range(100_000):
        s = rng.uniform(0, TWO_PI)
        t = rng.uniform(0, TWO_PI)
        th = rng.uniform(0, TWO_PI)
        expected = (s <= th <= t) if s <= t else (th >= s or th <= t)
        assert interval_contains(AngularInterval.make(s, t), th) == expected


def test_set_union_merges_abutting():
    u = set_union(AngularSet.of(0.0, 1.0), AngularSet.of(1.0, 2.0))
    assert u == AngularSet.of(0.0, 2.0)


def test_set_complement_edge_cases():
    assert set_complement(AngularSet.full()).is_empty
    assert set_complement(AngularSet.empty()).is_full
    # Complement of a closed singleton closes back to the full circle.
    assert set_complement(AngularSet.of(1.0, 1.0)).is_full


def test_set_intersect_example():
    got = set_intersect(AngularSet.of(3 * math.pi / 2, math.pi / 2), AngularSet.of(0.0, math.pi))
    assert got == AngularSet.of(0.0, math.pi / 2)


def test_set_ops_agree_with_membership_sampling():
    rng = random.Random(23)
    for _ in range(300):
        a = _random_set(rng)
        b = _random_set(rng)
        u = a.union(b)
        i = a.intersect(b)
        c = a.complement()
        assert c.complement() == a
        m = a.measure() + b.measure()
        assert m == pytest.approx(u.measure() + i.measure(), abs=1e-9)
        for _ in range(40):
            th = rng.uniform(0, TWO_PI)
            if min(
                _gap_to_boundary(a, th), _gap_to_boundary(b, th)
            ) < 1e-9:
                continue  # skip samples landing on interval boundaries
            assert u.contains(th) == (a.contains(th) or b.contains(th))
            assert i.contains(th) == (a.contains(th) and b.contains(th))
            assert c.contains(th) == (not a.contains(th))


def _random_set(rng: random.Random) -> AngularSet:
    parts = []
    for _ in range(rng.randint(0, 4)):
        s = rng.uniform(0, TWO_PI)
        parts.append(AngularInterval.make(s, s + rng.uniform(0, 3.0)))
    return AngularSet(parts)


def _gap_to_boundary(s: AngularSet, th: float) -> float:
    best = math.inf
    for it in s.intervals():
        if it.full:
            return math.inf
        best = min(best, angle_dist(it.s, th), angle_dist(it.t, th))
    return best


def test_sep_point_segment():
    seg = Segment2((-1.0, 0.0), (1.0, 0.0))
    assert sep_point_segment((0.0, 1.0), seg) == pytest.approx(1.0)
    assert sep_point_segment((2.0, 0.0), seg) == pytest.approx(1.0)
    degenerate = Segment2((0.0, 0.0), (0.0, 0.0))
    assert sep_point_segment((3.0, 4.0), degenerate) == pytest.approx(5.0)


def test_link_clearance_examples():
    g = LinkGeom(ell=1.0, tau=0.25)
    assert link_clearance((0.0, 0.0), 0.0, g, (2.0, 0.0)) == pytest.approx(0.75)
    assert link_clearance((0.0, 0.0), 0.0, g, (0.0, 0.0)) == pytest.approx(-0.25)
    g2 = LinkGeom(ell=1.0, tau=0.1)
    wall = Segment2((-1.0, 2.0), (1.0, 2.0))
    assert link_clearance((0.0, 0.0), math.pi / 2, g2, wall) == pytest.approx(0.9)


def test_link_clearance_matches_minkowski_sampling():
    # Negative clearance iff the feature meets the sampled thick footprint.
    rng = random.Random(5)
    g = LinkGeom(ell=2.0, tau=0.5)
    for _ in range(200):
        base = (rng.uniform(-1, 1), rng.uniform(-1, 1))
        theta = rng.uniform(0, TWO_PI)
        corner = (rng.uniform(-3, 3), rng.uniform(-3, 3))
        clear = link_clearance(base, theta, g, corner)
        if abs(clear) < 1e-6:
            continue
        inside = _point_in_capsule(corner, base, theta, g)
        assert inside == (clear < 0.0)


def _point_in_capsule(p, base, theta, g: LinkGeom) -> bool:
    seg = Segment2(base, (base[0] + g.ell * math.cos(theta), base[1] + g.ell * math.sin(theta)))
    return sep_point_segment(p, seg) <= g.tau


def test_norm_angle_identifies_two_pi():
    assert norm_angle(TWO_PI) == 0.0
    assert norm_angle(-0.5) == pytest.approx(TWO_PI - 0.5)
