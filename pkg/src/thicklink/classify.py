"""Feature filtering and the soft box classifier C~ in {FREE, STUCK, MIXED}.

Definite answers are always correct (conservative); on a shrinking nest of
boxes around a definitely-free or definitely-stuck configuration the
classifier reaches the definite label (convergent).  STUCK detection is
deliberately weak: missing a stuck box only costs refinement work.

During the translational phase the status of an X-box depends only on its
translational part (far-field and stuck tests ignore the angles), which
classify_bt exploits; zone-based FREE certification applies once the
rotational split has pinned the angular ranges.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .cspace import FREE, MIXED, STUCK, RobotSpec, XBox
from .environment import Environment, Feature, point_in_obstacle
from .forbidden import ARC, FULLC, box_feature_arc, pp_bounds, vw_bounds
from .geometry import (
    AngularInterval,
    AngularSet,
    LinkGeom,
    Rect,
    arcs_cover_circle,
    sep_point_point,
    sep_point_segment,
)

# Interior-overlap tolerance: zone intersections of at most this measure are
# boundary dust from the conservative widening, not real overlap.
_MEASURE_TOL = 1e-9


@dataclass(frozen=True)
class FeatureSet:
    features: tuple[Feature, ...]

    def __len__(self) -> int:
        return len(self.features)

    def __iter__(self):
        return iter(self.features)


def _sep_mid_feature(mid, f: Feature) -> float:
    if f.kind == "corner":
        return sep_point_point(mid, f.shape)
    return sep_point_segment(mid, f.shape)


def feature_set(bt: Rect, parent: FeatureSet, r: RobotSpec) -> FeatureSet:
    """Features possibly reachable from somewhere in bt.

    Keeps f when Sep(mid(bt), f) <= radius(bt) + max(ell1, ell2) + tau; the
    bound covers every link placement with origin in the box, so the filter
    is monotone under refinement.
    """
    reach = bt.radius() + max(r.ell1, r.ell2) + r.tau
    mid = bt.mid()
    return FeatureSet(tuple(f for f in parent if _sep_mid_feature(mid, f) <= reach))


def link_zones(bt: Rect, feats: FeatureSet, env: Environment, r: RobotSpec) -> tuple[AngularSet, AngularSet]:
    """Union of conservative per-feature forbidden zones for each link.

    If the box midpoint sits inside an obstacle the base disc may be buried
    at any angle, so both zones are the full circle.  (A box that overlaps
    an obstacle without containing its midpoint necessarily comes within
    tau of a wall, which the per-feature CASE0 test turns into S^1.)
    """
    if point_in_obstacle(env, bt.mid()):
        return AngularSet.full(), AngularSet.full()
    zones = []
    for ell in (r.ell1, r.ell2):
        g = LinkGeom(ell, r.tau)
        arcs: list[AngularInterval] = []
        full = False
        for f in feats:
            kind, arc = box_feature_arc(bt, f.shape, g)
            if kind == FULLC:
                full = True
                break
            if kind == ARC:
                arcs.append(arc)
        zones.append(AngularSet.full() if full else AngularSet(arcs))
    return zones[0], zones[1]


def _inner_zone_stuck(bt: Rect, feats: FeatureSet, r: RobotSpec, sep_b: float) -> bool:
    """Under-approximate zones at the box midpoint with tau shrunk by the
    box radius; if one link's inner zone is all of S^1, every placement of
    that link collides."""
    tau_inner = r.tau - bt.radius()
    if tau_inner <= 0.0:
        return False
    if sep_b > max(r.ell1, r.ell2) + tau_inner:
        return False  # every inner zone is empty
    mx, my = bt.mid()
    for ell in (r.ell1, r.ell2):
        arcs: list[tuple[float, float]] = []
        full = False
        for f in feats:
            if f.kind == "corner":
                kind, lo, hi = pp_bounds(mx, my, f.shape[0], f.shape[1], ell, tau_inner)
            else:
                (ax, ay), (bx, by) = f.shape.a, f.shape.b
                kind, lo, hi = vw_bounds(mx, my, ax, ay, bx, by, ell, tau_inner)
            if kind == FULLC:
                full = True
                break
            if kind == ARC:
                arcs.append((lo, hi))
        if full or arcs_cover_circle(arcs):
            return True
    return False


def classify_bt(bt: Rect, feats: FeatureSet, env: Environment, r: RobotSpec) -> str:
    """Angle-independent part of the soft classification.

    FREE and STUCK answers here hold for every rotational part over bt.
    """
    mid = bt.mid()
    inside = point_in_obstacle(env, mid)
    if len(feats) == 0:
        # No feature within reach of any placement: the box is uniformly
        # free or uniformly buried, and the midpoint witnesses which.
        return STUCK if inside else FREE
    radius = bt.radius()
    sep_b = min(_sep_mid_feature(mid, f) for f in feats)
    if sep_b + radius < r.tau:
        return STUCK  # the joint disc meets the obstacles everywhere
    if inside and sep_b > radius:
        return STUCK  # the whole translational box is buried
    if _inner_zone_stuck(bt, feats, r, sep_b):
        return STUCK
    return MIXED


def _theta_window(interval) -> AngularSet:
    lo, hi = interval
    if hi - lo >= 2 * math.pi:
        return AngularSet.full()
    return AngularSet.of(lo, hi)


def classify(box: XBox, feats: FeatureSet, env: Environment, r: RobotSpec) -> str:
    """Soft classification of an X-box against the obstacle set."""
    status = classify_bt(box.bt, feats, env, r)
    if status != MIXED:
        return status
    if not box.rsplit:
        # Zone-based FREE certification only applies once the rotational
        # split has pinned the angular ranges (the T/R contract).
        return MIXED
    z1, z2 = link_zones(box.bt, feats, env, r)
    if (
        z1.intersect(_theta_window(box.br[0])).measure() <= _MEASURE_TOL
        and z2.intersect(_theta_window(box.br[1])).measure() <= _MEASURE_TOL
    ):
        return FREE
    return MIXED
