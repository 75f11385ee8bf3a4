"""Configuration space R^2 x T for the non-crossing 2-link robot.

The torus T is split into the components T_< (theta1 < theta2) and T_>
(theta1 > theta2); an X-box is a box B^t x B^r intersected with one of
them (tag LT/GT), or with the whole torus when self-crossing is allowed
(tag FULL, kappa < 0).  Rotational intervals are non-wrapping after the
initial torus split, which is centered at (0,0) == (2*pi, 2*pi).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from .geometry import TWO_PI, AngularInterval, AngularSet, Point2, Rect, angle_dist, norm_angle

LT = "LT"
GT = "GT"
FULL = "FULL"

FREE = "FREE"
STUCK = "STUCK"
MIXED = "MIXED"
SMALL = "SMALL"

RotInterval = tuple[float, float]  # (lo, hi) with 0 <= lo <= hi <= 2*pi
RotBox = tuple[RotInterval, RotInterval]

_TOL = 1e-12


@dataclass(frozen=True)
class RobotSpec:
    """R2(ell1, ell2, tau, kappa); kappa < 0 allows self-crossing."""

    ell1: float
    ell2: float
    tau: float
    kappa: float

    def __post_init__(self) -> None:
        if self.ell1 <= 0.0 or self.ell2 <= 0.0:
            raise ValueError("link lengths must be positive")
        if self.tau < 0.0:
            raise ValueError("thickness must be nonnegative")
        if self.kappa >= math.pi:
            raise ValueError("kappa >= pi leaves no non-crossing configurations")

    @property
    def crossing_allowed(self) -> bool:
        return self.kappa < 0.0


@dataclass(frozen=True)
class Config:
    x: float
    y: float
    theta1: float
    theta2: float

    def __post_init__(self) -> None:
        object.__setattr__(self, "theta1", norm_angle(self.theta1))
        object.__setattr__(self, "theta2", norm_angle(self.theta2))

    def __iter__(self):
        yield self.x
        yield self.y
        yield self.theta1
        yield self.theta2


@dataclass(frozen=True)
class DiagonalBand:
    """Delta(kappa) = {(t1,t2) : d(t1,t2) <= kappa}; empty for kappa < 0."""

    kappa: float

    def contains(self, t1: float, t2: float) -> bool:
        return in_band(t1, t2, self.kappa)


def footprints(c: Config, r: RobotSpec) -> tuple[Point2, Point2, Point2]:
    a0 = (c.x, c.y)
    a1 = (c.x + r.ell1 * math.cos(c.theta1), c.y + r.ell1 * math.sin(c.theta1))
    a2 = (c.x + r.ell2 * math.cos(c.theta2), c.y + r.ell2 * math.sin(c.theta2))
    return a0, a1, a2


def in_band(t1: float, t2: float, kappa: float) -> bool:
    if kappa < 0.0:
        return False
    return angle_dist(t1, t2) <= kappa


def tag_of(t1: float, t2: float, kappa: float) -> str | None:
    """Tag of a configuration's rotational part; None if inside the band."""
    if kappa < 0.0:
        return FULL
    if in_band(t1, t2, kappa):
        return None
    return LT if norm_angle(t1) < norm_angle(t2) else GT


def is_box_empty(br: RotBox, kappa: float, tag: str) -> bool:
    """Emptiness of (B^r intersect T_tag) minus the diagonal band.

    Only meaningful for non-wrapping boxes.  For kappa < 0 the band is
    empty, which coincides with the kappa = 0 formulas.
    """
    (a, b), (a2, b2) = br
    if a > b or a2 > b2:
        raise ValueError("wrapping rotational box; split it first")
    if tag == FULL:
        return False
    k = max(kappa, 0.0)
    if tag == LT:
        return k >= b2 - a or TWO_PI - k <= a2 - b
    if tag == GT:
        return k >= b - a2 or TWO_PI - k <= a - b2
    raise ValueError("unknown tag %r" % tag)


def initial_torus_split(kappa: float) -> list[tuple[RotBox, str]]:
    """Split T at the center (0,0) == (2pi,2pi) into non-wrapping quadrants,
    each annotated LT/GT (or FULL when crossing is allowed), empties dropped."""
    halves = ((0.0, math.pi), (math.pi, TWO_PI))
    quads = [(h1, h2) for h1 in halves for h2 in halves]
    if kappa < 0.0:
        return [(q, FULL) for q in quads]
    out = []
    for q in quads:
        for tag in (LT, GT):
            if not is_box_empty(q, kappa, tag):
                out.append((q, tag))
    return out


@dataclass
class XBox:
    """One node of the subdivision tree."""

    id: int
    bt: Rect
    br: RotBox
    tag: str
    status: str = MIXED
    rsplit: bool = False  # rotational split already performed (or is its child)
    parent: "XBox | None" = None
    children: list = field(default_factory=list)
    feats: list = field(default_factory=list)  # relevant features phi(bt)

    def is_leaf(self) -> bool:
        return not self.children

    def width(self) -> float:
        return self.bt.width()

    def __repr__(self) -> str:
        return "XBox(#%d %s %s bt=[%g,%g]x[%g,%g])" % (
            self.id, self.tag, self.status, self.bt.x0, self.bt.x1, self.bt.y0, self.bt.y1,
        )


class IdGen:
    """Deterministic per-planner id/creation-order source."""

    def __init__(self) -> None:
        self._next = 0

    def __call__(self) -> int:
        v = self._next
        self._next += 1
        return v


def split_translational(box: XBox, idgen: IdGen) -> list[XBox]:
    """Quadtree split of bt; rotational part and tag are inherited."""
    kids = []
    for quad in box.bt.quadrants():
        kids.append(XBox(idgen(), quad, box.br, box.tag, parent=box))
    box.children = kids
    return kids


def _interval_pieces(free: AngularSet, theta: RotInterval) -> list[RotInterval]:
    """Maximal free sub-intervals of theta, split non-wrapping at 0 == 2pi."""
    window = AngularSet.of(theta[0], theta[1]) if theta[1] - theta[0] < TWO_PI else AngularSet.full()
    inter = free.intersect(window)
    if inter.is_full:
        return [(0.0, TWO_PI)]
    pieces: list[RotInterval] = []
    for s, e in inter.arcs():
        if e <= TWO_PI + _TOL:
            pieces.append((s, min(e, TWO_PI)))
        else:
            pieces.append((s, TWO_PI))
            pieces.append((0.0, e - TWO_PI))
    return [(lo, hi) for lo, hi in pieces if hi - lo > _TOL]


def rotational_products(
    br: RotBox,
    tag: str | None,
    zones1: AngularSet,
    zones2: AngularSet,
    kappa: float,
) -> list[tuple[RotBox, str]]:
    """Non-empty (rotational box, tag) products of the forbidden-free
    intervals of each link within br, restricted to `tag` when given."""
    free1 = _interval_pieces(zones1.complement(), br[0])
    free2 = _interval_pieces(zones2.complement(), br[1])
    if tag == FULL or kappa < 0.0:
        tags: tuple[str, ...] = (FULL,)
    elif tag in (LT, GT):
        tags = (tag,)
    else:
        tags = (LT, GT)
    out = []
    for i1 in free1:
        for i2 in free2:
            for t in tags:
                if t != FULL and is_box_empty((i1, i2), kappa, t):
                    continue
                out.append(((i1, i2), t))
    return out


def split_rotational_TR(
    box: XBox,
    zones1: AngularSet,
    zones2: AngularSet,
    kappa: float,
    idgen: IdGen,
) -> list[XBox]:
    """The single obstacle-driven rotational split.

    Children are the products of maximal forbidden-free intervals of each
    link, restricted to the parent tag (both tags when the parent is an
    untagged torus box), with empty X-parts filtered.  Children are final:
    they are never split again.
    """
    kids = [
        XBox(idgen(), box.bt, br, tag, status=FREE, rsplit=True, parent=box)
        for br, tag in rotational_products(box.br, box.tag, zones1, zones2, kappa)
    ]
    box.children = kids
    box.rsplit = True
    return kids


# ---------------------------------------------------------------------------
# adjacency of X-boxes


def _rect_relation(r1: Rect, r2: Rect):
    ox = min(r1.x1, r2.x1) - max(r1.x0, r2.x0)
    oy = min(r1.y1, r2.y1) - max(r1.y0, r2.y0)
    if ox > _TOL and oy > _TOL:
        return "overlap"
    if abs(ox) <= _TOL and oy > _TOL:
        return "abut"
    if abs(oy) <= _TOL and ox > _TOL:
        return "abut"
    return "none"


def _interval_relations(i1: RotInterval, i2: RotInterval):
    """All face relations between two non-wrapping intervals."""
    rels = []
    lo = max(i1[0], i2[0])
    hi = min(i1[1], i2[1])
    if hi - lo > _TOL:
        rels.append(("overlap", (lo, hi)))
    elif abs(hi - lo) <= _TOL:
        rels.append(("touch", 0.5 * (lo + hi)))
    if i1[1] >= TWO_PI - _TOL and i2[0] <= _TOL:
        rels.append(("wrap", "1hi"))  # i1 ends at 2pi, i2 begins at 0
    if i2[1] >= TWO_PI - _TOL and i1[0] <= _TOL:
        rels.append(("wrap", "2hi"))
    return rels


def _offband_window(kappa: float) -> tuple[float, float]:
    k = max(kappa, 0.0)
    return (k, TWO_PI - k)


def _positive_overlap(i: RotInterval, w: tuple[float, float]) -> bool:
    return min(i[1], w[1]) - max(i[0], w[0]) > _TOL


def _degenerate_face_nonempty(fixed_idx: int, c: float, other: RotInterval, kappa: float, tag: str) -> bool:
    """Positive free length of the 1D face {theta_fixed = c} x other (tag side)."""
    if tag == FULL:
        return other[1] - other[0] > _TOL
    br = ((c, c), other) if fixed_idx == 0 else (other, (c, c))
    return not is_box_empty(br, kappa, tag)


def adjacent(b1: XBox, b2: XBox, kappa: float) -> bool:
    """Do the represented sets share a 3-dimensional face?

    Either the translational rects abut along an edge while the rotational
    parts overlap in both angles, or the rects overlap while the rotational
    intervals abut in exactly one angle.  Different tags touch only across
    the 0 == 2pi identification: crossing theta2 joins LT (theta2 at 2pi)
    to GT (theta2 at 0); crossing theta1 joins GT (theta1 at 2pi) to LT.
    """
    r1, r2 = b1.bt, b2.bt
    ox = min(r1.x1, r2.x1) - max(r1.x0, r2.x0)
    oy = min(r1.y1, r2.y1) - max(r1.y0, r2.y0)
    if ox < -_TOL or oy < -_TOL:
        return False
    x_abut = ox <= _TOL
    y_abut = oy <= _TOL
    if x_abut and y_abut:
        return False  # corner contact only
    i10, i20 = b1.br[0], b2.br[0]
    i11, i21 = b1.br[1], b2.br[1]
    ov0 = min(i10[1], i20[1]) - max(i10[0], i20[0])
    ov1 = min(i11[1], i21[1]) - max(i11[0], i21[0])
    if x_abut or y_abut:
        # translational face; rotational parts must overlap in both angles
        if ov0 <= _TOL or ov1 <= _TOL:
            return False
        if b1.tag == FULL and b2.tag == FULL:
            return True
        if b1.tag != b2.tag:
            return False  # LT and GT have disjoint interiors off the seam
        o = (
            (max(i10[0], i20[0]), min(i10[1], i20[1])),
            (max(i11[0], i21[0]), min(i11[1], i21[1])),
        )
        return not is_box_empty(o, kappa, b1.tag)
    # identical/overlapping rects: need a degenerate face in exactly one angle
    full_pair = b1.tag == FULL and b2.tag == FULL
    window = _offband_window(kappa)
    for idx, (a1, a2, ov_f, ov_o) in enumerate(
        ((i10, i20, ov0, ov1), (i11, i21, ov1, ov0))
    ):
        if ov_o <= _TOL:
            continue
        io, jo = (i11, i21) if idx == 0 else (i10, i20)
        other = (max(io[0], jo[0]), min(io[1], jo[1]))
        if abs(ov_f) <= _TOL:  # interior touch at one angle value
            if full_pair:
                return True
            if b1.tag == b2.tag and _degenerate_face_nonempty(
                idx, 0.5 * (max(a1[0], a2[0]) + min(a1[1], a2[1])), other, kappa, b1.tag
            ):
                return True
        # wrap seams: one interval ends at 2pi while the other starts at 0
        for hi_box, lo_box, hi_iv, lo_iv in ((b1, b2, a1, a2), (b2, b1, a2, a1)):
            if hi_iv[1] >= TWO_PI - _TOL and lo_iv[0] <= _TOL:
                if full_pair:
                    if other[1] - other[0] > _TOL:
                        return True
                elif idx == 1 and hi_box.tag == LT and lo_box.tag == GT:
                    if _positive_overlap(other, window):
                        return True
                elif idx == 0 and hi_box.tag == GT and lo_box.tag == LT:
                    if _positive_overlap(other, window):
                        return True
    return False


# ---------------------------------------------------------------------------
# representative configurations (box centers, shared faces)


def _feasible_pair(br: RotBox, tag: str, kappa: float) -> tuple[float, float]:
    """A strictly feasible (theta1, theta2) inside the X-part of br."""
    (a, b), (a2, b2) = br
    if tag == FULL:
        return (0.5 * (a + b), 0.5 * (a2 + b2))
    k = max(kappa, 0.0)
    if tag == LT:
        lo = max(k, a2 - b)
        hi = min(TWO_PI - k, b2 - a)
        d = 0.5 * (lo + hi)  # target theta2 - theta1
        t1lo = max(a, a2 - d)
        t1hi = min(b, b2 - d)
        t1 = 0.5 * (t1lo + t1hi)
        return (t1, t1 + d)
    lo = max(k, a - b2)
    hi = min(TWO_PI - k, b - a2)
    d = 0.5 * (lo + hi)  # target theta1 - theta2
    t2lo = max(a2, a - d)
    t2hi = min(b2, b - d)
    t2 = 0.5 * (t2lo + t2hi)
    return (t2 + d, t2)


def box_center_config(box: XBox, kappa: float) -> Config:
    mx, my = box.bt.mid()
    t1, t2 = _feasible_pair(box.br, box.tag, kappa)
    return Config(mx, my, t1, t2)


def _mid_in_window(i: RotInterval, w: tuple[float, float]) -> float:
    lo = max(i[0], w[0])
    hi = min(i[1], w[1])
    return 0.5 * (lo + hi)


def shared_face_config(b1: XBox, b2: XBox, kappa: float) -> Config:
    """Midpoint-like configuration on the shared face of two adjacent boxes."""
    trel = _rect_relation(b1.bt, b2.bt)
    r1, r2 = b1.bt, b2.bt
    ox0, ox1 = max(r1.x0, r2.x0), min(r1.x1, r2.x1)
    oy0, oy1 = max(r1.y0, r2.y0), min(r1.y1, r2.y1)
    x = 0.5 * (ox0 + ox1)
    y = 0.5 * (oy0 + oy1)
    rels1 = _interval_relations(b1.br[0], b2.br[0])
    rels2 = _interval_relations(b1.br[1], b2.br[1])
    if trel == "abut":
        o1 = next(r[1] for r in rels1 if r[0] == "overlap")
        o2 = next(r[1] for r in rels2 if r[0] == "overlap")
        tag = b1.tag if b1.tag == b2.tag else FULL
        t1, t2 = _feasible_pair((o1, o2), tag, kappa)
        return Config(x, y, t1, t2)
    # rotational face at a fixed angle in exactly one coordinate
    for idx, (rels_f, rels_o) in enumerate(((rels1, rels2), (rels2, rels1))):
        over = [r for r in rels_o if r[0] == "overlap"]
        if not over:
            continue
        other = over[0][1]
        for kind, val in rels_f:
            if kind == "touch" and b1.tag == b2.tag:
                if b1.tag == FULL:
                    free_mid = 0.5 * (other[0] + other[1])
                elif not _degenerate_face_nonempty(idx, val, other, kappa, b1.tag):
                    continue
                else:
                    free_mid = _fixed_angle_partner(idx, val, other, kappa, b1.tag)
                return _compose(x, y, idx, val, free_mid)
            if kind == "wrap":
                w = _offband_window(kappa)
                if b1.tag == FULL and b2.tag == FULL:
                    free_mid = 0.5 * (other[0] + other[1])
                elif _positive_overlap(other, w):
                    free_mid = _mid_in_window(other, w)
                else:
                    continue
                return _compose(x, y, idx, 0.0, free_mid)
    raise ValueError("boxes do not share a usable face")


def _fixed_angle_partner(fixed_idx: int, c: float, other: RotInterval, kappa: float, tag: str) -> float:
    """Feasible mid value of the moving angle when the other one is pinned at c."""
    k = max(kappa, 0.0)
    if tag == LT:
        # theta1 < theta2, kappa < theta2 - theta1 < 2pi - kappa
        w = (c + k, c + TWO_PI - k) if fixed_idx == 0 else (c - TWO_PI + k, c - k)
    else:
        w = (c - TWO_PI + k, c - k) if fixed_idx == 0 else (c + k, c + TWO_PI - k)
    return _mid_in_window(other, w)


def _compose(x: float, y: float, fixed_idx: int, c: float, other_val: float) -> Config:
    if fixed_idx == 0:
        return Config(x, y, c, other_val)
    return Config(x, y, other_val, c)
