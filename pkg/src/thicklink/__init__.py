"""Resolution-exact subdivision planner for a thick non-crossing 2-link robot."""

from .geometry import (
    AngularInterval,
    AngularSet,
    LinkGeom,
    Point2,
    Rect,
    Segment2,
    angle_dist,
    norm_angle,
)

__all__ = [
    "AngularInterval",
    "AngularSet",
    "LinkGeom",
    "Point2",
    "Rect",
    "Segment2",
    "angle_dist",
    "norm_angle",
]
