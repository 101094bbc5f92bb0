"""Centerline geometry for rectangular vehicle footprints.

A vehicle of length l and width w is represented by the segment of
half-length (l - w) / 2 along its heading through its centre: the locus of
centres of width-matched circles that stay flush with the front and rear
ends.  Collision queries between two vehicles then reduce to the closest
pair of points on two such segments.

The working frame is the ego frame: ego centre at the origin, ego heading
along +x.  ``closest_points`` itself is frame-agnostic, but
``distance_coefficients`` asserts the ego-frame convention because its
reduced coefficient form is only meaningful there.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from . import _scalar_impl as _impl
from .errors import DomainError

#: Relative cross-product threshold below which segments count as parallel.
#: The two-candidate solver divides by 4*c5*c6 - c4**2 = 4*cross(U, V)**2,
#: so near-parallel pairs must take the explicit foot-point branch instead.
EPS_PARALLEL = 1e-9

#: How far off the x-axis the ego endpoints may sit before the reduced
#: coefficient formulas are rejected.
EGO_FRAME_TOL = 1e-9


@dataclass(frozen=True, slots=True)
class Point2:
    """A point in the ego frame, metres."""

    x: float
    y: float

    def __post_init__(self):
        if not (math.isfinite(self.x) and math.isfinite(self.y)):
            raise DomainError(f"non-finite point ({self.x}, {self.y})")


@dataclass(frozen=True, slots=True)
class VehicleDims:
    """Rectangular footprint dimensions; length runs along the heading."""

    length: float
    width: float

    def __post_init__(self):
        if not (math.isfinite(self.length) and math.isfinite(self.width)):
            raise DomainError("vehicle dimensions must be finite")
        if self.length <= 0.0 or self.width <= 0.0:
            raise DomainError(
                f"vehicle dimensions must be positive, got {self.length} x {self.width}"
            )
        if self.length < self.width:
            raise DomainError(
                "length must be >= width (the centerline segment has "
                f"half-length (length - width)/2), got {self.length} x {self.width}"
            )

    @property
    def half_span(self) -> float:
        """Half-length of the centerline segment, (length - width) / 2."""
        return 0.5 * (self.length - self.width)


@dataclass(frozen=True, slots=True)
class Segment:
    """A centerline segment; degenerate (start == end) for square footprints."""

    start: Point2
    end: Point2

    @property
    def degenerate(self) -> bool:
        return self.start == self.end


@dataclass(frozen=True, slots=True)
class DistanceCoeffs:
    """Coefficients of the squared distance between two segment points.

    With endpoint parameters u, v in [0, 1] (u along A-B, v along C-D):

        d(u, v)^2 = c1 + v*c2 - u*c3 - u*v*c4 + v^2*c5 + u^2*c6

    c1, c5, c6 are squared lengths (|C-A|^2, |D-C|^2, |B-A|^2) and never
    negative; c2, c3, c4 are doubled dot products and carry sign.
    """

    c1: float
    c2: float
    c3: float
    c4: float
    c5: float
    c6: float

    def distance_squared(self, u: float, v: float) -> float:
        return (self.c1 + v * self.c2 - u * self.c3 - u * v * self.c4
                + v * v * self.c5 + u * u * self.c6)


@dataclass(frozen=True, slots=True)
class ClosestPair:
    """Mutually closest segment points and their normalised shifts.

    ``ego_shift`` and ``opp_shift`` live in [-1, 1]: 0 is the segment
    centre, -1/+1 its endpoints.  ``parallel`` records that the foot-point
    case split ran instead of the two-candidate solver.
    """

    ego_shift: float
    opp_shift: float
    ego_point: Point2
    opp_point: Point2
    distance: float
    parallel: bool


def centerline_circle_radius(width: float) -> float:
    """Radius sqrt(width^2 / 2) of a centerline circle for a given width.

    This is the smallest radius such that circles swept along the
    centerline cover the whole rectangle while each circle's bounding
    square (rotated 45 degrees) stays congruent with the vehicle's cross
    section.
    """
    if width <= 0.0:
        raise DomainError(f"width must be positive, got {width}")
    return math.sqrt(0.5 * width * width)


def centerline_segment(dims: VehicleDims, pose) -> Segment:
    """Centerline segment of a vehicle at the given pose.

    ``pose`` is anything with x, y and theta attributes (see
    ``uncertainty.RelativePose``).  For the ego vehicle, pass the identity
    pose to get the segment on the x-axis.
    """
    half = dims.half_span
    cx = half * math.cos(pose.theta)
    cy = half * math.sin(pose.theta)
    return Segment(
        Point2(pose.x - cx, pose.y - cy),
        Point2(pose.x + cx, pose.y + cy),
    )


def distance_coefficients(a: Point2, b: Point2, c: Point2, d: Point2) -> DistanceCoeffs:
    """Quadratic-form coefficients of the squared inter-segment distance.

    Requires the ego segment A-B to lie on the x-axis (the reduced form the
    closed-form minimiser is derived in); rejects anything else.
    """
    if abs(a.y) > EGO_FRAME_TOL or abs(b.y) > EGO_FRAME_TOL:
        raise DomainError(
            "ego segment endpoints must lie on the x-axis "
            f"(|y| <= {EGO_FRAME_TOL}), got y={a.y} and y={b.y}"
        )
    ux = b.x - a.x
    uy = b.y - a.y
    vx = d.x - c.x
    vy = d.y - c.y
    wx = c.x - a.x
    wy = c.y - a.y
    return DistanceCoeffs(
        c1=wx * wx + wy * wy,
        c2=2.0 * (wx * vx + wy * vy),
        c3=2.0 * (wx * ux + wy * uy),
        c4=2.0 * (ux * vx + uy * vy),
        c5=vx * vx + vy * vy,
        c6=ux * ux + uy * uy,
    )


def closest_points(a: Point2, b: Point2, c: Point2, d: Point2,
                   eps_parallel: float = EPS_PARALLEL) -> ClosestPair:
    """Globally closest pair of points on segments A-B and C-D.

    Non-parallel segments use the two-candidate clamped minimiser of the
    convex quadratic (exact for interior, edge and corner optima); parallel
    or degenerate segments fall back to clamped perpendicular foot points
    with first-match tie-breaking in the order A, B, C, D.
    """
    t, s, ex, ey, fx, fy, dist, par = _impl.closest_pair(
        a.x, a.y, b.x, b.y, c.x, c.y, d.x, d.y, eps_parallel)
    return ClosestPair(
        ego_shift=t,
        opp_shift=s,
        ego_point=Point2(ex, ey),
        opp_point=Point2(fx, fy),
        distance=dist,
        parallel=bool(par),
    )
