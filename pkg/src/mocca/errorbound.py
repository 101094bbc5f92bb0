"""Worst-case underestimation bound for the moving-circle method.

A circle pair at distance ``dist`` with combined radius ``radius`` misses
exactly those rectangle collisions that a rotation of the opponent could
still produce.  The opponent orientations capable of that form a window
[lower, upper] (mirrored at negative angles); integrating the heading
distribution over the window — wrapped onto the circle, since headings are
periodic — bounds the probability mass the circle test can lose.

The same window geometry, read backwards, calibrates a safety margin: ask
for the window to start at n standard deviations and solve for the extra
radius that achieves it.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

from . import _scalar_impl as _impl
from .errors import DomainError
from .geometry import Point2

HALF_PI = 0.5 * math.pi


@dataclass(frozen=True, slots=True)
class AngleWindow:
    """Orientation band [lower, upper] that can defeat the circle test.

    ``width`` = upper - lower; lower = (pi - width)/2, so the window is
    centred on pi/2 (broadside).  The mirrored band at negative angles is
    implied and not stored.
    """

    width: float
    lower: float
    upper: float


@dataclass(frozen=True, slots=True)
class ErrorBoundResult:
    """Bound value plus the window it came from.

    ``circles_overlap`` marks the degenerate case dist < radius: the circle
    test already reports the collision, there is no rotational
    underestimation left to bound, and no window exists.
    """

    value: float
    circles_overlap: bool
    window: Optional[AngleWindow] = None


def tangent_point(center: Point2, radius: float) -> Point2:
    """Tangency point of the origin-centred circle seen from ``center``.

    Returns the clockwise one of the two tangency points (the other is its
    mirror across the centre direction).  Rotating ``center`` rotates the
    result with it.
    """
    dist = math.hypot(center.x, center.y)
    if dist <= radius:
        raise DomainError(
            f"tangent point needs |center| > radius, got {dist} <= {radius}")
    base_x = radius * radius / dist
    base_y = -radius * math.sqrt(dist * dist - radius * radius) / dist
    heading = math.atan2(center.y, center.x)
    c = math.cos(heading)
    s = math.sin(heading)
    return Point2(base_x * c - base_y * s, base_x * s + base_y * c)


def collision_angle_window(dist: float, radius: float) -> AngleWindow:
    """Window of opponent orientations that can collide despite the circles.

    Defined for separated or touching circles (dist >= radius).  The window
    width is 2*asin(radius/dist): it opens to the full half-turn as the
    circles touch and closes like 2*radius/dist at long range.
    """
    if radius <= 0.0:
        raise DomainError(f"radius must be positive, got {radius}")
    if dist < radius:
        raise DomainError(
            f"circles overlap (dist {dist} < radius {radius}); no window exists")
    width = 2.0 * math.asin(min(radius / dist, 1.0))
    lower = 0.5 * (math.pi - width)
    return AngleWindow(width=width, lower=lower, upper=lower + width)


def approximation_error(dist: float, radius: float,
                        sigma_theta: float) -> ErrorBoundResult:
    """Upper bound on the probability mass the circle test can miss.

    Integrates the zero-mean heading normal over the collision window,
    wrapped over all 2*pi periods and doubled for the mirrored window.  At
    dist == radius the window covers half of every period, so the bound is
    exactly 1 regardless of sigma; with sigma_theta == 0 it collapses to
    the indicator of the window touching the mean orientation.
    """
    if dist <= 0.0:
        raise DomainError(f"distance must be positive, got {dist}")
    if radius <= 0.0:
        raise DomainError(f"radius must be positive, got {radius}")
    if not sigma_theta >= 0.0:
        raise DomainError(f"sigma_theta must be >= 0, got {sigma_theta}")
    if dist < radius:
        return ErrorBoundResult(value=0.0, circles_overlap=True, window=None)
    window = collision_angle_window(dist, radius)
    value = _impl.bound_value(dist, radius, sigma_theta)
    return ErrorBoundResult(value=value, circles_overlap=False, window=window)


def approximation_error_chi(lower: float, sigma_theta: float) -> float:
    """Single-period shortcut for the bound via the chi-square tail.

    (theta/sigma)^2 of a zero-mean normal is chi-square with one degree of
    freedom, so the mass beyond the window start is the chi-square upper
    tail of (lower/sigma)^2 — equivalently erfc(lower / (sqrt(2)*sigma)).
    Only valid while one period holds essentially all the mass; enforced
    as 6*sigma_theta <= pi.
    """
    if sigma_theta <= 0.0:
        raise DomainError(f"sigma_theta must be positive, got {sigma_theta}")
    if 6.0 * sigma_theta > math.pi:
        raise DomainError(
            "chi-square shortcut needs 6*sigma_theta <= pi "
            f"(got {6.0 * sigma_theta:.6f}); use approximation_error instead")
    if lower < 0.0:
        raise DomainError(f"window start must be >= 0, got {lower}")
    return math.erfc(lower / (math.sqrt(2.0) * sigma_theta))


def safety_distance(n: float, sigma_theta: float,
                    ego_radius: float, opp_radius: float) -> float:
    """Extra radius margin placing the collision window n sigma out.

    Solving the window geometry for the separation at which the window
    starts at n*sigma_theta gives a multiplicative factor on the summed
    radii; the margin is the difference.  Unattainable once n*sigma_theta
    reaches a quarter turn — the window start can never exceed pi/2.
    """
    if ego_radius + opp_radius <= 0.0:
        raise DomainError("summed circle radii must be positive")
    level = n * sigma_theta
    if level < 0.0:
        raise DomainError(f"n*sigma_theta must be >= 0, got {level}")
    if level >= HALF_PI:
        raise DomainError(
            f"n*sigma_theta = {level:.6f} >= pi/2; no finite margin can "
            "push the collision window that far out")
    radii = ego_radius + opp_radius
    return radii / math.sin(HALF_PI - level) - radii
