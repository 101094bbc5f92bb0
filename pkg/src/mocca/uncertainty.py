"""Pose uncertainty: propagation to a shifted point and decorrelation.

The opponent pose is Gaussian in the ego frame with mean (x, y, theta) and
diagonal covariance diag(var_x, var_y, var_theta).  A circle centre sitting
``offset`` metres along the opponent heading picks up extra position
uncertainty from the heading noise; first-order propagation turns the 3D
pose covariance into a full 2x2 position covariance there.  Rotating into
that covariance's eigenframe afterwards is what lets the disk integral
factor into a single-axis quadrature.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from . import _scalar_impl as _impl
from .errors import DomainError
from .geometry import Point2

TWO_PI = 2.0 * math.pi

#: Eigenvalues of a propagated covariance may round slightly negative; they
#: are clamped to zero down to this threshold and rejected beyond it.
PSD_TOL = 1e-12


@dataclass(frozen=True, slots=True)
class RelativePose:
    """Opponent centre pose in the ego frame; theta normalised to [0, 2*pi)."""

    x: float
    y: float
    theta: float

    def __post_init__(self):
        if not (math.isfinite(self.x) and math.isfinite(self.y)
                and math.isfinite(self.theta)):
            raise DomainError("pose components must be finite")
        theta = self.theta % TWO_PI
        if theta != self.theta:
            object.__setattr__(self, "theta", theta)


@dataclass(frozen=True, slots=True)
class PoseCovariance:
    """Diagonal pose covariance: variances in m^2, m^2, rad^2."""

    var_x: float
    var_y: float
    var_theta: float

    def __post_init__(self):
        for name in ("var_x", "var_y", "var_theta"):
            v = getattr(self, name)
            if not math.isfinite(v) or v < 0.0:
                raise DomainError(f"{name} must be finite and >= 0, got {v}")

    @property
    def sigma_theta(self) -> float:
        return math.sqrt(self.var_theta)


@dataclass(frozen=True, slots=True)
class Cov2:
    """Symmetric 2x2 position covariance (xx, xy, yy entries)."""

    xx: float
    xy: float
    yy: float

    def __post_init__(self):
        if self.xx < 0.0 or self.yy < 0.0:
            raise DomainError(
                f"diagonal covariance entries must be >= 0, got {self.xx}, {self.yy}"
            )
        if self.xx * self.yy - self.xy * self.xy < -PSD_TOL:
            raise DomainError(
                f"covariance is indefinite beyond tolerance: det = "
                f"{self.xx * self.yy - self.xy * self.xy}"
            )


@dataclass(frozen=True, slots=True)
class DecorrelatedFrame:
    """Mean and axis deviations after rotating into the eigenframe.

    ``sigma_major >= sigma_minor``; ``rotation`` (radians) maps eigenframe
    coordinates back into the input frame.
    """

    mean_x: float
    mean_y: float
    sigma_major: float
    sigma_minor: float
    rotation: float

    @property
    def mean(self) -> Point2:
        return Point2(self.mean_x, self.mean_y)


def position_jacobian(offset: float, heading: float):
    """Row-major 2x3 Jacobian of p = mu_xy + offset*(cos heading, sin heading).

    Columns differentiate with respect to (x, y, theta); the heading column
    is the rotated offset arm.
    """
    return (1.0, 0.0, -offset * math.sin(heading),
            0.0, 1.0, offset * math.cos(heading))


def propagate_covariance(cov: PoseCovariance, offset: float, heading: float) -> Cov2:
    """Position covariance at a point ``offset`` metres along the heading.

    Closed-form J diag(var) J^T with the Jacobian above.  Exactly periodic
    in the heading: full turns are removed with fmod before any trig.
    """
    xx, xy, yy = _impl.propagate_cov(
        cov.var_x, cov.var_y, cov.var_theta, offset, heading)
    return Cov2(xx, xy, yy)


def decorrelate(mean: Point2, cov: Cov2) -> DecorrelatedFrame:
    """Rotate a mean/covariance pair into the covariance eigenframe.

    The larger eigenvalue maps to the x axis (sigma_major); an isotropic
    covariance keeps rotation 0 rather than picking an arbitrary
    eigenvector.  Eigenvalues in [-1e-12, 0) are clamped to zero, anything
    lower is rejected.
    """
    half_tr = 0.5 * (cov.xx + cov.yy)
    disc = math.hypot(0.5 * (cov.xx - cov.yy), cov.xy)
    if half_tr - disc < -PSD_TOL:
        raise DomainError(
            f"covariance has eigenvalue {half_tr - disc} below -{PSD_TOL}"
        )
    mx, my, s_major, s_minor, rot = _impl.decorrelate_cov(
        mean.x, mean.y, cov.xx, cov.xy, cov.yy)
    return DecorrelatedFrame(mx, my, s_major, s_minor, rot)
