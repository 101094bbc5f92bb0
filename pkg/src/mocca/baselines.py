"""Reference collision-probability methods.

Three baselines bracket the moving-circle method: a single circumscribed
circle per vehicle (cheap, conservative), a cover of several
centerline circles per vehicle (closer fit, one disk integral per circle
pair), and rejection-free Monte Carlo over exact oriented rectangles
(treated as ground truth).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Tuple

import numpy as np

from . import backend
from . import _scalar_impl as _impl
from .errors import DegenerateVarianceError, DomainError
from .geometry import VehicleDims, centerline_circle_radius
from .poc import POCResult, QuadratureParams
from .uncertainty import PoseCovariance, RelativePose

_UINT64_MASK = (1 << 64) - 1


@dataclass(frozen=True, slots=True)
class MCParams:
    """Monte Carlo sample count and seed.

    The seed is folded into 64 bits; a fixed (inputs, seed) pair gives a
    bit-identical estimate on every run and backend.
    """

    samples: int = 10_000
    seed: int = 42

    def __post_init__(self):
        if self.samples < 1:
            raise DomainError(f"samples must be >= 1, got {self.samples}")
        object.__setattr__(self, "seed", int(self.seed) & _UINT64_MASK)


@dataclass(frozen=True, slots=True)
class MultiCircleConfig:
    """Circle cover of one vehicle: count, common radius, centre offsets."""

    count: int
    radius: float
    offsets: Tuple[float, ...]


def circle_count(dims: VehicleDims) -> int:
    """Circles needed to cover the footprint, ceil(length / width).

    The small deduction before rounding up keeps exact integer ratios
    (e.g. 5.0 / 2.5) from spilling into an extra circle through float
    noise.
    """
    return max(int(math.ceil(dims.length / dims.width - 1e-9)), 1)


def multicircle_config(dims: VehicleDims) -> MultiCircleConfig:
    """Uniformly spaced centerline circles spanning the whole footprint."""
    n = circle_count(dims)
    half = dims.half_span
    return MultiCircleConfig(
        count=n,
        radius=centerline_circle_radius(dims.width),
        offsets=tuple(_impl.multicircle_offset(i, n, half) for i in range(n)),
    )


def circumscribed_radius(dims: VehicleDims) -> float:
    """Radius of the smallest circle containing the whole rectangle."""
    return math.hypot(0.5 * dims.length, 0.5 * dims.width)


def unicircle_poc(ego: VehicleDims, opp: VehicleDims, pose: RelativePose,
                  cov: PoseCovariance,
                  quad: QuadratureParams | None = None) -> POCResult:
    """Collision probability with one circumscribed circle per vehicle.

    The circles sit at the vehicle centres, so the heading uncertainty has
    no arm to act on and the position covariance is used as-is.  Always at
    least as large as the exact rectangle probability (circumscription can
    only add collision area), which makes it the conservative baseline.
    """
    r_c = circumscribed_radius(ego) + circumscribed_radius(opp)
    substeps = (quad or QuadratureParams()).substeps
    prob, center_dist = backend.get().unicircle_eval(
        r_c, pose.x, pose.y, cov.var_x, cov.var_y, substeps)
    if math.isnan(prob):
        raise DegenerateVarianceError(
            "zero position variance; the disk integral needs spread on both axes")
    return POCResult(probability=prob, method="unicircle",
                     center_distance=center_dist, combined_radius=r_c)


def multicircle_poc(ego: VehicleDims, opp: VehicleDims, pose: RelativePose,
                    cov: PoseCovariance,
                    quad: QuadratureParams | None = None) -> POCResult:
    """Collision probability from a circle cover of each vehicle.

    Evaluates every (ego circle, opponent circle) pair — with the pose
    covariance propagated to each opponent circle's centerline offset — and
    aggregates by taking the largest pair probability.  That avoids the
    inclusion-exclusion the union would need while staying close to it
    when one pair dominates; the reported centre distance belongs to the
    maximising pair.
    """
    cfg_e = multicircle_config(ego)
    cfg_o = multicircle_config(opp)
    r_pair = cfg_e.radius + cfg_o.radius
    substeps = (quad or QuadratureParams()).substeps
    prob, center_dist = backend.get().multicircle_eval(
        cfg_e.count, ego.half_span, cfg_o.count, opp.half_span, r_pair,
        pose.x, pose.y, pose.theta,
        cov.var_x, cov.var_y, cov.var_theta, substeps)
    if math.isnan(prob):
        raise DegenerateVarianceError(
            "zero position variance; the disk integral needs spread on both axes")
    return POCResult(probability=prob, method="multicircle",
                     center_distance=center_dist, combined_radius=r_pair)


def rectangles_overlap(ego: VehicleDims, opp: VehicleDims,
                       pose: RelativePose) -> bool:
    """Exact oriented-rectangle intersection test (touching counts).

    Separating-axis test over the four candidate edge normals of the two
    boxes.
    """
    return bool(_impl.sat_overlap(
        0.5 * ego.length, 0.5 * ego.width,
        0.5 * opp.length, 0.5 * opp.width,
        pose.x, pose.y, math.cos(pose.theta), math.sin(pose.theta)))


def standard_normal_samples(seed: int, count: int) -> np.ndarray:
    """(count, 3) standard normals from a PCG64 stream via Box-Muller.

    The transform is deterministic (no rejection step), so a seed pins the
    exact sample values across platforms and numpy feature levels; the
    generator identity (PCG64) and the transform are part of the
    reproducibility contract.  Draws four uniforms per row and discards
    the fourth normal.
    """
    rng = np.random.Generator(np.random.PCG64(seed))
    u = rng.random((count, 4))
    # log1p(-u) = log(1 - u) maps u in [0, 1) to (-inf, 0] without ever
    # taking log(0).
    r_a = np.sqrt(-2.0 * np.log1p(-u[:, 0]))
    ang_a = (2.0 * math.pi) * u[:, 1]
    r_b = np.sqrt(-2.0 * np.log1p(-u[:, 2]))
    out = np.empty((count, 3))
    out[:, 0] = r_a * np.cos(ang_a)
    out[:, 1] = r_a * np.sin(ang_a)
    out[:, 2] = r_b * np.cos((2.0 * math.pi) * u[:, 3])
    return out


def monte_carlo_poc(ego: VehicleDims, opp: VehicleDims, pose: RelativePose,
                    cov: PoseCovariance,
                    mc: MCParams | None = None) -> POCResult:
    """Monte Carlo ground truth over exact rectangle footprints.

    Draws pose triples from the Gaussian, runs the separating-axis test on
    each, and reports the hit fraction.  Zero variances are legal here —
    the distribution just degenerates toward the deterministic overlap
    indicator.
    """
    params = mc or MCParams()
    z = standard_normal_samples(params.seed, params.samples)
    xs = pose.x + math.sqrt(cov.var_x) * z[:, 0]
    ys = pose.y + math.sqrt(cov.var_y) * z[:, 1]
    ths = pose.theta + math.sqrt(cov.var_theta) * z[:, 2]
    hits = backend.get().mc_count(
        xs, ys, np.cos(ths), np.sin(ths),
        0.5 * ego.length, 0.5 * ego.width,
        0.5 * opp.length, 0.5 * opp.width)
    return POCResult(
        probability=hits / params.samples,
        method="montecarlo",
        center_distance=math.hypot(pose.x, pose.y),
        combined_radius=0.0,
    )
