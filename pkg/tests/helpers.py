"""Independent reference implementations used as test oracles.

Everything in this module is deliberately written from first principles with
different algorithms than the package uses (textbook segment-distance
clamping, explicit wrapped-normal term sums, polygon clipping by
vertex/edge tests), so agreement between the two is meaningful.
"""

from __future__ import annotations

import math
from typing import Sequence, Tuple

import numpy as np
from scipy.stats import norm

Vec = Tuple[float, float]


# ---------------------------------------------------------------------------
# segment-to-segment distance, Ericson "Real-Time Collision Detection" style


def closest_params_reference(a: Vec, b: Vec, c: Vec, d: Vec,
                             eps: float = 1e-12) -> Tuple[float, float]:
    """Clamped parameters (s, t) in [0, 1]^2 minimising |(a + s*ab) - (c + t*cd)|.

    Direct port of the classic pairwise-clamping algorithm; no shared code
    with the package implementation.
    """
    abx, aby = b[0] - a[0], b[1] - a[1]
    cdx, cdy = d[0] - c[0], d[1] - c[1]
    rx, ry = a[0] - c[0], a[1] - c[1]
    aa = abx * abx + aby * aby
    ee = cdx * cdx + cdy * cdy
    ff = cdx * rx + cdy * ry

    if aa <= eps and ee <= eps:
        return 0.0, 0.0
    if aa <= eps:
        return 0.0, min(1.0, max(0.0, ff / ee))
    cc = abx * rx + aby * ry
    if ee <= eps:
        return min(1.0, max(0.0, -cc / aa)), 0.0

    bb = abx * cdx + aby * cdy
    denom = aa * ee - bb * bb
    if denom > eps * aa * ee:
        s = min(1.0, max(0.0, (bb * ff - cc * ee) / denom))
    else:
        s = 0.0
    t = (bb * s + ff) / ee
    if t < 0.0:
        t = 0.0
        s = min(1.0, max(0.0, -cc / aa))
    elif t > 1.0:
        t = 1.0
        s = min(1.0, max(0.0, (bb - cc) / aa))
    return s, t


def segment_distance_reference(a: Vec, b: Vec, c: Vec, d: Vec) -> float:
    s, t = closest_params_reference(a, b, c, d)
    px = a[0] + s * (b[0] - a[0]) - (c[0] + t * (d[0] - c[0]))
    py = a[1] + s * (b[1] - a[1]) - (c[1] + t * (d[1] - c[1]))
    return math.hypot(px, py)


def grid_min_distance(a: Vec, b: Vec, c: Vec, d: Vec,
                      resolution: int = 200) -> float:
    """Smallest pairwise distance over a uniform (s, t) parameter grid."""
    s = np.linspace(0.0, 1.0, resolution)[:, None]
    t = np.linspace(0.0, 1.0, resolution)[None, :]
    ex = a[0] + s * (b[0] - a[0])
    ey = a[1] + s * (b[1] - a[1])
    fx = c[0] + t * (d[0] - c[0])
    fy = c[1] + t * (d[1] - c[1])
    return float(np.min(np.hypot(fx - ex, fy - ey)))


# ---------------------------------------------------------------------------
# probability mass of a Gaussian over a disk


def disk_mass_mc(mu_x: float, mu_y: float, sigma_x: float, sigma_y: float,
                 radius: float, samples: int, seed: int) -> float:
    rng = np.random.default_rng(seed)
    xs = rng.normal(mu_x, sigma_x, samples)
    ys = rng.normal(mu_y, sigma_y, samples)
    return float(np.count_nonzero(np.hypot(xs, ys) <= radius)) / samples


def disk_mass_polar(mu_x: float, mu_y: float, sigma: float,
                    radius: float, n: int = 4000) -> float:
    """Isotropic-case disk mass via the Marcum-style polar integral.

    Integrates r/sigma^2 * exp(-(r^2+d^2)/(2 sigma^2)) * I0(r d / sigma^2)
    with the Bessel term evaluated through numpy; only valid for
    sigma_x == sigma_y.
    """
    from scipy.special import ive

    d = math.hypot(mu_x, mu_y)
    r = (np.arange(n) + 0.5) * (radius / n)
    z = r * d / sigma**2
    # ive = I0(z) * exp(-|z|), which keeps the integrand finite for large z.
    vals = (r / sigma**2 * np.exp(-((r - d) ** 2) / (2 * sigma**2))
            * ive(0, z))
    return float(np.sum(vals) * radius / n)


def rayleigh_disk_mass(radius: float, sigma: float) -> float:
    return 1.0 - math.exp(-(radius * radius) / (2.0 * sigma * sigma))


# ---------------------------------------------------------------------------
# wrapped-normal window mass


def wrapped_mass_reference(lower: float, upper: float, sigma: float,
                           periods: int = 60) -> float:
    """Mass of N(0, sigma^2) landing in [lower, upper] or [-upper, -lower]
    modulo 2*pi, summed over explicit period translates."""
    total = 0.0
    dist = norm(0.0, sigma)
    for k in range(-periods, periods + 1):
        shift = 2.0 * math.pi * k
        total += dist.cdf(upper + shift) - dist.cdf(lower + shift)
        total += dist.cdf(-lower + shift) - dist.cdf(-upper + shift)
    return min(total, 1.0)


# ---------------------------------------------------------------------------
# oriented-rectangle overlap without SAT


def rect_corners(cx: float, cy: float, length: float, width: float,
                 theta: float) -> list:
    hl, hw = 0.5 * length, 0.5 * width
    ct, st = math.cos(theta), math.sin(theta)
    out = []
    for sx, sy in ((hl, hw), (-hl, hw), (-hl, -hw), (hl, -hw)):
        out.append((cx + sx * ct - sy * st, cy + sx * st + sy * ct))
    return out


def _point_in_convex(pt: Vec, poly: Sequence[Vec]) -> bool:
    sign = 0
    n = len(poly)
    for i in range(n):
        ax, ay = poly[i]
        bx, by = poly[(i + 1) % n]
        cross = (bx - ax) * (pt[1] - ay) - (by - ay) * (pt[0] - ax)
        if cross > 1e-12:
            cur = 1
        elif cross < -1e-12:
            cur = -1
        else:
            continue
        if sign == 0:
            sign = cur
        elif cur != sign:
            return False
    return True


def _segments_cross(p1: Vec, p2: Vec, p3: Vec, p4: Vec) -> bool:
    def orient(a: Vec, b: Vec, c: Vec) -> float:
        return (b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0])

    d1 = orient(p3, p4, p1)
    d2 = orient(p3, p4, p2)
    d3 = orient(p1, p2, p3)
    d4 = orient(p1, p2, p4)
    if ((d1 > 0) != (d2 > 0)) and ((d3 > 0) != (d4 > 0)):
        return True

    def on_seg(a: Vec, b: Vec, c: Vec) -> bool:
        return (min(a[0], b[0]) - 1e-12 <= c[0] <= max(a[0], b[0]) + 1e-12
                and min(a[1], b[1]) - 1e-12 <= c[1] <= max(a[1], b[1]) + 1e-12)

    for d, (a, b, c) in ((d1, (p3, p4, p1)), (d2, (p3, p4, p2)),
                         (d3, (p1, p2, p3)), (d4, (p1, p2, p4))):
        if abs(d) <= 1e-12 and on_seg(a, b, c):
            return True
    return False


def rects_overlap_reference(ego_l: float, ego_w: float, opp_l: float,
                            opp_w: float, x: float, y: float,
                            theta: float) -> bool:
    """Vertex-containment plus edge-crossing test; independent of SAT."""
    ego = rect_corners(0.0, 0.0, ego_l, ego_w, 0.0)
    opp = rect_corners(x, y, opp_l, opp_w, theta)
    if any(_point_in_convex(p, opp) for p in ego):
        return True
    if any(_point_in_convex(p, ego) for p in opp):
        return True
    for i in range(4):
        for j in range(4):
            if _segments_cross(ego[i], ego[(i + 1) % 4],
                               opp[j], opp[(j + 1) % 4]):
                return True
    return False


# ---------------------------------------------------------------------------
# covariance propagation via explicit matrices


def propagated_cov_reference(var_x: float, var_y: float, var_theta: float,
                             offset: float, heading: float) -> np.ndarray:
    jac = np.array([[1.0, 0.0, -offset * math.sin(heading)],
                    [0.0, 1.0, offset * math.cos(heading)]])
    sigma = np.diag([var_x, var_y, var_theta])
    return jac @ sigma @ jac.T


def eig_reference(cov: np.ndarray) -> Tuple[float, float]:
    vals = np.linalg.eigvalsh(cov)
    return float(vals[1]), float(vals[0])
