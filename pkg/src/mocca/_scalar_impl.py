"""Scalar kernel implementations shared by both compute backends.

Every function here is written against ``math`` and plain floats.  When numba
is installed the definitions below are compiled in place (the decorator is a
no-op otherwise), so the exact same source serves as the accelerated leaf
kernels and as the portable fallback.  The numpy backend replaces only the
array-parallel stages (quadrature panels, Monte Carlo counting) with
vectorised equivalents; the branchy geometry stays scalar.

Conventions:

* the ego vehicle sits at the origin of the working frame, heading +x;
* segment endpoints are raw coordinates; closest-point parameters are
  returned as normalised shifts in [-1, 1] (0 = segment centre, +-1 = the
  endpoints);
* all angles are radians, all lengths metres.
"""

import math

import numpy as np

try:  # pragma: no cover - exercised implicitly by backend selection
    from numba import njit as _njit

    HAVE_NUMBA = True
except ImportError:  # pragma: no cover
    HAVE_NUMBA = False

    def _njit(**_kwargs):
        def passthrough(func):
            return func

        return passthrough


TWO_PI = 2.0 * math.pi
_SQRT2 = math.sqrt(2.0)
_SQRT_TWO_PI = math.sqrt(TWO_PI)

# Truncation threshold for the wrapped-normal tail sum.
_WRAP_TERM_EPS = 1e-15


@_njit(cache=True)
def clamp01(v):
    if v < 0.0:
        return 0.0
    if v > 1.0:
        return 1.0
    return v


@_njit(cache=True)
def poc_disk_quadrature(mu_x, mu_y, sigma_x, sigma_y, radius, substeps):
    """Probability mass of N(mu, diag(sigma^2)) inside the origin disk.

    The inner integral is reduced to a difference of error functions over
    the chord at each x; the outer integral is evaluated by a composite
    midpoint rule with uniform panels in the angle phi of x = r*sin(phi).
    The substitution absorbs the sqrt(r^2 - x^2) boundary behaviour, so the
    transformed integrand is smooth, vanishes at both endpoints, and the
    rule converges at its clean second-order rate.
    """
    h = math.pi / substeps
    inv_sy = 1.0 / (_SQRT2 * sigma_y)
    acc = 0.0
    for i in range(substeps):
        phi = -0.5 * math.pi + (i + 0.5) * h
        x = radius * math.sin(phi)
        half_chord = radius * math.cos(phi)
        z = (x - mu_x) / sigma_x
        acc += half_chord * math.exp(-0.5 * z * z) * (
            math.erf((half_chord - mu_y) * inv_sy)
            - math.erf((-half_chord - mu_y) * inv_sy)
        )
    prob = 0.5 * h * acc / (_SQRT_TWO_PI * sigma_x)
    if prob < 0.0:
        return 0.0
    if prob > 1.0:
        return 1.0
    return prob


@_njit(cache=True)
def closest_pair(ax, ay, bx, by, cx, cy, dx, dy, eps_parallel):
    """Mutually closest points of segments A-B and C-D.

    Returns ``(t, s, ex, ey, fx, fy, distance, parallel)`` where (ex, ey)
    lies on A-B, (fx, fy) on C-D, and t, s are the normalised shifts of the
    two points.  Internally works on endpoint parameters u, v in [0, 1].

    The non-parallel branch evaluates two candidate pairs: clamp one
    parameter of the unconstrained minimiser, re-minimise the other along
    that edge, clamp again; once per ordering.  For a strictly convex
    quadratic this covers interior, edge and corner optima exactly, so the
    smaller candidate is the true constrained minimum.  Ties go to the
    first pair.
    """
    ux = bx - ax
    uy = by - ay
    vx = dx - cx
    vy = dy - cy
    uu = ux * ux + uy * uy
    vv = vx * vx + vy * vy

    parallel = False
    if uu == 0.0 and vv == 0.0:
        u = 0.5
        v = 0.5
        ex = ax
        ey = ay
        fx = cx
        fy = cy
    elif uu == 0.0:
        # First segment collapsed to a point: project it onto C-D.
        v = clamp01(((ax - cx) * vx + (ay - cy) * vy) / vv)
        u = 0.5
        ex = ax
        ey = ay
        fx = cx + v * vx
        fy = cy + v * vy
    elif vv == 0.0:
        u = clamp01(((cx - ax) * ux + (cy - ay) * uy) / uu)
        v = 0.5
        ex = ax + u * ux
        ey = ay + u * uy
        fx = cx
        fy = cy
    else:
        cross = ux * vy - uy * vx
        if abs(cross) <= eps_parallel * math.sqrt(uu) * math.sqrt(vv):
            parallel = True
            # Perpendicular feet of each endpoint on the other segment,
            # with clamped parameters.
            va = clamp01(((ax - cx) * vx + (ay - cy) * vy) / vv)
            fax = cx + va * vx
            fay = cy + va * vy
            da = math.hypot(ax - fax, ay - fay)

            vb = clamp01(((bx - cx) * vx + (by - cy) * vy) / vv)
            fbx = cx + vb * vx
            fby = cy + vb * vy
            db = math.hypot(bx - fbx, by - fby)

            uc = clamp01(((cx - ax) * ux + (cy - ay) * uy) / uu)
            gcx = ax + uc * ux
            gcy = ay + uc * uy
            dc = math.hypot(cx - gcx, cy - gcy)

            ud = clamp01(((dx - ax) * ux + (dy - ay) * uy) / uu)
            gdx = ax + ud * ux
            gdy = ay + ud * uy
            dd = math.hypot(dx - gdx, dy - gdy)

            # First match in the fixed order A, B, C, D decides ties.  A
            # tie must be recognised up to rounding noise: exactly equal
            # real distances (common for collinear segments) land a few
            # ulp apart in floats, and without the tolerance the winner
            # would be picked by that noise instead of by the fixed order.
            m = min(min(da, db), min(dc, dd))
            m += 1e-12 * (1.0 + m + math.sqrt(uu) + math.sqrt(vv)
                          + math.hypot(cx - ax, cy - ay))
            if da <= m:
                u = 0.0
                v = va
                ex = ax
                ey = ay
                fx = fax
                fy = fay
            elif db <= m:
                u = 1.0
                v = vb
                ex = bx
                ey = by
                fx = fbx
                fy = fby
            elif dc <= m:
                u = uc
                v = 0.0
                ex = gcx
                ey = gcy
                fx = cx
                fy = cy
            else:
                u = ud
                v = 1.0
                ex = gdx
                ey = gdy
                fx = dx
                fy = dy
        else:
            wx = cx - ax
            wy = cy - ay
            c2 = 2.0 * (wx * vx + wy * vy)
            c3 = 2.0 * (wx * ux + wy * uy)
            c4 = 2.0 * (ux * vx + uy * vy)
            # Algebraically 4*uu*vv - c4^2, but that form cancels to zero
            # for nearly parallel segments; the cross-product form is exact.
            den = 4.0 * cross * cross

            # Candidate 1: clamp v of the joint minimiser, re-minimise u.
            v1 = clamp01((c3 * c4 - 2.0 * c2 * uu) / den)
            u1 = clamp01((c3 + v1 * c4) / (2.0 * uu))
            # Candidate 2: clamp u of the joint minimiser, re-minimise v.
            u2 = clamp01((2.0 * c3 * vv - c2 * c4) / den)
            v2 = clamp01((u2 * c4 - c2) / (2.0 * vv))

            e1x = ax + u1 * ux
            e1y = ay + u1 * uy
            f1x = cx + v1 * vx
            f1y = cy + v1 * vy
            d1 = (f1x - e1x) * (f1x - e1x) + (f1y - e1y) * (f1y - e1y)

            e2x = ax + u2 * ux
            e2y = ay + u2 * uy
            f2x = cx + v2 * vx
            f2y = cy + v2 * vy
            d2 = (f2x - e2x) * (f2x - e2x) + (f2y - e2y) * (f2y - e2y)

            if d1 <= d2:
                u = u1
                v = v1
                ex = e1x
                ey = e1y
                fx = f1x
                fy = f1y
            else:
                u = u2
                v = v2
                ex = e2x
                ey = e2y
                fx = f2x
                fy = f2y

    dist = math.hypot(fx - ex, fy - ey)
    return 2.0 * u - 1.0, 2.0 * v - 1.0, ex, ey, fx, fy, dist, parallel


@_njit(cache=True)
def propagate_cov(var_x, var_y, var_theta, offset, heading):
    """Position covariance of a point `offset` metres along the heading.

    First-order propagation of diag(var_x, var_y, var_theta) through
    p = mu + offset * (cos heading, sin heading).  The heading is reduced
    with fmod before the trig calls, so adding whole turns cannot change
    the result.
    """
    th = np.fmod(heading, TWO_PI)
    s = math.sin(th)
    c = math.cos(th)
    spread = offset * offset * var_theta
    return var_x + spread * s * s, -spread * s * c, var_y + spread * c * c


@_njit(cache=True)
def decorrelate_cov(mean_x, mean_y, cov_xx, cov_xy, cov_yy):
    """Rotate into the eigenframe of a 2x2 symmetric covariance.

    Returns ``(mean_x', mean_y', sigma_major, sigma_minor, rotation)`` with
    sigma_major >= sigma_minor; `rotation` maps the eigenframe back to the
    input frame.  Slightly negative eigenvalues from round-off are clamped
    to zero; genuine indefiniteness is rejected by the public wrapper.
    """
    half_tr = 0.5 * (cov_xx + cov_yy)
    disc = math.hypot(0.5 * (cov_xx - cov_yy), cov_xy)
    lam1 = half_tr + disc
    lam2 = half_tr - disc
    if lam1 < 0.0:
        lam1 = 0.0
    if lam2 < 0.0:
        lam2 = 0.0
    if cov_xy == 0.0 and cov_xx == cov_yy:
        rot = 0.0  # isotropic: pin the rotation instead of atan2(0, 0)
    else:
        rot = 0.5 * math.atan2(2.0 * cov_xy, cov_xx - cov_yy)
    cr = math.cos(rot)
    sr = math.sin(rot)
    out_x = mean_x * cr + mean_y * sr
    out_y = mean_y * cr - mean_x * sr
    return out_x, out_y, math.sqrt(lam1), math.sqrt(lam2), rot


@_njit(cache=True)
def wrapped_window_mass(theta_min, theta_max, sigma):
    """Doubled mass of a wrapped N(0, sigma^2) over [theta_min, theta_max].

    Sums the plain normal mass over every 2*pi translate of the window and
    doubles it (the mirrored window at negative angles carries the same
    mass).  Translate pairs are added symmetrically until one contributes
    less than 1e-15.  Clamped into [0, 1].
    """
    inv = 1.0 / (_SQRT2 * sigma)
    total = 0.5 * (math.erf(theta_max * inv) - math.erf(theta_min * inv))
    beta = 1
    while True:
        shift = TWO_PI * beta
        term = 0.5 * (
            math.erf((theta_max + shift) * inv)
            - math.erf((theta_min + shift) * inv)
        )
        term += 0.5 * (
            math.erf((theta_max - shift) * inv)
            - math.erf((theta_min - shift) * inv)
        )
        total += term
        if term < _WRAP_TERM_EPS:
            break
        beta += 1
    doubled = 2.0 * total
    if doubled < 0.0:
        return 0.0
    if doubled > 1.0:
        return 1.0
    return doubled


@_njit(cache=True)
def bound_value(dist, radius, sigma_theta):
    """Orientation-error mass that the single-circle test can miss.

    Zero when the circles already overlap at the mean (the circle test
    reports the collision itself, so there is nothing left to bound).  A
    zero sigma collapses to the indicator of the window containing the
    mean orientation.
    """
    if dist < radius:
        return 0.0
    ratio = radius / dist
    if ratio > 1.0:
        ratio = 1.0
    phi = 2.0 * math.asin(ratio)
    theta_min = 0.5 * (math.pi - phi)
    if sigma_theta == 0.0:
        return 1.0 if theta_min <= 0.0 else 0.0
    return wrapped_window_mass(theta_min, theta_min + phi, sigma_theta)


@_njit(cache=True)
def multicircle_offset(i, n, half_span):
    """i-th of n uniform centerline offsets, exactly antisymmetric in i."""
    j = n - 1 - i
    if i == j:
        return 0.0
    if i > j:
        return half_span * ((2.0 * i - (n - 1.0)) / (n - 1.0))
    return -(half_span * ((2.0 * j - (n - 1.0)) / (n - 1.0)))


@_njit(cache=True)
def sat_overlap(half_le, half_we, half_lo, half_wo, off_x, off_y, cos_t, sin_t):
    """Separating-axis overlap test for two boxes; touching counts as overlap.

    The first box is axis-aligned at the origin with the given half extents;
    the second is centred at (off_x, off_y) and rotated by the angle whose
    cosine/sine are supplied by the caller.
    """
    ac = abs(cos_t)
    asn = abs(sin_t)
    if abs(off_x) > half_le + ac * half_lo + asn * half_wo:
        return False
    if abs(off_y) > half_we + asn * half_lo + ac * half_wo:
        return False
    if abs(off_x * cos_t + off_y * sin_t) > half_lo + ac * half_le + asn * half_we:
        return False
    if abs(off_y * cos_t - off_x * sin_t) > half_wo + asn * half_le + ac * half_we:
        return False
    return True
