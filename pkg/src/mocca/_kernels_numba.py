"""numba backend: compiled leaf kernels plus fused per-method evaluators.

Importing this module requires numba; ``backend`` falls back to the numpy
implementation when the import fails.  The fused evaluators exist so that a
sweep or benchmark evaluation is one call into compiled code — building
result objects, validating inputs and similar bookkeeping stays outside the
timed path.

All evaluators return plain float tuples.  A NaN probability signals a
degenerate (zero-variance) axis; the Python wrappers turn that into a
``DegenerateVarianceError``.
"""

import math

import numpy as np
from numba import njit

from . import _scalar_impl as _impl

NAME = "numba"

# When numba is available the _scalar_impl functions are already compiled
# dispatchers (see the conditional decorator there), so they can be called
# from the fused kernels below and re-exported directly.
closest_pair = _impl.closest_pair
poc_quadrature = _impl.poc_disk_quadrature
propagate_cov = _impl.propagate_cov
decorrelate_cov = _impl.decorrelate_cov
wrapped_window_mass = _impl.wrapped_window_mass
bound_value = _impl.bound_value
sat_overlap = _impl.sat_overlap
multicircle_offset = _impl.multicircle_offset


@njit(cache=True)
def mocca_eval(half_e, half_o, mu_x, mu_y, heading, var_x, var_y, var_theta,
               r_c, substeps, eps_parallel):
    """One moving-circle evaluation: geometry, propagation, integral, bound."""
    ct = math.cos(heading)
    st = math.sin(heading)
    t, s, ex, ey, fx, fy, seg_dist, par = _impl.closest_pair(
        -half_e, 0.0, half_e, 0.0,
        mu_x - half_o * ct, mu_y - half_o * st,
        mu_x + half_o * ct, mu_y + half_o * st,
        eps_parallel,
    )
    cxx, cxy, cyy = _impl.propagate_cov(var_x, var_y, var_theta, s * half_o, heading)
    mfx = fx - ex
    mfy = fy - ey
    mx, my, s_major, s_minor, _rot = _impl.decorrelate_cov(mfx, mfy, cxx, cxy, cyy)
    center_dist = math.hypot(mfx, mfy)
    if s_major > 0.0 and s_minor > 0.0:
        prob = _impl.poc_disk_quadrature(mx, my, s_major, s_minor, r_c, substeps)
    else:
        prob = np.nan
    bound = _impl.bound_value(center_dist, r_c, math.sqrt(var_theta))
    par_flag = 1.0 if par else 0.0
    return (prob, bound, t, s, ex, ey, fx, fy, seg_dist, par_flag,
            center_dist, s_major, s_minor)


@njit(cache=True)
def unicircle_eval(r_c, mu_x, mu_y, var_x, var_y, substeps):
    """Circumscribed-circle evaluation; no offset, no propagation term."""
    mx, my, s_major, s_minor, _rot = _impl.decorrelate_cov(
        mu_x, mu_y, var_x, 0.0, var_y)
    if s_major > 0.0 and s_minor > 0.0:
        prob = _impl.poc_disk_quadrature(mx, my, s_major, s_minor, r_c, substeps)
    else:
        prob = np.nan
    return prob, math.hypot(mu_x, mu_y)


@njit(cache=True)
def multicircle_eval(n_e, half_e, n_o, half_o, r_pair, mu_x, mu_y, heading,
                     var_x, var_y, var_theta, substeps):
    """Max single-pair probability over the full circle-cover cross product.

    The covariance is propagated once per opponent circle (its offset is
    what the heading uncertainty acts on); ego circles only shift the mean.
    Ties keep the first maximiser in (opponent, ego) iteration order.
    """
    ct = math.cos(heading)
    st = math.sin(heading)
    best = -1.0
    best_dist = 0.0
    for j in range(n_o):
        off_o = _impl.multicircle_offset(j, n_o, half_o)
        ocx = mu_x + off_o * ct
        ocy = mu_y + off_o * st
        cxx, cxy, cyy = _impl.propagate_cov(var_x, var_y, var_theta, off_o, heading)
        for i in range(n_e):
            rel_x = ocx - _impl.multicircle_offset(i, n_e, half_e)
            mx, my, s_major, s_minor, _rot = _impl.decorrelate_cov(
                rel_x, ocy, cxx, cxy, cyy)
            if s_major <= 0.0 or s_minor <= 0.0:
                continue
            p = _impl.poc_disk_quadrature(mx, my, s_major, s_minor, r_pair, substeps)
            if p > best:
                best = p
                best_dist = math.hypot(rel_x, ocy)
    if best < 0.0:
        return np.nan, 0.0
    return best, best_dist


@njit(cache=True)
def mc_count(xs, ys, coss, sins, half_le, half_we, half_lo, half_wo):
    """Number of sampled poses whose rectangles overlap the ego box."""
    k = 0
    for i in range(xs.shape[0]):
        if _impl.sat_overlap(half_le, half_we, half_lo, half_wo,
                             xs[i], ys[i], coss[i], sins[i]):
            k += 1
    return k
