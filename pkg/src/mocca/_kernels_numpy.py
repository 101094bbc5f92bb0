"""numpy backend: vectorised hot stages, shared scalar geometry.

Mirrors the call surface of ``_kernels_numba`` exactly — same function
names, same argument orders, same return tuples — so the two are
interchangeable behind ``backend.get()``.  The quadrature evaluates all
panels as one array expression and the Monte Carlo predicate is a boolean
reduction; the branch-heavy closest-point search stays scalar (vectorising
its case split buys nothing at one call per evaluation).

Monte Carlo counts are bit-identical to the numba backend: both receive the
same pre-drawn sample arrays and the separating-axis arithmetic below
performs the identical floating-point operations elementwise.
"""

import math

import numpy as np
from scipy.special import erf as _erf

from . import _scalar_impl as _impl

NAME = "numpy"

_SQRT2 = math.sqrt(2.0)
_SQRT_TWO_PI = math.sqrt(2.0 * math.pi)

closest_pair = _impl.closest_pair
propagate_cov = _impl.propagate_cov
decorrelate_cov = _impl.decorrelate_cov
wrapped_window_mass = _impl.wrapped_window_mass
bound_value = _impl.bound_value
sat_overlap = _impl.sat_overlap
multicircle_offset = _impl.multicircle_offset


def poc_quadrature(mu_x, mu_y, sigma_x, sigma_y, radius, substeps):
    """Midpoint-rule disk integral over a panel array (see _scalar_impl)."""
    h = math.pi / substeps
    phi = -0.5 * math.pi + (np.arange(substeps) + 0.5) * h
    x = radius * np.sin(phi)
    half_chord = radius * np.cos(phi)
    z = (x - mu_x) / sigma_x
    inv_sy = 1.0 / (_SQRT2 * sigma_y)
    panels = half_chord * np.exp(-0.5 * z * z) * (
        _erf((half_chord - mu_y) * inv_sy) - _erf((-half_chord - mu_y) * inv_sy)
    )
    prob = 0.5 * h * float(panels.sum()) / (_SQRT_TWO_PI * sigma_x)
    return min(max(prob, 0.0), 1.0)


def mocca_eval(half_e, half_o, mu_x, mu_y, heading, var_x, var_y, var_theta,
               r_c, substeps, eps_parallel):
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
        prob = poc_quadrature(mx, my, s_major, s_minor, r_c, substeps)
    else:
        prob = math.nan
    bound = _impl.bound_value(center_dist, r_c, math.sqrt(var_theta))
    par_flag = 1.0 if par else 0.0
    return (prob, bound, t, s, ex, ey, fx, fy, seg_dist, par_flag,
            center_dist, s_major, s_minor)


def unicircle_eval(r_c, mu_x, mu_y, var_x, var_y, substeps):
    mx, my, s_major, s_minor, _rot = _impl.decorrelate_cov(
        mu_x, mu_y, var_x, 0.0, var_y)
    if s_major > 0.0 and s_minor > 0.0:
        prob = poc_quadrature(mx, my, s_major, s_minor, r_c, substeps)
    else:
        prob = math.nan
    return prob, math.hypot(mu_x, mu_y)


def multicircle_eval(n_e, half_e, n_o, half_o, r_pair, mu_x, mu_y, heading,
                     var_x, var_y, var_theta, substeps):
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
            p = poc_quadrature(mx, my, s_major, s_minor, r_pair, substeps)
            if p > best:
                best = p
                best_dist = math.hypot(rel_x, ocy)
    if best < 0.0:
        return math.nan, 0.0
    return best, best_dist


def mc_count(xs, ys, coss, sins, half_le, half_we, half_lo, half_wo):
    ac = np.abs(coss)
    asn = np.abs(sins)
    hit = np.abs(xs) <= half_le + ac * half_lo + asn * half_wo
    hit &= np.abs(ys) <= half_we + asn * half_lo + ac * half_wo
    hit &= np.abs(xs * coss + ys * sins) <= half_lo + ac * half_le + asn * half_we
    hit &= np.abs(ys * coss - xs * sins) <= half_wo + asn * half_le + ac * half_we
    return int(np.count_nonzero(hit))
