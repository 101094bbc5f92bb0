"""Collision probability estimation for rectangular vehicles whose relative
pose carries Gaussian uncertainty.

The core approximation replaces each rectangle by a circle sliding along the
vehicle's centerline, reduces the pair to one circle versus a bivariate
normal, and integrates that by quadrature.  Companion modules provide the
classical single-circle and fixed-multi-circle baselines, a Monte Carlo
reference, an analytic bound on the underestimation introduced by heading
noise, reproducible benchmark scenarios, and a CLI.

Numerical kernels run through ``numba`` when it is importable and fall back
to vectorised numpy otherwise; see :mod:`mocca.backend`.
"""

from .backend import available_backends, set_backend, use, warmup
from .baselines import (MCParams, MultiCircleConfig, circle_count,
                        circumscribed_radius, monte_carlo_poc,
                        multicircle_config, multicircle_poc,
                        rectangles_overlap, unicircle_poc)
from .errorbound import (AngleWindow, ErrorBoundResult, approximation_error,
                         approximation_error_chi, collision_angle_window,
                         safety_distance, tangent_point)
from .errors import (BackendError, DegenerateVarianceError, DomainError,
                     MoccaError)
from .geometry import (ClosestPair, DistanceCoeffs, Point2, Segment,
                       VehicleDims, centerline_circle_radius,
                       centerline_segment, closest_points,
                       distance_coefficients)
from .poc import (METHODS, CircleSpec, POCResult, QuadratureParams,
                  circle_poc, mocca_poc)
from .scenarios import (SCENARIO_IDS, Scenario, SweepRow, build_scenario,
                        emit_csv, parse_csv, run_sweep, sweep_values)
from .uncertainty import (Cov2, DecorrelatedFrame, PoseCovariance,
                          RelativePose, decorrelate, position_jacobian,
                          propagate_covariance)

__version__ = "0.1.0"

__all__ = [
    "AngleWindow",
    "BackendError",
    "CircleSpec",
    "ClosestPair",
    "Cov2",
    "DecorrelatedFrame",
    "DegenerateVarianceError",
    "DistanceCoeffs",
    "DomainError",
    "ErrorBoundResult",
    "MCParams",
    "METHODS",
    "MoccaError",
    "MultiCircleConfig",
    "POCResult",
    "Point2",
    "PoseCovariance",
    "QuadratureParams",
    "RelativePose",
    "SCENARIO_IDS",
    "Scenario",
    "Segment",
    "SweepRow",
    "VehicleDims",
    "approximation_error",
    "approximation_error_chi",
    "available_backends",
    "build_scenario",
    "centerline_circle_radius",
    "centerline_segment",
    "circle_count",
    "circle_poc",
    "circumscribed_radius",
    "closest_points",
    "collision_angle_window",
    "decorrelate",
    "distance_coefficients",
    "emit_csv",
    "mocca_poc",
    "monte_carlo_poc",
    "multicircle_config",
    "multicircle_poc",
    "parse_csv",
    "position_jacobian",
    "propagate_covariance",
    "rectangles_overlap",
    "run_sweep",
    "safety_distance",
    "set_backend",
    "sweep_values",
    "tangent_point",
    "unicircle_poc",
    "use",
    "warmup",
    "__version__",
]
