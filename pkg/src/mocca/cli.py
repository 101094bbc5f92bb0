"""Command-line interface.

Subcommands:

* ``poc`` — one-shot probability query for a single relative pose.
* ``sweep`` — evaluate a canned scenario over its grid and emit CSV.
* ``bench`` — per-method timing table (optionally comparing backends).
* ``scaling`` — quadrature panel count versus evaluation time, with fit.
* ``error-bound`` — the analytic underestimation bound and the safety
  margin calibrated from it.

Exit codes: 0 success, 2 invalid arguments or unavailable backend,
3 numerical-domain error (an input outside a formula's domain), 1 I/O
failure.
"""

from __future__ import annotations

import argparse
import math
import sys
from typing import List, Optional

from . import __version__, backend
from .baselines import (MCParams, monte_carlo_poc, multicircle_poc,
                        unicircle_poc)
from .benchmarks import benchmark, linear_fit, substep_scaling
from .errorbound import approximation_error, approximation_error_chi, safety_distance
from .errors import BackendError, DomainError, MoccaError
from .geometry import VehicleDims, centerline_circle_radius
from .poc import METHODS, CircleSpec, QuadratureParams, mocca_poc
from .scenarios import SCENARIO_IDS, build_scenario, emit_csv, run_sweep
from .uncertainty import PoseCovariance, RelativePose


def _add_vehicle_args(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--ego-l", type=float, default=5.0,
                        help="ego length in metres (default 5)")
    parser.add_argument("--ego-w", type=float, default=2.2,
                        help="ego width in metres (default 2.2)")
    parser.add_argument("--opp-l", type=float, default=5.0,
                        help="opponent length in metres (default 5)")
    parser.add_argument("--opp-w", type=float, default=2.2,
                        help="opponent width in metres (default 2.2)")


def _parse_methods(raw: str, parser: argparse.ArgumentParser) -> List[str]:
    if raw.strip().lower() == "all":
        return list(METHODS)
    chosen = [part.strip() for part in raw.split(",") if part.strip()]
    unknown = [m for m in chosen if m not in METHODS]
    if unknown or not chosen:
        parser.error(f"--methods must name a subset of {','.join(METHODS)} "
                     f"or 'all', got {raw!r}")
    return chosen


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="mocca",
        description="Collision probability between two rectangular vehicles "
                    "under Gaussian relative-pose uncertainty.")
    parser.add_argument("--version", action="version",
                        version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p_poc = sub.add_parser("poc", help="one-shot probability query")
    _add_vehicle_args(p_poc)
    p_poc.add_argument("--mu-x", type=float, default=0.0,
                       help="relative centre x in metres")
    p_poc.add_argument("--mu-y", type=float, default=0.0,
                       help="relative centre y in metres")
    p_poc.add_argument("--mu-theta", type=float, default=0.0,
                       help="relative heading in radians")
    p_poc.add_argument("--var-x", type=float, default=0.25,
                       help="x variance in m^2 (default 0.25)")
    p_poc.add_argument("--var-y", type=float, default=0.25,
                       help="y variance in m^2 (default 0.25)")
    p_poc.add_argument("--var-theta", type=float, default=0.25,
                       help="heading variance in rad^2 (default 0.25)")
    p_poc.add_argument("--method", choices=METHODS, default="mocca")
    p_poc.add_argument("--substeps", type=int, default=80,
                       help="quadrature panels (default 80)")
    p_poc.add_argument("--samples", type=int, default=10_000,
                       help="Monte Carlo samples (default 10000)")
    p_poc.add_argument("--seed", type=int, default=42,
                       help="Monte Carlo seed (default 42)")
    p_poc.add_argument("--safety-n", type=float, default=None,
                       help="calibrate an additive safety margin at this "
                            "Mahalanobis level (moving-circle method only)")

    p_sweep = sub.add_parser("sweep", help="scenario sweep to CSV")
    p_sweep.add_argument("--scenario", required=True, choices=SCENARIO_IDS)
    p_sweep.add_argument("--methods", default="all",
                         help="comma-separated subset of "
                              f"{','.join(METHODS)}, or 'all'")
    p_sweep.add_argument("--sigma-theta", type=float, default=None,
                         help="override the heading standard deviation (rad)")
    p_sweep.add_argument("--step", type=float, default=0.1,
                         help="sweep step in metres (default 0.1)")
    p_sweep.add_argument("--out", default="-",
                         help="output file, '-' for stdout (default)")
    p_sweep.add_argument("--no-timing", action="store_true",
                         help="leave the timing column empty so output is "
                              "byte-reproducible")
    p_sweep.add_argument("--seed", type=int, default=42,
                         help="Monte Carlo base seed (default 42)")
    p_sweep.add_argument("--samples", type=int, default=10_000)
    p_sweep.add_argument("--substeps", type=int, default=80)

    p_bench = sub.add_parser("bench", help="per-method timing table")
    p_bench.add_argument("--reps", type=int, default=10_000,
                         help="timed repetitions per method (default 10000)")
    p_bench.add_argument("--out", default=None,
                         help="optional CSV destination for the stats")
    p_bench.add_argument("--methods", default="all")
    p_bench.add_argument("--backend", default=None,
                         choices=("numba", "numpy", "both"),
                         help="pin the compute backend, or compare 'both'")
    p_bench.add_argument("--samples", type=int, default=10_000)
    p_bench.add_argument("--substeps", type=int, default=80)

    p_scale = sub.add_parser("scaling",
                             help="evaluation time versus quadrature panels")
    p_scale.add_argument("--substeps", default="10,20,40,80,160,320",
                         help="comma-separated panel counts")
    p_scale.add_argument("--reps", type=int, default=300)

    p_err = sub.add_parser("error-bound",
                           help="underestimation bound and safety margin")
    p_err.add_argument("--dist", type=float, default=None,
                       help="distance between the circle centres in metres")
    p_err.add_argument("--rc", type=float, required=True,
                       help="combined circle radius in metres")
    p_err.add_argument("--sigma-theta", type=float, required=True,
                       help="heading standard deviation in radians")
    p_err.add_argument("--safety-n", type=float, default=None,
                       help="also calibrate the margin for this Mahalanobis "
                            "level, treating --rc as the summed bare radii")
    return parser


def _cmd_poc(args, parser) -> int:
    ego = VehicleDims(args.ego_l, args.ego_w)
    opp = VehicleDims(args.opp_l, args.opp_w)
    pose = RelativePose(args.mu_x, args.mu_y, args.mu_theta)
    cov = PoseCovariance(args.var_x, args.var_y, args.var_theta)
    quad = QuadratureParams(args.substeps)

    margin = 0.0
    if args.safety_n is not None:
        if args.method != "mocca":
            parser.error("--safety-n only applies to the mocca method")
        margin = safety_distance(args.safety_n, cov.sigma_theta,
                                 centerline_circle_radius(ego.width),
                                 centerline_circle_radius(opp.width))

    if args.method == "mocca":
        spec = CircleSpec.from_dims(ego, opp, margin)
        result = mocca_poc(ego, opp, pose, cov, spec, quad)
    elif args.method == "unicircle":
        result = unicircle_poc(ego, opp, pose, cov, quad)
    elif args.method == "multicircle":
        result = multicircle_poc(ego, opp, pose, cov, quad)
    else:
        result = monte_carlo_poc(ego, opp, pose, cov,
                                 MCParams(args.samples, args.seed))

    print(f"method           {result.method}")
    print(f"backend          {backend.active_backend()}")
    print(f"probability      {result.probability:.9g}")
    if result.method == "mocca":
        print(f"error_bound      {result.error_bound:.9g}")
        assert result.closest is not None
        print(f"segment_distance {result.closest.distance:.9g}")
        print(f"ego_shift        {result.closest.ego_shift:.9g}")
        print(f"opp_shift        {result.closest.opp_shift:.9g}")
        if args.safety_n is not None:
            print(f"safety_margin    {margin:.9g}")
    print(f"center_distance  {result.center_distance:.9g}")
    if result.method != "montecarlo":
        print(f"combined_radius  {result.combined_radius:.9g}")
    return 0


def _cmd_sweep(args, parser) -> int:
    methods = _parse_methods(args.methods, parser)
    scenario = build_scenario(args.scenario, sigma_theta=args.sigma_theta,
                              step=args.step)
    rows = run_sweep(scenario, methods,
                     quad=QuadratureParams(args.substeps),
                     mc=MCParams(args.samples, args.seed),
                     timing=not args.no_timing)
    if args.out == "-":
        emit_csv(rows, sys.stdout, timing=not args.no_timing)
    else:
        emit_csv(rows, args.out, timing=not args.no_timing)
        print(f"wrote {len(rows)} rows to {args.out}", file=sys.stderr)
    return 0


_TABLE_HEADER = (f"{'method':<12} {'backend':<8} {'median [us]':>12} "
                 f"{'mean [us]':>12} {'stddev [us]':>12} {'reps':>8}")


def _cmd_bench(args, parser) -> int:
    methods = _parse_methods(args.methods, parser)
    quad = QuadratureParams(args.substeps)
    mc = MCParams(args.samples)
    if args.backend == "both":
        names = backend.available_backends()
    elif args.backend:
        names = (args.backend,)
    else:
        names = (backend.active_backend(),)

    all_stats = []
    for name in names:
        all_stats.extend(benchmark(methods, reps=args.reps, quad=quad, mc=mc,
                                   backend_name=name))
    print(_TABLE_HEADER)
    for st in all_stats:
        print(f"{st.method:<12} {st.backend:<8} {st.median_us:>12.2f} "
              f"{st.mean_us:>12.2f} {st.stddev_us:>12.2f} {st.reps:>8d}")
    if args.out:
        with open(args.out, "w", encoding="ascii", newline="") as fh:
            fh.write("method,backend,median_us,mean_us,stddev_us,reps\n")
            for st in all_stats:
                fh.write(f"{st.method},{st.backend},{st.median_us:.9g},"
                         f"{st.mean_us:.9g},{st.stddev_us:.9g},{st.reps}\n")
        print(f"wrote stats to {args.out}", file=sys.stderr)
    return 0


def _cmd_scaling(args, parser) -> int:
    try:
        counts = [int(part) for part in args.substeps.split(",") if part.strip()]
    except ValueError:
        parser.error(f"--substeps must be comma-separated integers, "
                     f"got {args.substeps!r}")
    series = substep_scaling(counts, reps=args.reps)
    print(f"{'substeps':>9} {'median [us]':>12} {'mean [us]':>12} "
          f"{'stddev [us]':>12}")
    for n, st in series:
        print(f"{n:>9d} {st.median_us:>12.2f} {st.mean_us:>12.2f} "
              f"{st.stddev_us:>12.2f}")
    slope, intercept, r2 = linear_fit([n for n, _ in series],
                                      [st.median_us for _, st in series])
    print(f"fit: median_us = {slope:.4f} * substeps + {intercept:.4f} "
          f"(R^2 = {r2:.4f})")
    return 0


def _cmd_error_bound(args, parser) -> int:
    if args.dist is None and args.safety_n is None:
        parser.error("provide --dist, --safety-n, or both")
    if args.dist is not None:
        result = approximation_error(args.dist, args.rc, args.sigma_theta)
        print(f"e_approx         {result.value:.9g}")
        print(f"circles_overlap  {str(result.circles_overlap).lower()}")
        if result.window is not None:
            print(f"window_lower     {result.window.lower:.9g}")
            print(f"window_upper     {result.window.upper:.9g}")
            print(f"window_width     {result.window.width:.9g}")
            if (args.sigma_theta > 0.0
                    and 6.0 * args.sigma_theta <= math.pi):
                chi = approximation_error_chi(result.window.lower,
                                              args.sigma_theta)
                print(f"e_approx_chi1    {chi:.9g}")
    if args.safety_n is not None:
        margin = safety_distance(args.safety_n, args.sigma_theta, args.rc, 0.0)
        print(f"safety_margin    {margin:.9g}")
        calibrated = approximation_error(args.rc + margin, args.rc,
                                         args.sigma_theta)
        print(f"bound_at_margin  {calibrated.value:.9g}")
    return 0


_COMMANDS = {
    "poc": _cmd_poc,
    "sweep": _cmd_sweep,
    "bench": _cmd_bench,
    "scaling": _cmd_scaling,
    "error-bound": _cmd_error_bound,
}


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return _COMMANDS[args.command](args, parser)
    except DomainError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except BackendError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except MoccaError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
