"""Scenario sweeps: canned test geometries, per-row evaluation, CSV output.

Six scenarios cover the interesting interaction classes for two 5 m x 2.2 m
vehicles: three head-on passes at full, half and zero body overlap (A1-A3,
opponent heading pi, swept along x) and three crossing geometries
(B1-B3, opponent heading pi/2).  B1 crosses ahead of the ego front at the
lateral clearance that just avoids body overlap, B2 crosses through the ego
centre, and B3 moves both vehicles toward the crossing point together along
the diagonal (p, -p).

Every row of a sweep is a single method evaluation at one grid value.  Rows
are deterministic: the Monte Carlo seed for grid index i is base_seed XOR i,
so estimates are independent across rows but pinned across runs.
"""

from __future__ import annotations

import csv
import io
import math
import time
from dataclasses import dataclass
from pathlib import Path
from typing import Callable, Dict, Iterable, List, Optional, Sequence, Tuple

import numpy as np

from . import backend
from .baselines import (MCParams, circumscribed_radius, multicircle_config,
                        standard_normal_samples)
from .errors import DegenerateVarianceError, DomainError
from .geometry import EPS_PARALLEL, VehicleDims
from .poc import METHODS, CircleSpec, QuadratureParams
from .uncertainty import PoseCovariance, RelativePose

SCENARIO_IDS = ("A1", "A2", "A3", "B1", "B2", "B3")

CSV_HEADER = "scenario,sweep_value_m,method,poc,e_approx_bound,eval_time_us"

#: Shared fixed parameters: both vehicles 5 m x 2.2 m, pose standard
#: deviations 0.5 m / 0.5 m / 0.5 rad unless a sweep overrides the heading
#: spread.
DEFAULT_DIMS = VehicleDims(5.0, 2.2)
DEFAULT_COV = PoseCovariance(0.25, 0.25, 0.25)
DEFAULT_RANGE = (-12.0, 12.0)
DEFAULT_STEP = 0.1

_UINT64_MASK = (1 << 64) - 1

# (sweep axis, pose builder) per scenario id.  The lateral offsets: 1.1 m
# shifts the head-on pass to half the body width (50 % overlap); 3.3 m is
# one body width past that, i.e. 1.1 m of clearance between the side walls.
# The B1 crossing line sits half a length + 1.1 m clearance + half a width
# ahead: 2.5 + 1.1 + 1.1 = 4.7 m.
_POSE_BUILDERS: Dict[str, Tuple[str, Callable[[float], RelativePose]]] = {
    "A1": ("relative_x", lambda v: RelativePose(v, 0.0, math.pi)),
    "A2": ("relative_x", lambda v: RelativePose(v, 1.1, math.pi)),
    "A3": ("relative_x", lambda v: RelativePose(v, 3.3, math.pi)),
    "B1": ("relative_y", lambda v: RelativePose(4.7, v, 0.5 * math.pi)),
    "B2": ("relative_y", lambda v: RelativePose(0.0, v, 0.5 * math.pi)),
    "B3": ("path_parameter", lambda v: RelativePose(v, -v, 0.5 * math.pi)),
}


@dataclass(frozen=True)
class Scenario:
    """One sweep definition: fixed geometry plus a swept pose parameter."""

    scenario_id: str
    sweep_axis: str
    start: float
    stop: float
    step: float
    ego: VehicleDims
    opp: VehicleDims
    cov: PoseCovariance

    def pose_at(self, value: float) -> RelativePose:
        return _POSE_BUILDERS[self.scenario_id][1](value)


@dataclass(frozen=True)
class SweepRow:
    """One CSV row: a method evaluated at one sweep value."""

    scenario: str
    sweep_value: float
    method: str
    probability: float
    error_bound: float
    eval_time_us: Optional[float] = None


def build_scenario(scenario_id: str,
                   sigma_theta: float | None = None,
                   step: float = DEFAULT_STEP) -> Scenario:
    """A canned scenario, optionally with the heading spread overridden."""
    if scenario_id not in _POSE_BUILDERS:
        raise DomainError(
            f"unknown scenario {scenario_id!r}; expected one of "
            f"{', '.join(SCENARIO_IDS)}")
    if step <= 0.0:
        raise DomainError(f"step must be positive, got {step}")
    cov = DEFAULT_COV
    if sigma_theta is not None:
        if sigma_theta < 0.0:
            raise DomainError(f"sigma_theta must be >= 0, got {sigma_theta}")
        cov = PoseCovariance(cov.var_x, cov.var_y, sigma_theta * sigma_theta)
    axis = _POSE_BUILDERS[scenario_id][0]
    return Scenario(scenario_id, axis, DEFAULT_RANGE[0], DEFAULT_RANGE[1],
                    step, DEFAULT_DIMS, DEFAULT_DIMS, cov)


def sweep_values(scenario: Scenario) -> List[float]:
    """The sweep grid, rounded back onto clean decimals.

    Accumulated float error in start + i*step would otherwise turn the
    middle of a symmetric sweep into 1.8e-15 instead of 0, which matters
    both for readable CSVs and for picking out the zero row in tests.
    """
    count = int(round((scenario.stop - scenario.start) / scenario.step)) + 1
    return [round(scenario.start + i * scenario.step, 9) for i in range(count)]


def _row_seed(base_seed: int, value_index: int) -> int:
    return (base_seed ^ value_index) & _UINT64_MASK


def make_evaluators(ego: VehicleDims, opp: VehicleDims, cov: PoseCovariance,
                    quad: QuadratureParams, mc: MCParams,
                    ) -> Dict[str, Callable[[RelativePose, int],
                                            Tuple[float, float]]]:
    """Per-method callables ``(pose, seed) -> (probability, error_bound)``.

    These bind every constant of the evaluation up front and call straight
    into the active backend kernels, so one invocation is exactly the work
    a sweep row or benchmark repetition should measure.  The benchmark
    module reuses them for that reason.
    """
    kern = backend.get()
    substeps = quad.substeps
    half_e = ego.half_span
    half_o = opp.half_span
    var_x, var_y, var_th = cov.var_x, cov.var_y, cov.var_theta
    sd_x, sd_y, sd_th = math.sqrt(var_x), math.sqrt(var_y), math.sqrt(var_th)
    r_mocca = CircleSpec.from_dims(ego, opp).combined_radius
    r_uni = circumscribed_radius(ego) + circumscribed_radius(opp)
    cfg_e = multicircle_config(ego)
    cfg_o = multicircle_config(opp)
    r_multi = cfg_e.radius + cfg_o.radius
    half_le, half_we = 0.5 * ego.length, 0.5 * ego.width
    half_lo, half_wo = 0.5 * opp.length, 0.5 * opp.width
    n_samples = mc.samples

    def eval_mocca(pose: RelativePose, seed: int) -> Tuple[float, float]:
        out = kern.mocca_eval(half_e, half_o, pose.x, pose.y, pose.theta,
                              var_x, var_y, var_th, r_mocca, substeps,
                              EPS_PARALLEL)
        return out[0], out[1]

    def eval_unicircle(pose: RelativePose, seed: int) -> Tuple[float, float]:
        prob, _ = kern.unicircle_eval(r_uni, pose.x, pose.y,
                                      var_x, var_y, substeps)
        return prob, 0.0

    def eval_multicircle(pose: RelativePose, seed: int) -> Tuple[float, float]:
        prob, _ = kern.multicircle_eval(cfg_e.count, half_e, cfg_o.count,
                                        half_o, r_multi,
                                        pose.x, pose.y, pose.theta,
                                        var_x, var_y, var_th, substeps)
        return prob, 0.0

    def eval_montecarlo(pose: RelativePose, seed: int) -> Tuple[float, float]:
        z = standard_normal_samples(seed, n_samples)
        xs = pose.x + sd_x * z[:, 0]
        ys = pose.y + sd_y * z[:, 1]
        ths = pose.theta + sd_th * z[:, 2]
        hits = kern.mc_count(xs, ys, np.cos(ths), np.sin(ths),
                             half_le, half_we, half_lo, half_wo)
        return hits / n_samples, 0.0

    return {
        "mocca": eval_mocca,
        "unicircle": eval_unicircle,
        "multicircle": eval_multicircle,
        "montecarlo": eval_montecarlo,
    }


def run_sweep(scenario: Scenario,
              methods: Sequence[str] = METHODS,
              quad: QuadratureParams | None = None,
              mc: MCParams | None = None,
              timing: bool = True) -> List[SweepRow]:
    """Evaluate the requested methods over the whole sweep grid.

    Rows come back ordered by sweep value, then by the canonical method
    order.  With ``timing`` disabled the eval_time_us field stays None,
    which is what byte-identical CSV comparisons need.
    """
    chosen = _validate_methods(methods)
    quad = quad or QuadratureParams()
    mc = mc or MCParams()
    evaluators = make_evaluators(scenario.ego, scenario.opp, scenario.cov,
                                 quad, mc)
    backend.warmup()  # keep JIT compilation out of the first row's timing
    rows: List[SweepRow] = []
    for index, value in enumerate(sweep_values(scenario)):
        pose = scenario.pose_at(value)
        seed = _row_seed(mc.seed, index)
        for method in chosen:
            fn = evaluators[method]
            if timing:
                t0 = time.perf_counter_ns()
                prob, bound = fn(pose, seed)
                elapsed_us = (time.perf_counter_ns() - t0) / 1e3
            else:
                prob, bound = fn(pose, seed)
                elapsed_us = None
            if math.isnan(prob):
                raise DegenerateVarianceError(
                    f"degenerate covariance in scenario {scenario.scenario_id} "
                    f"at sweep value {value}")
            rows.append(SweepRow(scenario.scenario_id, value, method,
                                 prob, bound, elapsed_us))
    return rows


def _validate_methods(methods: Sequence[str]) -> Tuple[str, ...]:
    unknown = [m for m in methods if m not in METHODS]
    if unknown:
        raise DomainError(
            f"unknown methods {unknown}; expected a subset of {METHODS}")
    if not methods:
        raise DomainError("at least one method is required")
    # Canonical order regardless of how the caller listed them.
    return tuple(m for m in METHODS if m in methods)


def _fmt(value: float) -> str:
    return f"{value:.9g}"


def emit_csv(rows: Iterable[SweepRow], destination, timing: bool = True) -> None:
    """Write rows in the fixed column order with 9-significant-digit floats.

    ``destination`` is a path or a text stream.  With ``timing`` disabled
    the eval_time_us column is left empty (the header keeps its place so
    the schema never changes shape).
    """
    if hasattr(destination, "write"):
        _write_csv(rows, destination, timing)
        return
    path = Path(destination)
    try:
        with open(path, "w", encoding="ascii", newline="") as fh:
            _write_csv(rows, fh, timing)
    except OSError as exc:
        raise OSError(f"cannot write sweep CSV to {path}: {exc}") from exc


def _write_csv(rows: Iterable[SweepRow], stream, timing: bool) -> None:
    stream.write(CSV_HEADER + "\n")
    for row in rows:
        if timing and row.eval_time_us is not None:
            time_field = _fmt(row.eval_time_us)
        else:
            time_field = ""
        stream.write(
            f"{row.scenario},{_fmt(row.sweep_value)},{row.method},"
            f"{_fmt(row.probability)},{_fmt(row.error_bound)},{time_field}\n")


def parse_csv(source) -> List[SweepRow]:
    """Read rows written by emit_csv (path, text stream, or CSV text)."""
    if hasattr(source, "read"):
        return _parse_stream(source)
    text = str(source)
    if "\n" in text or "," in text:
        return _parse_stream(io.StringIO(text))
    with open(text, "r", encoding="ascii", newline="") as fh:
        return _parse_stream(fh)


def _parse_stream(stream) -> List[SweepRow]:
    reader = csv.reader(stream)
    header = next(reader, None)
    if header != CSV_HEADER.split(","):
        raise DomainError(f"unexpected CSV header: {header}")
    rows = []
    for record in reader:
        if not record:
            continue
        scenario, value, method, prob, bound, elapsed = record
        rows.append(SweepRow(
            scenario=scenario,
            sweep_value=float(value),
            method=method,
            probability=float(prob),
            error_bound=float(bound),
            eval_time_us=float(elapsed) if elapsed else None,
        ))
    return rows
