"""Timing harness: per-method microbenchmarks and quadrature cost scaling.

All timings are single-threaded wall-clock medians (plus mean/stddev) over
individually timed evaluations of one fixed representative input — the B1
crossing at its closest approach, where every method does useful work.
Warm-up repetitions run first and are discarded, so JIT compilation and
cache effects stay out of the statistics.
"""

from __future__ import annotations

import statistics
import time
from contextlib import nullcontext
from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple

import numpy as np

from . import backend
from .baselines import MCParams
from .errors import DomainError
from .poc import METHODS, QuadratureParams
from .scenarios import build_scenario, make_evaluators

#: Discarded repetitions before the timed ones.
WARMUP_REPS = 10


@dataclass(frozen=True)
class TimingStats:
    """Location and spread of per-evaluation wall time, microseconds."""

    method: str
    backend: str
    median_us: float
    mean_us: float
    stddev_us: float
    reps: int


def _representative_input():
    scenario = build_scenario("B1")
    return scenario, scenario.pose_at(0.0)


def _time_callable(fn, reps: int) -> List[float]:
    times_us = []
    for _ in range(WARMUP_REPS):
        fn()
    for _ in range(reps):
        t0 = time.perf_counter_ns()
        fn()
        times_us.append((time.perf_counter_ns() - t0) / 1e3)
    return times_us


def _stats(method: str, times_us: List[float]) -> TimingStats:
    return TimingStats(
        method=method,
        backend=backend.active_backend(),
        median_us=statistics.median(times_us),
        mean_us=statistics.fmean(times_us),
        stddev_us=statistics.stdev(times_us) if len(times_us) > 1 else 0.0,
        reps=len(times_us),
    )


def benchmark(methods: Sequence[str] = METHODS,
              reps: int = 1000,
              quad: QuadratureParams | None = None,
              mc: MCParams | None = None,
              backend_name: Optional[str] = None) -> List[TimingStats]:
    """Time each method at the representative input.

    ``backend_name`` pins the kernels for the duration (useful for A/B
    comparisons between the compiled and the vectorised path).
    """
    if reps < 100:
        raise DomainError(f"need reps >= 100 for stable medians, got {reps}")
    quad = quad or QuadratureParams()
    mc = mc or MCParams()
    unknown = [m for m in methods if m not in METHODS]
    if unknown:
        raise DomainError(f"unknown methods {unknown}")
    chosen = [m for m in METHODS if m in methods]

    results = []
    scenario, pose = _representative_input()
    if backend_name is not None:
        context = backend.use(backend_name)
    else:
        context = nullcontext()
    with context:
        evaluators = make_evaluators(scenario.ego, scenario.opp, scenario.cov,
                                     quad, mc)
        for method in chosen:
            fn = evaluators[method]
            seed = mc.seed
            times = _time_callable(lambda: fn(pose, seed), reps)
            results.append(_stats(method, times))
    return results


def substep_scaling(substeps_list: Sequence[int],
                    reps: int = 300) -> List[Tuple[int, TimingStats]]:
    """Moving-circle evaluation time as a function of quadrature panels.

    The cost model is linear work per panel plus constant overhead; the
    returned series is meant to be fed through :func:`linear_fit`.
    """
    counts = sorted(set(int(n) for n in substeps_list))
    if len(counts) < 4:
        raise DomainError(
            f"need at least 4 distinct substep counts, got {counts}")
    if any(n < 1 for n in counts):
        raise DomainError(f"substep counts must be >= 1, got {counts}")
    scenario, pose = _representative_input()
    mc = MCParams()
    out = []
    for n in counts:
        evaluators = make_evaluators(scenario.ego, scenario.opp, scenario.cov,
                                     QuadratureParams(n), mc)
        fn = evaluators["mocca"]
        times = _time_callable(lambda: fn(pose, mc.seed), reps)
        out.append((n, _stats("mocca", times)))
    return out


def linear_fit(xs: Sequence[float], ys: Sequence[float]
               ) -> Tuple[float, float, float]:
    """Least-squares line through (xs, ys): (slope, intercept, r_squared)."""
    x = np.asarray(xs, dtype=float)
    y = np.asarray(ys, dtype=float)
    if x.size != y.size or x.size < 2:
        raise DomainError("need at least two matched points to fit a line")
    slope, intercept = np.polyfit(x, y, 1)
    residuals = y - (slope * x + intercept)
    ss_res = float(np.dot(residuals, residuals))
    centered = y - y.mean()
    ss_tot = float(np.dot(centered, centered))
    r_squared = 1.0 if ss_tot == 0.0 else 1.0 - ss_res / ss_tot
    return float(slope), float(intercept), r_squared
