"""Baseline methods: circle covers, SAT rectangles, Monte Carlo."""

import math

import numpy as np
import pytest
from pytest import approx

from mocca.baselines import (
    MCParams,
    circle_count,
    circumscribed_radius,
    monte_carlo_poc,
    multicircle_config,
    multicircle_poc,
    rectangles_overlap,
    standard_normal_samples,
    unicircle_poc,
)
from mocca.errors import DegenerateVarianceError, DomainError
from mocca.geometry import VehicleDims
from mocca.poc import mocca_poc
from mocca.uncertainty import PoseCovariance, RelativePose

from helpers import rects_overlap_reference

DIMS = VehicleDims(length=5.0, width=2.2)
COV = PoseCovariance(var_x=0.25, var_y=0.25, var_theta=0.25)


class TestCircleCovers:
    def test_circumscribed_radius_of_reference_car(self):
        assert circumscribed_radius(DIMS) == approx(math.hypot(2.5, 1.1))
        assert circumscribed_radius(DIMS) == approx(2.7313, abs=1e-4)

    def test_reference_car_needs_three_circles(self):
        cfg = multicircle_config(DIMS)
        assert cfg.count == 3
        assert cfg.offsets == approx((-1.4, 0.0, 1.4))
        assert cfg.radius == approx(2.2 / math.sqrt(2))

    def test_cover_reach_along_the_long_axis(self):
        cfg = multicircle_config(DIMS)
        assert cfg.offsets[-1] + cfg.radius == approx(2.9556, abs=1e-4)

    def test_exact_integer_ratio_does_not_spill(self):
        assert circle_count(VehicleDims(5.0, 2.5)) == 2
        assert circle_count(VehicleDims(6.6, 2.2)) == 3

    def test_square_collapses_to_one_circle(self):
        cfg = multicircle_config(VehicleDims(2.2, 2.2))
        assert cfg.count == 1
        assert cfg.offsets == (0.0,)

    def test_offsets_are_antisymmetric_and_span_the_centerline(self):
        for dims in (DIMS, VehicleDims(4.5, 1.8), VehicleDims(12.0, 2.5)):
            cfg = multicircle_config(dims)
            off = np.asarray(cfg.offsets)
            assert off[0] == -dims.half_span
            assert off[-1] == dims.half_span
            assert np.all(off + off[::-1] == 0.0)  # exactly mirrored
            assert np.all(np.diff(off) > 0)


class TestRectangleOverlap:
    @pytest.mark.parametrize("pose,expected", [
        (RelativePose(4.9, 0.0, math.pi / 2), False),
        (RelativePose(3.5, 0.0, math.pi / 2), True),
        (RelativePose(0.0, 0.0, 0.0), True),
        (RelativePose(10.0, 0.0, 0.0), False),
    ])
    def test_pinned_poses(self, pose, expected):
        assert rectangles_overlap(DIMS, DIMS, pose) is expected

    def test_touching_counts_as_overlap(self):
        # bumper to bumper, and side to rotated nose
        assert rectangles_overlap(DIMS, DIMS, RelativePose(5.0, 0.0, 0.0))
        assert rectangles_overlap(DIMS, DIMS, RelativePose(3.6, 0.0, math.pi / 2))

    def test_matches_vertex_and_edge_reference(self):
        rng = np.random.default_rng(8, )
        disagreements = 0
        for _ in range(3000):
            le, we = rng.uniform(1.0, 6.0), rng.uniform(0.5, 2.5)
            lo, wo = rng.uniform(1.0, 6.0), rng.uniform(0.5, 2.5)
            we, wo = min(we, le), min(wo, lo)
            x, y = rng.uniform(-7, 7, size=2)
            th = rng.uniform(0, 2 * math.pi)
            got = rectangles_overlap(
                VehicleDims(le, we), VehicleDims(lo, wo), RelativePose(x, y, th))
            ref = rects_overlap_reference(le, we, lo, wo, x, y, th)
            disagreements += got != ref
        assert disagreements == 0

    def test_containment_is_detected(self):
        # a small box strictly inside a big one has no crossing edges
        assert rectangles_overlap(
            VehicleDims(10.0, 8.0), VehicleDims(1.0, 0.5),
            RelativePose(0.5, 0.3, 0.7))


class TestUniAndMultiCircle:
    def test_coincident_probability_saturates(self):
        pose = RelativePose(0.0, 0.0, 0.0)
        assert unicircle_poc(DIMS, DIMS, pose, COV).probability >= 0.9999
        assert multicircle_poc(DIMS, DIMS, pose, COV).probability >= 0.999

    def test_result_metadata(self):
        res = unicircle_poc(DIMS, DIMS, RelativePose(6.0, 1.0, 0.3), COV)
        assert res.method == "unicircle"
        assert res.combined_radius == approx(2 * circumscribed_radius(DIMS))
        assert res.center_distance == approx(math.hypot(6.0, 1.0))
        res = multicircle_poc(DIMS, DIMS, RelativePose(6.0, 1.0, 0.3), COV)
        assert res.method == "multicircle"
        assert res.combined_radius == approx(2 * 2.2 / math.sqrt(2))

    def test_multicircle_center_distance_is_the_best_pair(self):
        # head-on at 6 m: nearest circle pair sits 6 - 2*1.4 = 3.2 m apart
        res = multicircle_poc(DIMS, DIMS, RelativePose(6.0, 0.0, math.pi), COV)
        assert res.center_distance == approx(3.2, abs=1e-12)

    def test_single_circle_squares_agree_with_moving_circle(self):
        """With square footprints every cover degenerates to one centred
        circle and the moving-circle segments shrink to points, so the two
        methods compute the same disk integral."""
        sq = VehicleDims(2.2, 2.2)
        rng = np.random.default_rng(99)
        for _ in range(25):
            pose = RelativePose(*rng.uniform(-6, 6, size=2), rng.uniform(0, 7))
            a = multicircle_poc(sq, sq, pose, COV).probability
            b = mocca_poc(sq, sq, pose, COV).probability
            assert a == approx(b, abs=1e-12)

    def test_unicircle_is_conservative_against_ground_truth(self):
        # circumscription only adds collision area, so the single-circle
        # estimate must sit above the exact-rectangle hit rate
        rng = np.random.default_rng(55)
        for _ in range(12):
            pose = RelativePose(*rng.uniform(-7, 7, size=2), rng.uniform(0, 7))
            uni = unicircle_poc(DIMS, DIMS, pose, COV).probability
            mc = monte_carlo_poc(DIMS, DIMS, pose, COV,
                                 MCParams(100_000, 11)).probability
            se = math.sqrt(max(mc * (1 - mc), 1e-9) / 100_000)
            assert uni >= mc - 3 * se

    def test_zero_position_variance_is_rejected(self):
        flat = PoseCovariance(0.0, 0.0, 0.25)
        with pytest.raises(DegenerateVarianceError):
            unicircle_poc(DIMS, DIMS, RelativePose(3.0, 0.0, 0.0), flat)
        with pytest.raises(DegenerateVarianceError):
            multicircle_poc(DIMS, DIMS, RelativePose(3.0, 0.0, 0.0), flat)


class TestMonteCarlo:
    def test_seed_gives_bit_identical_estimates(self):
        pose = RelativePose(4.0, 1.0, 2.0)
        a = monte_carlo_poc(DIMS, DIMS, pose, COV, MCParams(20_000, 7))
        b = monte_carlo_poc(DIMS, DIMS, pose, COV, MCParams(20_000, 7))
        assert a.probability == b.probability
        c = monte_carlo_poc(DIMS, DIMS, pose, COV, MCParams(20_000, 8))
        assert c.probability != a.probability

    def test_zero_variance_degenerates_to_overlap_indicator(self):
        frozen = PoseCovariance(0.0, 0.0, 0.0)
        hit = monte_carlo_poc(DIMS, DIMS, RelativePose(0.0, 0.0, 0.0), frozen)
        assert hit.probability == 1.0
        miss = monte_carlo_poc(DIMS, DIMS, RelativePose(10.0, 0.0, 0.0), frozen)
        assert miss.probability == 0.0

    def test_estimates_converge_on_the_large_sample_value(self):
        pose = RelativePose(4.7, 0.0, math.pi / 2)
        ref = monte_carlo_poc(DIMS, DIMS, pose, COV,
                              MCParams(1_000_000, 3)).probability
        se_ref = math.sqrt(ref * (1 - ref) / 1_000_000)
        for n in (1_000, 10_000, 100_000):
            est = monte_carlo_poc(DIMS, DIMS, pose, COV,
                                  MCParams(n, 42)).probability
            se = math.sqrt(ref * (1 - ref) / n)
            assert abs(est - ref) <= 3 * se + 3 * se_ref

    def test_normal_stream_is_reproducible_and_standard(self):
        z = standard_normal_samples(2024, 200_000)
        assert z.shape == (200_000, 3)
        assert standard_normal_samples(2024, 200_000) == approx(z, abs=0)
        assert z.mean(axis=0) == approx(np.zeros(3), abs=0.01)
        assert z.std(axis=0) == approx(np.ones(3), abs=0.01)
        # independence across columns, roughly
        assert np.corrcoef(z.T) == approx(np.eye(3), abs=0.01)

    def test_normal_stream_matches_the_documented_transform(self):
        rng = np.random.Generator(np.random.PCG64(5))
        u = rng.random((4, 4))
        z = standard_normal_samples(5, 4)
        r = np.sqrt(-2.0 * np.log1p(-u[:, 0]))
        assert z[:, 0] == approx(r * np.cos(2 * math.pi * u[:, 1]), abs=0)
        assert z[:, 1] == approx(r * np.sin(2 * math.pi * u[:, 1]), abs=0)

    def test_result_metadata(self):
        res = monte_carlo_poc(DIMS, DIMS, RelativePose(3.0, 4.0, 1.0), COV,
                              MCParams(1000, 1))
        assert res.method == "montecarlo"
        assert res.center_distance == approx(5.0)
        assert res.combined_radius == 0.0

    def test_params_validation_and_seed_folding(self):
        with pytest.raises(DomainError):
            MCParams(samples=0)
        assert MCParams(10, (1 << 64) + 5).seed == 5
        assert MCParams(10, -1).seed == (1 << 64) - 1
