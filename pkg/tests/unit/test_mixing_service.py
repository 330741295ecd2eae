"""
Unit tests for mixing-time experiments.
"""
from collections import Counter
from fractions import Fraction

import pytest

from app.core.config import settings
from app.core.exceptions import NotMixedError
from app.models.sequence import BuildingSequence
from app.schemas.record_schemas import TvRow
from app.schemas.run_schemas import ExperimentConfig
from app.services import chain_service, mixing_service
from app.services.mixing_service import SweepPoint


HIGH = BuildingSequence.from_entries((1, 1, 1))
LOW = BuildingSequence.from_entries((0, 2, 0))


class TestTvDistance:
    """Test the histogram distance."""

    def test_exactly_stationary(self):
        """Test that a histogram proportional to P is at distance 0."""
        assert mixing_service.tv_distance(Counter({HIGH: 6, LOW: 1}), 4, 2) == 0

    def test_point_mass(self):
        """Test that a point mass is at distance 1 - π(a)."""
        assert mixing_service.tv_distance(Counter({HIGH: 3}), 4, 2) == Fraction(1, 7)
        assert mixing_service.tv_distance(Counter({LOW: 3}), 4, 2) == Fraction(6, 7)

    def test_explicit_total(self):
        """Test that passing D(n, A) gives the same answer."""
        histogram = Counter({HIGH: 1, LOW: 1})
        assert mixing_service.tv_distance(histogram, 4, 2, total=7) == mixing_service.tv_distance(histogram, 4, 2)

    def test_empty_histogram(self):
        """Test that an empty histogram is refused."""
        with pytest.raises(ValueError):
            mixing_service.tv_distance(Counter(), 4, 2)

    def test_displacement_total(self):
        """Test D(8, 9)."""
        assert mixing_service.displacement_total(8, 9) == 4852


class TestHistograms:
    """Test chain batches."""

    def test_one_histogram_per_step(self):
        """Test that every scheduled step gets a histogram over cfg.runs chains."""
        cfg = ExperimentConfig(n=8, area=9, steps=200, runs=50, tv_every=50)
        histograms = mixing_service.collect_histograms(cfg, workers=1)
        assert len(histograms) == 5
        assert all(sum(h.values()) == 50 for h in histograms)
        assert histograms[0] == Counter({chain_service.initial_state(8, 9): 50})

    def test_explicit_schedule(self):
        """Test that an explicit schedule is used as given."""
        cfg = ExperimentConfig(n=4, area=2, steps=100, runs=20, tv_schedule=[100, 10])
        histograms = mixing_service.collect_histograms(cfg, workers=1)
        assert len(histograms) == 2

    def test_seeded(self):
        """Test that equal seeds give equal histograms."""
        cfg = ExperimentConfig(n=8, area=9, steps=100, runs=30, seed=4, tv_every=25)
        assert mixing_service.collect_histograms(cfg, 1) == mixing_service.collect_histograms(cfg, 1)

    @pytest.mark.slow
    def test_worker_count_does_not_matter(self):
        """Test that chains split over processes give the same histograms."""
        cfg = ExperimentConfig(n=8, area=9, steps=100, runs=30, seed=4, tv_every=25)
        assert mixing_service.collect_histograms(cfg, 1) == mixing_service.collect_histograms(cfg, 2)


class TestMixingTime:
    """Test mixing-time estimates."""

    def test_singleton_class_mixes_at_zero(self):
        """Test that a one-element class is mixed from the start."""
        cfg = ExperimentConfig(n=2, area=1, steps=10, runs=5, tv_every=5)
        assert mixing_service.estimate_mixing_time(cfg) == 0

    def test_two_state_class(self):
        """Test that S(4, 2) mixes within the horizon."""
        cfg = ExperimentConfig(n=4, area=2, steps=2000, runs=2000, seed=1, tv_every=100)
        t = mixing_service.estimate_mixing_time(cfg, epsilon=0.05, workers=1)
        assert 0 < t <= 2000
        assert t % 100 == 0

    def test_not_mixed(self):
        """Test that a zero horizon on S(8, 9) is reported."""
        cfg = ExperimentConfig(n=8, area=9, steps=0, runs=10)
        with pytest.raises(NotMixedError):
            mixing_service.estimate_mixing_time(cfg, workers=1)

    def test_tv_curve_rows(self):
        """Test the reported steps and visited counts."""
        cfg = ExperimentConfig(n=4, area=2, steps=300, runs=100, tv_every=100)
        rows = mixing_service.tv_curve(cfg, workers=1)
        assert [row.t for row in rows] == [0, 100, 200, 300]
        assert rows[0].tv_distance == pytest.approx(1 / 7)
        assert all(1 <= row.visited_states <= 2 for row in rows)


class TestSampledAgainstExact:
    """Test the sampled curve on S(8, 9) against the exact kernel."""

    @pytest.mark.slow
    def test_slow_class(self):
        """Test 10⁴ chains: crossing near the exact one and TV <= 0.05 at t = 2000."""
        cfg = ExperimentConfig(n=8, area=9, steps=2000, runs=10_000, seed=3, tv_every=50)
        curve = mixing_service.tv_curve(cfg, workers=4)
        exact = chain_service.exact_tv_curve(8, 9, 2000, every=50)

        exact_t = next(t for t, distance in exact if distance <= 0.05)
        sampled_t = mixing_service.first_crossing(curve, 0.05)
        assert sampled_t is not None
        assert abs(sampled_t - exact_t) <= 0.25 * exact_t

        assert curve[-1].t == 2000
        assert curve[-1].tv_distance <= 0.05
        for row, (t, distance) in zip(curve, exact):
            assert row.t == t
            assert row.tv_distance == pytest.approx(distance, abs=0.04)


class TestHorizonSearch:
    """Test the doubling horizon."""

    def test_first_crossing(self):
        """Test the crossing rule on hand-made rows."""
        curve = [TvRow(t=0, tv_distance=0.9, visited_states=1), TvRow(t=50, tv_distance=0.04, visited_states=2)]
        assert mixing_service.first_crossing(curve, 0.05) == 50
        assert mixing_service.first_crossing(curve, 0.01) is None

    def test_doubles_up_to_cap(self, mocker):
        """Test horizons 50, 100, 200, 400 on a class that does not mix by 400."""
        mocker.patch.object(settings, "mixing_first_horizon", 50)
        spy = mocker.spy(mixing_service, "estimate_mixing_time")
        mixing_time, steps = mixing_service.search_mixing_time(8, 9, runs=20, tv_every=50, workers=1, max_steps=400)
        assert mixing_time is None
        assert steps == 400
        assert [call.args[0].steps for call in spy.call_args_list] == [50, 100, 200, 400]

    def test_stops_once_mixed(self, mocker):
        """Test that the search returns the crossing of the first horizon that mixes."""
        mocker.patch.object(settings, "mixing_first_horizon", 100)
        mixing_time, steps = mixing_service.search_mixing_time(
            4, 2, runs=2000, seed=1, tv_every=50, workers=1, max_steps=6400
        )
        assert mixing_time is not None
        assert mixing_time <= steps
        assert steps in (100, 200, 400, 800, 1600, 3200, 6400)

    def test_exact_route(self):
        """Test that the exact route reports the kernel's crossing on the tv_every grid."""
        mixing_time, steps = mixing_service.point_mixing_time(8, 9, runs=1, tv_every=50, epsilon=0.05, exact=True)
        exact = chain_service.exact_tv_curve(8, 9, 3000, every=50)
        assert mixing_time == next(t for t, distance in exact if distance <= 0.05)
        assert steps == mixing_time


class TestSweep:
    """Test the mixing sweep."""

    def test_default_points_use_slowest_area(self):
        """Test that every default row sits at the slowest-mixing area."""
        assert [point.n for point in mixing_service.DEFAULT_SWEEP] == [14, 16, 18, 20, 25, 30, 35, 40]
        for point in mixing_service.DEFAULT_SWEEP:
            assert point.area == chain_service.starred_area(point.n)
            assert (point.runs, point.reference) == mixing_service.REFERENCE_TIMES[point.n]
        assert mixing_service.DEFAULT_SWEEP[0].area == 36

    def test_unmixed_point_is_reported_empty(self):
        """Test that a point running out of steps gets no mixing time."""
        points = (SweepPoint(2, 1, 10, 5), SweepPoint(8, 9, 10))
        rows = mixing_service.mixing_sweep(points, seed=0, tv_every=5, workers=1, max_steps=0)
        assert [row.mixing_time for row in rows] == [0, None]
        assert rows[1].steps == 0
        assert rows[0].reference == 5
        assert rows[0].ratio == 0
        assert rows[1].ratio is None

    def test_runs_override(self):
        """Test that --runs replaces each point's chain count."""
        rows = mixing_service.mixing_sweep((SweepPoint(2, 1, 1000, 5),), runs=3, workers=1, max_steps=0)
        assert rows[0].runs == 3

    def test_exact_sweep_reports_ratio(self):
        """Test measured time, reference and ratio side by side."""
        rows = mixing_service.mixing_sweep((SweepPoint(8, 9, 1, 400),), tv_every=50, exact=True)
        expected = chain_service.exact_mixing_time(8, 9, 0.05, every=50)
        assert rows[0].mixing_time == expected
        assert rows[0].ratio == pytest.approx(expected / 400)
        assert rows[0].runs is None


class TestMaxMixing:
    """Test the per-width maximum over areas."""

    def test_mixing_areas(self):
        """Test that only classes with a choice are compared."""
        assert mixing_service.mixing_areas(3) == []
        assert mixing_service.mixing_areas(4) == [2]
        assert 9 in mixing_service.mixing_areas(8)

    def test_exact_maximum(self):
        """Test widths 4 and 8 with the exact kernel."""
        row4, row8 = mixing_service.max_mixing_times((4, 8), tv_every=50, exact=True)

        assert (row4.n, row4.A, row4.areas, row4.A_star) == (4, 2, 1, 1)
        assert row4.mixing_time == chain_service.exact_mixing_time(4, 2, 0.05, every=50)
        assert row4.star_mixing_time == 0
        assert row4.runs is None

        times = {
            area: chain_service.exact_mixing_time(8, area, 0.05, every=50)
            for area in mixing_service.mixing_areas(8)
        }
        assert row8.A_star == 9
        assert row8.star_mixing_time == times[9]
        assert row8.mixing_time == max(times.values())
        assert times[row8.A] == row8.mixing_time

    def test_sampled_maximum(self):
        """Test the sampled route on width 4."""
        (row,) = mixing_service.max_mixing_times((4,), runs=2000, seed=1, tv_every=50, workers=1, max_steps=2000)
        assert row.A == 2
        assert row.mixing_time is not None
        assert row.runs == 2000
