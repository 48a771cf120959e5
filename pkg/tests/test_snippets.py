import json

import numpy as np
import pytest

from sniplab import (
    MPdistParams,
    TimeSeries,
    export_curve_csv,
    export_profiles_csv,
    profile_area,
    representativeness_curve,
    segment,
    segment_profiles,
    select_snippets,
)
from oracles import exhaustive_min_area
from seriesgen import random_series, two_regime_series


def _tiled(pattern, reps):
    return TimeSeries(np.tile(np.asarray(pattern, dtype=np.float64), reps))


class TestSegment:
    def test_even_split(self):
        segs = segment(TimeSeries(np.arange(8.0)), 2)
        np.testing.assert_array_equal(segs.starts, [0, 2, 4, 6])
        assert segs.count == 4

    def test_remainder_excluded(self):
        segs = segment(TimeSeries(np.arange(9.0)), 2)
        np.testing.assert_array_equal(segs.starts, [0, 2, 4, 6])

    def test_too_few_segments(self):
        with pytest.raises(ValueError, match="at least 2"):
            segment(TimeSeries(np.arange(9.0)), 5)

    def test_tiny_snippet_rejected(self):
        with pytest.raises(ValueError):
            segment(TimeSeries(np.arange(8.0)), 1)


class TestCurveAndArea:
    def test_curve_example(self):
        curve = representativeness_curve([[1.0, 3.0, 2.0], [2.0, 1.0, 4.0]])
        np.testing.assert_array_equal(curve, [1.0, 1.0, 2.0])

    def test_singleton(self):
        np.testing.assert_array_equal(
            representativeness_curve([[5.0, 6.0]]), [5.0, 6.0]
        )

    def test_adding_profile_never_raises_curve(self):
        rng = np.random.default_rng(0)
        a = rng.uniform(0, 4, 30)
        b = rng.uniform(0, 4, 30)
        base = representativeness_curve([a])
        joined = representativeness_curve([a, b])
        assert np.all(joined <= base)

    def test_empty_subset(self):
        with pytest.raises(ValueError, match="non-empty"):
            representativeness_curve([])

    def test_length_mismatch(self):
        with pytest.raises(ValueError, match="length"):
            representativeness_curve([[1.0, 2.0], [1.0]])

    def test_area_example(self):
        assert profile_area([1.0, 1.0, 2.0]) == 4.0

    def test_area_zero_curve(self):
        assert profile_area(np.zeros(5)) == 0.0

    def test_area_monotone_under_union(self):
        rng = np.random.default_rng(1)
        a = rng.uniform(0, 4, 30)
        b = rng.uniform(0, 4, 30)
        assert profile_area(np.minimum(a, b)) <= profile_area(a)


class TestSelectSnippets:
    def test_homogeneous_series_single_snippet(self):
        series = _tiled([0.0, 2.0, 1.0, 3.0, 2.0, 0.0, 1.0, 2.0], 8)
        result = select_snippets(series, MPdistParams(snippet_size=8), 1)
        assert len(result.snippets) == 1
        assert result.snippets[0].frac == 1.0
        assert result.snippets[0].index == 0

    def test_two_regimes_concentrate_on_first_of_each(self):
        # Noise-free tiled regimes: every same-regime segment has a
        # bit-identical profile, so the lower-index tie rule sends all
        # neighbors to the first segment of each regime.
        values, _ = two_regime_series(n=384, period=32, block_len=96, noise=0.0)
        series = TimeSeries(values)
        result = select_snippets(series, MPdistParams(snippet_size=32), 2)
        fracs = sorted(s.frac for s in result.snippets)
        assert fracs[0] >= 0.35 and fracs[1] <= 0.65
        assert sum(fracs) >= 0.95

    def test_full_partition_when_all_segments_chosen(self):
        rng = np.random.default_rng(2)
        series = TimeSeries(random_series(rng, 96))
        count = 96 // 12
        result = select_snippets(series, MPdistParams(snippet_size=12), count)
        assert sum(s.frac for s in result.snippets) == pytest.approx(1.0, abs=1e-9)

    def test_segment_counts_partition_windows(self):
        rng = np.random.default_rng(3)
        series = TimeSeries(random_series(rng, 150))
        result = select_snippets(series, MPdistParams(snippet_size=15), 2)
        assert result.segment_window_counts.sum() == 150 - 15 + 1
        chosen = {s.index for s in result.snippets}
        covered = sum(result.segment_window_counts[i] for i in chosen)
        assert result.unassigned_windows == 150 - 15 + 1 - covered

    def test_ordering_frac_desc_then_index(self):
        rng = np.random.default_rng(4)
        series = TimeSeries(random_series(rng, 200))
        result = select_snippets(series, MPdistParams(snippet_size=20), 3)
        fracs = [s.frac for s in result.snippets]
        assert fracs == sorted(fracs, reverse=True)
        for a, b in zip(result.snippets, result.snippets[1:]):
            if a.frac == b.frac:
                assert a.index < b.index

    def test_profiles_aligned_with_snippets(self):
        rng = np.random.default_rng(5)
        series = TimeSeries(random_series(rng, 120))
        result = select_snippets(series, MPdistParams(snippet_size=12), 2)
        for snip, prof in zip(result.snippets, result.profiles):
            assert prof.segment_index == snip.index
            assert prof.values[snip.start] <= 1e-9  # self window

    def test_area_equals_curve_sum(self):
        rng = np.random.default_rng(6)
        series = TimeSeries(random_series(rng, 140))
        result = select_snippets(series, MPdistParams(snippet_size=14), 2)
        assert result.profile_area == pytest.approx(result.curve.sum(), abs=1e-6)

    def test_greedy_area_non_increasing(self):
        rng = np.random.default_rng(7)
        series = TimeSeries(random_series(rng, 180))
        params = MPdistParams(snippet_size=15)
        profiles = segment_profiles(series, params)
        areas = [
            select_snippets(series, params, k, profiles=profiles).profile_area
            for k in range(1, 7)
        ]
        assert all(a >= b for a, b in zip(areas, areas[1:]))

    def test_greedy_near_exhaustive(self):
        rng = np.random.default_rng(8)
        series = TimeSeries(random_series(rng, 11 * 16))
        params = MPdistParams(snippet_size=16)
        profiles = segment_profiles(series, params)
        matrix = np.vstack([p.values for p in profiles])
        greedy = select_snippets(series, params, 3, profiles=profiles).profile_area
        best = exhaustive_min_area(matrix, 3)
        assert greedy <= best * 1.10

    def test_k_out_of_range(self):
        series = TimeSeries(np.arange(40.0))
        with pytest.raises(ValueError, match="snippet count"):
            select_snippets(series, MPdistParams(snippet_size=10), 0)
        with pytest.raises(ValueError, match="snippet count"):
            select_snippets(series, MPdistParams(snippet_size=10), 5)

    def test_neighbors_are_window_starts(self):
        rng = np.random.default_rng(9)
        series = TimeSeries(random_series(rng, 100))
        result = select_snippets(series, MPdistParams(snippet_size=10), 2)
        all_neighbors = np.concatenate([s.neighbors for s in result.snippets])
        assert all_neighbors.size == np.unique(all_neighbors).size
        assert all_neighbors.min() >= 0
        assert all_neighbors.max() <= 100 - 10


class TestSerialization:
    def _result(self):
        rng = np.random.default_rng(10)
        series = TimeSeries(random_series(rng, 120))
        return select_snippets(series, MPdistParams(snippet_size=12), 2), series

    def test_json_document(self):
        result, _ = self._result()
        doc = result.to_dict()
        assert doc["schema"] == 1
        assert doc["m"] == 12
        assert doc["l"] == 6
        assert doc["k"] == 2
        assert len(doc["snippets"]) == 2
        for entry in doc["snippets"]:
            assert set(entry) == {"index", "start", "frac", "neighbor_count"}
        json.dumps(doc)  # must be serializable as-is

    def test_curve_export_row_count(self, tmp_path):
        result, series = self._result()
        path = tmp_path / "curve.csv"
        export_curve_csv(result, path)
        rows = path.read_text().strip().splitlines()
        assert len(rows) == series.n - 12 + 1

    def test_profiles_export(self, tmp_path):
        result, series = self._result()
        path = tmp_path / "profiles.csv"
        export_profiles_csv(result, path)
        lines = path.read_text().strip().splitlines()
        assert lines[0].startswith("segment_")
        assert len(lines) == 1 + series.n - 12 + 1
