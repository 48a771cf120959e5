import math

import numpy as np
import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from sniplab import TimeSeries, compute_sliding_stats, distance_row, znorm_distance
from sniplab.zdist import segment_distance_matrix
from oracles import naive_distance_row, znorm_euclid


def _finite_floats(min_size, max_size):
    return st.lists(
        st.floats(min_value=-1e6, max_value=1e6, allow_nan=False),
        min_size=min_size,
        max_size=max_size,
    )


class TestZnormDistance:
    def test_identical(self):
        assert znorm_distance([1.0, 5.0, 2.0], [1.0, 5.0, 2.0]) == 0.0

    def test_spec_value(self):
        d = znorm_distance([1.0, 2.0, 3.0], [3.0, 2.0, 1.0])
        assert d == pytest.approx(2 * math.sqrt(3), abs=1e-12)

    def test_both_constant(self):
        assert znorm_distance([4.0, 4.0], [9.0, 9.0]) == 0.0

    def test_constant_vs_nonconstant(self):
        d = znorm_distance([7.0, 7.0, 7.0, 7.0], [0.0, 1.0, 2.0, 3.0])
        assert d == pytest.approx(2.0, abs=1e-12)

    def test_length_mismatch(self):
        with pytest.raises(ValueError, match="length"):
            znorm_distance([1.0, 2.0], [1.0, 2.0, 3.0])

    def test_empty(self):
        with pytest.raises(ValueError):
            znorm_distance([], [])

    @given(_finite_floats(2, 32), st.data())
    @settings(max_examples=60, deadline=None)
    def test_symmetry(self, a, data):
        b = data.draw(_finite_floats(len(a), len(a)))
        assert znorm_distance(a, b) == znorm_distance(b, a)

    @given(
        _finite_floats(2, 16),
        st.data(),
        st.floats(min_value=0.01, max_value=100.0),
        st.floats(min_value=-50.0, max_value=50.0),
    )
    @settings(max_examples=60, deadline=None)
    def test_shift_scale_invariance(self, a, data, alpha, beta):
        b = np.array(data.draw(_finite_floats(len(a), len(a))))
        # A spread that collapses under the affine map (alpha*spread
        # rounding away against beta) is a different window entirely;
        # keep the map well-conditioned.
        assume(alpha * (b.max() - b.min()) > 1e-3 * (1 + abs(beta)))
        base = znorm_distance(a, b)
        assert znorm_distance(a, alpha * b + beta) == pytest.approx(base, abs=1e-6)


class TestDistanceRow:
    def _row(self, values, seg_start, offset, l, method="sliding"):
        series = TimeSeries(values)
        stats = compute_sliding_stats(series, l)
        return distance_row(series, stats, seg_start, offset, l, method=method)

    def test_self_column_is_exact_zero(self):
        rng = np.random.default_rng(0)
        values = rng.standard_normal(40)
        row = self._row(values, seg_start=8, offset=3, l=5)
        assert row.entries[11] == 0.0

    def test_affine_window_matches(self):
        values = np.array([0.0, 1.0, 2.0, 9.0, 5.0, 7.0, 9.0, 1.0])
        row = self._row(values, seg_start=0, offset=0, l=3)
        # (0,1,2) against (5,7,9): same shape after z-normalization.
        assert row.entries[4] == pytest.approx(0.0, abs=1e-7)

    def test_spec_value_reversed_window(self):
        values = np.array([1.0, 2.0, 3.0, 3.0, 2.0, 1.0])
        row = self._row(values, seg_start=0, offset=0, l=3)
        assert row.entries[3] == pytest.approx(2 * math.sqrt(3), abs=1e-9)

    def test_methods_agree(self):
        rng = np.random.default_rng(3)
        values = rng.standard_normal(200)
        fast = self._row(values, 20, 4, 16, method="sliding")
        direct = self._row(values, 20, 4, 16, method="direct")
        np.testing.assert_allclose(fast.entries, direct.entries, atol=1e-9)

    def test_unknown_method(self):
        with pytest.raises(ValueError, match="method"):
            self._row(np.arange(20.0), 0, 0, 4, method="fft")

    def test_stats_window_mismatch(self):
        series = TimeSeries(np.arange(20.0))
        stats = compute_sliding_stats(series, 4)
        with pytest.raises(ValueError, match="window"):
            distance_row(series, stats, 0, 0, 5)

    def test_row_out_of_range(self):
        series = TimeSeries(np.arange(10.0))
        stats = compute_sliding_stats(series, 4)
        with pytest.raises(ValueError):
            distance_row(series, stats, 8, 0, 4)

    @pytest.mark.parametrize("seed", range(12))
    def test_matches_naive_oracle(self, seed):
        rng = np.random.default_rng(seed)
        n = int(rng.integers(30, 300))
        l = int(rng.integers(2, min(64, n // 2)))
        values = rng.standard_normal(n) * rng.uniform(0.5, 20)
        if seed % 3 == 0:
            values[5 : 5 + l] = values[5]  # flat stretch
        start = int(rng.integers(0, n - 2 * l))
        row = self._row(values, start, 0, l)
        np.testing.assert_allclose(
            row.entries, naive_distance_row(values, start, l), atol=1e-6
        )

    def test_entries_bounded(self):
        rng = np.random.default_rng(11)
        values = rng.standard_normal(150)
        for offset in range(4):
            row = self._row(values, 30, offset, 8)
            assert np.all(row.entries >= 0)
            assert np.all(row.entries <= 2 * math.sqrt(8) + 1e-6)

    def test_anticorrelated_hits_upper_bound(self):
        ramp = np.arange(6.0)
        values = np.concatenate([ramp, ramp[::-1]])
        row = self._row(values, 0, 0, 6)
        assert row.entries[6] == pytest.approx(2 * math.sqrt(6), abs=1e-9)


class TestSegmentDistanceMatrix:
    def test_shape_and_rows(self):
        rng = np.random.default_rng(5)
        values = rng.standard_normal(100)
        series = TimeSeries(values)
        l = 6
        stats = compute_sliding_stats(series, l)
        mat = segment_distance_matrix(series, stats, seg_start=12, snippet_size=24)
        assert mat.shape == (24 - l + 1, 100 - l + 1)
        for i in (0, 7, mat.shape[0] - 1):
            np.testing.assert_allclose(
                mat[i], naive_distance_row(values, 12 + i, l), atol=1e-6
            )
