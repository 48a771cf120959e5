"""MPdist profiles of a segment against every window of the series.

MPdist between two equal-length sequences is the k-th smallest element
of the concatenated cross matrix-profile of their inner windows.  The
profile of a segment is assembled in one streaming pass over the
segment's distance rows: column minima give the series-side profile,
sliding-window minima along each row give the segment-side profiles of
every series window at once, and an order-statistic selection finishes
each position without sorting.
"""

from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass

import numpy as np
from numpy.lib.stride_tricks import sliding_window_view
from scipy.ndimage import minimum_filter1d

from .series import TimeSeries, compute_sliding_stats
from .zdist import DistanceRow, segment_distance_matrix


def default_window_size(snippet_size: int) -> int:
    """Inner window length used when none is given: half the snippet, rounded up."""
    return max(1, math.ceil(snippet_size / 2))


def default_order_stat(snippet_size: int) -> int:
    """Order statistic used when none is given: 5% of twice the snippet size, at least 1."""
    return max(1, math.ceil(0.05 * 2 * snippet_size))


@dataclass(frozen=True)
class MPdistParams:
    """Parameters of the MPdist measure.

    Parameters
    ----------
    snippet_size : int
        Length of the compared sequences (segments and series windows).
    window_size : int, optional
        Inner window length; defaults to half the snippet size, rounded up.
    k : int, optional
        Which order statistic of the concatenated profile to report;
        defaults to 5% of ``2 * snippet_size``, at least 1.
    """

    snippet_size: int
    window_size: int | None = None
    k: int | None = None

    def __post_init__(self):
        if self.snippet_size < 2:
            raise ValueError(f"snippet size must be at least 2, got {self.snippet_size}")
        if self.window_size is None:
            object.__setattr__(self, "window_size", default_window_size(self.snippet_size))
        if self.k is None:
            object.__setattr__(self, "k", default_order_stat(self.snippet_size))
        if not 1 <= self.window_size <= self.snippet_size:
            raise ValueError(
                f"window size {self.window_size} out of range [1, {self.snippet_size}]"
            )
        if self.k < 1:
            raise ValueError(f"order statistic must be at least 1, got {self.k}")

    @property
    def profile_width(self) -> int:
        """Windows per side of the concatenated profile: snippet_size - window_size + 1."""
        return self.snippet_size - self.window_size + 1


@dataclass(frozen=True)
class MPdistProfile:
    """MPdist between one segment and every same-length window of the series."""

    segment_index: int
    values: np.ndarray

    def __post_init__(self):
        values = np.asarray(self.values, dtype=np.float64)
        if values.ndim != 1 or values.size == 0:
            raise ValueError(f"profile must be a non-empty vector, got shape {values.shape}")
        if values.min() < 0:
            raise ValueError(f"profile entries must be non-negative, min is {values.min()}")
        values = values.copy()
        values.flags.writeable = False
        object.__setattr__(self, "values", values)

    def __len__(self) -> int:
        return int(self.values.size)


def _as_rows(rows) -> np.ndarray:
    if isinstance(rows, np.ndarray) and rows.ndim == 2:
        return rows
    arrays = [
        np.asarray(r.entries if isinstance(r, DistanceRow) else r, dtype=np.float64)
        for r in rows
    ]
    if not arrays:
        raise ValueError("no distance rows given")
    length = arrays[0].size
    for i, a in enumerate(arrays):
        if a.ndim != 1 or a.size != length:
            raise ValueError(f"row {i} has length {a.size}, expected {length}")
    return np.vstack(arrays)


def column_minima(rows) -> np.ndarray:
    """Columnwise minimum over a segment's distance rows.

    Accepts a 2-D array or a sequence of equal-length rows
    (:class:`DistanceRow` or plain arrays).
    """
    return _as_rows(rows).min(axis=0)


def row_sliding_minima(row, window: int) -> np.ndarray:
    """Minimum of every length-``window`` span of ``row``.

    A monotonic double-ended queue of candidate indices keeps the total
    cost linear in the row length; the result equals a per-window
    brute-force scan.
    """
    row = np.asarray(getattr(row, "entries", row), dtype=np.float64)
    if window < 1:
        raise ValueError(f"window must be at least 1, got {window}")
    if row.size < window:
        raise ValueError(f"window {window} larger than row of length {row.size}")
    out = np.empty(row.size - window + 1)
    candidates: deque[int] = deque()
    for j in range(row.size):
        while candidates and row[candidates[-1]] >= row[j]:
            candidates.pop()
        candidates.append(j)
        if candidates[0] <= j - window:
            candidates.popleft()
        if j >= window - 1:
            out[j - window + 1] = row[candidates[0]]
    return out


def _sliding_min_rows(matrix: np.ndarray, window: int) -> np.ndarray:
    # C-backed equivalent of row_sliding_minima applied to every row;
    # the centering offset realigns the filter to leading windows.
    filtered = minimum_filter1d(matrix, size=window, axis=-1, mode="nearest")
    start = window // 2
    return filtered[..., start : start + matrix.shape[-1] - window + 1]


def mpdist_at(ab_part, ba_part, params: MPdistParams) -> float:
    """MPdist value from the two halves of one window's concatenated profile.

    ``ab_part`` holds, for each segment window, its distance to the
    nearest window inside the series window; ``ba_part`` holds, for each
    window of the series window, its distance to the nearest segment
    window.  Both halves must have ``params.profile_width`` entries.
    Selection is an order-statistic partition, not a sort; when the
    concatenation has no more than ``k`` entries the maximum is returned
    instead.
    """
    ab = np.asarray(getattr(ab_part, "entries", ab_part), dtype=np.float64)
    ba = np.asarray(ba_part, dtype=np.float64)
    if ab.size != ba.size:
        raise ValueError(f"profile halves differ in length: {ab.size} vs {ba.size}")
    if ab.size != params.profile_width:
        raise ValueError(
            f"profile halves have {ab.size} entries, expected {params.profile_width}"
        )
    merged = np.concatenate([ab, ba])
    if merged.size > params.k:
        return float(np.partition(merged, params.k - 1)[params.k - 1])
    return float(merged.max())


def mpdist_profile(
    series: TimeSeries,
    segment_index: int,
    params: MPdistParams,
    stats=None,
) -> MPdistProfile:
    """MPdist profile of one segment against every window of the series.

    Parameters
    ----------
    series : TimeSeries
    segment_index : int
        Zero-based index of the segment; segment ``i`` starts at
        ``i * params.snippet_size``.
    params : MPdistParams
    stats : SlidingStats, optional
        Sliding statistics for ``params.window_size``; computed on demand
        when omitted, passed in when profiling many segments.

    Returns
    -------
    MPdistProfile
        ``n - snippet_size + 1`` values, all in [0, 2*sqrt(window_size)];
        the value at the segment's own window is exactly 0.
    """
    n = series.n
    m = params.snippet_size
    if m > n:
        raise ValueError(f"snippet size {m} exceeds series length {n}")
    num_segments = n // m
    if not 0 <= segment_index < num_segments:
        raise ValueError(
            f"segment index {segment_index} out of range [0, {num_segments})"
        )
    if stats is None:
        stats = compute_sliding_stats(series, params.window_size)
    elif stats.window_len != params.window_size:
        raise ValueError(
            f"stats were built for window length {stats.window_len}, "
            f"not {params.window_size}"
        )

    seg_start = segment_index * m
    width = params.profile_width
    rows = segment_distance_matrix(series, stats, seg_start, m)
    series_side = rows.min(axis=0)                       # nearest segment window per column
    segment_side = _sliding_min_rows(rows, width)        # nearest in-window column per row
    series_side_windows = sliding_window_view(series_side, width)
    merged = np.concatenate([segment_side, series_side_windows.T], axis=0)
    if merged.shape[0] > params.k:
        values = np.partition(merged, params.k - 1, axis=0)[params.k - 1]
    else:
        values = merged.max(axis=0)
    return MPdistProfile(segment_index=segment_index, values=values)
