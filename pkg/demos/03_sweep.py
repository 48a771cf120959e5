#!/usr/bin/env python3
"""Pick the snippet length automatically by sweeping a grid of candidates.

For each candidate m the sweep runs snippet discovery and scores how well
the chosen snippets' profiles separate from each other. The score peaks
when m matches the natural period of the data.

    python3 demos/03_sweep.py
"""

import numpy as np

from sniplab import TimeSeries, make_grid, select_length


def main():
    rng = np.random.default_rng(3)
    n, period = 4096, 32
    t = np.arange(period)
    sine = np.tile(np.sin(2 * np.pi * t / period), n // period + 1)[:n]
    square = np.tile(np.where(t < period // 2, 1.0, -1.0), n // period + 1)[:n]
    regime = (np.arange(n) // period) % 2
    values = np.where(regime == 0, sine, square) + 0.05 * rng.standard_normal(n)

    grid = make_grid(8, 128, rule="pow2")
    print("candidate lengths:", grid)

    report, _ = select_length(TimeSeries(values), grid, num_snippets=2,
                              training_log=False)

    print()
    width = max(len(str(m)) for m in grid)
    best_score = max(c.score for c in report.candidates)
    for cand in report.candidates:
        bar = "#" * int(40 * cand.score / best_score) if best_score > 0 else ""
        marker = " <- chosen" if cand.snippet_size == report.m_best else ""
        print(f"m={cand.snippet_size:>{width}}  score {cand.score:8.4f}  "
              f"{bar}{marker}")
    print()
    print(f"the data repeats every {period} points and the sweep "
          f"picked m={report.m_best}")


if __name__ == "__main__":
    main()
