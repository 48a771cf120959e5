#!/usr/bin/env python3
"""Compare two ways of splitting a length sweep across workers.

Each candidate snippet length costs a different amount of work. The
largest-differencing method (Karmarkar-Karp) balances the per-worker sums
much tighter than the greedy longest-processing-time rule, so no worker
sits idle at the end of a sweep.

    python3 demos/05_balancing.py
"""

from sniplab import default_cost, kk_partition, lpt_partition


def spread(schedule):
    return max(schedule.predicted_loads) - min(schedule.predicted_loads)


def main():
    # --- the textbook example ---------------------------------------------
    weights = [8.0, 7.0, 6.0, 5.0, 4.0]
    for name, fn in (("kk ", kk_partition), ("lpt", lpt_partition)):
        schedule = fn(weights, 2)
        print(f"{name}: loads {list(schedule.predicted_loads)}, "
              f"spread {spread(schedule):g}")
    print()

    # --- a sweep's actual cost profile -------------------------------------
    # Cost grows with m for fixed n, so a pow2 grid has wildly uneven jobs.
    n = 200_000
    grid = [2 ** e for e in range(5, 13)]
    costs = [float(default_cost(n, m, m // 2)) for m in grid]
    print("grid:", grid)
    print("job costs (billions):", [round(c / 1e9, 2) for c in costs])
    print()

    for workers in (2, 4):
        kk = kk_partition(costs, workers)
        lpt = lpt_partition(costs, workers)
        print(f"{workers} workers: kk spread {spread(kk):.3g}, "
              f"lpt spread {spread(lpt):.3g}")
        for w, jobs in enumerate(kk.assignments):
            lengths = [grid[j] for j in jobs]
            print(f"  kk worker {w} handles lengths {lengths}")

    print()
    print("the sweep itself calls these through run_schedule, which also")
    print("records observed times to refine the cost model for next runs")


if __name__ == "__main__":
    main()
