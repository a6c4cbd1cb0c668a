#!/usr/bin/env python3
"""Run the solver scaling sweeps and print log-log slopes.

Times the tree DP while varying site count at fixed task count and vice
versa, then fits a least-squares slope in log-log space. Expected: ~2 for
the site sweep, ~1 for the task sweep.
"""

import argparse

from distplan.bench import SITES_SWEEP, TASKS_SWEEP, loglog_slope, sweep


def run(vary, sizes, fixed):
    rows = sweep(vary, sizes, fixed=fixed)
    fixed_name = "tasks" if vary == "sites" else "sites"
    print(f"\nvarying {vary} ({fixed_name}={fixed}):")
    for size, seconds in rows:
        print(f"  {vary}={size:<5d} {seconds * 1e3:10.3f} ms")
    print(f"  log-log slope: {loglog_slope(rows):.3f}")


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--tasks", type=int, default=64,
                        help="fixed task count for the site sweep")
    parser.add_argument("--sites", type=int, default=32,
                        help="fixed site count for the task sweep")
    args = parser.parse_args()
    run("sites", SITES_SWEEP, fixed=args.tasks)
    run("tasks", TASKS_SWEEP, fixed=args.sites)


if __name__ == "__main__":
    main()
