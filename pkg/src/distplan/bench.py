"""Runtime sweeps for the tree DP, used by the complexity checks."""

from __future__ import annotations

import math
import time
from typing import Sequence

from .generate import generate_instance
from .solver import solve_tree_dp

SITES_SWEEP = (10, 20, 40, 80, 160)
TASKS_SWEEP = (16, 32, 64, 128, 256)


def time_solve(m: int, n: int, seed: int = 0, min_window: float = 0.05, repeats: int = 3) -> float:
    """Best-of-repeats seconds per solve_tree_dp call on a chain instance.

    Small runs are batched into a >= min_window timing window so the
    per-call estimate is not dominated by timer resolution.
    """
    scenario = generate_instance(m, n, seed, shape="chain")
    weights = {"total_cost": 1.0}
    solve_tree_dp(scenario, weights)  # warm-up
    start = time.perf_counter()
    solve_tree_dp(scenario, weights)
    once = time.perf_counter() - start
    loops = max(1, math.ceil(min_window / max(once, 1e-9)))
    best = float("inf")
    for _ in range(repeats):
        start = time.perf_counter()
        for _ in range(loops):
            solve_tree_dp(scenario, weights)
        best = min(best, (time.perf_counter() - start) / loops)
    return best


def sweep(vary: str, sizes: Sequence[int], fixed: int, seed: int = 0):
    """[(size, seconds)] for runs varying task or site count on chains."""
    rows = []
    for size in sizes:
        m, n = (size, fixed) if vary == "tasks" else (fixed, size)
        rows.append((size, time_solve(m, n, seed)))
    return rows


def loglog_slope(rows) -> float:
    """Least-squares slope of log(time) against log(size)."""
    xs = [math.log(size) for size, _ in rows]
    ys = [math.log(t) for _, t in rows]
    mean_x = sum(xs) / len(xs)
    mean_y = sum(ys) / len(ys)
    num = sum((x - mean_x) * (y - mean_y) for x, y in zip(xs, ys))
    den = sum((x - mean_x) ** 2 for x in xs)
    return num / den
