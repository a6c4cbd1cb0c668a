"""Deterministic random instance generator for tests and benchmarks."""

from __future__ import annotations

import random

from .model import Scenario, validate_scenario

SKILL_POOL = ("backend", "frontend", "qa")


def generate_document(m: int, n: int, seed: int, shape: str = "random-tree",
                      with_skills: bool = False) -> dict:
    """Raw scenario document for m tasks and n sites; deterministic in the seed.

    Integer efforts in [10, 200], rates in [1, 5], edge volumes in [0, 50],
    symmetric transmission costs in [0, 5] with zero diagonal. Shape "chain"
    builds a path in phase order; "random-tree" attaches task k to a
    uniformly chosen earlier task. with_skills additionally draws site skill
    levels, task skill requirements, and site capacities, giving instances
    where skill_risk and load_imbalance are non-trivial.
    """
    if m < 1 or n < 1:
        raise ValueError("need m >= 1 tasks and n >= 1 sites")
    if shape not in ("chain", "random-tree"):
        raise ValueError(f"unknown shape {shape!r}")
    rng = random.Random(seed)
    width_t = max(2, len(str(m)))
    width_s = max(2, len(str(n)))
    task_ids = [f"T{k + 1:0{width_t}d}" for k in range(m)]
    site_ids = [f"S{k + 1:0{width_s}d}" for k in range(n)]

    sites = []
    for sid in site_ids:
        entry = {"id": sid, "hourly_rate": rng.randint(1, 5)}
        if with_skills:
            entry["skills"] = {skill: rng.randint(0, 5) for skill in SKILL_POOL}
            if rng.random() < 0.5:
                entry["capacity"] = rng.randint(100, 2000)
        sites.append(entry)

    tasks = []
    for tid in task_ids:
        entry = {"id": tid, "effort": rng.randint(10, 200)}
        if with_skills and rng.random() < 0.5:
            entry["required_skills"] = {rng.choice(SKILL_POOL): rng.randint(1, 5)}
        tasks.append(entry)

    edges = []
    for k in range(1, m):
        parent = k - 1 if shape == "chain" else rng.randint(0, k - 1)
        edges.append({"from": task_ids[parent], "to": task_ids[k], "volume": rng.randint(0, 50)})

    relations = []
    for i in range(n):
        for j in range(i + 1, n):
            cost = rng.randint(0, 5)
            if cost:
                relations.append({"a": site_ids[i], "b": site_ids[j], "cost": cost})

    return {
        "format_version": 1,
        "root": task_ids[0],
        "tasks": tasks,
        "sites": sites,
        "edges": edges,
        "site_relations": relations,
        "goal_weights": {"total_cost": 1},
    }


def generate_instance(m: int, n: int, seed: int, shape: str = "random-tree",
                      with_skills: bool = False) -> Scenario:
    return validate_scenario(generate_document(m, n, seed, shape, with_skills))
