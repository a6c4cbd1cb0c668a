"""Exact solvers for the task-to-site assignment problem.

Two routes: an O(m*n^2) dynamic program over tree-shaped task graphs
(via a layered source/terminal assignment graph) for edge-separable
objectives, and an exhaustive brute-force solver that doubles as the
correctness oracle and handles non-separable goals (load_imbalance)
and arbitrary task graphs.
"""

from __future__ import annotations

import itertools
import os
import time
from dataclasses import dataclass, field
from typing import Mapping, Optional, Sequence, Tuple

from .model import (
    COST_OVERRIDE_PREFIX,
    GOAL_COMPONENTS,
    GoalVector,
    Infeasible,
    Scenario,
    TaskGraph,
    check_weights,
    evaluate_assignment,
)

# Goals expressible as per-task costs plus per-edge costs; load_imbalance is not.
SEPARABLE_GOALS = ("total_cost", "cross_site_volume", "skill_risk")

DEFAULT_BRUTE_GUARD = 10_000_000
BRUTE_GUARD_ENV = "SOLVER_BRUTE_GUARD"


class SolverError(Exception):
    pass


class NotATreeError(SolverError):
    def __init__(self, reason: str):
        self.reason = reason
        super().__init__(f"not a tree: {reason} (use the brute-force solver instead)")


class NonSeparableObjectiveError(SolverError):
    pass


class InfeasibleInstanceError(SolverError):
    pass


class InstanceTooLargeError(SolverError):
    def __init__(self, combinations: int, guard: int):
        self.combinations = combinations
        self.guard = guard
        super().__init__(
            f"instance too large for brute force: n^m = {combinations} exceeds guard {guard}"
        )


@dataclass(frozen=True)
class RootedTree:
    root: str
    parent: Mapping[str, Optional[str]]
    children: Mapping[str, Tuple[str, ...]]
    order: Tuple[str, ...]  # parents before children
    edge_volume: Mapping[Tuple[str, str], float]  # (parent, child) -> d

    @property
    def leaves(self) -> Tuple[str, ...]:
        return tuple(t for t in self.order if not self.children[t])


@dataclass(frozen=True)
class AssignmentGraph:
    """Layered graph: source -> (task, site) layers -> one terminal per leaf."""

    source: tuple
    layer_nodes: Tuple[tuple, ...]  # ("task", task_id, site_id)
    terminals: Tuple[tuple, ...]  # ("terminal", leaf_task_id)
    edges: Tuple[tuple, ...]  # (u, v, weight)

    @property
    def node_count(self) -> int:
        return 1 + len(self.layer_nodes) + len(self.terminals)

    @property
    def edge_count(self) -> int:
        return len(self.edges)


@dataclass(frozen=True)
class SolveResult:
    assignment: Mapping[str, str]
    objective: float
    goal_vector: GoalVector
    solver: str
    stats: Mapping[str, float] = field(default_factory=dict)


@dataclass(frozen=True)
class ParetoSet:
    members: Tuple[Tuple[Mapping[str, str], GoalVector], ...]

    def __len__(self) -> int:
        return len(self.members)


def brute_force_guard() -> int:
    raw = os.environ.get(BRUTE_GUARD_ENV)
    return int(raw) if raw else DEFAULT_BRUTE_GUARD


def check_tree(graph: TaskGraph) -> RootedTree:
    """Orient a validated task graph as a rooted tree.

    Root is the declared root, else the lowest task id. Raises NotATreeError
    when the graph has a cycle or is disconnected.
    """
    nodes = graph.nodes
    if len(graph.edges) > len(nodes) - 1:
        raise NotATreeError("cycle detected (|E| != |V|-1)")
    if len(graph.edges) < len(nodes) - 1:
        raise NotATreeError("disconnected (|E| != |V|-1)")
    adjacency = {t: [] for t in nodes}
    for e in graph.edges:
        adjacency[e.a].append((e.b, e.volume))
        adjacency[e.b].append((e.a, e.volume))
    root = graph.root if graph.root is not None else min(nodes)
    parent: dict = {root: None}
    children: dict = {t: [] for t in nodes}
    edge_volume: dict = {}
    order = [root]
    frontier = [root]
    while frontier:
        node = frontier.pop()
        for nbr, volume in adjacency[node]:
            if nbr in parent:
                continue
            parent[nbr] = node
            children[node].append(nbr)
            edge_volume[(node, nbr)] = volume
            order.append(nbr)
            frontier.append(nbr)
    if len(order) != len(nodes):
        raise NotATreeError("disconnected")
    return RootedTree(
        root=root,
        parent=parent,
        children={t: tuple(c) for t, c in children.items()},
        order=tuple(order),
        edge_volume=edge_volume,
    )


class _Instance:
    """Scenario precomputed into index space (sites sorted by id).

    The cost loops below inline the semantics of model.execution_cost and
    model.skill_gaps; the SolveResult consistency tests pin the two paths
    against each other.
    """

    def __init__(self, scenario: Scenario, weights: Mapping[str, float]):
        self.scenario = scenario
        self.weights = check_weights(weights)
        self.task_ids = sorted(t.id for t in scenario.tasks)
        self.site_ids = sorted(s.id for s in scenario.sites)
        self.n = len(self.site_ids)
        sites = [scenario.site_by_id[s] for s in self.site_ids]
        model = scenario.cost_model
        gamma = model.skill_gap_penalty
        floor = model.hard_skill_floor
        w_tc = self.weights["total_cost"]
        w_sr = self.weights["skill_risk"]
        w_xv = self.weights["cross_site_volume"]

        # exec_cost[task][site_idx]: raw execution cost or None (infeasible pair)
        # node_cost[task][site_idx]: weight-combined per-task cost, None likewise
        self.exec_cost: dict = {}
        self.node_cost: dict = {}
        self.feasible: dict = {}
        rates = [s.hourly_rate for s in sites]
        all_sites = list(range(self.n))
        for tid in self.task_ids:
            task = scenario.task_by_id[tid]
            required = list(task.required_skills.items())
            overrides = {
                key[len(COST_OVERRIDE_PREFIX):]: float(value)
                for key, value in task.attributes.items()
                if key.startswith(COST_OVERRIDE_PREFIX)
            }
            effort = task.effort
            pinned = task.pinned_site
            forbidden = task.forbidden_sites
            if not required and not overrides and pinned is None and not forbidden:
                erow = [effort * rate for rate in rates]
                self.exec_cost[tid] = erow
                self.node_cost[tid] = [w_tc * e for e in erow]
                self.feasible[tid] = all_sites
                continue
            erow, crow, frow = [], [], []
            for j, site in enumerate(sites):
                blocked = site.id in forbidden or (pinned is not None and pinned != site.id)
                total_gap = 0
                if not blocked and required:
                    site_skills = site.skills
                    for skill, req in required:
                        gap = req - site_skills.get(skill, 0)
                        if gap > 0:
                            if floor is not None and gap >= floor:
                                blocked = True
                                break
                            total_gap += gap
                if blocked:
                    erow.append(None)
                    crow.append(None)
                    continue
                e = overrides.get(site.id)
                if e is None:
                    e = effort * site.hourly_rate
                    if total_gap:
                        e *= gamma ** total_gap
                erow.append(e)
                crow.append(w_tc * e + w_sr * total_gap)
                frow.append(j)
            self.exec_cost[tid] = erow
            self.node_cost[tid] = crow
            self.feasible[tid] = frow

        # Weight-combined per-unit edge cost matrix A[p][q]; an edge carrying
        # volume d between sites p and q contributes d * A[p][q].
        relations = scenario.site_relations
        rel_index = {s: i for i, s in enumerate(relations.site_ids)}
        order = [rel_index[s] for s in self.site_ids]
        self.pair_cost = [
            [
                w_tc * relations.matrix[order[p]][order[q]] + (w_xv if p != q else 0.0)
                for q in range(self.n)
            ]
            for p in range(self.n)
        ]

    def infeasible_tasks(self):
        return [tid for tid in self.task_ids if not self.feasible[tid]]


def _dp_tables(inst: _Instance, tree: RootedTree):
    """Bottom-up DP: subtree[t][p] = cost of t's subtree below t given t at p.

    Returns (subtree, choice, relaxations) where choice[child][parent_site]
    is the argmin site index for the child (ties to the lowest index).
    """
    n = inst.n
    inf = float("inf")
    subtree = {t: [0.0] * n for t in inst.task_ids}
    choice: dict = {}
    relaxations = 0
    qs = range(n)
    pair = inst.pair_cost
    for t in reversed(tree.order):
        acc = subtree[t]
        for child in tree.children[t]:
            d = tree.edge_volume[(t, child)]
            node = inst.node_cost[child]
            below = subtree[child]
            best = [inf] * n
            pick = [0] * n
            # relax child site q into every parent site p; q ascends, so
            # strict improvement keeps the lowest site index on ties
            for q in qs:
                node_q = node[q]
                if node_q is None:
                    continue
                base = node_q + below[q]
                for p in qs:
                    v = base + d * pair[p][q]
                    if v < best[p]:
                        best[p] = v
                        pick[p] = q
                relaxations += n
            for p in qs:
                acc[p] += best[p]
            choice[child] = pick
    return subtree, choice, relaxations


def solve_tree_dp(scenario: Scenario, weights: Optional[Mapping[str, float]] = None) -> SolveResult:
    """Optimal assignment for a tree-shaped task graph under separable weights.

    Runs in O(m*n^2): for every tree edge and every parent site, the best
    child site is found by a minimum over all sites. Argmin ties break to
    the lowest site index (sites ordered by id).
    """
    started = time.perf_counter()
    weights = dict(scenario.goal_weights if weights is None else weights)
    dense = check_weights(weights)
    if dense["load_imbalance"] > 0:
        raise NonSeparableObjectiveError(
            "load_imbalance is not edge-separable; use the brute-force solver"
        )
    if scenario.cost_model.capacity_mode == "hard":
        raise NonSeparableObjectiveError(
            "hard capacity constraints are not tree-decomposable; use the brute-force solver"
        )
    tree = check_tree(scenario.task_graph)
    inst = _Instance(scenario, weights)
    bad = inst.infeasible_tasks()
    if bad:
        raise InfeasibleInstanceError(f"task {bad[0]} has no feasible site")

    subtree, choice, relaxations = _dp_tables(inst, tree)

    root = tree.root
    best = float("inf")
    best_p = -1
    root_cost = inst.node_cost[root]
    for p in range(inst.n):
        if root_cost[p] is None:
            continue
        v = root_cost[p] + subtree[root][p]
        if v < best:
            best = v
            best_p = p
    if best_p < 0:
        raise InfeasibleInstanceError(f"task {root} has no feasible site")

    assignment = {root: best_p}
    for t in tree.order:
        for child in tree.children[t]:
            assignment[child] = choice[child][assignment[t]]
    named = {t: inst.site_ids[p] for t, p in assignment.items()}

    goal_vector = evaluate_assignment(scenario, named)
    assert not isinstance(goal_vector, Infeasible)
    return SolveResult(
        assignment=named,
        objective=best,
        goal_vector=goal_vector,
        solver="dp",
        stats={
            "dp_table_entries": scenario.m * inst.n,
            "relaxations": relaxations,
            "wall_time": time.perf_counter() - started,
        },
    )


def _enumeration_space(inst: _Instance, guard: int):
    combinations = inst.n ** len(inst.task_ids)
    if combinations > guard:
        raise InstanceTooLargeError(combinations, guard)
    bad = inst.infeasible_tasks()
    if bad:
        raise InfeasibleInstanceError(f"task {bad[0]} has no feasible site")


def _edge_index(inst: _Instance):
    tpos = {t: i for i, t in enumerate(inst.task_ids)}
    return [
        (tpos[e.a], tpos[e.b], e.volume)
        for e in inst.scenario.task_graph.edges
    ]


def _loads_ok_and_imbalance(inst: _Instance, combo):
    """(feasible, load_imbalance) for a site-index assignment tuple."""
    scenario = inst.scenario
    loads = [0.0] * inst.n
    for tid, p in zip(inst.task_ids, combo):
        loads[p] += scenario.task_by_id[tid].effort
    imbalance = 0.0
    hard = scenario.cost_model.capacity_mode == "hard"
    for p, sid in enumerate(inst.site_ids):
        cap = scenario.site_by_id[sid].capacity
        if cap is None or loads[p] == 0.0:
            continue
        if cap == 0:
            return False, 0.0
        ratio = loads[p] / cap
        if hard and ratio > 1.0:
            return False, 0.0
        imbalance = max(imbalance, ratio)
    return True, imbalance


def solve_brute_force(scenario: Scenario, weights: Optional[Mapping[str, float]] = None) -> SolveResult:
    """Exhaustive minimum over all total assignments (any task graph shape).

    Guarded by n^m <= SOLVER_BRUTE_GUARD (default 1e7). Ties resolve to the
    lexicographically smallest assignment over tasks sorted by id.
    """
    started = time.perf_counter()
    weights = dict(scenario.goal_weights if weights is None else weights)
    inst = _Instance(scenario, weights)
    _enumeration_space(inst, brute_force_guard())
    edges = _edge_index(inst)
    w_li = inst.weights["load_imbalance"]
    need_loads = w_li > 0 or scenario.cost_model.capacity_mode == "hard"

    node_cost = [inst.node_cost[t] for t in inst.task_ids]
    pair = inst.pair_cost
    best = float("inf")
    best_combo = None
    candidates = 0
    for combo in itertools.product(*(inst.feasible[t] for t in inst.task_ids)):
        candidates += 1
        obj = 0.0
        for i, p in enumerate(combo):
            obj += node_cost[i][p]
        for a, b, d in edges:
            obj += d * pair[combo[a]][combo[b]]
        if need_loads:
            ok, imbalance = _loads_ok_and_imbalance(inst, combo)
            if not ok:
                continue
            obj += w_li * imbalance
        if obj < best:
            best = obj
            best_combo = combo
    if best_combo is None:
        raise InfeasibleInstanceError("every total assignment is infeasible")

    named = {t: inst.site_ids[p] for t, p in zip(inst.task_ids, best_combo)}
    goal_vector = evaluate_assignment(scenario, named)
    assert not isinstance(goal_vector, Infeasible)
    return SolveResult(
        assignment=named,
        objective=best,
        goal_vector=goal_vector,
        solver="brute",
        stats={"candidates": candidates, "wall_time": time.perf_counter() - started},
    )


def solve(scenario: Scenario, weights: Optional[Mapping[str, float]] = None,
          solver: str = "auto") -> SolveResult:
    """Dispatch to the DP when it applies, else to brute force."""
    if solver == "dp":
        return solve_tree_dp(scenario, weights)
    if solver == "brute":
        return solve_brute_force(scenario, weights)
    if solver != "auto":
        raise ValueError(f"unknown solver {solver!r}")
    try:
        return solve_tree_dp(scenario, weights)
    except (NotATreeError, NonSeparableObjectiveError):
        return solve_brute_force(scenario, weights)


def per_goal_optima(scenario: Scenario):
    """Optimal assignment under a unit weight vector for each goal component.

    Separable components on tree-shaped instances go through the DP; the
    rest through brute force. Results carry full goal vectors so the
    per-goal optima can be compared against each other.
    """
    results = []
    for component in GOAL_COMPONENTS:
        results.append((component, solve(scenario, {component: 1.0})))
    return results


def _dominates(a: GoalVector, b: GoalVector) -> bool:
    at, bt = a.as_tuple(), b.as_tuple()
    return all(x <= y for x, y in zip(at, bt)) and any(x < y for x, y in zip(at, bt))


def pareto_frontier(scenario: Scenario) -> ParetoSet:
    """All non-dominated (assignment, goal vector) pairs over feasible assignments.

    Deduplicated by goal vector (keeping the lexicographically smallest
    assignment) and sorted lexicographically by goal vector.
    """
    inst = _Instance(scenario, {"total_cost": 1.0})
    _enumeration_space(inst, brute_force_guard())
    frontier: list = []  # (goal_tuple, named_assignment, GoalVector)
    for combo in itertools.product(*(inst.feasible[t] for t in inst.task_ids)):
        named = {t: inst.site_ids[p] for t, p in zip(inst.task_ids, combo)}
        gv = evaluate_assignment(scenario, named)
        if isinstance(gv, Infeasible):
            continue
        key = gv.as_tuple()
        dominated = False
        for other_key, _, other_gv in frontier:
            if other_key == key:
                dominated = True  # enumeration order keeps the lexicographically smallest
                break
            if _dominates(other_gv, gv):
                dominated = True
                break
        if dominated:
            continue
        frontier = [(k, a, g) for k, a, g in frontier if not _dominates(gv, g)]
        frontier.append((key, named, gv))
    if not frontier:
        raise InfeasibleInstanceError("every total assignment is infeasible")
    frontier.sort(key=lambda item: item[0])
    return ParetoSet(tuple((a, g) for _, a, g in frontier))


def build_assignment_graph(scenario: Scenario, weights: Optional[Mapping[str, float]] = None) -> AssignmentGraph:
    """Layered assignment graph for a tree-shaped instance.

    One node per (task, site) pair, a single source, one terminal per leaf
    task. Layer edges (i,p)->(j,q) carry the child's node cost plus the
    communication cost d_ij * s_pq (weight-combined); source edges carry the
    root's node cost so path weights equal full objective values; terminal
    edges weigh 0. Infeasible (task, site) pairs contribute no edges.
    """
    weights = dict(scenario.goal_weights if weights is None else weights)
    dense = check_weights(weights)
    if dense["load_imbalance"] > 0:
        raise NonSeparableObjectiveError(
            "load_imbalance is not edge-separable; the assignment graph cannot encode it"
        )
    tree = check_tree(scenario.task_graph)
    inst = _Instance(scenario, weights)
    bad = inst.infeasible_tasks()
    if bad:
        raise InfeasibleInstanceError(f"task {bad[0]} has no feasible site")

    layer_nodes = tuple(
        ("task", tid, sid) for tid in tree.order for sid in inst.site_ids
    )
    terminals = tuple(("terminal", leaf) for leaf in tree.leaves)
    source = ("source",)
    edges = []
    for p, sid in enumerate(inst.site_ids):
        cost = inst.node_cost[tree.root][p]
        if cost is not None:
            edges.append((source, ("task", tree.root, sid), cost))
    for t in tree.order:
        for child in tree.children[t]:
            d = tree.edge_volume[(t, child)]
            for p, sp in enumerate(inst.site_ids):
                if inst.node_cost[t][p] is None:
                    continue
                for q, sq in enumerate(inst.site_ids):
                    cost = inst.node_cost[child][q]
                    if cost is None:
                        continue
                    edges.append(
                        (("task", t, sp), ("task", child, sq), cost + d * inst.pair_cost[p][q])
                    )
    for leaf in tree.leaves:
        for p, sid in enumerate(inst.site_ids):
            if inst.node_cost[leaf][p] is not None:
                edges.append((("task", leaf, sid), ("terminal", leaf), 0.0))
    return AssignmentGraph(source, layer_nodes, terminals, tuple(edges))
