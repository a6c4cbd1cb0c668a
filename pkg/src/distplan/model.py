"""Domain model for multi-site task distribution.

A planning instance (Scenario) bundles tasks, sites, a communication graph
over tasks, per-unit transmission costs between sites, a cost model, and
goal weights. Evaluating an assignment yields a GoalVector with four
components: total_cost, cross_site_volume, skill_risk, load_imbalance.
All types are immutable after validation; every operation is pure.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import cached_property
from typing import Mapping, Optional, Sequence, Union

GOAL_COMPONENTS = ("total_cost", "cross_site_volume", "skill_risk", "load_imbalance")

# A total mapping task id -> site id.
Assignment = Mapping[str, str]

# Per-task execution-cost override key: a task attribute "cost@<site_id>"
# replaces the effort*rate*penalty formula for that (task, site) pair.
COST_OVERRIDE_PREFIX = "cost@"

SKILL_LEVEL_MIN = 0
SKILL_LEVEL_MAX = 10


@dataclass(frozen=True)
class Infeasible:
    """Distinguished marker for infeasible costs/assignments, never a finite number."""

    reason: str

    def __bool__(self) -> bool:
        return False


@dataclass(frozen=True)
class ValidationIssue:
    entity: str
    field: str
    message: str

    def __str__(self) -> str:
        return f"{self.entity}.{self.field}: {self.message}"

    def as_dict(self) -> dict:
        return {"entity": self.entity, "field": self.field, "message": self.message}


class ValidationFailure(ValueError):
    """Raised by validate_scenario; carries every violated invariant."""

    def __init__(self, issues: Sequence[ValidationIssue]):
        self.issues = list(issues)
        super().__init__("; ".join(str(i) for i in self.issues))


@dataclass(frozen=True)
class Task:
    id: str
    effort: float
    required_skills: Mapping[str, int] = field(default_factory=dict)
    pinned_site: Optional[str] = None
    forbidden_sites: frozenset = frozenset()
    attributes: Mapping[str, float] = field(default_factory=dict)


@dataclass(frozen=True)
class Site:
    id: str
    hourly_rate: float
    capacity: Optional[float] = None  # None = unbounded
    skills: Mapping[str, int] = field(default_factory=dict)
    attributes: Mapping[str, float] = field(default_factory=dict)


@dataclass(frozen=True)
class GraphEdge:
    a: str
    b: str
    volume: float


@dataclass(frozen=True)
class TaskGraph:
    nodes: tuple
    edges: tuple  # of GraphEdge, undirected, no self-loops, one per pair
    root: Optional[str] = None

    def neighbors(self, task_id: str):
        for e in self.edges:
            if e.a == task_id:
                yield e.b, e.volume
            elif e.b == task_id:
                yield e.a, e.volume


@dataclass(frozen=True)
class SiteRelations:
    """Symmetric per-unit transmission cost matrix over site ids."""

    site_ids: tuple
    matrix: tuple  # row-major tuple of tuples, indexed by site_ids order

    @cached_property
    def _index(self) -> dict:
        return {s: i for i, s in enumerate(self.site_ids)}

    def cost(self, p: str, q: str) -> float:
        return self.matrix[self._index[p]][self._index[q]]

    @staticmethod
    def from_pairs(site_ids: Sequence[str], pairs: Mapping) -> "SiteRelations":
        """Build from {(p, q): cost}; unspecified entries default to 0."""
        idx = {s: i for i, s in enumerate(site_ids)}
        mat = [[0.0] * len(site_ids) for _ in site_ids]
        for (p, q), c in pairs.items():
            mat[idx[p]][idx[q]] = float(c)
            mat[idx[q]][idx[p]] = float(c)
        return SiteRelations(tuple(site_ids), tuple(tuple(r) for r in mat))


@dataclass(frozen=True)
class CostModel:
    skill_gap_penalty: float = 1.5  # multiplier per missing skill level, > 1
    hard_skill_floor: Optional[int] = None  # gap at which a pair is infeasible
    capacity_mode: str = "soft"  # "soft" | "hard"


@dataclass(frozen=True)
class GoalVector:
    total_cost: float
    cross_site_volume: float
    skill_risk: float
    load_imbalance: float

    def as_tuple(self) -> tuple:
        return (self.total_cost, self.cross_site_volume, self.skill_risk, self.load_imbalance)

    def as_dict(self) -> dict:
        return {k: getattr(self, k) for k in GOAL_COMPONENTS}


@dataclass(frozen=True)
class Scenario:
    tasks: tuple
    sites: tuple
    task_graph: TaskGraph
    site_relations: SiteRelations
    cost_model: CostModel = CostModel()
    goal_weights: Mapping[str, float] = field(default_factory=lambda: {"total_cost": 1.0})

    @cached_property
    def task_by_id(self) -> dict:
        return {t.id: t for t in self.tasks}

    @cached_property
    def site_by_id(self) -> dict:
        return {s.id: s for s in self.sites}

    @property
    def m(self) -> int:
        return len(self.tasks)

    @property
    def n(self) -> int:
        return len(self.sites)


def check_weights(weights: Mapping[str, float]) -> dict:
    """Validate goal weights: known component names, >= 0, at least one > 0.

    Returns a dense dict over all goal components (missing names -> 0).
    """
    issues = []
    for name, w in weights.items():
        if name not in GOAL_COMPONENTS:
            issues.append(ValidationIssue("goal_weights", name, f"unknown goal component {name!r}"))
        elif w < 0:
            issues.append(ValidationIssue("goal_weights", name, f"weight must be >= 0, got {w}"))
    if not issues and not any(w > 0 for w in weights.values()):
        issues.append(ValidationIssue("goal_weights", "*", "at least one weight must be > 0"))
    if issues:
        raise ValidationFailure(issues)
    return {k: float(weights.get(k, 0.0)) for k in GOAL_COMPONENTS}


def skill_gaps(task: Task, site: Site):
    """Yield (skill, gap) for each required skill the site does not fully cover."""
    for skill, required in task.required_skills.items():
        available = site.skills.get(skill, 0)
        gap = required - available
        if gap > 0:
            yield skill, gap


def execution_cost(task: Task, site: Site, cost_model: CostModel) -> Union[float, Infeasible]:
    """Cost of executing a task at a site, or an Infeasible marker.

    Base cost is effort * hourly_rate * gamma^(total skill gap); a task
    attribute "cost@<site_id>" overrides the base cost for that site.
    Pins, forbids, and the hard skill floor make the pair infeasible.
    """
    if site.id in task.forbidden_sites:
        return Infeasible(f"task {task.id} forbidden at site {site.id}")
    if task.pinned_site is not None and task.pinned_site != site.id:
        return Infeasible(f"task {task.id} pinned to site {task.pinned_site}")
    total_gap = 0
    for _, gap in skill_gaps(task, site):
        if cost_model.hard_skill_floor is not None and gap >= cost_model.hard_skill_floor:
            return Infeasible(
                f"task {task.id} at site {site.id}: skill gap {gap} reaches hard floor"
            )
        total_gap += gap
    override = task.attributes.get(COST_OVERRIDE_PREFIX + site.id)
    if override is not None:
        return float(override)
    return task.effort * site.hourly_rate * cost_model.skill_gap_penalty ** total_gap


def transmission_cost(volume: float, unit_cost: float) -> float:
    """Cost of moving `volume` units between two sites at `unit_cost` per unit."""
    return volume * unit_cost


def evaluate_assignment(scenario: Scenario, assignment: Mapping[str, str]) -> Union[GoalVector, Infeasible]:
    """The evaluation function f: scenario x assignment -> goal vector.

    Pure and deterministic. Returns Infeasible when any task lands on a
    forbidden/unpinned site, a skill gap hits the hard floor, or (with
    capacity_mode=hard) a site load exceeds its capacity.
    """
    missing = [t.id for t in scenario.tasks if t.id not in assignment]
    if missing:
        raise ValueError(f"assignment not total: missing tasks {missing}")
    unknown = [t for t in assignment if t not in scenario.task_by_id]
    if unknown:
        raise ValueError(f"assignment references unknown tasks {unknown}")
    bad_sites = [s for s in assignment.values() if s not in scenario.site_by_id]
    if bad_sites:
        raise ValueError(f"assignment references unknown sites {bad_sites}")

    total_cost = 0.0
    skill_risk = 0.0
    loads = {s.id: 0.0 for s in scenario.sites}
    for task in scenario.tasks:
        site = scenario.site_by_id[assignment[task.id]]
        e = execution_cost(task, site, scenario.cost_model)
        if isinstance(e, Infeasible):
            return e
        total_cost += e
        loads[site.id] += task.effort
        for _, gap in skill_gaps(task, site):
            skill_risk += gap

    cross_site_volume = 0.0
    for edge in scenario.task_graph.edges:
        p, q = assignment[edge.a], assignment[edge.b]
        total_cost += transmission_cost(edge.volume, scenario.site_relations.cost(p, q))
        if p != q:
            cross_site_volume += edge.volume

    load_imbalance = 0.0
    for site in scenario.sites:
        if site.capacity is None:
            continue
        load = loads[site.id]
        if load == 0.0:
            continue
        if site.capacity == 0:
            return Infeasible(f"site {site.id} has zero capacity but load {load}")
        ratio = load / site.capacity
        if scenario.cost_model.capacity_mode == "hard" and ratio > 1.0:
            return Infeasible(f"site {site.id} over capacity: load {load} > {site.capacity}")
        load_imbalance = max(load_imbalance, ratio)

    return GoalVector(total_cost, cross_site_volume, skill_risk, load_imbalance)


def scalarize(goal_vector: GoalVector, weights: Mapping[str, float]) -> float:
    """Weighted sum of raw goal components under nonnegative weights."""
    dense = check_weights(weights)
    return sum(dense[k] * getattr(goal_vector, k) for k in GOAL_COMPONENTS)


def chain_graph(task_ids: Sequence[str], volumes: Sequence[float]) -> TaskGraph:
    """Path graph over sequential phases; root is the first phase.

    Models a waterfall-style process where each phase hands data to the next.
    """
    if not task_ids:
        raise ValueError("chain requires at least one phase")
    if len(volumes) != len(task_ids) - 1:
        raise ValueError(
            f"need {len(task_ids) - 1} volumes for {len(task_ids)} phases, got {len(volumes)}"
        )
    edges = tuple(
        GraphEdge(task_ids[i], task_ids[i + 1], float(volumes[i]))
        for i in range(len(task_ids) - 1)
    )
    return TaskGraph(tuple(task_ids), edges, root=task_ids[0])


def _parse_skill_map(raw, entity, fld, issues) -> dict:
    out = {}
    if not isinstance(raw, Mapping):
        issues.append(ValidationIssue(entity, fld, "must be a mapping of skill name to level"))
        return out
    for skill, level in raw.items():
        if not isinstance(level, int) or isinstance(level, bool) or not (
            SKILL_LEVEL_MIN <= level <= SKILL_LEVEL_MAX
        ):
            issues.append(
                ValidationIssue(
                    entity, fld, f"skill {skill!r} level must be an integer in "
                    f"[{SKILL_LEVEL_MIN}, {SKILL_LEVEL_MAX}], got {level!r}"
                )
            )
        else:
            out[str(skill)] = level
    return out


def _require_number(raw, entity, fld, issues, minimum=None, strict_min=None):
    if not isinstance(raw, (int, float)) or isinstance(raw, bool) or not math.isfinite(raw):
        issues.append(ValidationIssue(entity, fld, f"must be a finite number, got {raw!r}"))
        return None
    v = float(raw)
    if minimum is not None and v < minimum:
        issues.append(ValidationIssue(entity, fld, f"must be >= {minimum}, got {v}"))
        return None
    if strict_min is not None and v <= strict_min:
        issues.append(ValidationIssue(entity, fld, f"must be > {strict_min}, got {v}"))
        return None
    return v


def _check_unknown_keys(raw, allowed, entity, issues):
    for key in raw:
        if key not in allowed:
            issues.append(ValidationIssue(entity, key, f"unknown key {key!r}"))


def _parse_task(raw, issues) -> Optional[Task]:
    tid = raw.get("id")
    entity = f"task {tid}" if isinstance(tid, str) else "task"
    _check_unknown_keys(
        raw,
        {"id", "effort", "required_skills", "pinned_site", "forbidden_sites", "attributes"},
        entity, issues,
    )
    if not isinstance(tid, str) or not tid:
        issues.append(ValidationIssue(entity, "id", "must be a non-empty string"))
        return None
    effort = _require_number(raw.get("effort"), entity, "effort", issues, strict_min=0)
    skills = _parse_skill_map(raw.get("required_skills", {}), entity, "required_skills", issues)
    pinned = raw.get("pinned_site")
    forbidden = raw.get("forbidden_sites", [])
    if not isinstance(forbidden, (list, tuple)):
        issues.append(ValidationIssue(entity, "forbidden_sites", "must be a list of site ids"))
        forbidden = []
    attributes = raw.get("attributes", {})
    if not isinstance(attributes, Mapping):
        issues.append(ValidationIssue(entity, "attributes", "must be a mapping of name to number"))
        attributes = {}
    if effort is None:
        return None
    return Task(
        id=tid,
        effort=effort,
        required_skills=skills,
        pinned_site=pinned,
        forbidden_sites=frozenset(forbidden),
        attributes=dict(attributes),
    )


def _parse_site(raw, issues) -> Optional[Site]:
    sid = raw.get("id")
    entity = f"site {sid}" if isinstance(sid, str) else "site"
    _check_unknown_keys(raw, {"id", "hourly_rate", "capacity", "skills", "attributes"}, entity, issues)
    if not isinstance(sid, str) or not sid:
        issues.append(ValidationIssue(entity, "id", "must be a non-empty string"))
        return None
    rate = _require_number(raw.get("hourly_rate"), entity, "hourly_rate", issues, minimum=0)
    capacity = raw.get("capacity")
    if capacity is not None:
        capacity = _require_number(capacity, entity, "capacity", issues, minimum=0)
    skills = _parse_skill_map(raw.get("skills", {}), entity, "skills", issues)
    attributes = raw.get("attributes", {})
    if not isinstance(attributes, Mapping):
        issues.append(ValidationIssue(entity, "attributes", "must be a mapping of name to number"))
        attributes = {}
    if rate is None:
        return None
    return Site(id=sid, hourly_rate=rate, capacity=capacity, skills=skills, attributes=dict(attributes))


def _parse_site_relations(raw, site_ids, issues) -> Optional[SiteRelations]:
    idx = {s: i for i, s in enumerate(site_ids)}
    n = len(site_ids)
    given = {}  # (i, j) -> cost as specified
    if isinstance(raw, Mapping):
        for p, row in raw.items():
            if p not in idx:
                issues.append(ValidationIssue("site_relations", p, f"unknown site {p}"))
                continue
            if not isinstance(row, Mapping):
                issues.append(ValidationIssue("site_relations", p, "row must be a mapping"))
                continue
            for q, c in row.items():
                if q not in idx:
                    issues.append(ValidationIssue("site_relations", f"{p}.{q}", f"unknown site {q}"))
                    continue
                v = _require_number(c, "site_relations", f"{p}.{q}", issues, minimum=0)
                if v is not None:
                    given[(idx[p], idx[q])] = v
    elif isinstance(raw, (list, tuple)):
        for k, entry in enumerate(raw):
            entity = f"site_relations[{k}]"
            if not isinstance(entry, Mapping):
                issues.append(ValidationIssue(entity, "", "must be an object {a, b, cost}"))
                continue
            _check_unknown_keys(entry, {"a", "b", "cost"}, entity, issues)
            a, b = entry.get("a"), entry.get("b")
            if a not in idx:
                issues.append(ValidationIssue(entity, "a", f"unknown site {a}"))
                continue
            if b not in idx:
                issues.append(ValidationIssue(entity, "b", f"unknown site {b}"))
                continue
            v = _require_number(entry.get("cost"), entity, "cost", issues, minimum=0)
            if v is None:
                continue
            i, j = idx[a], idx[b]
            for key in ((i, j), (j, i)) if i != j else ((i, i),):
                if key in given and given[key] != v:
                    issues.append(
                        ValidationIssue(
                            "site_relations", f"({a},{b})",
                            f"conflicting entries: {given[key]} vs {v}",
                        )
                    )
                given[key] = v
    else:
        issues.append(ValidationIssue("site_relations", "", "must be a list of {a, b, cost} or a matrix mapping"))
        return None

    mat = [[0.0] * n for _ in range(n)]
    for (i, j), v in given.items():
        mat[i][j] = v
    for i in range(n):
        for j in range(i + 1, n):
            a_given, b_given = (i, j) in given, (j, i) in given
            if a_given and b_given and mat[i][j] != mat[j][i]:
                issues.append(
                    ValidationIssue(
                        "site_relations", f"({site_ids[i]},{site_ids[j]})",
                        f"site_relations not symmetric at ({site_ids[i]},{site_ids[j]}): "
                        f"{mat[i][j]} vs {mat[j][i]}",
                    )
                )
            elif a_given != b_given:  # mirror the one-sided entry
                v = mat[i][j] if a_given else mat[j][i]
                mat[i][j] = mat[j][i] = v
    return SiteRelations(tuple(site_ids), tuple(tuple(r) for r in mat))


def _parse_cost_model(raw, issues) -> CostModel:
    if not isinstance(raw, Mapping):
        issues.append(ValidationIssue("cost_model", "", "must be a mapping"))
        return CostModel()
    _check_unknown_keys(raw, {"skill_gap_penalty", "hard_skill_floor", "capacity_mode"}, "cost_model", issues)
    gamma = raw.get("skill_gap_penalty", 1.5)
    gamma = _require_number(gamma, "cost_model", "skill_gap_penalty", issues, strict_min=1)
    floor = raw.get("hard_skill_floor")
    if floor is not None and (not isinstance(floor, int) or isinstance(floor, bool) or floor < 1):
        issues.append(ValidationIssue("cost_model", "hard_skill_floor", f"must be an integer >= 1, got {floor!r}"))
        floor = None
    mode = raw.get("capacity_mode", "soft")
    if mode not in ("soft", "hard"):
        issues.append(ValidationIssue("cost_model", "capacity_mode", f"must be 'soft' or 'hard', got {mode!r}"))
        mode = "soft"
    return CostModel(skill_gap_penalty=gamma if gamma is not None else 1.5,
                     hard_skill_floor=floor, capacity_mode=mode)


SCENARIO_KEYS = {
    "format_version", "tasks", "sites", "edges", "site_relations",
    "cost_model", "goal_weights", "root",
}
FORMAT_VERSION = 1


def validate_scenario(raw: Mapping) -> Scenario:
    """Parse and cross-validate raw scenario data.

    Collects every violated invariant and raises ValidationFailure with the
    full list; returns a Scenario only when all invariants hold.
    """
    issues: list = []
    if not isinstance(raw, Mapping):
        raise ValidationFailure([ValidationIssue("scenario", "", "document must be a mapping")])
    _check_unknown_keys(raw, SCENARIO_KEYS, "scenario", issues)

    version = raw.get("format_version", FORMAT_VERSION)
    if version != FORMAT_VERSION:
        issues.append(ValidationIssue("scenario", "format_version",
                                      f"unsupported format_version {version!r}, expected {FORMAT_VERSION}"))

    raw_tasks = raw.get("tasks", [])
    raw_sites = raw.get("sites", [])
    if not isinstance(raw_tasks, (list, tuple)) or not raw_tasks:
        issues.append(ValidationIssue("scenario", "tasks", "must be a non-empty list"))
        raw_tasks = []
    if not isinstance(raw_sites, (list, tuple)) or not raw_sites:
        issues.append(ValidationIssue("scenario", "sites", "must be a non-empty list"))
        raw_sites = []

    tasks, sites = [], []
    for rt in raw_tasks:
        if not isinstance(rt, Mapping):
            issues.append(ValidationIssue("task", "", "each task must be an object"))
            continue
        t = _parse_task(rt, issues)
        if t is not None:
            tasks.append(t)
    for rs in raw_sites:
        if not isinstance(rs, Mapping):
            issues.append(ValidationIssue("site", "", "each site must be an object"))
            continue
        s = _parse_site(rs, issues)
        if s is not None:
            sites.append(s)

    task_ids = [t.id for t in tasks]
    site_ids = [s.id for s in sites]
    # duplicate detection uses raw ids so a task/site with other bad fields
    # still counts toward its id
    raw_task_ids = [rt.get("id") for rt in raw_tasks
                    if isinstance(rt, Mapping) and isinstance(rt.get("id"), str)]
    raw_site_ids = [rs.get("id") for rs in raw_sites
                    if isinstance(rs, Mapping) and isinstance(rs.get("id"), str)]
    for tid in sorted({x for x in raw_task_ids if raw_task_ids.count(x) > 1}):
        issues.append(ValidationIssue(f"task {tid}", "id", f"duplicate task id {tid}"))
    for sid in sorted({x for x in raw_site_ids if raw_site_ids.count(x) > 1}):
        issues.append(ValidationIssue(f"site {sid}", "id", f"duplicate site id {sid}"))
    known_tasks, known_sites = set(task_ids), set(site_ids)

    for t in tasks:
        for sid in sorted(t.forbidden_sites):
            if sid not in known_sites:
                issues.append(ValidationIssue(f"task {t.id}", "forbidden_sites", f"unknown site {sid}"))
        if t.pinned_site is not None and t.pinned_site not in known_sites:
            issues.append(ValidationIssue(f"task {t.id}", "pinned_site", f"unknown site {t.pinned_site}"))
        if t.pinned_site is not None and t.pinned_site in t.forbidden_sites:
            issues.append(ValidationIssue(f"task {t.id}", "pinned_site",
                                          f"pinned site {t.pinned_site} is also forbidden"))

    raw_edges = raw.get("edges", [])
    edges = []
    if not isinstance(raw_edges, (list, tuple)):
        issues.append(ValidationIssue("scenario", "edges", "must be a list"))
        raw_edges = []
    seen_pairs = set()
    for k, re_ in enumerate(raw_edges):
        entity = f"edge[{k}]"
        if not isinstance(re_, Mapping):
            issues.append(ValidationIssue(entity, "", "must be an object {from, to, volume}"))
            continue
        _check_unknown_keys(re_, {"from", "to", "volume"}, entity, issues)
        a, b = re_.get("from"), re_.get("to")
        ok = True
        for end, fld in ((a, "from"), (b, "to")):
            if end not in known_tasks:
                issues.append(ValidationIssue(entity, fld, f"unknown task {end}"))
                ok = False
        if ok and a == b:
            issues.append(ValidationIssue(entity, "", f"self-loop on task {a}"))
            ok = False
        volume = _require_number(re_.get("volume"), entity, "volume", issues, minimum=0)
        if not ok or volume is None:
            continue
        pair = (min(a, b), max(a, b))
        if pair in seen_pairs:
            issues.append(ValidationIssue(entity, "", f"duplicate edge between {pair[0]} and {pair[1]}"))
            continue
        seen_pairs.add(pair)
        edges.append(GraphEdge(a, b, volume))

    root = raw.get("root")
    if root is not None and root not in known_tasks:
        issues.append(ValidationIssue("scenario", "root", f"unknown task {root}"))
        root = None

    relations = _parse_site_relations(raw.get("site_relations", []), site_ids, issues)
    cost_model = _parse_cost_model(raw.get("cost_model", {}), issues)

    weights = raw.get("goal_weights", {"total_cost": 1.0})
    try:
        weights = check_weights(weights) if isinstance(weights, Mapping) else {}
        if not weights:
            issues.append(ValidationIssue("scenario", "goal_weights", "must be a mapping"))
    except ValidationFailure as exc:
        issues.extend(exc.issues)
        weights = {k: 0.0 for k in GOAL_COMPONENTS}

    if issues:
        raise ValidationFailure(issues)
    return Scenario(
        tasks=tuple(tasks),
        sites=tuple(sites),
        task_graph=TaskGraph(tuple(task_ids), tuple(edges), root=root),
        site_relations=relations,
        cost_model=cost_model,
        goal_weights=weights,
    )
