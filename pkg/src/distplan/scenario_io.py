"""Scenario file format (JSON, format_version 1) and round-trip serialization.

Top-level keys: format_version, tasks, sites, edges, site_relations,
cost_model (optional), goal_weights (optional), root (optional). Unknown
keys are rejected with their paths. See README for the field reference.
"""

from __future__ import annotations

import json
from pathlib import Path
from typing import Mapping, Union

from .model import FORMAT_VERSION, Scenario, validate_scenario


class ScenarioParseError(ValueError):
    """File-level parse failure, with line/column when available."""

    def __init__(self, message: str, line=None, column=None):
        self.line = line
        self.column = column
        where = f" (line {line}, column {column})" if line is not None else ""
        super().__init__(f"{message}{where}")


def load_scenario(path: Union[str, Path]) -> Scenario:
    """Parse and validate a scenario file; errors carry position or entity/field."""
    text = Path(path).read_text()
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ScenarioParseError(exc.msg, exc.lineno, exc.colno) from exc
    return validate_scenario(doc)


def scenario_to_document(scenario: Scenario) -> dict:
    """Canonical document form; parse(serialize(s)) == s."""
    tasks = []
    for t in scenario.tasks:
        entry: dict = {"id": t.id, "effort": t.effort}
        if t.required_skills:
            entry["required_skills"] = dict(sorted(t.required_skills.items()))
        if t.pinned_site is not None:
            entry["pinned_site"] = t.pinned_site
        if t.forbidden_sites:
            entry["forbidden_sites"] = sorted(t.forbidden_sites)
        if t.attributes:
            entry["attributes"] = dict(sorted(t.attributes.items()))
        tasks.append(entry)
    sites = []
    for s in scenario.sites:
        entry = {"id": s.id, "hourly_rate": s.hourly_rate}
        if s.capacity is not None:
            entry["capacity"] = s.capacity
        if s.skills:
            entry["skills"] = dict(sorted(s.skills.items()))
        if s.attributes:
            entry["attributes"] = dict(sorted(s.attributes.items()))
        sites.append(entry)
    relations = []
    ids = scenario.site_relations.site_ids
    for i, p in enumerate(ids):
        for j in range(i, len(ids)):
            cost = scenario.site_relations.matrix[i][j]
            if cost != 0.0:
                relations.append({"a": p, "b": ids[j], "cost": cost})
    doc = {
        "format_version": FORMAT_VERSION,
        "tasks": tasks,
        "sites": sites,
        "edges": [
            {"from": e.a, "to": e.b, "volume": e.volume}
            for e in scenario.task_graph.edges
        ],
        "site_relations": relations,
        "cost_model": {
            "skill_gap_penalty": scenario.cost_model.skill_gap_penalty,
            "capacity_mode": scenario.cost_model.capacity_mode,
        },
        "goal_weights": {k: w for k, w in scenario.goal_weights.items() if w != 0.0},
    }
    if scenario.cost_model.hard_skill_floor is not None:
        doc["cost_model"]["hard_skill_floor"] = scenario.cost_model.hard_skill_floor
    if scenario.task_graph.root is not None:
        doc["root"] = scenario.task_graph.root
    return doc


def dump_scenario(scenario: Scenario) -> str:
    return json.dumps(scenario_to_document(scenario), indent=2, sort_keys=True) + "\n"


def save_scenario(scenario: Scenario, path: Union[str, Path]) -> None:
    Path(path).write_text(dump_scenario(scenario))
