import copy
import json
from pathlib import Path

import pytest

from distplan import load_scenario, validate_scenario

WORKED_PATH = Path(__file__).resolve().parent.parent / "scenarios" / "worked_chain.json"

# Execution-cost table of the worked 3-task / 2-site chain instance, used by
# the in-test oracles (kept as literals, independent of the library).
WORKED_E = {
    ("T1", "A"): 100.0, ("T1", "B"): 80.0,
    ("T2", "A"): 50.0, ("T2", "B"): 70.0,
    ("T3", "A"): 60.0, ("T3", "B"): 40.0,
}
WORKED_EDGES = [("T1", "T2", 10.0), ("T2", "T3", 5.0)]
WORKED_S = {("A", "A"): 0.0, ("A", "B"): 2.0, ("B", "A"): 2.0, ("B", "B"): 0.0}


def worked_oracle(assignment):
    """Hand evaluator for the worked instance: (total_cost, cross_site_volume)."""
    total = sum(WORKED_E[(t, assignment[t])] for t in ("T1", "T2", "T3"))
    xvol = 0.0
    for a, b, d in WORKED_EDGES:
        total += d * WORKED_S[(assignment[a], assignment[b])]
        if assignment[a] != assignment[b]:
            xvol += d
    return total, xvol


def worked_enumeration():
    """All 8 assignments of the worked instance with their oracle totals."""
    table = {}
    for sa in "AB":
        for sb in "AB":
            for sc in "AB":
                assignment = {"T1": sa, "T2": sb, "T3": sc}
                table[(sa, sb, sc)] = worked_oracle(assignment)
    return table


@pytest.fixture
def worked_scenario():
    return load_scenario(WORKED_PATH)


@pytest.fixture
def worked_document():
    return json.loads(WORKED_PATH.read_text())


def small_document(**overrides):
    """Well-formed 3-task / 2-site document for validation tests."""
    doc = {
        "format_version": 1,
        "tasks": [
            {"id": "T1", "effort": 100},
            {"id": "T2", "effort": 50},
            {"id": "T3", "effort": 60},
        ],
        "sites": [
            {"id": "A", "hourly_rate": 1.0},
            {"id": "B", "hourly_rate": 2.0},
        ],
        "edges": [
            {"from": "T1", "to": "T2", "volume": 10},
            {"from": "T2", "to": "T3", "volume": 5},
        ],
        "site_relations": [{"a": "A", "b": "B", "cost": 2}],
    }
    doc.update(copy.deepcopy(overrides))
    return doc


def scenario_from(**overrides):
    return validate_scenario(small_document(**overrides))
