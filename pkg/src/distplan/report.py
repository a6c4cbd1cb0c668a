"""Report documents shared by the CLI machine output and the service."""

from __future__ import annotations

import json
from typing import Mapping

from .model import (
    GoalVector,
    Infeasible,
    Scenario,
    execution_cost,
    transmission_cost,
)
from .solver import ParetoSet, SolveResult


def goal_vector_document(gv: GoalVector) -> dict:
    return gv.as_dict()


def build_report(scenario: Scenario, result: SolveResult) -> dict:
    """Full solve report: assignment table, goal breakdown, edge costs, stats.

    The execution and edge cost entries re-sum exactly to total_cost (same
    values, same iteration order as the evaluator).
    """
    exec_costs = {}
    for task in scenario.tasks:
        site = scenario.site_by_id[result.assignment[task.id]]
        e = execution_cost(task, site, scenario.cost_model)
        assert not isinstance(e, Infeasible)
        exec_costs[task.id] = e
    edge_costs = []
    for edge in scenario.task_graph.edges:
        p, q = result.assignment[edge.a], result.assignment[edge.b]
        edge_costs.append({
            "from": edge.a,
            "to": edge.b,
            "volume": edge.volume,
            "cost": transmission_cost(edge.volume, scenario.site_relations.cost(p, q)),
        })
    return {
        "assignment": dict(sorted(result.assignment.items())),
        "objective": result.objective,
        "goal_vector": goal_vector_document(result.goal_vector),
        "execution_costs": exec_costs,
        "edge_costs": edge_costs,
        "solver": result.solver,
        # wall_time stays on SolveResult only: machine output must be
        # byte-identical across identical invocations
        "statistics": {k: v for k, v in result.stats.items() if k != "wall_time"},
    }


def evaluation_report(assignment: Mapping[str, str], gv: GoalVector) -> dict:
    return {
        "assignment": dict(sorted(assignment.items())),
        "goal_vector": goal_vector_document(gv),
    }


def goals_report(scenario: Scenario, optima) -> dict:
    return {
        "goals": [
            {"goal": name, "report": build_report(scenario, result)}
            for name, result in optima
        ]
    }


def pareto_report(frontier: ParetoSet) -> dict:
    return {
        "frontier": [
            {"assignment": dict(sorted(a.items())), "goal_vector": goal_vector_document(g)}
            for a, g in frontier.members
        ]
    }


def to_machine(document: dict) -> str:
    """Deterministic machine rendering: sorted keys, fixed separators."""
    return json.dumps(document, sort_keys=True, separators=(",", ":")) + "\n"


def render_table(report: dict) -> str:
    """Human-readable solve report."""
    lines = []
    lines.append(f"solver: {report['solver']}")
    lines.append(f"objective: {report['objective']:g}")
    lines.append("")
    lines.append(f"{'task':<12} {'site':<12} {'exec cost':>12}")
    for task, site in report["assignment"].items():
        lines.append(f"{task:<12} {site:<12} {report['execution_costs'][task]:>12g}")
    if report["edge_costs"]:
        lines.append("")
        lines.append(f"{'edge':<24} {'volume':>8} {'comm cost':>12}")
        for ec in report["edge_costs"]:
            lines.append(f"{ec['from'] + ' - ' + ec['to']:<24} {ec['volume']:>8g} {ec['cost']:>12g}")
    lines.append("")
    lines.append("goal vector:")
    for name, value in report["goal_vector"].items():
        lines.append(f"  {name:<20} {value:g}")
    return "\n".join(lines) + "\n"
