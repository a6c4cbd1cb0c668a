"""Command-line interface.

Exit codes: 0 success, 1 infeasibility or enumeration-guard errors,
2 usage, parse, or validation errors.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import __version__
from .bench import SITES_SWEEP, TASKS_SWEEP, loglog_slope, sweep
from .generate import generate_document
from .model import Infeasible, ValidationFailure, check_weights, evaluate_assignment
from .report import (
    build_report,
    evaluation_report,
    goals_report,
    pareto_report,
    render_table,
    to_machine,
)
from .scenario_io import ScenarioParseError, load_scenario
from .solver import (
    InfeasibleInstanceError,
    InstanceTooLargeError,
    NonSeparableObjectiveError,
    NotATreeError,
    pareto_frontier,
    per_goal_optima,
    solve,
)

EXIT_OK = 0
EXIT_INFEASIBLE = 1
EXIT_USAGE = 2


class UsageError(ValueError):
    pass


def _parse_kv_pairs(pairs, what):
    out = {}
    for pair in pairs or []:
        if "=" not in pair:
            raise UsageError(f"{what} must be name=value, got {pair!r}")
        name, _, value = pair.partition("=")
        out[name] = value
    return out


def _parse_weights(pairs):
    raw = _parse_kv_pairs(pairs, "--weights")
    if not raw:
        return None
    try:
        weights = {k: float(v) for k, v in raw.items()}
    except ValueError as exc:
        raise UsageError(f"bad weight value: {exc}")
    return check_weights(weights)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="distplan",
        description="Multi-criteria task-to-site assignment planning.",
    )
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", help="check a scenario file")
    p.add_argument("file")

    p = sub.add_parser("solve", help="find an optimal assignment")
    p.add_argument("file")
    p.add_argument("--solver", choices=["auto", "dp", "brute"], default="auto")
    p.add_argument("--weights", nargs="+", metavar="NAME=VALUE",
                   help="override goal weights (replaces file weights entirely)")
    p.add_argument("--out", choices=["table", "machine"], default="table")

    p = sub.add_parser("evaluate", help="evaluate a given assignment")
    p.add_argument("file")
    p.add_argument("--assign", nargs="+", required=True, metavar="TASK=SITE")
    p.add_argument("--out", choices=["table", "machine"], default="machine")

    p = sub.add_parser("goals", help="optimal assignment per goal component")
    p.add_argument("file")
    p.add_argument("--out", choices=["table", "machine"], default="machine")

    p = sub.add_parser("pareto", help="enumerate the Pareto frontier")
    p.add_argument("file")
    p.add_argument("--out", choices=["table", "machine"], default="machine")

    p = sub.add_parser("gen", help="generate a random scenario")
    p.add_argument("--tasks", type=int, required=True)
    p.add_argument("--sites", type=int, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--shape", choices=["chain", "random-tree"], default="random-tree")

    p = sub.add_parser("bench", help="DP runtime sweeps on chain instances")
    p.add_argument("--sites-sweep", action="store_true",
                   help=f"vary site count over {list(SITES_SWEEP)} at fixed task count")
    p.add_argument("--tasks-sweep", action="store_true",
                   help=f"vary task count over {list(TASKS_SWEEP)} at fixed site count")
    p.add_argument("--tasks", type=int, default=64, help="fixed task count for --sites-sweep")
    p.add_argument("--sites", type=int, default=32, help="fixed site count for --tasks-sweep")
    p.add_argument("--out", choices=["table", "machine"], default="table")
    return parser


def _emit(doc, out, stdout):
    if out == "machine":
        stdout.write(to_machine(doc))
    else:
        stdout.write(render_table(doc))


def _cmd_validate(args, stdout):
    load_scenario(args.file)
    stdout.write("ok\n")
    return EXIT_OK


def _cmd_solve(args, stdout):
    scenario = load_scenario(args.file)
    weights = _parse_weights(args.weights)
    result = solve(scenario, weights, solver=args.solver)
    _emit(build_report(scenario, result), args.out, stdout)
    return EXIT_OK


def _cmd_evaluate(args, stdout):
    scenario = load_scenario(args.file)
    assignment = _parse_kv_pairs(args.assign, "--assign")
    missing = [t.id for t in scenario.tasks if t.id not in assignment]
    if missing:
        raise UsageError(f"assignment not total: missing tasks {', '.join(missing)}")
    unknown = [t for t in assignment if t not in scenario.task_by_id]
    if unknown:
        raise UsageError(f"unknown tasks in --assign: {', '.join(unknown)}")
    bad = [s for s in assignment.values() if s not in scenario.site_by_id]
    if bad:
        raise UsageError(f"unknown sites in --assign: {', '.join(bad)}")
    gv = evaluate_assignment(scenario, assignment)
    if isinstance(gv, Infeasible):
        raise InfeasibleInstanceError(gv.reason)
    doc = evaluation_report(assignment, gv)
    if args.out == "machine":
        stdout.write(to_machine(doc))
    else:
        for name, value in doc["goal_vector"].items():
            stdout.write(f"{name:<20} {value:g}\n")
    return EXIT_OK


def _cmd_goals(args, stdout):
    scenario = load_scenario(args.file)
    doc = goals_report(scenario, per_goal_optima(scenario))
    if args.out == "machine":
        stdout.write(to_machine(doc))
    else:
        for entry in doc["goals"]:
            stdout.write(f"== optimum for {entry['goal']} ==\n")
            stdout.write(render_table(entry["report"]))
    return EXIT_OK


def _cmd_pareto(args, stdout):
    scenario = load_scenario(args.file)
    doc = pareto_report(pareto_frontier(scenario))
    if args.out == "machine":
        stdout.write(to_machine(doc))
    else:
        for k, member in enumerate(doc["frontier"]):
            gv = " ".join(f"{n}={v:g}" for n, v in member["goal_vector"].items())
            assign = " ".join(f"{t}->{s}" for t, s in member["assignment"].items())
            stdout.write(f"[{k}] {gv}\n    {assign}\n")
    return EXIT_OK


def _cmd_gen(args, stdout):
    if args.tasks < 1 or args.sites < 1:
        raise UsageError("--tasks and --sites must be >= 1")
    doc = generate_document(args.tasks, args.sites, args.seed, args.shape)
    stdout.write(json.dumps(doc, indent=2, sort_keys=True) + "\n")
    return EXIT_OK


def _cmd_bench(args, stdout):
    if not args.sites_sweep and not args.tasks_sweep:
        raise UsageError("choose --sites-sweep and/or --tasks-sweep")
    sweeps = {}
    if args.sites_sweep:
        sweeps["sites"] = sweep("sites", SITES_SWEEP, fixed=args.tasks)
    if args.tasks_sweep:
        sweeps["tasks"] = sweep("tasks", TASKS_SWEEP, fixed=args.sites)
    if args.out == "machine":
        doc = {
            vary: {
                "rows": [{"size": size, "seconds": t} for size, t in rows],
                "loglog_slope": loglog_slope(rows),
            }
            for vary, rows in sweeps.items()
        }
        stdout.write(to_machine(doc))
    else:
        for vary, rows in sweeps.items():
            stdout.write(f"varying {vary}:\n")
            stdout.write(f"{'size':>8} {'seconds':>12}\n")
            for size, t in rows:
                stdout.write(f"{size:>8} {t:>12.6f}\n")
            stdout.write(f"log-log slope: {loglog_slope(rows):.3f}\n")
    return EXIT_OK


_COMMANDS = {
    "validate": _cmd_validate,
    "solve": _cmd_solve,
    "evaluate": _cmd_evaluate,
    "goals": _cmd_goals,
    "pareto": _cmd_pareto,
    "gen": _cmd_gen,
    "bench": _cmd_bench,
}


def main(argv=None, stdout=None, stderr=None) -> int:
    stdout = stdout if stdout is not None else sys.stdout
    stderr = stderr if stderr is not None else sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if exc.code is not None else EXIT_USAGE
    try:
        return _COMMANDS[args.command](args, stdout)
    except (InfeasibleInstanceError, InstanceTooLargeError) as exc:
        stderr.write(f"error: {exc}\n")
        return EXIT_INFEASIBLE
    except ValidationFailure as exc:
        for issue in exc.issues:
            stderr.write(f"invalid: {issue}\n")
        return EXIT_USAGE
    except (ScenarioParseError, UsageError, NotATreeError,
            NonSeparableObjectiveError, FileNotFoundError) as exc:
        stderr.write(f"error: {exc}\n")
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
