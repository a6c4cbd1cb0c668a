"""Multi-criteria task-to-site assignment planning.

Models distributed development scenarios (tasks, sites, dependencies),
evaluates assignments against a goal vector, and finds optimal assignments
with an exact tree dynamic program, a brute-force oracle, per-goal
comparison, and Pareto frontier enumeration.
"""

__version__ = "0.1.0"

from .model import (  # noqa: F401
    GOAL_COMPONENTS,
    Assignment,
    CostModel,
    GoalVector,
    GraphEdge,
    Infeasible,
    Scenario,
    Site,
    SiteRelations,
    Task,
    TaskGraph,
    ValidationFailure,
    ValidationIssue,
    chain_graph,
    check_weights,
    evaluate_assignment,
    execution_cost,
    scalarize,
    transmission_cost,
    validate_scenario,
)
from .solver import (  # noqa: F401
    AssignmentGraph,
    InfeasibleInstanceError,
    InstanceTooLargeError,
    NonSeparableObjectiveError,
    NotATreeError,
    ParetoSet,
    SolveResult,
    SolverError,
    build_assignment_graph,
    check_tree,
    pareto_frontier,
    per_goal_optima,
    solve,
    solve_brute_force,
    solve_tree_dp,
)
from .scenario_io import (  # noqa: F401
    ScenarioParseError,
    dump_scenario,
    load_scenario,
    save_scenario,
    scenario_to_document,
)
from .generate import generate_document, generate_instance  # noqa: F401
