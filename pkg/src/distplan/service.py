"""Stateless HTTP layer for interactive what-if exploration.

Scenarios travel inline with every request; nothing is persisted server-side.
Status codes: 200 ok, 400 malformed/validation errors, 413 body too large,
422 infeasible instance or enumeration guard exceeded.
"""

from __future__ import annotations

import json
import os

from fastapi import FastAPI, Request
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import JSONResponse

from . import __version__
from .model import (
    Infeasible,
    ValidationFailure,
    check_weights,
    evaluate_assignment,
    validate_scenario,
)
from .report import build_report, evaluation_report, goals_report, pareto_report
from .solver import (
    InfeasibleInstanceError,
    InstanceTooLargeError,
    NonSeparableObjectiveError,
    NotATreeError,
    pareto_frontier,
    per_goal_optima,
    solve,
)

DEFAULT_MAX_BODY = 1024 * 1024  # 1 MiB
MAX_BODY_ENV = "DISTPLAN_MAX_BODY"
ORIGINS_ENV = "DISTPLAN_ALLOWED_ORIGINS"


class _BadRequest(ValueError):
    def __init__(self, errors):
        self.errors = errors
        super().__init__(str(errors))


class _TooLarge(ValueError):
    pass


def _error_response(status: int, errors) -> JSONResponse:
    return JSONResponse(status_code=status, content={"errors": errors})


async def _read_json(request: Request, max_body: int) -> dict:
    body = await request.body()
    if len(body) > max_body:
        raise _TooLarge()
    try:
        doc = json.loads(body)
    except json.JSONDecodeError as exc:
        raise _BadRequest([{"message": f"malformed JSON: {exc.msg}"}])
    if not isinstance(doc, dict):
        raise _BadRequest([{"message": "request body must be a JSON object"}])
    return doc


def _scenario_from(doc: dict):
    if "scenario" not in doc:
        raise _BadRequest([{"message": "missing 'scenario'"}])
    return validate_scenario(doc["scenario"])


def create_app(max_body: int | None = None) -> FastAPI:
    if max_body is None:
        max_body = int(os.environ.get(MAX_BODY_ENV, DEFAULT_MAX_BODY))
    app = FastAPI(title="distplan", version=__version__)
    origins = [o for o in os.environ.get(ORIGINS_ENV, "*").split(",") if o]
    app.add_middleware(
        CORSMiddleware,
        allow_origins=origins,
        allow_methods=["*"],
        allow_headers=["*"],
    )

    @app.exception_handler(_TooLarge)
    async def too_large(request, exc):
        return _error_response(413, [{"message": f"request body exceeds {max_body} bytes"}])

    @app.exception_handler(_BadRequest)
    async def bad_request(request, exc):
        return _error_response(400, exc.errors)

    @app.exception_handler(ValidationFailure)
    async def validation_failure(request, exc):
        return _error_response(400, [i.as_dict() for i in exc.issues])

    @app.exception_handler(InfeasibleInstanceError)
    @app.exception_handler(InstanceTooLargeError)
    async def infeasible(request, exc):
        return _error_response(422, [{"message": str(exc)}])

    @app.exception_handler(NotATreeError)
    @app.exception_handler(NonSeparableObjectiveError)
    async def solver_misuse(request, exc):
        return _error_response(400, [{"message": str(exc)}])

    @app.get("/health")
    async def health():
        return {"status": "ok", "version": __version__}

    @app.post("/api/solve")
    async def api_solve(request: Request):
        doc = await _read_json(request, max_body)
        scenario = _scenario_from(doc)
        options = doc.get("options", {})
        if not isinstance(options, dict):
            raise _BadRequest([{"message": "'options' must be an object"}])
        solver = options.get("solver", "auto")
        if solver not in ("auto", "dp", "brute"):
            raise _BadRequest([{"message": f"unknown solver {solver!r}"}])
        weights = options.get("weights")
        if weights is not None:
            weights = check_weights(weights)
        result = solve(scenario, weights, solver=solver)
        return build_report(scenario, result)

    @app.post("/api/evaluate")
    async def api_evaluate(request: Request):
        doc = await _read_json(request, max_body)
        scenario = _scenario_from(doc)
        assignment = doc.get("assignment")
        if not isinstance(assignment, dict):
            raise _BadRequest([{"message": "missing 'assignment' object"}])
        try:
            gv = evaluate_assignment(scenario, assignment)
        except ValueError as exc:
            raise _BadRequest([{"message": str(exc)}])
        if isinstance(gv, Infeasible):
            raise InfeasibleInstanceError(gv.reason)
        return evaluation_report(assignment, gv)

    @app.post("/api/goals")
    async def api_goals(request: Request):
        doc = await _read_json(request, max_body)
        scenario = _scenario_from(doc)
        return goals_report(scenario, per_goal_optima(scenario))

    @app.post("/api/pareto")
    async def api_pareto(request: Request):
        doc = await _read_json(request, max_body)
        scenario = _scenario_from(doc)
        return pareto_report(pareto_frontier(scenario))

    return app


app = create_app()


def run(host: str = "127.0.0.1", port: int = 8000) -> None:
    import uvicorn

    uvicorn.run(app, host=host, port=port)


if __name__ == "__main__":
    import argparse

    parser = argparse.ArgumentParser(description="run the distplan service")
    parser.add_argument("--host", default="127.0.0.1")
    parser.add_argument("--port", type=int, default=8000)
    args = parser.parse_args()
    run(args.host, args.port)
