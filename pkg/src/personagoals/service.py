"""HTTP service for the analyst's what-if loop.

One model per server process. All state lives in an immutable snapshot
(model, strategy, scores, findings, revision); writes rebuild the
snapshot under a lock and swap it atomically, so readers never observe
a half-updated state.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass
from pathlib import Path

from fastapi import FastAPI, HTTPException, Request, Response
from pydantic import BaseModel

from .errors import InvalidEnumError, ModelError, ParseError
from .interchange import load_model
from .model import ElementType, Model, SatisfactionLevel
from .obstruction import ImplicitVulnerabilityFinding, find_implicit_vulnerabilities
from .propagation import (
    EvaluationResult,
    Strategy,
    display_score,
    evaluate_all,
    qualitative_label,
)
from .render import build_user_goal_graph, color_hex, score_to_color

_SHAPE_NAMES = {
    ElementType.GOAL: "hardGoal",
    ElementType.SOFTGOAL: "softGoal",
    ElementType.BELIEF: "belief",
}


@dataclass(frozen=True)
class SessionState:
    model: Model
    strategy: Strategy
    result: EvaluationResult
    findings: list[ImplicitVulnerabilityFinding]
    revision: int


def _build_state(model: Model, strategy: Strategy, revision: int) -> SessionState:
    result = evaluate_all(model, strategy, model.personas)
    findings = find_implicit_vulnerabilities(model, strategy, result=result)
    return SessionState(model, strategy, result, findings, revision)


class StrategyAssignment(BaseModel):
    goal: str
    label: str


class StrategyPut(BaseModel):
    assignments: list[StrategyAssignment]
    merge: bool = False


def _findings_payload(state: SessionState) -> dict:
    return {
        "revision": state.revision,
        "findings": [
            {
                "dependency": {
                    "depender": f.dependency.depender,
                    "dependee": f.dependency.dependee,
                    "dependum": f.dependency.dependum,
                },
                "dependum": f.dependum,
                "cause": f.cause.value,
                "trail": list(f.trail),
            }
            for f in state.findings
        ],
    }


def _goal_model_payload(state: SessionState, personas: list[str]) -> dict:
    model, result = state.model, state.result
    dot = build_user_goal_graph(model, personas, result)
    persona_set = set(personas)
    nodes = []
    goal_names = {name for name, g in model.user_goals.items()
                  if g.persona in persona_set}
    edges = [l for l in model.contribution_links
             if l.destination in goal_names
             and (l.source in goal_names or l.source in model.tasks)]
    for name in sorted(goal_names):
        goal = model.user_goals[name]
        score = result.scores[name]
        nodes.append({
            "name": name,
            "shape": _SHAPE_NAMES[goal.element_type],
            "color": color_hex(score_to_color(score)),
            "score": display_score(score),
            "label": qualitative_label(score).label,
            "persona": goal.persona,
        })
    for name in sorted({l.source for l in edges if l.source in model.tasks}):
        satisfaction = model.tasks[name].satisfaction
        nodes.append({
            "name": name,
            "shape": "task",
            "color": color_hex(score_to_color(satisfaction)),
            "score": satisfaction,
            "label": qualitative_label(satisfaction).label,
            "persona": "",
        })
    return {
        "revision": state.revision,
        "personas": sorted(persona_set),
        "nodes": nodes,
        "edges": [
            {
                "source": l.source,
                "destination": l.destination,
                "meansEnd": l.endpoint.value,
                "strength": l.strength.label,
            }
            for l in sorted(edges, key=lambda l: (l.source, l.destination))
        ],
        "dot": dot,
    }


def create_app(model_path: str) -> FastAPI:
    app = FastAPI(title="personagoals what-if service")
    lock = threading.Lock()
    model = load_model(Path(model_path).read_text(encoding="utf-8"))
    app.state.session = _build_state(model, Strategy(), revision=0)

    def current() -> SessionState:
        return app.state.session

    @app.get("/model/summary")
    def model_summary():
        state = current()
        m = state.model
        return {
            "revision": state.revision,
            "personas": sorted(m.personas),
            "counts": {
                "personas": len(m.personas),
                "userGoals": len(m.user_goals),
                "contributionLinks": len(m.contribution_links),
                "systemGoals": len(m.system_goals),
                "obstacles": len(m.obstacles),
                "dependencies": len(m.dependencies),
                "tasks": len(m.tasks),
                "roles": len(m.roles),
            },
        }

    @app.get("/personas/{name}/goal-model")
    def goal_model(name: str, request: Request, response: Response):
        state = current()
        if name not in state.model.personas:
            raise HTTPException(status_code=404,
                                detail=f"unknown persona: {name}")
        etag = f'"{state.revision}"'
        response.headers["ETag"] = etag
        if request.headers.get("if-none-match") == etag:
            return Response(status_code=304, headers={"ETag": etag})
        return _goal_model_payload(state, [name])

    @app.put("/strategy")
    def put_strategy(body: StrategyPut):
        with lock:
            state = current()
            overrides = {}
            for assignment in body.assignments:
                if assignment.goal not in state.model.user_goals:
                    raise HTTPException(
                        status_code=404,
                        detail=f"unknown user goal: {assignment.goal}")
                try:
                    overrides[assignment.goal] = SatisfactionLevel.from_label(
                        assignment.label)
                except InvalidEnumError as exc:
                    raise HTTPException(status_code=400, detail=str(exc))
            strategy = (state.strategy.merged_with(Strategy(overrides))
                        if body.merge else Strategy(overrides))
            app.state.session = _build_state(
                state.model, strategy, state.revision + 1)
            return {"revision": app.state.session.revision}

    @app.delete("/strategy")
    def delete_strategy():
        with lock:
            state = current()
            app.state.session = _build_state(
                state.model, Strategy(), state.revision + 1)
            return {"revision": app.state.session.revision}

    @app.get("/findings")
    def findings():
        return _findings_payload(current())

    @app.post("/model/reload")
    def reload_model():
        with lock:
            state = current()
            try:
                reloaded = load_model(
                    Path(model_path).read_text(encoding="utf-8"))
            except (OSError, ParseError, ModelError) as exc:
                raise HTTPException(status_code=400, detail=str(exc))
            # Keep overrides that still resolve; drop the rest.
            overrides = {name: level
                         for name, level in state.strategy.overrides.items()
                         if name in reloaded.user_goals}
            app.state.session = _build_state(
                reloaded, Strategy(overrides), state.revision + 1)
            return {"revision": app.state.session.revision}

    return app
