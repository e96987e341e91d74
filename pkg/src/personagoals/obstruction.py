"""System-goal obstruction checks and implicit-vulnerability analysis.

A dependency's dependum may fail to be delivered either because its
KAOS refinement tree reaches an unresolved obstacle, or because a user
goal linked anywhere along that tree is denied. Each finding carries a
witness trail from the dependum to the triggering obstacle or user goal.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

from .errors import UnknownEntityError
from .model import Dependency, Model
from .propagation import EvaluationResult, Strategy, evaluate_all


class VulnerabilityCause(str, Enum):
    OBSTRUCTED_DEPENDUM = "ObstructedDependum"
    DENIED_LINKED_USER_GOAL = "DeniedLinkedUserGoal"


@dataclass(frozen=True)
class ImplicitVulnerabilityFinding:
    dependency: Dependency
    dependum: str
    cause: VulnerabilityCause
    trail: tuple[str, ...]


def _denied(scores: dict[str, float], user_goal: str) -> bool:
    # Denied here means strictly negative, not the -100 label.
    return scores.get(user_goal, 0.0) < 0


def _obstacle_witness(
    model: Model, scores: dict[str, float], name: str,
    trail: tuple[str, ...],
) -> tuple[str, ...] | None:
    """Trail to the failure inside an obstacle refinement closure, if any.

    An obstacle fails if it (or a refinement) has no resolving goal, or
    a resolving goal has a denied linked user goal.
    """
    obstacle = model.obstacles[name]
    here = trail + (name,)
    if not obstacle.resolved_by:
        return here
    for resolver in obstacle.resolved_by:
        goal = model.system_goals[resolver]
        for ug in goal.linked_user_goals:
            if _denied(scores, ug):
                return here + (resolver, ug)
    for child in obstacle.refinements:
        witness = _obstacle_witness(model, scores, child, here)
        if witness is not None:
            return witness
    return None


def _goal_witness(
    model: Model, scores: dict[str, float], goal_name: str,
    trail: tuple[str, ...],
) -> tuple[VulnerabilityCause, tuple[str, ...]] | None:
    goal = model.system_goals[goal_name]
    here = trail + (goal_name,)
    # Shortcut: a denied linked user goal obstructs the goal outright,
    # at every level of the refinement tree.
    for ug in goal.linked_user_goals:
        if _denied(scores, ug):
            return (VulnerabilityCause.DENIED_LINKED_USER_GOAL, here + (ug,))
    if goal.refinements:
        for child in goal.refinements:
            witness = _goal_witness(model, scores, child, here)
            if witness is not None:
                return witness
        return None
    for obstacle in model.obstacles_obstructing(goal_name):
        witness = _obstacle_witness(model, scores, obstacle, here)
        if witness is not None:
            return (VulnerabilityCause.OBSTRUCTED_DEPENDUM, witness)
    return None


def is_goal_obstructed(
    model: Model, result: EvaluationResult, goal_name: str
) -> bool:
    """Whether a system goal is obstructed given current user-goal scores."""
    if goal_name not in model.system_goals:
        raise UnknownEntityError("system goal", goal_name)
    return _goal_witness(model, result.scores, goal_name, ()) is not None


def is_obstacle_obstructed(
    model: Model, result: EvaluationResult, obstacle_name: str
) -> bool:
    """Whether an obstacle (or a refinement of it) remains unmitigated."""
    if obstacle_name not in model.obstacles:
        raise UnknownEntityError("obstacle", obstacle_name)
    return _obstacle_witness(model, result.scores, obstacle_name, ()) is not None


def find_implicit_vulnerabilities(
    model: Model,
    strategy: Strategy | None = None,
    result: EvaluationResult | None = None,
) -> list[ImplicitVulnerabilityFinding]:
    """Flag every goal dependency whose dependum is obstructed.

    Evaluates all personas once (unless a result is supplied), then
    checks each dependency with a system-goal dependum. Task dependums
    are outside the analysis and are skipped.
    """
    strategy = strategy or Strategy()
    if result is None:
        result = evaluate_all(model, strategy, model.personas)
    findings: list[ImplicitVulnerabilityFinding] = []
    for dep in sorted(model.dependencies, key=lambda d: d.name):
        if dep.dependum not in model.system_goals:
            continue
        witness = _goal_witness(model, result.scores, dep.dependum, ())
        if witness is not None:
            cause, trail = witness
            findings.append(ImplicitVulnerabilityFinding(
                dependency=dep,
                dependum=dep.dependum,
                cause=cause,
                trail=trail,
            ))
    return findings


def skipped_task_dependums(model: Model) -> list[Dependency]:
    """Dependencies with task dependums, outside the goal-dependum analysis."""
    return [dep for dep in sorted(model.dependencies, key=lambda d: d.name)
            if dep.dependum in model.tasks]
