"""Forward propagation of user-goal contribution scores.

Scores flow along contribution links from contributing goals and tasks
to the goals they influence, normalized by 100 and clamped to
[-100, 100]. Completed evaluations are memoized per pass; a goal
re-entered while still being evaluated contributes 0 and the cycle is
reported as a warning rather than hidden.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterable, Mapping

from .errors import OutOfRangeError, UnknownEntityError
from .model import (
    ContributionLink,
    Model,
    SatisfactionLevel,
    Task,
)


@dataclass(frozen=True)
class Strategy:
    """What-if overrides of initial satisfaction, keyed by user goal name."""

    overrides: Mapping[str, SatisfactionLevel] = field(default_factory=dict)

    def validate(self, model: Model) -> None:
        for name in self.overrides:
            if name not in model.user_goals:
                raise UnknownEntityError("user goal", name)

    def merged_with(self, other: "Strategy") -> "Strategy":
        merged = dict(self.overrides)
        merged.update(other.overrides)
        return Strategy(merged)


@dataclass
class EvaluationResult:
    scores: dict[str, float]
    evaluation_order: list[str]
    cycle_warnings: list[tuple[str, ...]]


class _EvalState:
    """Per-pass evaluation state: memo, in-progress stack, warnings."""

    def __init__(self):
        self.memo: dict[str, float] = {}
        self.stack: list[str] = []
        self.on_stack: set[str] = set()
        self.order: list[str] = []
        self.ordered: set[str] = set()
        self.warnings: list[tuple[str, ...]] = []

    def note_done(self, goal_name: str) -> None:
        if goal_name not in self.ordered:
            self.ordered.add(goal_name)
            self.order.append(goal_name)


def contribution_link_score(link: ContributionLink) -> int:
    """Quantitative score of the link's qualitative strength."""
    return int(link.strength)


def task_contribution_score(task: Task, link: ContributionLink) -> float:
    """Pre-normalization contribution of a task link.

    The product of link strength and task satisfaction; the caller
    divides the accumulated sum by 100, so a Help link from a fully
    satisfied task ends up contributing +25.
    """
    return float(contribution_link_score(link) * task.satisfaction)


def effective_initial_satisfaction(
    model: Model, strategy: Strategy, goal_name: str
) -> float:
    """Strategy override if set, else the goal's stored level, else 0."""
    level = strategy.overrides.get(goal_name)
    if level is None:
        level = model.user_goals[goal_name].initial_satisfaction
    return float(level) if level is not None else 0.0


def _obstacle_unresolved(model: Model, name: str,
                         visited: set[str]) -> bool:
    if name in visited:
        return False
    visited.add(name)
    obstacle = model.obstacles[name]
    if not obstacle.resolved_by:
        return True
    return any(_obstacle_unresolved(model, ref, visited)
               for ref in obstacle.refinements)


def system_goal_structurally_obstructed(model: Model, goal_name: str) -> bool:
    """Whether a system goal's refinement tree hits an unresolved obstacle.

    Purely structural: user-goal scores play no part here. This is the
    obstruction test used while propagating scores, which keeps score
    propagation and score-dependent obstruction analysis from recursing
    into each other.
    """
    goal = model.system_goals[goal_name]
    if goal.refinements:
        return any(system_goal_structurally_obstructed(model, child)
                   for child in goal.refinements)
    return any(_obstacle_unresolved(model, ob, set())
               for ob in model.obstacles_obstructing(goal_name))


def _linked_system_goal_obstructed(model: Model, goal_name: str) -> bool:
    return any(system_goal_structurally_obstructed(model, sg)
               for sg in model.system_goals_linking(goal_name))


def calculate_goal_contribution(
    model: Model,
    strategy: Strategy,
    goal_name: str,
    state: _EvalState | None = None,
) -> float:
    """Contribution score of one user goal in [-100, 100].

    A nonzero initial satisfaction (override or stored) wins outright;
    a structurally obstructed linked system goal forces -100; otherwise
    the score is the normalized sum of task and goal contributions.
    """
    if goal_name not in model.user_goals:
        raise UnknownEntityError("user goal", goal_name)
    if state is None:
        state = _EvalState()

    score = effective_initial_satisfaction(model, strategy, goal_name)
    if score != 0:
        state.note_done(goal_name)
        return score
    if _linked_system_goal_obstructed(model, goal_name):
        state.note_done(goal_name)
        return -100.0
    if goal_name in state.memo:
        return state.memo[goal_name]
    if goal_name in state.on_stack:
        cycle = tuple(state.stack[state.stack.index(goal_name):])
        state.warnings.append(cycle)
        return 0.0

    state.stack.append(goal_name)
    state.on_stack.add(goal_name)
    total = 0.0
    for link in model.incoming_links(goal_name):
        if link.source in model.tasks:
            total += task_contribution_score(model.tasks[link.source], link)
        else:
            total += contribution_link_score(link) * calculate_goal_contribution(
                model, strategy, link.source, state
            )
    state.stack.pop()
    state.on_stack.discard(goal_name)

    score = max(-100.0, min(100.0, total / 100.0))
    state.memo[goal_name] = score
    state.note_done(goal_name)
    return score


def evaluate_all(
    model: Model,
    strategy: Strategy,
    personas: Iterable[str],
) -> EvaluationResult:
    """Evaluate every user goal of the given personas with one shared memo.

    Goals are visited in lexicographic name order for determinism; cyclic
    models can be order-sensitive, which is why cycle warnings are
    surfaced in the result.
    """
    strategy.validate(model)
    persona_set = set(personas)
    for persona in persona_set:
        if persona not in model.personas:
            raise UnknownEntityError("persona", persona)

    state = _EvalState()
    scores: dict[str, float] = {}
    for name in sorted(model.user_goals):
        if model.user_goals[name].persona in persona_set:
            scores[name] = calculate_goal_contribution(
                model, strategy, name, state
            )
    return EvaluationResult(
        scores=scores,
        evaluation_order=state.order,
        cycle_warnings=state.warnings,
    )


def qualitative_label(score: float) -> SatisfactionLevel:
    """Map a numeric score back to the nearest qualitative level."""
    if not -100 <= score <= 100:
        raise OutOfRangeError(f"score {score} outside [-100, 100]")
    if score >= 75:
        return SatisfactionLevel.SATISFIED
    if score >= 25:
        return SatisfactionLevel.WEAKLY_SATISFIED
    if score > -25:
        return SatisfactionLevel.NONE
    if score > -75:
        return SatisfactionLevel.WEAKLY_DENIED
    return SatisfactionLevel.DENIED


def display_score(score: float) -> int:
    """Round half away from zero for display and serialization."""
    return int(math.copysign(math.floor(abs(score) + 0.5), score))
