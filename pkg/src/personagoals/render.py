"""User-goal graph emission in dot format with GRL-style visuals.

Hard goals are rounded boxes, soft goals rounded polygons, beliefs
ellipses, and tasks hexagons; each persona's elements sit inside a
dashed actor-boundary cluster. Node fill color tracks the goal's
satisfaction score from dark red through yellow to dark green. Layout
is left to the external graph layout tool.
"""

from __future__ import annotations

from .errors import OutOfRangeError, UnknownEntityError
from .model import ElementType, Model
from .propagation import EvaluationResult

# Color anchors: dark red at -100, yellow at 0, dark green at +100.
_NEGATIVE_ANCHOR = (139, 0, 0)
_NEUTRAL_ANCHOR = (255, 255, 0)
_POSITIVE_ANCHOR = (0, 100, 0)

_SHAPE_ATTRS = {
    ElementType.GOAL: 'shape=box, style="rounded,filled"',
    ElementType.SOFTGOAL: 'shape=polygon, sides=6, style="rounded,filled"',
    ElementType.BELIEF: 'shape=ellipse, style=filled',
}
_TASK_SHAPE_ATTRS = 'shape=hexagon, style=filled'


def score_to_color(score: float) -> tuple[int, int, int]:
    """Piecewise-linear RGB for a satisfaction score in [-100, 100]."""
    if not -100 <= score <= 100:
        raise OutOfRangeError(f"score {score} outside [-100, 100]")
    if score < 0:
        low, high, t = _NEGATIVE_ANCHOR, _NEUTRAL_ANCHOR, (score + 100) / 100
    else:
        low, high, t = _NEUTRAL_ANCHOR, _POSITIVE_ANCHOR, score / 100
    return tuple(int(a + (b - a) * t + 0.5) for a, b in zip(low, high))


def color_hex(color: tuple[int, int, int]) -> str:
    return "#{:02x}{:02x}{:02x}".format(*color)


def _quote(name: str) -> str:
    return '"' + name.replace("\\", "\\\\").replace('"', '\\"') + '"'


def build_user_goal_graph(
    model: Model, personas, result: EvaluationResult
) -> str:
    """Emit the dot document for the given personas' user-goal model.

    One node per user goal and per contributing task, one labeled edge
    per contribution link among them; emission order is sorted so the
    same model always produces identical bytes.
    """
    persona_set = set(personas)
    for persona in persona_set:
        if persona not in model.personas:
            raise UnknownEntityError("persona", persona)

    goals = {name: g for name, g in model.user_goals.items()
             if g.persona in persona_set}
    links = [l for l in model.contribution_links if l.destination in goals
             and (l.source in goals or l.source in model.tasks)]
    task_names = sorted({l.source for l in links if l.source in model.tasks})

    lines = ["digraph usergoals {"]
    lines.append("  graph [rankdir=BT];")
    lines.append("  node [fontsize=10];")
    for index, persona in enumerate(sorted(persona_set)):
        lines.append(f"  subgraph cluster_{index} {{")
        lines.append(f"    label={_quote(persona)};")
        lines.append("    style=dashed;")
        for name in sorted(n for n, g in goals.items() if g.persona == persona):
            color = color_hex(score_to_color(result.scores[name]))
            shape = _SHAPE_ATTRS[goals[name].element_type]
            lines.append(
                f"    {_quote(name)} [{shape}, fillcolor=\"{color}\"];")
        lines.append("  }")
    for name in task_names:
        color = color_hex(score_to_color(model.tasks[name].satisfaction))
        lines.append(
            f"  {_quote(name)} [{_TASK_SHAPE_ATTRS}, fillcolor=\"{color}\"];")
    for link in sorted(links, key=lambda l: (l.source, l.destination)):
        lines.append(
            f"  {_quote(link.source)} -> {_quote(link.destination)} "
            f"[label={_quote(link.strength.label)}];")
    lines.append("}")
    return "\n".join(lines) + "\n"
