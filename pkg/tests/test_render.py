import pytest

from personagoals import (
    OutOfRangeError,
    Role,
    SatisfactionLevel,
    Task,
    build_user_goal_graph,
    color_hex,
    evaluate_all,
    score_to_color,
)
from personagoals.model import ElementType
from personagoals.propagation import Strategy

from helpers import assert_valid_dot, goal, link, scale_model, tiny_model


def test_color_anchors():
    assert score_to_color(-100) == (139, 0, 0)
    assert score_to_color(0) == (255, 255, 0)
    assert score_to_color(100) == (0, 100, 0)


def test_color_midpoints():
    assert score_to_color(-50) == (197, 128, 0)
    assert score_to_color(50) == (128, 178, 0)


def test_color_monotone_per_segment():
    reds = [score_to_color(s)[0] for s in range(-100, 1)]
    assert reds == sorted(reds)
    greens = [score_to_color(s)[1] for s in range(0, 101)]
    assert greens == sorted(greens, reverse=True)


def test_color_out_of_range():
    with pytest.raises(OutOfRangeError):
        score_to_color(100.5)


def test_color_hex():
    assert color_hex((197, 128, 0)) == "#c58000"


def render(model, personas=("P",), strategy=None):
    result = evaluate_all(model, strategy or Strategy(), personas)
    return build_user_goal_graph(model, personas, result)


def test_counts_preserved():
    model = tiny_model(
        goal("A", level=SatisfactionLevel.SATISFIED),
        goal("B", etype=ElementType.BELIEF),
        link("A", "B"),
    )
    dot = render(model)
    assert_valid_dot(dot)
    assert dot.count("fillcolor") == 2
    assert dot.count("->") == 1
    assert 'shape=ellipse' in dot  # belief
    assert 'label="Help"' in dot


def test_task_nodes_only_when_contributing():
    model = tiny_model(
        goal("A"),
        Role("R"), Task("T1", "R"), Task("T2", "R"),
        link("T1", "A"),
    )
    dot = render(model)
    assert_valid_dot(dot)
    assert '"T1"' in dot and "hexagon" in dot
    assert '"T2"' not in dot


def test_persona_cluster_is_dashed():
    dot = render(tiny_model(goal("A")))
    assert "subgraph cluster_0" in dot
    assert "style=dashed;" in dot
    assert 'label="P";' in dot


def test_output_is_stable():
    model = tiny_model(goal("A"), goal("B"), link("A", "B"))
    assert render(model) == render(model)


def test_scale_fixture_counts_and_grammar():
    model = scale_model()
    dot = render(model, personas=("Rick",))
    assert_valid_dot(dot)
    assert dot.count("fillcolor") == 93  # no contributing tasks in fixture
    assert dot.count("->") == 205


def test_names_with_quotes_still_parse():
    model = tiny_model(goal('Say "hi"'))
    dot = render(model)
    assert_valid_dot(dot)
    assert '\\"hi\\"' in dot
