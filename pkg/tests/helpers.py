"""Shared test machinery: fixture builders, random model generators,
an independent brute-force evaluator, and a dot-grammar validator."""

from __future__ import annotations

import random
import re

from personagoals.model import (
    ArgumentKind,
    ArgumentationElement,
    ContributionLink,
    ContributionStrength,
    Dependency,
    ElementType,
    Endpoint,
    Model,
    Obstacle,
    Persona,
    PersonaCharacteristic,
    Role,
    SatisfactionLevel,
    SystemGoal,
    Task,
    UserGoal,
    Vulnerability,
    build_model,
)
from personagoals.propagation import Strategy

STRENGTHS = list(ContributionStrength)
LEVELS = list(SatisfactionLevel)
ELEMENT_TYPES = list(ElementType)


def goal(name, persona="P", etype=ElementType.GOAL, source="CH",
         level=None):
    return UserGoal(name, persona, etype, source, level)


def link(source, destination, strength=ContributionStrength.HELP,
         endpoint=Endpoint.MEANS):
    return ContributionLink(source, destination, endpoint, strength)


def base_entities():
    """One persona with one characteristic, ready for user goals."""
    return [Persona("P"), PersonaCharacteristic("CH", "P")]


def tiny_model(*extra):
    return build_model(base_entities() + list(extra))


# ---------------------------------------------------------------------------
# Random model generation

def random_goal_graph(rng: random.Random, max_goals=10, max_links=20,
                      cyclic=False):
    """A random single-persona contribution graph.

    Acyclic graphs only ever link lower-numbered goals into
    higher-numbered ones. When cyclic, a directed cycle of goals with
    no initial satisfaction is always present, so evaluation must
    actually encounter it.
    """
    n = rng.randint(2, max_goals)
    names = [f"G{i:02d}" for i in range(n)]
    entities = base_entities()
    for name in names:
        level = rng.choice([None, None] + LEVELS)
        entities.append(goal(name, etype=rng.choice(ELEMENT_TYPES),
                             level=level))
    pairs = set()
    for _ in range(rng.randint(0, max_links)):
        i, j = rng.sample(range(n), 2)
        if i > j:
            i, j = j, i
        if (i, j) in pairs:
            continue
        pairs.add((i, j))
        entities.append(link(names[i], names[j],
                             strength=rng.choice(STRENGTHS),
                             endpoint=rng.choice(list(Endpoint))))
    if cyclic:
        size = rng.randint(2, min(4, n))
        cycle_names = [f"C{i}" for i in range(size)]
        for name in cycle_names:
            entities.append(goal(name))  # no initial satisfaction
        for i, name in enumerate(cycle_names):
            entities.append(link(name, cycle_names[(i + 1) % size],
                                 strength=rng.choice(STRENGTHS)))
    return build_model(entities)


def random_full_model(rng: random.Random):
    """A random model touching every entity kind, for round-trip tests."""
    entities = [Persona("P"), Persona("Q", "second persona")]
    characteristics = [PersonaCharacteristic(f"CH{i}", rng.choice(["P", "Q"]),
                                             f"characteristic {i}")
                       for i in range(rng.randint(1, 4))]
    elements = [ArgumentationElement(f"E{i}", rng.choice(list(ArgumentKind)),
                                     f"doc {i}", f"element {i}")
                for i in range(rng.randint(0, 4))]
    characteristics = [
        PersonaCharacteristic(
            c.name, c.persona, c.description,
            tuple(e.name for e in elements if rng.random() < 0.5))
        for c in characteristics
    ]
    entities += characteristics + elements
    sources = [c.name for c in characteristics] + [e.name for e in elements]
    goals = []
    for i in range(rng.randint(0, 8)):
        goals.append(UserGoal(
            f"U{i}", rng.choice(["P", "Q"]), rng.choice(ELEMENT_TYPES),
            rng.choice(sources), rng.choice([None] + LEVELS)))
    entities += goals
    pairs = set()
    for _ in range(rng.randint(0, 10)):
        if len(goals) < 2:
            break
        a, b = rng.sample(goals, 2)
        if (a.name, b.name) in pairs:
            continue
        pairs.add((a.name, b.name))
        entities.append(link(a.name, b.name, rng.choice(STRENGTHS),
                             rng.choice(list(Endpoint))))
    system_goals = [f"SG{i}" for i in range(rng.randint(0, 5))]
    for i, name in enumerate(system_goals):
        entities.append(SystemGoal(
            name, f"system goal {i}",
            refinements=tuple(system_goals[i + 1:i + 2]),
            linked_user_goals=tuple(g.name for g in goals
                                    if rng.random() < 0.2)))
    vulnerabilities = [Vulnerability(f"V{i}") for i in range(rng.randint(0, 2))]
    entities += vulnerabilities
    for i in range(rng.randint(0, 3)):
        if not system_goals:
            break
        entities.append(Obstacle(
            f"O{i}", obstructs=(rng.choice(system_goals),),
            resolved_by=tuple(rng.sample(system_goals, rng.randint(0, 1))),
            vulnerabilities=tuple(v.name for v in vulnerabilities
                                  if rng.random() < 0.5)))
    roles = [Role(f"R{i}") for i in range(rng.randint(2, 4))]
    entities += roles
    for i in range(rng.randint(0, 3)):
        entities.append(Task(f"T{i}", rng.choice(roles).name,
                             rng.randint(-100, 100)))
    for _ in range(rng.randint(0, 3)):
        if not system_goals:
            break
        depender, dependee = rng.sample(roles, 2)
        entities.append(Dependency(depender.name, dependee.name,
                                   rng.choice(system_goals)))
    return build_model(entities)


def random_strategy(rng: random.Random, model: Model) -> Strategy:
    overrides = {}
    for name in model.user_goals:
        if rng.random() < 0.2:
            overrides[name] = rng.choice(LEVELS)
    return Strategy(overrides)


# ---------------------------------------------------------------------------
# Independent brute-force evaluator (topological, no memoization)

def brute_force_scores(model: Model, strategy: Strategy,
                       personas) -> dict[str, float]:
    """Oracle for acyclic graphs: evaluate in topological order."""
    persona_set = set(personas)
    # Kahn's algorithm over goal-to-goal links.
    indegree = {name: 0 for name in model.user_goals}
    for l in model.contribution_links:
        if l.source in model.user_goals:
            indegree[l.destination] += 1
    ready = sorted(n for n, d in indegree.items() if d == 0)
    order = []
    while ready:
        name = ready.pop(0)
        order.append(name)
        for l in model.contribution_links:
            if l.source == name and l.destination in indegree:
                indegree[l.destination] -= 1
                if indegree[l.destination] == 0:
                    ready.append(l.destination)
        ready.sort()
    assert len(order) == len(model.user_goals), "graph has a cycle"

    scores: dict[str, float] = {}
    for name in order:
        stored = model.user_goals[name].initial_satisfaction
        level = strategy.overrides.get(name, stored)
        initial = float(level) if level is not None else 0.0
        if initial != 0:
            scores[name] = initial
            continue
        if any(_structurally_obstructed(model, sg)
               for sg in model.system_goals_linking(name)):
            scores[name] = -100.0
            continue
        total = 0.0
        for l in model.contribution_links:
            if l.destination != name:
                continue
            if l.source in model.tasks:
                total += int(l.strength) * model.tasks[l.source].satisfaction
            else:
                total += int(l.strength) * scores[l.source]
        scores[name] = max(-100.0, min(100.0, total / 100.0))
    return {n: s for n, s in scores.items()
            if model.user_goals[n].persona in persona_set}


def _structurally_obstructed(model: Model, goal_name: str) -> bool:
    g = model.system_goals[goal_name]
    if g.refinements:
        return any(_structurally_obstructed(model, c) for c in g.refinements)
    for ob_name in model.obstacles_obstructing(goal_name):
        seen, frontier = set(), [ob_name]
        while frontier:
            name = frontier.pop()
            if name in seen:
                continue
            seen.add(name)
            ob = model.obstacles[name]
            if not ob.resolved_by:
                return True
            frontier += list(ob.refinements)
    return False


# ---------------------------------------------------------------------------
# Hand-built fixtures

def mini_case_entities():
    """Dependency on a clean goal whose linked user goal a belief can deny."""
    return base_entities() + [
        goal("U"),
        goal("B", etype=ElementType.BELIEF),
        link("B", "U", ContributionStrength.SOME_NEGATIVE, Endpoint.MEANS),
        SystemGoal("G", "dependum goal", linked_user_goals=("U",)),
        SystemGoal("M", "mitigating goal"),
        Obstacle("O", obstructs=("G",), resolved_by=("M",)),
        Role("R1"), Role("R2"),
        Dependency("R1", "R2", "G"),
    ]


def structural_fixture_entities():
    """Dependum refined to a child obstructed by an unresolved obstacle."""
    return [
        SystemGoal("G0", refinements=("G1",)),
        SystemGoal("G1"),
        Obstacle("OB", obstructs=("G1",)),
        Role("R1"), Role("R2"),
        Dependency("R1", "R2", "G0"),
    ]


def scale_entities():
    """Case-study-scale synthetic model.

    82 system goals, 93 user goals, 205 contribution links,
    32 characteristics backed by 82 argumentation elements, 21 obstacles,
    11 roles, 5 tasks, 9 vulnerabilities, 6 goal dependencies.
    """
    rng = random.Random(1905)
    entities: list = [Persona("Rick", "water-treatment plant operator")]

    elements = [ArgumentationElement(f"E{i:02d}", ArgumentKind.GROUNDS,
                                     f"doc-{i:02d}")
                for i in range(1, 83)]
    characteristics = [
        PersonaCharacteristic(
            f"C{i:02d}", "Rick", f"characteristic {i}",
            tuple(e.name for j, e in enumerate(elements) if j % 32 == i - 1))
        for i in range(1, 33)
    ]
    entities += elements + characteristics

    goals = []
    for i in range(1, 94):
        source = (characteristics[i - 1].name if i <= 32
                  else elements[i - 33].name)
        level = SatisfactionLevel.SATISFIED if i % 7 == 0 else None
        goals.append(UserGoal(f"U{i:02d}", "Rick",
                              ELEMENT_TYPES[i % 3], source, level))
    entities += goals

    pairs = set()
    while len(pairs) < 205:
        i, j = rng.sample(range(93), 2)
        if i > j:
            i, j = j, i
        if (i, j) in pairs:
            continue
        pairs.add((i, j))
        entities.append(link(goals[i].name, goals[j].name,
                             STRENGTHS[len(pairs) % 6],
                             Endpoint.MEANS if len(pairs) % 2 else Endpoint.END))

    # Policy goal tree: one root, 11 policy areas, 70 leaves below them.
    satisfied_goals = [g.name for g in goals
                       if g.initial_satisfaction is SatisfactionLevel.SATISFIED]
    areas = [f"SG{i:02d}" for i in range(2, 13)]
    leaves = [f"SG{i:02d}" for i in range(13, 83)]
    entities.append(SystemGoal("SG01", "Secure operating environment",
                               refinements=tuple(areas)))
    for idx, area in enumerate(areas):
        children = tuple(leaves[i] for i in range(len(leaves))
                         if i % 11 == idx)
        entities.append(SystemGoal(area, f"policy area {area}",
                                   refinements=children))
    for idx, leaf in enumerate(leaves):
        linked = (satisfied_goals[idx % len(satisfied_goals)],) if idx % 5 == 0 else ()
        entities.append(SystemGoal(leaf, f"policy goal {leaf}",
                                   linked_user_goals=linked))

    vulnerabilities = [Vulnerability(f"V{i}") for i in range(1, 10)]
    entities += vulnerabilities
    for i in range(1, 22):
        entities.append(Obstacle(
            f"O{i:02d}", obstructs=(leaves[(i * 3) % len(leaves)],),
            resolved_by=(areas[i % 11],),
            vulnerabilities=(vulnerabilities[i % 9].name,)))

    roles = [Role(f"R{i:02d}") for i in range(1, 12)]
    entities += roles
    entities += [Task(f"T{i}", roles[i].name) for i in range(1, 6)]
    for i in range(6):
        entities.append(Dependency(roles[i].name, roles[i + 1].name,
                                   areas[i]))
    return entities


def scale_model() -> Model:
    return build_model(scale_entities())


# ---------------------------------------------------------------------------
# dot-grammar validation (the subset of the grammar the renderer emits)

_DOT_TOKEN = re.compile(
    r'\s+|(?P<str>"(?:[^"\\]|\\.)*")|(?P<id>[\w.#+-]+)|(?P<sym>[{}\[\]=;,>-])'
)


def _tokenize_dot(text: str) -> list[str]:
    tokens, pos = [], 0
    while pos < len(text):
        m = _DOT_TOKEN.match(text, pos)
        assert m, f"dot: unexpected character at offset {pos}: {text[pos]!r}"
        pos = m.end()
        if m.lastgroup:
            tokens.append(m.group())
    # Re-join '->' split across '-' and '>'.
    joined = []
    i = 0
    while i < len(tokens):
        if tokens[i] == "-" and i + 1 < len(tokens) and tokens[i + 1] == ">":
            joined.append("->")
            i += 2
        else:
            joined.append(tokens[i])
            i += 1
    return joined


def assert_valid_dot(text: str) -> None:
    """Validate against the dot grammar subset: digraph with subgraphs,
    node statements with attribute lists, and edge statements."""
    tokens = _tokenize_dot(text)

    def expect(value):
        assert tokens and tokens.pop(0) == value, f"dot: expected {value!r}"

    def is_name(tok):
        return tok.startswith('"') or re.fullmatch(r"[\w.#+-]+", tok)

    def parse_attr_list():
        expect("[")
        while tokens[0] != "]":
            key = tokens.pop(0)
            assert is_name(key), f"dot: bad attribute name {key!r}"
            expect("=")
            value = tokens.pop(0)
            assert is_name(value), f"dot: bad attribute value {value!r}"
            if tokens[0] == ",":
                tokens.pop(0)
        expect("]")

    def parse_body():
        expect("{")
        while tokens[0] != "}":
            tok = tokens.pop(0)
            if tok in ("graph", "node", "edge") and tokens[0] == "[":
                parse_attr_list()
            elif tok == "subgraph":
                name = tokens.pop(0)
                assert is_name(name)
                parse_body()
                continue
            else:
                assert is_name(tok), f"dot: bad statement start {tok!r}"
                if tokens[0] == "=":
                    tokens.pop(0)
                    value = tokens.pop(0)
                    assert is_name(value)
                elif tokens[0] == "->":
                    tokens.pop(0)
                    head = tokens.pop(0)
                    assert is_name(head), f"dot: bad edge head {head!r}"
                    if tokens[0] == "[":
                        parse_attr_list()
                elif tokens[0] == "[":
                    parse_attr_list()
            if tokens[0] == ";":
                tokens.pop(0)
        expect("}")

    expect("digraph")
    name = tokens.pop(0)
    assert is_name(name)
    parse_body()
    assert not tokens, f"dot: trailing tokens {tokens[:5]}"
