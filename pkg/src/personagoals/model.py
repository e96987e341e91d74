"""Domain entities and the indexed, immutable model graph.

Entities are identified by name. A Model is built once from a bag of
entities, resolves every cross-reference, and is then shared read-only.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum, IntEnum
from typing import Iterable, Iterator, Mapping

from .errors import (
    DanglingReferenceError,
    DuplicateNameError,
    InvalidEnumError,
    OutOfRangeError,
    RefinementCycleError,
)


class SatisfactionLevel(IntEnum):
    SATISFIED = 100
    WEAKLY_SATISFIED = 50
    NONE = 0
    WEAKLY_DENIED = -50
    DENIED = -100

    @property
    def label(self) -> str:
        return _SATISFACTION_LABELS[self]

    @classmethod
    def from_label(cls, label: str) -> "SatisfactionLevel":
        try:
            return _SATISFACTION_BY_LABEL[label]
        except KeyError:
            raise InvalidEnumError(
                "satisfaction level", label, list(_SATISFACTION_BY_LABEL)
            ) from None


_SATISFACTION_LABELS = {
    SatisfactionLevel.SATISFIED: "Satisfied",
    SatisfactionLevel.WEAKLY_SATISFIED: "WeaklySatisfied",
    SatisfactionLevel.NONE: "None",
    SatisfactionLevel.WEAKLY_DENIED: "WeaklyDenied",
    SatisfactionLevel.DENIED: "Denied",
}
_SATISFACTION_BY_LABEL = {v: k for k, v in _SATISFACTION_LABELS.items()}


class ContributionStrength(IntEnum):
    MAKE = 100
    SOME_POSITIVE = 50
    HELP = 25
    HURTS = -25
    SOME_NEGATIVE = -50
    BREAK = -100

    @property
    def label(self) -> str:
        return _STRENGTH_LABELS[self]

    @classmethod
    def from_label(cls, label: str) -> "ContributionStrength":
        try:
            return _STRENGTH_BY_LABEL[label]
        except KeyError:
            raise InvalidEnumError(
                "contribution strength", label, list(_STRENGTH_BY_LABEL)
            ) from None


_STRENGTH_LABELS = {
    ContributionStrength.MAKE: "Make",
    ContributionStrength.SOME_POSITIVE: "SomePositive",
    ContributionStrength.HELP: "Help",
    ContributionStrength.HURTS: "Hurts",
    ContributionStrength.SOME_NEGATIVE: "SomeNegative",
    ContributionStrength.BREAK: "Break",
}
_STRENGTH_BY_LABEL = {v: k for k, v in _STRENGTH_LABELS.items()}


class ElementType(str, Enum):
    GOAL = "goal"
    SOFTGOAL = "softgoal"
    BELIEF = "belief"


class ArgumentKind(str, Enum):
    GROUNDS = "grounds"
    WARRANT = "warrant"
    REBUTTAL = "rebuttal"


class Endpoint(str, Enum):
    MEANS = "means"
    END = "end"


def parse_enum(enum_cls, field_name: str, value: str):
    """Parse a serialized enum value, raising InvalidEnumError on mismatch."""
    try:
        return enum_cls(value)
    except ValueError:
        raise InvalidEnumError(
            field_name, value, [m.value for m in enum_cls]
        ) from None


@dataclass(frozen=True)
class Persona:
    name: str
    description: str = ""


@dataclass(frozen=True)
class PersonaCharacteristic:
    name: str
    persona: str
    description: str = ""
    elements: tuple[str, ...] = ()


@dataclass(frozen=True)
class ArgumentationElement:
    name: str
    kind: ArgumentKind
    document_reference: str = ""
    description: str = ""


@dataclass(frozen=True)
class UserGoal:
    name: str
    persona: str
    element_type: ElementType
    source: str
    initial_satisfaction: SatisfactionLevel | None = None


@dataclass(frozen=True)
class ContributionLink:
    source: str
    destination: str
    endpoint: Endpoint
    strength: ContributionStrength


@dataclass(frozen=True)
class SystemGoal:
    name: str
    description: str = ""
    refinements: tuple[str, ...] = ()
    linked_user_goals: tuple[str, ...] = ()


@dataclass(frozen=True)
class Obstacle:
    name: str
    obstructs: tuple[str, ...] = ()
    refinements: tuple[str, ...] = ()
    resolved_by: tuple[str, ...] = ()
    vulnerabilities: tuple[str, ...] = ()


@dataclass(frozen=True)
class Vulnerability:
    name: str
    description: str = ""


@dataclass(frozen=True)
class Role:
    name: str


@dataclass(frozen=True)
class Task:
    name: str
    performed_by: str
    satisfaction: int = 100

    def __post_init__(self):
        if not -100 <= self.satisfaction <= 100:
            raise OutOfRangeError(
                f"task {self.name!r} satisfaction {self.satisfaction} "
                "outside [-100, 100]"
            )


@dataclass(frozen=True)
class Dependency:
    depender: str
    dependee: str
    dependum: str

    @property
    def name(self) -> str:
        return f"{self.depender}->{self.dependee}:{self.dependum}"


@dataclass(frozen=True)
class Finding:
    """A non-fatal integrity problem reported by validation."""

    rule: str
    entity: str
    message: str


Entity = (
    Persona
    | PersonaCharacteristic
    | ArgumentationElement
    | UserGoal
    | ContributionLink
    | SystemGoal
    | Obstacle
    | Vulnerability
    | Role
    | Task
    | Dependency
)


@dataclass(frozen=True)
class Model:
    """Indexed, immutable aggregate of all entities.

    Built via build_model; lookups are plain dict access on the name maps.
    """

    personas: Mapping[str, Persona] = field(default_factory=dict)
    characteristics: Mapping[str, PersonaCharacteristic] = field(default_factory=dict)
    elements: Mapping[str, ArgumentationElement] = field(default_factory=dict)
    user_goals: Mapping[str, UserGoal] = field(default_factory=dict)
    contribution_links: tuple[ContributionLink, ...] = ()
    system_goals: Mapping[str, SystemGoal] = field(default_factory=dict)
    obstacles: Mapping[str, Obstacle] = field(default_factory=dict)
    vulnerabilities: Mapping[str, Vulnerability] = field(default_factory=dict)
    roles: Mapping[str, Role] = field(default_factory=dict)
    tasks: Mapping[str, Task] = field(default_factory=dict)
    dependencies: tuple[Dependency, ...] = ()
    # Derived indexes, filled in by build_model.
    _incoming: Mapping[str, tuple[ContributionLink, ...]] = field(default_factory=dict)
    _linked_system_goals: Mapping[str, tuple[str, ...]] = field(default_factory=dict)
    _obstructed_by: Mapping[str, tuple[str, ...]] = field(default_factory=dict)

    def incoming_links(self, goal_name: str) -> tuple[ContributionLink, ...]:
        """Contribution links whose destination is the given user goal."""
        return self._incoming.get(goal_name, ())

    def system_goals_linking(self, user_goal: str) -> tuple[str, ...]:
        """System goals that list the user goal in linkedUserGoals."""
        return self._linked_system_goals.get(user_goal, ())

    def obstacles_obstructing(self, system_goal: str) -> tuple[str, ...]:
        """Obstacles whose obstructs list names the system goal."""
        return self._obstructed_by.get(system_goal, ())

    def entities(self) -> Iterator[Entity]:
        """All entities, suitable for rebuilding a modified model."""
        for group in (
            self.personas, self.characteristics, self.elements,
            self.user_goals, self.system_goals, self.obstacles,
            self.vulnerabilities, self.roles, self.tasks,
        ):
            yield from group.values()
        yield from self.contribution_links
        yield from self.dependencies


_KIND_LABELS = {
    Persona: "persona",
    PersonaCharacteristic: "characteristic",
    ArgumentationElement: "argumentation element",
    UserGoal: "user goal",
    SystemGoal: "system goal",
    Obstacle: "obstacle",
    Vulnerability: "vulnerability",
    Role: "role",
    Task: "task",
}


def _index_named(entities: Iterable, cls) -> dict:
    out: dict = {}
    for entity in entities:
        if entity.name in out and out[entity.name] != entity:
            raise DuplicateNameError(_KIND_LABELS[cls], entity.name)
        out[entity.name] = entity
    return dict(sorted(out.items()))


def _check_acyclic(kind: str, nodes: Mapping[str, object],
                   children) -> None:
    """Depth-first search for a cycle in a refinement relation."""
    state: dict[str, int] = {}  # 1 = on stack, 2 = done
    stack_path: list[str] = []

    def visit(name: str) -> None:
        mark = state.get(name)
        if mark == 2:
            return
        if mark == 1:
            cycle = stack_path[stack_path.index(name):] + [name]
            raise RefinementCycleError(kind, cycle)
        state[name] = 1
        stack_path.append(name)
        for child in children(nodes[name]):
            visit(child)
        stack_path.pop()
        state[name] = 2

    for name in nodes:
        visit(name)


def build_model(entities: Iterable[Entity]) -> Model:
    """Index a bag of entities into a Model, resolving every reference.

    Accepts entities in any order; the result is canonical (sorted by
    kind and name) so equal entity sets yield equal models.
    """
    buckets: dict[type, list] = {cls: [] for cls in _KIND_LABELS}
    links: list[ContributionLink] = []
    dependencies: list[Dependency] = []
    for entity in entities:
        if isinstance(entity, ContributionLink):
            links.append(entity)
        elif isinstance(entity, Dependency):
            dependencies.append(entity)
        else:
            buckets[type(entity)].append(entity)

    personas = _index_named(buckets[Persona], Persona)
    characteristics = _index_named(buckets[PersonaCharacteristic], PersonaCharacteristic)
    elements = _index_named(buckets[ArgumentationElement], ArgumentationElement)
    user_goals = _index_named(buckets[UserGoal], UserGoal)
    system_goals = _index_named(buckets[SystemGoal], SystemGoal)
    obstacles = _index_named(buckets[Obstacle], Obstacle)
    vulnerabilities = _index_named(buckets[Vulnerability], Vulnerability)
    roles = _index_named(buckets[Role], Role)
    tasks = _index_named(buckets[Task], Task)

    links = sorted(
        links,
        key=lambda l: (l.source, l.destination, l.endpoint.value, int(l.strength)),
    )
    dependencies = sorted(set(dependencies), key=lambda d: d.name)

    def require(owner: str, ref: str, expected: str, *maps) -> None:
        if not any(ref in m for m in maps):
            raise DanglingReferenceError(owner, ref, expected)

    for c in characteristics.values():
        require(f"characteristic {c.name!r}", c.persona, "persona", personas)
        for el in c.elements:
            require(f"characteristic {c.name!r}", el, "argumentation element",
                    elements)
    for ug in user_goals.values():
        require(f"user goal {ug.name!r}", ug.persona, "persona", personas)
        require(f"user goal {ug.name!r}", ug.source,
                "characteristic or argumentation element",
                characteristics, elements)
    for link in links:
        owner = f"contribution link {link.source!r}->{link.destination!r}"
        require(owner, link.source, "user goal or task", user_goals, tasks)
        require(owner, link.destination, "user goal", user_goals)
    for sg in system_goals.values():
        for ref in sg.refinements:
            require(f"system goal {sg.name!r}", ref, "system goal", system_goals)
        for ug in sg.linked_user_goals:
            require(f"system goal {sg.name!r}", ug, "user goal", user_goals)
    for ob in obstacles.values():
        owner = f"obstacle {ob.name!r}"
        for ref in ob.obstructs:
            require(owner, ref, "system goal", system_goals)
        for ref in ob.refinements:
            require(owner, ref, "obstacle", obstacles)
        for ref in ob.resolved_by:
            require(owner, ref, "system goal", system_goals)
        for ref in ob.vulnerabilities:
            require(owner, ref, "vulnerability", vulnerabilities)
    for task in tasks.values():
        require(f"task {task.name!r}", task.performed_by, "role", roles)
    for dep in dependencies:
        owner = f"dependency {dep.name!r}"
        require(owner, dep.depender, "role", roles)
        require(owner, dep.dependee, "role", roles)
        require(owner, dep.dependum, "system goal or task", system_goals, tasks)
        if dep.depender == dep.dependee:
            raise DanglingReferenceError(owner, dep.dependee,
                                         "distinct dependee role")

    _check_acyclic("system goal", system_goals, lambda g: g.refinements)
    _check_acyclic("obstacle", obstacles, lambda o: o.refinements)

    incoming: dict[str, list[ContributionLink]] = {}
    for link in links:
        incoming.setdefault(link.destination, []).append(link)
    linked_system_goals: dict[str, list[str]] = {}
    for sg in system_goals.values():
        for ug in sg.linked_user_goals:
            linked_system_goals.setdefault(ug, []).append(sg.name)
    obstructed_by: dict[str, list[str]] = {}
    for ob in obstacles.values():
        for goal in ob.obstructs:
            obstructed_by.setdefault(goal, []).append(ob.name)

    return Model(
        personas=personas,
        characteristics=characteristics,
        elements=elements,
        user_goals=user_goals,
        contribution_links=tuple(links),
        system_goals=system_goals,
        obstacles=obstacles,
        vulnerabilities=vulnerabilities,
        roles=roles,
        tasks=tasks,
        dependencies=tuple(dependencies),
        _incoming={k: tuple(v) for k, v in incoming.items()},
        _linked_system_goals={k: tuple(sorted(v))
                              for k, v in linked_system_goals.items()},
        _obstructed_by={k: tuple(sorted(v)) for k, v in obstructed_by.items()},
    )


def validate_referential_integrity(model: Model) -> list[Finding]:
    """Report structural problems that build_model tolerates.

    Returns findings rather than raising; an empty list means the link
    structure is sound.
    """
    findings: list[Finding] = []
    seen_pairs: set[tuple[str, str]] = set()
    for link in model.contribution_links:
        pair = (link.source, link.destination)
        name = f"{link.source}->{link.destination}"
        if link.source == link.destination:
            findings.append(Finding(
                rule="SelfContribution",
                entity=name,
                message="contribution link source equals destination",
            ))
        if pair in seen_pairs:
            findings.append(Finding(
                rule="DuplicateContribution",
                entity=name,
                message="multiple contribution links share this "
                        "(source, destination) pair",
            ))
        seen_pairs.add(pair)
    return findings
