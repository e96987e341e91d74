"""Model document and analyst workbook serialization.

The model document is a single JSON file with one section per entity
kind; entries are sorted so the same model always serializes to the
same bytes. The workbook is a pair of CSV files analysts fill in to
add user goals and contribution links to an existing model.
"""

from __future__ import annotations

import csv
import io
import json
from enum import Enum
from typing import Any

from .errors import (
    InvalidEnumError,
    ParseError,
    UnknownEntityError,
    UnknownReferenceError,
)
from .model import (
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
    parse_enum,
)

SECTIONS = (
    "Personas", "Characteristics", "References", "UserGoals",
    "ContributionLinks", "SystemGoals", "Obstacles", "Roles", "Tasks",
    "Dependencies", "Vulnerabilities",
)

class ReferenceKind(str, Enum):
    PERSONA = "persona"
    DOCUMENT = "document"


USERGOAL_SHEET_HEADER = [
    "reference", "description", "persona", "referenceKind",
    "intention", "elementType", "initialSatisfaction",
]
CONTRIBUTION_SHEET_HEADER = ["source", "destination", "meansEnd", "contribution"]


def save_model(model: Model) -> str:
    """Serialize to canonical JSON: fixed section order, sorted entries."""
    doc = {
        "Personas": [
            {"name": p.name, "description": p.description}
            for p in model.personas.values()
        ],
        "Characteristics": [
            {"name": c.name, "persona": c.persona,
             "description": c.description, "elements": sorted(c.elements)}
            for c in model.characteristics.values()
        ],
        "References": [
            {"name": e.name, "kind": e.kind.value,
             "documentReference": e.document_reference,
             "description": e.description}
            for e in model.elements.values()
        ],
        "UserGoals": [
            {"name": g.name, "persona": g.persona,
             "elementType": g.element_type.value, "source": g.source,
             "initialSatisfaction": (g.initial_satisfaction.label
                                     if g.initial_satisfaction is not None
                                     else None)}
            for g in model.user_goals.values()
        ],
        "ContributionLinks": [
            {"source": l.source, "destination": l.destination,
             "endpoint": l.endpoint.value, "strength": l.strength.label}
            for l in model.contribution_links
        ],
        "SystemGoals": [
            {"name": g.name, "description": g.description,
             "refinements": sorted(g.refinements),
             "linkedUserGoals": sorted(g.linked_user_goals)}
            for g in model.system_goals.values()
        ],
        "Obstacles": [
            {"name": o.name, "obstructs": sorted(o.obstructs),
             "refinements": sorted(o.refinements),
             "resolvedBy": sorted(o.resolved_by),
             "vulnerabilities": sorted(o.vulnerabilities)}
            for o in model.obstacles.values()
        ],
        "Roles": [{"name": r.name} for r in model.roles.values()],
        "Tasks": [
            {"name": t.name, "performedBy": t.performed_by,
             "satisfaction": t.satisfaction}
            for t in model.tasks.values()
        ],
        "Dependencies": [
            {"depender": d.depender, "dependee": d.dependee,
             "dependum": d.dependum}
            for d in model.dependencies
        ],
        "Vulnerabilities": [
            {"name": v.name, "description": v.description}
            for v in model.vulnerabilities.values()
        ],
    }
    return json.dumps(doc, indent=2, ensure_ascii=False) + "\n"


def _require_fields(section: str, record: Any, *names: str) -> list:
    if not isinstance(record, dict):
        raise ParseError(f"{section}: entries must be objects")
    missing = [n for n in names if n not in record]
    if missing:
        raise ParseError(
            f"{section}: entry {record.get('name', record)!r} is missing "
            f"field(s) {', '.join(missing)}"
        )
    return [record[n] for n in names]


def load_model(text: str) -> Model:
    """Parse a model document and build the Model it describes."""
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(exc.msg, line=exc.lineno, column=exc.colno) from exc
    if not isinstance(doc, dict):
        raise ParseError("model document must be a JSON object", line=1)
    unknown = set(doc) - set(SECTIONS)
    if unknown:
        raise ParseError(f"unknown section(s): {', '.join(sorted(unknown))}")
    for section in doc:
        if not isinstance(doc[section], list):
            raise ParseError(f"section {section} must be a list")

    entities: list = []
    try:
        for rec in doc.get("Personas", ()):
            name, = _require_fields("Personas", rec, "name")
            entities.append(Persona(name, rec.get("description", "")))
        for rec in doc.get("Characteristics", ()):
            name, persona = _require_fields("Characteristics", rec,
                                            "name", "persona")
            entities.append(PersonaCharacteristic(
                name, persona, rec.get("description", ""),
                tuple(rec.get("elements", ())),
            ))
        for rec in doc.get("References", ()):
            name, kind = _require_fields("References", rec, "name", "kind")
            entities.append(ArgumentationElement(
                name, parse_enum(ArgumentKind, "kind", kind),
                rec.get("documentReference", ""), rec.get("description", ""),
            ))
        for rec in doc.get("UserGoals", ()):
            name, persona, etype, source = _require_fields(
                "UserGoals", rec, "name", "persona", "elementType", "source")
            level = rec.get("initialSatisfaction")
            entities.append(UserGoal(
                name, persona, parse_enum(ElementType, "elementType", etype),
                source,
                SatisfactionLevel.from_label(level) if level is not None else None,
            ))
        for rec in doc.get("ContributionLinks", ()):
            source, dest, endpoint, strength = _require_fields(
                "ContributionLinks", rec,
                "source", "destination", "endpoint", "strength")
            entities.append(ContributionLink(
                source, dest, parse_enum(Endpoint, "endpoint", endpoint),
                ContributionStrength.from_label(strength),
            ))
        for rec in doc.get("SystemGoals", ()):
            name, = _require_fields("SystemGoals", rec, "name")
            entities.append(SystemGoal(
                name, rec.get("description", ""),
                tuple(rec.get("refinements", ())),
                tuple(rec.get("linkedUserGoals", ())),
            ))
        for rec in doc.get("Obstacles", ()):
            name, = _require_fields("Obstacles", rec, "name")
            entities.append(Obstacle(
                name, tuple(rec.get("obstructs", ())),
                tuple(rec.get("refinements", ())),
                tuple(rec.get("resolvedBy", ())),
                tuple(rec.get("vulnerabilities", ())),
            ))
        for rec in doc.get("Roles", ()):
            name, = _require_fields("Roles", rec, "name")
            entities.append(Role(name))
        for rec in doc.get("Tasks", ()):
            name, role = _require_fields("Tasks", rec, "name", "performedBy")
            entities.append(Task(name, role, int(rec.get("satisfaction", 100))))
        for rec in doc.get("Dependencies", ()):
            depender, dependee, dependum = _require_fields(
                "Dependencies", rec, "depender", "dependee", "dependum")
            entities.append(Dependency(depender, dependee, dependum))
        for rec in doc.get("Vulnerabilities", ()):
            name, = _require_fields("Vulnerabilities", rec, "name")
            entities.append(Vulnerability(name, rec.get("description", "")))
    except InvalidEnumError as exc:
        raise ParseError(str(exc)) from exc

    return build_model(entities)


def _persona_references(model: Model, persona: str):
    """(reference name, kind, description) rows backing a persona."""
    rows = []
    characteristics = [c for c in model.characteristics.values()
                       if c.persona == persona]
    for c in sorted(characteristics, key=lambda c: c.name):
        rows.append((c.name, "persona", c.description))
    element_names = sorted({el for c in characteristics for el in c.elements})
    for name in element_names:
        rows.append((name, "document", model.elements[name].description))
    return rows


def export_workbook(model: Model, persona: str) -> tuple[str, str]:
    """Produce the user-goal and contribution CSV sheets for a persona.

    The user-goal sheet has one row per persona characteristic and per
    document reference; editable columns are pre-filled from existing
    user goals and blank otherwise. The contribution sheet enumerates
    every ordered pair of the persona's user goals, pre-filled where a
    link exists.
    """
    if persona not in model.personas:
        raise UnknownEntityError("persona", persona)

    goals_by_source: dict[str, UserGoal] = {}
    for goal in model.user_goals.values():
        if goal.persona == persona and goal.source not in goals_by_source:
            goals_by_source[goal.source] = goal

    usergoal_buf = io.StringIO()
    writer = csv.writer(usergoal_buf, lineterminator="\n")
    writer.writerow(USERGOAL_SHEET_HEADER)
    for reference, kind, description in _persona_references(model, persona):
        goal = goals_by_source.get(reference)
        writer.writerow([
            reference, description, persona, kind,
            goal.name if goal else "",
            goal.element_type.value if goal else "",
            (goal.initial_satisfaction.label
             if goal and goal.initial_satisfaction is not None else ""),
        ])

    links = {(l.source, l.destination): l for l in model.contribution_links}
    persona_goals = sorted(g.name for g in model.user_goals.values()
                           if g.persona == persona)
    contribution_buf = io.StringIO()
    writer = csv.writer(contribution_buf, lineterminator="\n")
    writer.writerow(CONTRIBUTION_SHEET_HEADER)
    for source in persona_goals:
        for destination in persona_goals:
            if source == destination:
                continue
            link = links.get((source, destination))
            writer.writerow([
                source, destination,
                link.endpoint.value if link else "",
                link.strength.label if link else "",
            ])
    return usergoal_buf.getvalue(), contribution_buf.getvalue()


def _read_sheet(text: str, header: list[str], sheet: str):
    reader = csv.reader(io.StringIO(text))
    try:
        first = next(reader)
    except StopIteration:
        raise ParseError(f"{sheet} sheet is empty", line=1) from None
    if first != header:
        raise ParseError(
            f"{sheet} sheet header must be {','.join(header)}", line=1)
    rows = []
    for lineno, row in enumerate(reader, start=2):
        if not row or all(not cell.strip() for cell in row):
            continue
        if len(row) != len(header):
            raise ParseError(
                f"{sheet} sheet row has {len(row)} fields, "
                f"expected {len(header)}", line=lineno)
        rows.append((lineno, [cell.strip() for cell in row]))
    return rows


def import_workbook(
    model: Model, usergoal_sheet: str, contribution_sheet: str
) -> Model:
    """Materialize completed workbook rows into a new model.

    Rows with every editable column blank are skipped; half-filled rows
    are an error. Re-importing an exported workbook yields an equal
    model.
    """
    new_goals: dict[str, UserGoal] = {}
    for lineno, row in _read_sheet(usergoal_sheet, USERGOAL_SHEET_HEADER,
                                   "user goal"):
        reference, _desc, persona, kind, intention, etype, level = row
        parse_enum(ReferenceKind, "referenceKind", kind)
        if persona not in model.personas:
            raise UnknownReferenceError(lineno, f"unknown persona {persona!r}")
        if kind == "persona" and reference not in model.characteristics:
            raise UnknownReferenceError(
                lineno, f"unknown persona characteristic {reference!r}")
        if kind == "document" and reference not in model.elements:
            raise UnknownReferenceError(
                lineno, f"unknown document reference {reference!r}")
        if not intention and not etype:
            if level:
                raise ParseError(
                    "initialSatisfaction set on an otherwise blank row",
                    line=lineno)
            continue
        if not intention or not etype:
            raise ParseError(
                "row must set both intention and elementType (or neither)",
                line=lineno)
        goal = UserGoal(
            intention, persona, parse_enum(ElementType, "elementType", etype),
            reference,
            SatisfactionLevel.from_label(level) if level else None,
        )
        new_goals[goal.name] = goal

    known_goals = set(model.user_goals) | set(new_goals)
    new_links: dict[tuple[str, str], ContributionLink] = {}
    for lineno, row in _read_sheet(contribution_sheet,
                                   CONTRIBUTION_SHEET_HEADER, "contribution"):
        source, destination, means_end, strength = row
        if not means_end and not strength:
            continue
        if not means_end or not strength:
            raise ParseError(
                "row must set both meansEnd and contribution (or neither)",
                line=lineno)
        if source not in known_goals:
            raise UnknownReferenceError(lineno, f"unknown user goal {source!r}")
        if destination not in known_goals:
            raise UnknownReferenceError(
                lineno, f"unknown user goal {destination!r}")
        new_links[(source, destination)] = ContributionLink(
            source, destination, parse_enum(Endpoint, "meansEnd", means_end),
            ContributionStrength.from_label(strength),
        )

    entities: list = []
    for entity in model.entities():
        if isinstance(entity, UserGoal) and entity.name in new_goals:
            continue
        if (isinstance(entity, ContributionLink)
                and (entity.source, entity.destination) in new_links):
            continue
        entities.append(entity)
    entities.extend(new_goals.values())
    entities.extend(new_links.values())
    return build_model(entities)
