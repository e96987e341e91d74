"""Command-line entry points.

Exit codes: 0 success / no findings, 1 findings present, 2 usage or
I/O error, 3 invalid model. Every command is a thin wrapper over the
library modules.
"""

from __future__ import annotations

import csv
import json
import socket
import sys
from pathlib import Path

import click

from .errors import (
    DanglingReferenceError,
    DuplicateNameError,
    InvalidEnumError,
    ModelError,
    OutOfRangeError,
    ParseError,
    RefinementCycleError,
    UnknownEntityError,
    UnknownReferenceError,
)
from .interchange import export_workbook, import_workbook, load_model, save_model
from .model import Model, SatisfactionLevel, validate_referential_integrity
from .obstruction import find_implicit_vulnerabilities, skipped_task_dependums
from .propagation import Strategy, display_score, evaluate_all, qualitative_label
from .render import build_user_goal_graph

EXIT_OK = 0
EXIT_FINDINGS = 1
EXIT_USAGE = 2
EXIT_INVALID_MODEL = 3

_MODEL_ERRORS = (
    DuplicateNameError, DanglingReferenceError, RefinementCycleError,
    OutOfRangeError,
)


def _fail(code: int, message: str):
    click.echo(f"error: {message}", err=True)
    sys.exit(code)


def _load(path: str) -> Model:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        _fail(EXIT_USAGE, str(exc))
    try:
        return load_model(text)
    except ParseError as exc:
        _fail(EXIT_USAGE, f"{path}: {exc}")
    except _MODEL_ERRORS as exc:
        _fail(EXIT_INVALID_MODEL, f"{path}: {exc}")


def _load_strategy(path: str | None) -> Strategy:
    if path is None:
        return Strategy()
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        _fail(EXIT_USAGE, str(exc))
    overrides = {}
    for lineno, row in enumerate(csv.reader(text.splitlines()), start=1):
        if not row or all(not cell.strip() for cell in row):
            continue
        if len(row) != 2:
            _fail(EXIT_USAGE,
                  f"{path}:{lineno}: expected goalName,satisfactionLabel")
        name, label = (cell.strip() for cell in row)
        try:
            overrides[name] = SatisfactionLevel.from_label(label)
        except InvalidEnumError as exc:
            _fail(EXIT_USAGE, f"{path}:{lineno}: {exc}")
    return Strategy(overrides)


@click.group()
def main():
    """Persona goal-model evaluation and implicit-vulnerability analysis."""


@main.command()
@click.option("--model", "model_path", required=True, help="Model document.")
@click.option("--strategy", "strategy_path", default=None,
              help="CSV of goalName,satisfactionLabel overrides.")
@click.option("--format", "fmt", type=click.Choice(["human", "machine"]),
              default="human", show_default=True)
def validate(model_path, strategy_path, fmt):
    """Check referential integrity and flag implicit vulnerabilities."""
    model = _load(model_path)
    strategy = _load_strategy(strategy_path)
    try:
        strategy.validate(model)
        integrity = validate_referential_integrity(model)
        vulnerabilities = find_implicit_vulnerabilities(model, strategy)
    except UnknownEntityError as exc:
        _fail(EXIT_USAGE, str(exc))
    skipped = skipped_task_dependums(model)

    if fmt == "machine":
        click.echo(json.dumps({
            "referentialFindings": [
                {"rule": f.rule, "entity": f.entity, "message": f.message}
                for f in integrity
            ],
            "implicitVulnerabilities": [
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
                for f in vulnerabilities
            ],
            "skippedTaskDependums": [d.name for d in skipped],
        }, indent=2))
    else:
        for f in integrity:
            click.echo(f"[{f.rule}] {f.entity}: {f.message}")
        for f in vulnerabilities:
            click.echo(
                f"[{f.cause.value}] dependency {f.dependency.name}: "
                f"trail {' -> '.join(f.trail)}")
        for dep in skipped:
            click.echo(f"note: task dependum skipped: {dep.name}")
        total = len(integrity) + len(vulnerabilities)
        click.echo(f"{total} finding{'s' if total != 1 else ''}")
    sys.exit(EXIT_FINDINGS if integrity or vulnerabilities else EXIT_OK)


@main.command()
@click.option("--model", "model_path", required=True)
@click.option("--persona", "personas", multiple=True,
              help="Persona filter; repeatable. Default: all personas.")
@click.option("--strategy", "strategy_path", default=None)
@click.option("--format", "fmt", type=click.Choice(["human", "machine"]),
              default="human", show_default=True)
def evaluate(model_path, personas, strategy_path, fmt):
    """Print propagated satisfaction scores for user goals."""
    model = _load(model_path)
    strategy = _load_strategy(strategy_path)
    selected = personas or tuple(model.personas)
    try:
        result = evaluate_all(model, strategy, selected)
    except UnknownEntityError as exc:
        _fail(EXIT_USAGE, str(exc))
    rows = [
        {"goal": name, "score": display_score(score),
         "label": qualitative_label(score).label}
        for name, score in sorted(result.scores.items())
    ]
    if fmt == "machine":
        click.echo(json.dumps({
            "scores": rows,
            "cycleWarnings": [list(c) for c in result.cycle_warnings],
        }, indent=2))
    else:
        writer = csv.writer(sys.stdout, lineterminator="\n")
        writer.writerow(["goal", "score", "label"])
        for row in rows:
            writer.writerow([row["goal"], row["score"], row["label"]])
        for cycle in result.cycle_warnings:
            click.echo(f"warning: contribution cycle: {' -> '.join(cycle)}",
                       err=True)
    sys.exit(EXIT_OK)


@main.command("export-workbook")
@click.option("--model", "model_path", required=True)
@click.option("--persona", required=True)
@click.option("--out", "out_dir", default=".", show_default=True,
              help="Directory for the workbook CSV files.")
def export_workbook_cmd(model_path, persona, out_dir):
    """Write the <model>-usergoals.csv and <model>-contributions.csv sheets."""
    model = _load(model_path)
    try:
        usergoals, contributions = export_workbook(model, persona)
    except UnknownEntityError as exc:
        _fail(EXIT_USAGE, str(exc))
    stem = Path(model_path).stem
    out = Path(out_dir)
    try:
        out.mkdir(parents=True, exist_ok=True)
        (out / f"{stem}-usergoals.csv").write_text(usergoals, encoding="utf-8")
        (out / f"{stem}-contributions.csv").write_text(
            contributions, encoding="utf-8")
    except OSError as exc:
        _fail(EXIT_USAGE, str(exc))
    click.echo(f"wrote {out / (stem + '-usergoals.csv')}")
    click.echo(f"wrote {out / (stem + '-contributions.csv')}")


@main.command("import-workbook")
@click.argument("usergoals_csv", type=click.Path())
@click.argument("contributions_csv", type=click.Path())
@click.option("--model", "model_path", required=True)
@click.option("--out", "out_path", required=True,
              help="Where to write the merged model document.")
def import_workbook_cmd(usergoals_csv, contributions_csv, model_path, out_path):
    """Merge completed workbook sheets into the model."""
    model = _load(model_path)
    try:
        usergoals = Path(usergoals_csv).read_text(encoding="utf-8")
        contributions = Path(contributions_csv).read_text(encoding="utf-8")
    except OSError as exc:
        _fail(EXIT_USAGE, str(exc))
    try:
        merged = import_workbook(model, usergoals, contributions)
    except (ParseError, UnknownReferenceError, InvalidEnumError) as exc:
        _fail(EXIT_USAGE, str(exc))
    except _MODEL_ERRORS as exc:
        _fail(EXIT_INVALID_MODEL, str(exc))
    try:
        Path(out_path).write_text(save_model(merged), encoding="utf-8")
    except OSError as exc:
        _fail(EXIT_USAGE, str(exc))
    click.echo(f"wrote {out_path}")


@main.command()
@click.option("--model", "model_path", required=True)
@click.option("--persona", "personas", multiple=True)
@click.option("--strategy", "strategy_path", default=None)
@click.option("--out", "out_path", required=True,
              help="Path for the dot graph document.")
def render(model_path, personas, strategy_path, out_path):
    """Write the colored user-goal graph in dot format."""
    model = _load(model_path)
    strategy = _load_strategy(strategy_path)
    selected = personas or tuple(model.personas)
    try:
        result = evaluate_all(model, strategy, selected)
        graph = build_user_goal_graph(model, selected, result)
    except UnknownEntityError as exc:
        _fail(EXIT_USAGE, str(exc))
    try:
        Path(out_path).write_text(graph, encoding="utf-8")
    except OSError as exc:
        _fail(EXIT_USAGE, str(exc))
    click.echo(f"wrote {out_path}")


@main.command()
@click.option("--model", "model_path", required=True)
@click.option("--port", default=8000, show_default=True, type=int)
@click.option("--host", default="127.0.0.1", show_default=True)
def serve(model_path, port, host):
    """Run the what-if analysis HTTP service."""
    from .service import create_app

    _load(model_path)  # fail fast with the right exit code
    probe = socket.socket(socket.AF_INET, socket.SOCK_STREAM)
    try:
        probe.setsockopt(socket.SOL_SOCKET, socket.SO_REUSEADDR, 1)
        probe.bind((host, port))
    except OSError as exc:
        _fail(EXIT_USAGE, f"cannot bind {host}:{port}: {exc}")
    finally:
        probe.close()

    import uvicorn

    uvicorn.run(create_app(model_path), host=host, port=port)


if __name__ == "__main__":
    main()
