"""Batch front door: analyze, render, diff, evaluate, serve.

Exit codes: 0 clean / no changes, 1 issues or changes found, 2 on error.
"""

from __future__ import annotations

import json
import sys
from pathlib import Path

import click

from .analyzers import detect_all
from .annotations import gen_awareness, gen_solution
from .edits import apply_suggestion  # noqa: F401  (re-exported for scripting)
from .errors import CritiqError
from .evaluation import evaluate_corpus, format_report_table, load_labels
from .explanations import action_sentence, gen_explanation, issue_message
from .issues import PRINCIPLES
from .model import ABSENT, DesignDocument, diff_designs, parse_design
from .server import default_port, run_server
from .service import DEBOUNCE_SECONDS, CritiqueService
from .svgrender import render_svg
from .textmetrics import fallback_provider, measure_document

MODES = ("awareness", "solution")


class CliError(click.ClickException):
    exit_code = 2


def _load_design(path: str) -> DesignDocument:
    try:
        return parse_design(Path(path).read_text(encoding="utf-8"))
    except FileNotFoundError:
        raise CliError(f"design file not found: {path}")
    except OSError as exc:
        raise CliError(f"cannot read {path}: {exc}")
    except CritiqError as exc:
        raise CliError(f"{path}: {exc}")


@click.group()
def main() -> None:
    """Design critique engine for canvas JSON documents."""


@main.command()
@click.argument("file", type=click.Path())
@click.option("--principle", type=click.Choice(PRINCIPLES), default=None,
              help="Limit the report to one principle.")
@click.option("--mode", type=click.Choice(MODES), default="solution", show_default=True,
              help="Which explanation tables to include.")
@click.option("--format", "fmt", type=click.Choice(("json", "md")), default="md",
              show_default=True)
def analyze(file: str, principle: str | None, mode: str, fmt: str) -> None:
    """Detect principle issues in a design; exit 1 when any are found."""
    doc = _load_design(file)
    provider = fallback_provider()
    result = detect_all(doc, provider)
    extents = measure_document(doc.text_elements(), provider)
    selected = [principle] if principle else list(PRINCIPLES)

    if fmt == "json":
        payload = {
            "issue_flags": {p: result.issue_flags[p] for p in selected},
            "reports": {p: result.report(p).to_dict() for p in selected},
            "explanations": {
                p: gen_explanation(p, mode, doc, result, extents).to_dict() for p in selected
            },
        }
        click.echo(json.dumps(payload, indent=2, ensure_ascii=False))
    else:
        lines = ["# Design critique", ""]
        for p in selected:
            report = result.report(p)
            state = "issues found" if result.issue_flags[p] else "clean"
            lines.append(f"## {p} - {state}")
            for issue in report.issues:
                lines.append(f"- {issue_message(issue)} (targets: {', '.join(issue.target_ids)})")
                lines.append(f"  - fix: {action_sentence(issue.suggestion, doc)}")
            table = gen_explanation(p, mode, doc, result, extents)
            for row in table.rows:
                lines.append(f"- [{row.color}] {row.text}")
            lines.append("")
        click.echo("\n".join(lines).rstrip())

    if any(result.issue_flags[p] for p in selected):
        sys.exit(1)


@main.command()
@click.argument("file", type=click.Path())
@click.option("--principle", type=click.Choice(PRINCIPLES), default=None,
              help="Overlay for this principle; omit for the base design only.")
@click.option("--mode", type=click.Choice(MODES), default="solution", show_default=True)
@click.option("--out", type=click.Path(), required=True, help="Output SVG path.")
def render(file: str, principle: str | None, mode: str, out: str) -> None:
    """Render the design (optionally with an annotation overlay) to SVG."""
    doc = _load_design(file)
    provider = fallback_provider()
    extents = measure_document(doc.text_elements(), provider)
    layer = None
    if principle is not None:
        result = detect_all(doc, provider)
        generate = gen_awareness if mode == "awareness" else gen_solution
        layer = generate(principle, doc, result, extents)
    Path(out).write_text(render_svg(doc, layer, extents), encoding="utf-8")


def _diff_value(value) -> str:
    if value is ABSENT:
        return "absent"
    if isinstance(value, float):
        return f"{int(value)}" if value.is_integer() else f"{value}"
    if isinstance(value, (dict, list)):
        return json.dumps(value, ensure_ascii=False)
    return str(value)


@main.command()
@click.argument("file_a", type=click.Path())
@click.argument("file_b", type=click.Path())
def diff(file_a: str, file_b: str) -> None:
    """Compare two design files property by property; exit 1 when they differ."""
    a = _load_design(file_a)
    b = _load_design(file_b)
    changes = diff_designs(a, b)
    if not changes:
        click.echo("no changes")
        return
    for entry in changes.entries:
        if entry.before_value is ABSENT:
            click.echo(f"{entry.property_path}: added {_diff_value(entry.after_value)}")
        elif entry.after_value is ABSENT:
            click.echo(f"{entry.property_path}: removed {_diff_value(entry.before_value)}")
        else:
            click.echo(
                f"{entry.property_path}: {_diff_value(entry.before_value)}"
                f" -> {_diff_value(entry.after_value)}"
            )
    sys.exit(1)


@main.command()
@click.argument("corpus_dir", type=click.Path())
@click.argument("labels_file", type=click.Path())
@click.option("--format", "fmt", type=click.Choice(("table", "json")), default="table",
              show_default=True)
def evaluate(corpus_dir: str, labels_file: str, fmt: str) -> None:
    """Score detection against ground-truth labels (NA rows excluded)."""
    try:
        labels = load_labels(labels_file)
    except (OSError, ValueError, CritiqError) as exc:
        raise CliError(f"cannot load labels: {exc}")
    try:
        report = evaluate_corpus(corpus_dir, labels, fallback_provider())
    except FileNotFoundError as exc:
        raise CliError(str(exc))
    except CritiqError as exc:
        raise CliError(str(exc))
    if fmt == "json":
        click.echo(json.dumps(report.to_dict(), indent=2))
    else:
        click.echo(format_report_table(report), nl=False)


@main.command()
@click.option("--port", type=int, default=None,
              help=f"TCP port (default {default_port()}, env CRITIQ_PORT).")
@click.option("--host", default="127.0.0.1", show_default=True)
@click.option("--log-dir", type=click.Path(), default="critiq-logs", show_default=True,
              help="Directory for per-session JSONL interaction logs.")
@click.option("--debounce", type=float, default=DEBOUNCE_SECONDS, show_default=True,
              help="Trailing debounce in seconds before recomputing annotations.")
def serve(port: int | None, host: str, log_dir: str, debounce: float) -> None:
    """Run the live critique service until interrupted."""
    port = default_port() if port is None else port
    service = CritiqueService(log_dir=log_dir, debounce_seconds=debounce)
    click.echo(f"critique service listening on {host}:{port}", err=True)
    try:
        run_server(service, host=host, port=port)
    except OSError as exc:
        raise CliError(f"cannot bind {host}:{port}: {exc}")


if __name__ == "__main__":
    main()
