"""Detection-accuracy evaluation against a labeled design corpus.

Per design and principle, the predicted label is the analyzer's issue flag.
Designs labeled NA for a principle are excluded from that principle's
accuracy denominator.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path

from .analyzers import detect_all
from .config import DEFAULT_THRESHOLDS, Thresholds
from .errors import SchemaViolation
from .issues import PRINCIPLES
from .model import parse_design
from .textmetrics import MetricsProvider

LABEL_VALUES = ("issue", "no_issue", "NA")


@dataclass(frozen=True)
class GroundTruthLabel:
    design_id: str
    labels: dict[str, str]  # principle -> issue | no_issue | NA


@dataclass(frozen=True)
class PrincipleCounts:
    tp: int = 0
    tn: int = 0
    fp: int = 0
    fn: int = 0
    na: int = 0

    @property
    def denominator(self) -> int:
        return self.tp + self.tn + self.fp + self.fn

    @property
    def accuracy(self) -> float | None:
        if self.denominator == 0:
            return None
        return (self.tp + self.tn) / self.denominator


@dataclass(frozen=True)
class EvaluationReport:
    counts: dict[str, PrincipleCounts]
    corpus_size: int

    def to_dict(self) -> dict:
        return {
            "corpus_size": self.corpus_size,
            "principles": {
                p: {
                    "accuracy": self.counts[p].accuracy,
                    "tp": self.counts[p].tp,
                    "tn": self.counts[p].tn,
                    "fp": self.counts[p].fp,
                    "fn": self.counts[p].fn,
                    "na": self.counts[p].na,
                }
                for p in PRINCIPLES
            },
        }


def load_labels(path: str | Path) -> list[GroundTruthLabel]:
    raw = json.loads(Path(path).read_text(encoding="utf-8"))
    if not isinstance(raw, list):
        raise SchemaViolation("", "labels file must be a JSON array")
    labels: list[GroundTruthLabel] = []
    seen: set[str] = set()
    for i, entry in enumerate(raw):
        if not isinstance(entry, dict) or "design_id" not in entry:
            raise SchemaViolation(f"[{i}]", "label entry must be an object with design_id")
        design_id = entry["design_id"]
        if design_id in seen:
            raise SchemaViolation(f"[{i}].design_id", f"duplicate design_id {design_id!r}")
        seen.add(design_id)
        per_principle: dict[str, str] = {}
        for principle in PRINCIPLES:
            value = entry.get(principle, "NA")
            if value not in LABEL_VALUES:
                raise SchemaViolation(
                    f"[{i}].{principle}", f"expected one of {LABEL_VALUES}, got {value!r}"
                )
            per_principle[principle] = value
        labels.append(GroundTruthLabel(design_id=design_id, labels=per_principle))
    return sorted(labels, key=lambda l: l.design_id)


def evaluate_corpus(
    corpus_dir: str | Path,
    labels: list[GroundTruthLabel],
    provider: MetricsProvider | None = None,
    thresholds: Thresholds = DEFAULT_THRESHOLDS,
) -> EvaluationReport:
    """Run detection on every labeled design; missing files raise FileNotFoundError."""
    corpus_dir = Path(corpus_dir)
    tallies = {p: {"tp": 0, "tn": 0, "fp": 0, "fn": 0, "na": 0} for p in PRINCIPLES}
    for label in sorted(labels, key=lambda l: l.design_id):
        path = corpus_dir / f"{label.design_id}.json"
        if not path.exists():
            raise FileNotFoundError(f"no design file for labeled design_id {label.design_id!r}")
        doc = parse_design(path.read_text(encoding="utf-8"))
        result = detect_all(doc, provider, thresholds)
        for principle in PRINCIPLES:
            truth = label.labels[principle]
            if truth == "NA":
                tallies[principle]["na"] += 1
                continue
            predicted_issue = result.issue_flags[principle]
            if truth == "issue":
                tallies[principle]["tp" if predicted_issue else "fn"] += 1
            else:
                tallies[principle]["fp" if predicted_issue else "tn"] += 1
    counts = {p: PrincipleCounts(**tallies[p]) for p in PRINCIPLES}
    return EvaluationReport(counts=counts, corpus_size=len(labels))


def format_report_table(report: EvaluationReport) -> str:
    lines = [
        f"corpus size: {report.corpus_size}",
        f"{'principle':<12} {'accuracy':>8} {'tp':>4} {'tn':>4} {'fp':>4} {'fn':>4} {'na':>4}",
    ]
    for principle in PRINCIPLES:
        c = report.counts[principle]
        acc = "-" if c.accuracy is None else f"{c.accuracy:.3f}"
        lines.append(
            f"{principle:<12} {acc:>8} {c.tp:>4} {c.tn:>4} {c.fp:>4} {c.fn:>4} {c.na:>4}"
        )
    return "\n".join(lines) + "\n"
