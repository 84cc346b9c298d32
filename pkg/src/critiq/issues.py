"""Domain types for analyzer output: issues, suggestions, per-principle reports."""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Any

PRINCIPLES = ("hierarchy", "alignment", "whitespace", "unity")

# Eight detectable issue kinds, keyed by principle.
ISSUE_KINDS = {
    "hierarchy": ("weak_point_of_entry", "competing_emphasis"),
    "alignment": ("too_many_groups", "internal_external_mismatch"),
    "whitespace": ("margin", "pair_spacing", "ragged_edge"),
    "unity": ("too_many_variances",),
}

SUGGESTION_KINDS = (
    "enlarge",
    "shrink",
    "move_by",
    "change_internal_align",
    "merge_to_axis",
    "reduce_property_count",
    "even_out_lines",
)


class EmphasisLevel(enum.Enum):
    LOW = "low"
    MEDIUM = "medium"
    HIGH = "high"

    @property
    def rank(self) -> int:
        return ("low", "medium", "high").index(self.value)

    def __lt__(self, other: EmphasisLevel) -> bool:
        return self.rank < other.rank

    def __le__(self, other: EmphasisLevel) -> bool:
        return self.rank <= other.rank


@dataclass(frozen=True)
class Suggestion:
    """A scripted edit that resolves an issue when applied to the document."""

    kind: str
    target_ids: tuple[str, ...]
    parameters: dict[str, Any] = field(default_factory=dict)

    def to_dict(self) -> dict[str, Any]:
        return {
            "kind": self.kind,
            "target_ids": list(self.target_ids),
            "parameters": self.parameters,
        }


@dataclass(frozen=True)
class Issue:
    principle: str
    kind: str
    target_ids: tuple[str, ...]
    message_template_id: str
    suggestion: Suggestion

    def to_dict(self) -> dict[str, Any]:
        return {
            "principle": self.principle,
            "kind": self.kind,
            "target_ids": list(self.target_ids),
            "message_template_id": self.message_template_id,
            "suggestion": self.suggestion.to_dict(),
        }


@dataclass(frozen=True)
class HierarchyReport:
    emphasis: dict[str, EmphasisLevel]  # element id -> level, insertion = element order
    cluster_centers: tuple[float, ...]  # ascending
    title_candidate: str | None
    issues: tuple[Issue, ...]

    def to_dict(self) -> dict[str, Any]:
        return {
            "emphasis": {k: v.value for k, v in self.emphasis.items()},
            "cluster_centers": list(self.cluster_centers),
            "title_candidate": self.title_candidate,
            "issues": [i.to_dict() for i in self.issues],
        }


@dataclass(frozen=True)
class AlignmentGroup:
    axis_kind: str  # left | center | right
    axis_x: float
    members: tuple[str, ...]

    def to_dict(self) -> dict[str, Any]:
        return {"axis_kind": self.axis_kind, "axis_x": self.axis_x, "members": list(self.members)}


@dataclass(frozen=True)
class AlignmentMismatch:
    element_id: str
    external_side: str  # left | center | right third of the canvas
    internal_align: str

    def to_dict(self) -> dict[str, Any]:
        return {
            "element_id": self.element_id,
            "external_side": self.external_side,
            "internal_align": self.internal_align,
        }


@dataclass(frozen=True)
class AlignmentReport:
    groups: tuple[AlignmentGroup, ...]
    mismatches: tuple[AlignmentMismatch, ...]
    issues: tuple[Issue, ...]

    def to_dict(self) -> dict[str, Any]:
        return {
            "groups": [g.to_dict() for g in self.groups],
            "mismatches": [m.to_dict() for m in self.mismatches],
            "issues": [i.to_dict() for i in self.issues],
        }


@dataclass(frozen=True)
class MarginViolation:
    element_id: str
    edge: str  # left | right | top | bottom
    distance: float

    def to_dict(self) -> dict[str, Any]:
        return {"element_id": self.element_id, "edge": self.edge, "distance": self.distance}


@dataclass(frozen=True)
class PairViolation:
    id_a: str
    id_b: str
    gap: float
    direction: str  # horizontal | vertical

    def to_dict(self) -> dict[str, Any]:
        return {"id_a": self.id_a, "id_b": self.id_b, "gap": self.gap, "direction": self.direction}


@dataclass(frozen=True)
class RaggedElement:
    element_id: str
    line_indices: tuple[int, ...]

    def to_dict(self) -> dict[str, Any]:
        return {"element_id": self.element_id, "line_indices": list(self.line_indices)}


@dataclass(frozen=True)
class WhitespaceReport:
    margin_violations: tuple[MarginViolation, ...]
    pair_violations: tuple[PairViolation, ...]
    ragged_elements: tuple[RaggedElement, ...]
    issues: tuple[Issue, ...]

    def to_dict(self) -> dict[str, Any]:
        return {
            "margin_violations": [v.to_dict() for v in self.margin_violations],
            "pair_violations": [v.to_dict() for v in self.pair_violations],
            "ragged_elements": [v.to_dict() for v in self.ragged_elements],
            "issues": [i.to_dict() for i in self.issues],
        }


UNITY_PROPERTIES = ("font_family", "font_style", "font_size", "color")


@dataclass(frozen=True)
class UnityReport:
    properties: dict[str, tuple[Any, ...]]  # id -> (family, style, size, color)
    distinct_counts: dict[str, int]  # keyed by UNITY_PROPERTIES
    issues: tuple[Issue, ...]

    def to_dict(self) -> dict[str, Any]:
        return {
            "properties": {k: list(v) for k, v in self.properties.items()},
            "distinct_counts": dict(self.distinct_counts),
            "issues": [i.to_dict() for i in self.issues],
        }


@dataclass(frozen=True)
class CritiqueResult:
    hierarchy: HierarchyReport
    alignment: AlignmentReport
    whitespace: WhitespaceReport
    unity: UnityReport
    issue_flags: dict[str, bool]

    def report(self, principle: str):
        return getattr(self, principle)

    def issues(self, principle: str | None = None) -> list[Issue]:
        names = [principle] if principle else list(PRINCIPLES)
        out: list[Issue] = []
        for name in names:
            out.extend(self.report(name).issues)
        return out

    def to_dict(self) -> dict[str, Any]:
        return {
            "hierarchy": self.hierarchy.to_dict(),
            "alignment": self.alignment.to_dict(),
            "whitespace": self.whitespace.to_dict(),
            "unity": self.unity.to_dict(),
            "issue_flags": {p: self.issue_flags[p] for p in PRINCIPLES},
        }
