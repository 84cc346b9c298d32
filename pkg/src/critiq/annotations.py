"""Annotation layers: geometric overlay primitives per principle and mode.

Awareness layers surface structure (groups, emphasis, spacing) in neutral
colors; solution layers flag issue targets in red and encode each suggestion
in green, or confirm in green when a principle is clean.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Any

from .config import DEFAULT_THRESHOLDS, Thresholds
from .issues import CritiqueResult, Issue
from .model import DesignDocument, TextElement
from .palette import EMPHASIS_COLORS, GUIDE_GRAY, ISSUE_RED, SUGGESTION_GREEN, series_color
from .textmetrics import BBox, TextExtent


@dataclass(frozen=True)
class FilledRect:
    bbox: BBox
    color: str
    opacity: float

    def to_dict(self) -> dict[str, Any]:
        b = self.bbox
        return {"kind": "filled_rect", "bbox": [b.x, b.y, b.width, b.height],
                "color": self.color, "opacity": self.opacity}


@dataclass(frozen=True)
class DashedLine:
    p1: tuple[float, float]
    p2: tuple[float, float]
    color: str

    def to_dict(self) -> dict[str, Any]:
        return {"kind": "dashed_line", "p1": list(self.p1), "p2": list(self.p2), "color": self.color}


@dataclass(frozen=True)
class Arrow:
    p1: tuple[float, float]
    p2: tuple[float, float]  # head end
    color: str
    stroke: str = "solid"  # solid | dashed

    def to_dict(self) -> dict[str, Any]:
        return {"kind": "arrow", "p1": list(self.p1), "p2": list(self.p2),
                "color": self.color, "stroke": self.stroke}


@dataclass(frozen=True)
class Label:
    anchor: tuple[float, float]
    text: str
    color: str

    def to_dict(self) -> dict[str, Any]:
        return {"kind": "label", "anchor": list(self.anchor), "text": self.text, "color": self.color}


@dataclass(frozen=True)
class GrayBox:
    bbox: BBox

    def to_dict(self) -> dict[str, Any]:
        b = self.bbox
        return {"kind": "gray_box", "bbox": [b.x, b.y, b.width, b.height]}


Primitive = FilledRect | DashedLine | Arrow | Label | GrayBox

# fills < guides < arrows < labels
_Z_ORDER = {FilledRect: 0, GrayBox: 0, DashedLine: 1, Arrow: 2, Label: 3}


@dataclass(frozen=True)
class AnnotationLayer:
    principle: str
    mode: str  # awareness | solution
    primitives: tuple[Primitive, ...]
    group_color_map: dict[str, str]

    def colors(self) -> set[str]:
        out: set[str] = set()
        for p in self.primitives:
            color = getattr(p, "color", None)
            out.add(GUIDE_GRAY if isinstance(p, GrayBox) else color)
        return out

    def to_dict(self) -> dict[str, Any]:
        return {
            "principle": self.principle,
            "mode": self.mode,
            "primitives": [p.to_dict() for p in self.primitives],
            "group_color_map": dict(self.group_color_map),
        }


class _LayerBuilder:
    """Collects primitives, clamps them to the canvas (plus 5% slack), sorts by z."""

    def __init__(self, doc: DesignDocument):
        self.w = doc.canvas_width
        self.h = doc.canvas_height
        self.items: list[Primitive] = []

    def _cx(self, x: float) -> float:
        return min(max(x, -0.05 * self.w), 1.05 * self.w)

    def _cy(self, y: float) -> float:
        return min(max(y, -0.05 * self.h), 1.05 * self.h)

    def _cp(self, p: tuple[float, float]) -> tuple[float, float]:
        return (self._cx(p[0]), self._cy(p[1]))

    def _cb(self, b: BBox) -> BBox:
        x0, y0 = self._cx(b.x), self._cy(b.y)
        x1, y1 = self._cx(b.right), self._cy(b.bottom)
        return BBox(x0, y0, x1 - x0, y1 - y0)

    def rect(self, bbox: BBox, color: str, opacity: float = 0.35) -> None:
        self.items.append(FilledRect(self._cb(bbox), color, opacity))

    def gray_box(self, bbox: BBox) -> None:
        self.items.append(GrayBox(self._cb(bbox)))

    def dashed(self, p1: tuple[float, float], p2: tuple[float, float], color: str) -> None:
        self.items.append(DashedLine(self._cp(p1), self._cp(p2), color))

    def arrow(self, p1: tuple[float, float], p2: tuple[float, float], color: str,
              stroke: str = "solid") -> None:
        self.items.append(Arrow(self._cp(p1), self._cp(p2), color, stroke))

    def label(self, anchor: tuple[float, float], text: str, color: str) -> None:
        self.items.append(Label(self._cp(anchor), text, color))

    def vline(self, x: float, color: str) -> None:
        self.dashed((x, 0.0), (x, self.h), color)

    def outline(self, bbox: BBox, color: str, pad: float = 3.0) -> None:
        b = BBox(bbox.x - pad, bbox.y - pad, bbox.width + 2 * pad, bbox.height + 2 * pad)
        self.dashed((b.x, b.y), (b.right, b.y), color)
        self.dashed((b.right, b.y), (b.right, b.bottom), color)
        self.dashed((b.right, b.bottom), (b.x, b.bottom), color)
        self.dashed((b.x, b.bottom), (b.x, b.y), color)

    def margin_guides(self, margin: float, color: str) -> None:
        self.dashed((margin, 0.0), (margin, self.h), color)
        self.dashed((self.w - margin, 0.0), (self.w - margin, self.h), color)
        self.dashed((0.0, margin), (self.w, margin), color)
        self.dashed((0.0, self.h - margin), (self.w, self.h - margin), color)

    def build(self, principle: str, mode: str, groups: dict[str, str]) -> AnnotationLayer:
        ordered = sorted(self.items, key=lambda p: _Z_ORDER[type(p)])
        return AnnotationLayer(principle=principle, mode=mode,
                               primitives=tuple(ordered), group_color_map=groups)


def element_bbox(el: TextElement, extents: dict[str, TextExtent]) -> BBox:
    """Measured box, or the degenerate zero box a measurement of "" yields."""
    ext = extents.get(el.id)
    return ext.overall_bbox if ext is not None else BBox(el.x, el.y, 0.0, 0.0)


def alignment_group_colors(result: CritiqueResult) -> list[str]:
    return [series_color(i) for i in range(len(result.alignment.groups))]


def unity_element_colors(doc: DesignDocument) -> dict[str, str]:
    return {el.id: series_color(i) for i, el in enumerate(doc.text_elements())}


# Pixel offsets for the on-canvas counts block (unity) and corner arrows.
_COUNTS_X = 10.0
_COUNTS_Y0 = 20.0
_COUNTS_STEP = 16.0
_CORNER_ARROW = 18.0

_PROPERTY_LABELS = {
    "font_family": "font families",
    "font_style": "font styles",
    "font_size": "font sizes",
    "color": "font colors",
}


def _corner_arrows(b: _LayerBuilder, bbox: BBox, outward: bool) -> None:
    for cx, sx in ((bbox.x, -1.0), (bbox.right, 1.0)):
        for cy, sy in ((bbox.y, -1.0), (bbox.bottom, 1.0)):
            out = (cx + sx * _CORNER_ARROW, cy + sy * _CORNER_ARROW)
            if outward:
                b.arrow((cx, cy), out, SUGGESTION_GREEN)
            else:
                b.arrow(out, (cx, cy), SUGGESTION_GREEN)


def gen_awareness(
    principle: str,
    doc: DesignDocument,
    result: CritiqueResult,
    extents: dict[str, TextExtent],
    thresholds: Thresholds = DEFAULT_THRESHOLDS,
) -> AnnotationLayer:
    b = _LayerBuilder(doc)
    groups: dict[str, str] = {}
    texts = doc.text_elements()

    if principle == "hierarchy":
        for el in texts:
            level = result.hierarchy.emphasis.get(el.id)
            if level is None:
                continue
            color = EMPHASIS_COLORS[level.value]
            groups[f"{level.value} emphasis"] = color
            b.rect(element_bbox(el, extents), color)

    elif principle == "alignment":
        colors = alignment_group_colors(result)
        by_id = {el.id: el for el in texts}
        for i, group in enumerate(result.alignment.groups):
            color = colors[i]
            groups[f"alignment group {i + 1}"] = color
            b.vline(group.axis_x, color)
            for member in group.members:
                el = by_id[member]
                bbox = element_bbox(el, extents)
                b.rect(bbox, color)
                b.label((bbox.x, bbox.y - 4), el.internal_align, color)

    elif principle == "whitespace":
        margin = thresholds.margin_threshold(doc.canvas_width, doc.canvas_height)
        b.margin_guides(margin, GUIDE_GRAY)
        groups["margin guides"] = GUIDE_GRAY
        for el in texts:
            ext = extents.get(el.id)
            if ext is None:
                continue
            groups["text blocks"] = GUIDE_GRAY
            for line in ext.lines:
                if line.bbox.width > 0:
                    b.gray_box(line.bbox)

    elif principle == "unity":
        colors = unity_element_colors(doc)
        for el in texts:
            color = colors[el.id]
            groups[f"properties of {el.id}"] = color
            bbox = element_bbox(el, extents)
            family, style, size, color_value = result.unity.properties[el.id]
            text = f"{family} / {style} / {size:g} / {color_value}"
            b.label((max(bbox.right, el.x + el.box_width) + 6, bbox.y + 12), text, color)
        groups["distinct counts"] = GUIDE_GRAY
        for i, prop in enumerate(_PROPERTY_LABELS):
            count = result.unity.distinct_counts.get(prop, 0)
            b.label((_COUNTS_X, _COUNTS_Y0 + i * _COUNTS_STEP),
                    f"{count} {_PROPERTY_LABELS[prop]}", GUIDE_GRAY)

    else:
        raise ValueError(f"unknown principle: {principle!r}")

    return b.build(principle, "awareness", groups)


def _draw_suggestion(b: _LayerBuilder, issue: Issue, doc: DesignDocument,
                     extents: dict[str, TextExtent], result: CritiqueResult) -> None:
    s = issue.suggestion
    by_id = {el.id: el for el in doc.text_elements()}

    if s.kind == "enlarge":
        for target in s.target_ids:
            _corner_arrows(b, element_bbox(by_id[target], extents), outward=True)

    elif s.kind == "shrink":
        for target in s.target_ids:
            _corner_arrows(b, element_bbox(by_id[target], extents), outward=False)

    elif s.kind == "move_by":
        dx, dy = float(s.parameters["dx"]), float(s.parameters["dy"])
        for target in s.target_ids:
            bbox = element_bbox(by_id[target], extents)
            cx, cy = bbox.x + bbox.width / 2, bbox.y + bbox.height / 2
            b.arrow((cx, cy), (cx + dx, cy + dy), SUGGESTION_GREEN)

    elif s.kind == "merge_to_axis":
        axis_x = float(s.parameters["axis_x"])
        b.vline(axis_x, SUGGESTION_GREEN)
        for target in s.target_ids:
            bbox = element_bbox(by_id[target], extents)
            cy = bbox.y + bbox.height / 2
            b.arrow((bbox.x, cy), (axis_x, cy), SUGGESTION_GREEN)

    elif s.kind == "change_internal_align":
        # Dashed stroke distinguishes re-aligning from physically moving.
        align = s.parameters["internal_align"]
        for target in s.target_ids:
            bbox = element_bbox(by_id[target], extents)
            cy = bbox.y + bbox.height / 2
            el = by_id[target]
            left, right = el.x, el.x + el.box_width
            mid = (left + right) / 2
            if align == "left":
                p1, p2 = (mid, cy), (left, cy)
            elif align == "right":
                p1, p2 = (mid, cy), (right, cy)
            else:
                p1, p2 = (left, cy), (mid, cy)
            b.arrow(p1, p2, SUGGESTION_GREEN, stroke="dashed")
            b.label((p2[0], cy - 6), f"{align}-align", SUGGESTION_GREEN)

    elif s.kind == "reduce_property_count":
        prop = s.parameters["property"]
        row = list(_PROPERTY_LABELS).index(prop)
        y = _COUNTS_Y0 + row * _COUNTS_STEP
        b.arrow((_COUNTS_X, y - 10), (_COUNTS_X, y + 2), SUGGESTION_GREEN)
        b.label((_COUNTS_X + 10, y), f"use {s.parameters['target']} or fewer", SUGGESTION_GREEN)

    elif s.kind == "even_out_lines":
        offenders = {
            r.element_id: set(r.line_indices) for r in result.whitespace.ragged_elements
        }
        for target in s.target_ids:
            ext = extents.get(target)
            if ext is None:
                continue
            for line in ext.lines:
                if line.line_index in offenders.get(target, set()):
                    b.label((line.bbox.right + 4, line.bbox.bottom), "]", SUGGESTION_GREEN)


def gen_solution(
    principle: str,
    doc: DesignDocument,
    result: CritiqueResult,
    extents: dict[str, TextExtent],
    thresholds: Thresholds = DEFAULT_THRESHOLDS,
) -> AnnotationLayer:
    b = _LayerBuilder(doc)
    groups: dict[str, str] = {}
    report = result.report(principle)
    texts = doc.text_elements()
    by_id = {el.id: el for el in texts}

    if report.issues:
        groups["issues"] = ISSUE_RED
        groups["suggestions"] = SUGGESTION_GREEN
        for issue in report.issues:
            for target in issue.target_ids:
                el = by_id.get(target)
                if el is not None:
                    b.rect(element_bbox(el, extents), ISSUE_RED)
            if issue.kind == "too_many_variances":
                prop = issue.suggestion.parameters["property"]
                row = list(_PROPERTY_LABELS).index(prop)
                count = result.unity.distinct_counts[prop]
                b.label((_COUNTS_X + 14, _COUNTS_Y0 + row * _COUNTS_STEP),
                        f"{count} {_PROPERTY_LABELS[prop]}", ISSUE_RED)
            _draw_suggestion(b, issue, doc, extents, result)
        if principle == "hierarchy" and report.issues[0].kind == "competing_emphasis":
            # The title keeps its dominance; confirm it alongside the flags.
            title = by_id.get(result.hierarchy.title_candidate)
            if title is not None:
                b.outline(element_bbox(title, extents), SUGGESTION_GREEN)
        return b.build(principle, "solution", groups)

    # No issues: green confirmation.
    if principle == "hierarchy":
        title = by_id.get(result.hierarchy.title_candidate) if result.hierarchy.title_candidate else None
        if title is not None:
            groups["confirmation"] = SUGGESTION_GREEN
            b.outline(element_bbox(title, extents), SUGGESTION_GREEN)
    elif principle == "alignment":
        if result.alignment.groups:
            groups["confirmation"] = SUGGESTION_GREEN
            for group in result.alignment.groups:
                b.vline(group.axis_x, SUGGESTION_GREEN)
    elif principle == "whitespace":
        groups["confirmation"] = SUGGESTION_GREEN
        margin = thresholds.margin_threshold(doc.canvas_width, doc.canvas_height)
        b.margin_guides(margin, SUGGESTION_GREEN)
    elif principle == "unity":
        groups["confirmation"] = SUGGESTION_GREEN
        for i, prop in enumerate(_PROPERTY_LABELS):
            count = result.unity.distinct_counts.get(prop, 0)
            b.label((_COUNTS_X, _COUNTS_Y0 + i * _COUNTS_STEP),
                    f"{count} {_PROPERTY_LABELS[prop]}", SUGGESTION_GREEN)
    else:
        raise ValueError(f"unknown principle: {principle!r}")

    return b.build(principle, "solution", groups)
