"""Textual mirrors of annotation layers: slot-filled, color-matched tables.

Every sentence comes from a fixed template; an element is referred to by a
display name built from the first 20 characters of its content. Solution-mode
tables carry an extra Suggested Actions section translating each green
annotation into words.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Any

from .config import DEFAULT_THRESHOLDS, Thresholds
from .issues import CritiqueResult, Issue, Suggestion, UNITY_PROPERTIES
from .model import DesignDocument, TextElement
from .palette import EMPHASIS_COLORS, GUIDE_GRAY, ISSUE_RED, SUGGESTION_GREEN
from .textmetrics import BBox, TextExtent
from .annotations import alignment_group_colors, element_bbox, unity_element_colors

TEMPLATES = {
    # awareness rows
    "hierarchy.emphasis": "{name} in the design has {level} visual emphasis.",
    "alignment.groups": "Text in the design forms {count} alignment {group_word} with {names}.",
    "alignment.internal": "{name} is {align}-aligned.",
    "whitespace.position": (
        "{name} is on the {edge} side of the canvas. "
        "Note other nearby elements and the lengths of the lines of text."
    ),
    "whitespace.guides": "Dashed lines mark the minimum margin of {margin} px from each canvas edge.",
    "unity.properties": (
        "{name} in the design has the following text properties: "
        "{family}, {style}, {size}, {color}."
    ),
    "unity.counts": (
        "The design uses {families} font families, {styles} font styles, "
        "{sizes} font sizes, and {colors} font colors."
    ),
    # solution issue rows, one per issue kind
    "hierarchy.weak_point_of_entry": "The {title} does not seem particularly emphasized.",
    "hierarchy.competing_emphasis": (
        "The {title} does not seem particularly emphasized compared to {competitors}, "
        "making it difficult to recognize what is most important."
    ),
    "alignment.too_many_groups": (
        "Text in the design forms many separate alignment groups with {names}, "
        "which can make the design appear somewhat incohesive."
    ),
    "alignment.internal_external_mismatch": (
        "{name}'s relative positioning on the canvas skews {external}, "
        "which does not match with the text being {internal}-aligned."
    ),
    "whitespace.margin": (
        "{name} placed quite close to the {edge}, "
        "which can make the design appear somewhat crowded."
    ),
    "whitespace.pair_spacing": (
        "{names} placed quite close to each other, "
        "which can make the design appear somewhat crowded."
    ),
    "whitespace.ragged_edge": (
        "The line breaks in {name} creates uneven text lengths, "
        "which can somewhat disrupt the visual flow of the text."
    ),
    "unity.too_many_variances": (
        "{names} in the design use many different text properties: "
        "{families}, {styles}, {sizes}, {colors}, which can make your design seem incohesive."
    ),
    # solution confirmation rows
    "hierarchy.confirm": "The {title} stands out as the point of entry of the design.",
    "alignment.confirm": "Text in the design aligns consistently to {count} shared {axis_word}.",
    "whitespace.confirm": "Elements keep clear margins of at least {margin} px and even spacing.",
    "unity.confirm": (
        "Text properties are consistent: {families} font families, {styles} font styles, "
        "{sizes} font sizes, {colors} font colors."
    ),
}

# Short status lines per issue kind, for CLI listings and logs.
ISSUE_MESSAGES = {
    "hierarchy.weak_point_of_entry": "No elements seem to be visually emphasized",
    "hierarchy.competing_emphasis": "Multiple elements compete for visual emphasis",
    "alignment.too_many_groups": "too many alignment groups",
    "alignment.internal_external_mismatch": "internal alignment does not match canvas position",
    "whitespace.margin": "element too close to the canvas edge",
    "whitespace.pair_spacing": "elements placed too close together",
    "whitespace.ragged_edge": "uneven text line lengths",
    "unity.too_many_variances": "too many variances in text",
}

_EDGE_ORDER = ("left", "right", "top", "bottom")


@dataclass(frozen=True)
class Row:
    color: str
    text: str

    def to_dict(self) -> dict[str, Any]:
        return {"color": self.color, "text": self.text}


@dataclass(frozen=True)
class ExplanationTable:
    principle: str
    mode: str
    rows: tuple[Row, ...]
    suggested_actions: tuple[Row, ...]  # solution mode only; empty when clean

    def all_rows(self) -> tuple[Row, ...]:
        return self.rows + self.suggested_actions

    def to_dict(self) -> dict[str, Any]:
        return {
            "principle": self.principle,
            "mode": self.mode,
            "rows": [r.to_dict() for r in self.rows],
            "suggested_actions": [r.to_dict() for r in self.suggested_actions],
        }


def display_name(el: TextElement | None, fallback: str = "element") -> str:
    """First 20 characters of the content, in quotes, with a trailing ellipsis if cut."""
    if el is None:
        return f"“{fallback}”"
    base = el.content.replace("\n", " ").strip() or el.id
    if len(base) > 20:
        return f"“{base[:20]}…”"
    return f"“{base}”"


def _names(doc: DesignDocument, ids: tuple[str, ...]) -> str:
    by_id = {el.id: el for el in doc.text_elements()}
    return ", ".join(display_name(by_id.get(i), fallback=i) for i in ids)


def _px(value: float) -> str:
    return f"{round(value, 1):g}"


def _fill(template_id: str, **slots: Any) -> str:
    return TEMPLATES[template_id].format(**slots)


def issue_message(issue: Issue) -> str:
    return ISSUE_MESSAGES[issue.message_template_id]


def _nearest_edge(bbox: BBox, canvas_w: float, canvas_h: float) -> str:
    cx, cy = bbox.x + bbox.width / 2, bbox.y + bbox.height / 2
    distances = {"left": cx, "right": canvas_w - cx, "top": cy, "bottom": canvas_h - cy}
    return min(_EDGE_ORDER, key=lambda e: distances[e])


def _distinct_in_order(values: list) -> list:
    seen: list = []
    for v in values:
        if v not in seen:
            seen.append(v)
    return seen


def _unity_value_lists(doc: DesignDocument) -> dict[str, str]:
    texts = doc.text_elements()
    out: dict[str, str] = {}
    for prop in UNITY_PROPERTIES:
        values = _distinct_in_order([getattr(el, prop) for el in texts])
        rendered = [f"{v:g}" if isinstance(v, float) else str(v) for v in values]
        out[prop] = ", ".join(rendered) if rendered else "none"
    return out


def action_sentence(suggestion: Suggestion, doc: DesignDocument) -> str:
    """One imperative sentence describing the scripted edit."""
    by_id = {el.id: el for el in doc.text_elements()}
    names = _names(doc, suggestion.target_ids)
    kind = suggestion.kind
    params = suggestion.parameters

    if kind in ("enlarge", "shrink"):
        verb = "Increase" if kind == "enlarge" else "Reduce"
        sizes = params["font_sizes"]
        parts = ", ".join(
            f"{display_name(by_id.get(i), fallback=i)} to {_px(float(sizes[i]))} pt"
            for i in suggestion.target_ids
        )
        return f"{verb} the font size of {parts}."

    if kind == "move_by":
        dx, dy = float(params["dx"]), float(params["dy"])
        parts: list[str] = []
        if dx:
            parts.append(f"{'right' if dx > 0 else 'left'} by {_px(abs(dx))} px")
        if dy:
            parts.append(f"{'down' if dy > 0 else 'up'} by {_px(abs(dy))} px")
        movement = " and ".join(parts) if parts else "into place"
        return f"Move {names} {movement}."

    if kind == "change_internal_align":
        return f"Set {names} to {params['internal_align']} internal alignment."

    if kind == "merge_to_axis":
        return (
            f"Align {names} to the shared {params['axis_kind']} axis "
            f"at x = {_px(float(params['axis_x']))}."
        )

    if kind == "reduce_property_count":
        prop_label = {
            "font_family": "font family", "font_style": "font style",
            "font_size": "font size", "color": "font color",
        }[params["property"]]
        clauses = "; ".join(
            f"use {_value_text(m['to'])} instead of {_value_text(m['from'])}"
            for m in params["mapping"]
        )
        return f"Keep at most {params['target']} {prop_label} values: {clauses}."

    if kind == "even_out_lines":
        return (
            f"Set the text box width of {names} to {_px(float(params['box_width']))} px "
            f"to even out the line lengths."
        )

    raise ValueError(f"unknown suggestion kind: {kind!r}")


def _value_text(value: Any) -> str:
    return f"{value:g}" if isinstance(value, float) else str(value)


def gen_explanation(
    principle: str,
    mode: str,
    doc: DesignDocument,
    result: CritiqueResult,
    extents: dict[str, TextExtent],
    thresholds: Thresholds = DEFAULT_THRESHOLDS,
) -> ExplanationTable:
    if mode == "awareness":
        rows = _awareness_rows(principle, doc, result, extents, thresholds)
        return ExplanationTable(principle=principle, mode=mode, rows=tuple(rows), suggested_actions=())
    if mode == "solution":
        rows, actions = _solution_rows(principle, doc, result, thresholds)
        return ExplanationTable(
            principle=principle, mode=mode, rows=tuple(rows), suggested_actions=tuple(actions)
        )
    raise ValueError(f"unknown mode: {mode!r}")


def _awareness_rows(
    principle: str,
    doc: DesignDocument,
    result: CritiqueResult,
    extents: dict[str, TextExtent],
    thresholds: Thresholds,
) -> list[Row]:
    texts = doc.text_elements()
    rows: list[Row] = []

    if principle == "hierarchy":
        for el in texts:
            level = result.hierarchy.emphasis.get(el.id)
            if level is None:
                continue
            rows.append(Row(
                color=EMPHASIS_COLORS[level.value],
                text=_fill("hierarchy.emphasis", name=display_name(el), level=level.value),
            ))
        return rows

    if principle == "alignment":
        colors = alignment_group_colors(result)
        by_id = {el.id: el for el in texts}
        count = len(result.alignment.groups)
        group_word = "group" if count == 1 else "groups"
        for i, group in enumerate(result.alignment.groups):
            rows.append(Row(
                color=colors[i],
                text=_fill("alignment.groups", count=count, group_word=group_word,
                           names=_names(doc, group.members)),
            ))
            for member in group.members:
                el = by_id[member]
                rows.append(Row(
                    color=colors[i],
                    text=_fill("alignment.internal", name=display_name(el), align=el.internal_align),
                ))
        return rows

    if principle == "whitespace":
        margin = thresholds.margin_threshold(doc.canvas_width, doc.canvas_height)
        rows.append(Row(color=GUIDE_GRAY, text=_fill("whitespace.guides", margin=_px(margin))))
        for el in texts:
            ext = extents.get(el.id)
            if ext is None:
                continue
            edge = _nearest_edge(ext.overall_bbox, doc.canvas_width, doc.canvas_height)
            rows.append(Row(
                color=GUIDE_GRAY,
                text=_fill("whitespace.position", name=display_name(el), edge=edge),
            ))
        return rows

    if principle == "unity":
        colors = unity_element_colors(doc)
        for el in texts:
            family, style, size, color_value = result.unity.properties[el.id]
            rows.append(Row(
                color=colors[el.id],
                text=_fill("unity.properties", name=display_name(el), family=family,
                           style=style, size=f"{size:g}", color=color_value),
            ))
        counts = result.unity.distinct_counts
        rows.append(Row(
            color=GUIDE_GRAY,
            text=_fill("unity.counts", families=counts.get("font_family", 0),
                       styles=counts.get("font_style", 0), sizes=counts.get("font_size", 0),
                       colors=counts.get("color", 0)),
        ))
        return rows

    raise ValueError(f"unknown principle: {principle!r}")


def _solution_rows(
    principle: str,
    doc: DesignDocument,
    result: CritiqueResult,
    thresholds: Thresholds,
) -> tuple[list[Row], list[Row]]:
    report = result.report(principle)
    by_id = {el.id: el for el in doc.text_elements()}
    rows: list[Row] = []
    actions = [
        Row(color=SUGGESTION_GREEN, text=action_sentence(issue.suggestion, doc))
        for issue in report.issues
    ]

    if report.issues:
        if principle == "hierarchy":
            title = display_name(by_id.get(result.hierarchy.title_candidate))
            for issue in report.issues:
                if issue.kind == "weak_point_of_entry":
                    rows.append(Row(ISSUE_RED, _fill("hierarchy.weak_point_of_entry", title=title)))
                else:
                    rows.append(Row(ISSUE_RED, _fill(
                        "hierarchy.competing_emphasis", title=title,
                        competitors=_names(doc, issue.target_ids),
                    )))
        elif principle == "alignment":
            for issue in report.issues:
                if issue.kind == "too_many_groups":
                    rows.append(Row(ISSUE_RED, _fill(
                        "alignment.too_many_groups", names=_names(doc, issue.target_ids),
                    )))
            for mismatch in report.mismatches:
                rows.append(Row(ISSUE_RED, _fill(
                    "alignment.internal_external_mismatch",
                    name=_names(doc, (mismatch.element_id,)),
                    external=mismatch.external_side,
                    internal=mismatch.internal_align,
                )))
        elif principle == "whitespace":
            for violation in report.margin_violations:
                rows.append(Row(ISSUE_RED, _fill(
                    "whitespace.margin",
                    name=_names(doc, (violation.element_id,)),
                    edge=f"{violation.edge} edge",
                )))
            for pair in report.pair_violations:
                rows.append(Row(ISSUE_RED, _fill(
                    "whitespace.pair_spacing", names=_names(doc, (pair.id_a, pair.id_b)),
                )))
            for ragged in report.ragged_elements:
                rows.append(Row(ISSUE_RED, _fill(
                    "whitespace.ragged_edge", name=_names(doc, (ragged.element_id,)),
                )))
        elif principle == "unity":
            values = _unity_value_lists(doc)
            for issue in report.issues:
                rows.append(Row(ISSUE_RED, _fill(
                    "unity.too_many_variances", names=_names(doc, issue.target_ids),
                    families=values["font_family"], styles=values["font_style"],
                    sizes=values["font_size"], colors=values["color"],
                )))
        return rows, actions

    # Clean principle: confirmation rows, empty actions.
    if principle == "hierarchy":
        if result.hierarchy.title_candidate is not None:
            title = display_name(by_id.get(result.hierarchy.title_candidate))
            rows.append(Row(SUGGESTION_GREEN, _fill("hierarchy.confirm", title=title)))
    elif principle == "alignment":
        count = len(result.alignment.groups)
        if count:
            axis_word = "axis" if count == 1 else "axes"
            rows.append(Row(SUGGESTION_GREEN, _fill(
                "alignment.confirm", count=count, axis_word=axis_word,
            )))
    elif principle == "whitespace":
        margin = thresholds.margin_threshold(doc.canvas_width, doc.canvas_height)
        rows.append(Row(SUGGESTION_GREEN, _fill("whitespace.confirm", margin=_px(margin))))
    elif principle == "unity":
        counts = result.unity.distinct_counts
        rows.append(Row(SUGGESTION_GREEN, _fill(
            "unity.confirm", families=counts.get("font_family", 0),
            styles=counts.get("font_style", 0), sizes=counts.get("font_size", 0),
            colors=counts.get("color", 0),
        )))
    return rows, []
