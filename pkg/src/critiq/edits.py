"""Scripted application of analyzer suggestions to a document."""

from __future__ import annotations

from dataclasses import replace

from .errors import StaleSuggestion
from .issues import Suggestion
from .model import DesignDocument, TextElement


def _require_text(doc: DesignDocument, element_id: str) -> TextElement:
    el = doc.element(element_id)
    if el is None or not isinstance(el, TextElement):
        raise StaleSuggestion(element_id)
    return el


def apply_suggestion(doc: DesignDocument, suggestion: Suggestion) -> DesignDocument:
    """Return the edited document; the input is never mutated.

    Raises StaleSuggestion when a target element no longer exists.
    """
    kind = suggestion.kind
    params = suggestion.parameters

    if kind in ("enlarge", "shrink"):
        sizes = params["font_sizes"]
        for element_id in suggestion.target_ids:
            el = _require_text(doc, element_id)
            doc = doc.with_element(replace(el, font_size=float(sizes[element_id])))
        return doc

    if kind == "move_by":
        dx, dy = float(params["dx"]), float(params["dy"])
        for element_id in suggestion.target_ids:
            el = doc.element(element_id)
            if el is None:
                raise StaleSuggestion(element_id)
            doc = doc.with_element(replace(el, x=el.x + dx, y=el.y + dy))
        return doc

    if kind == "change_internal_align":
        align = params["internal_align"]
        for element_id in suggestion.target_ids:
            el = _require_text(doc, element_id)
            doc = doc.with_element(replace(el, internal_align=align))
        return doc

    if kind == "merge_to_axis":
        axis_kind = params["axis_kind"]
        axis_x = float(params["axis_x"])
        for element_id in suggestion.target_ids:
            el = _require_text(doc, element_id)
            if axis_kind == "left":
                new_x = axis_x
            elif axis_kind == "center":
                new_x = axis_x - el.box_width / 2
            else:
                new_x = axis_x - el.box_width
            doc = doc.with_element(replace(el, x=new_x))
        return doc

    if kind == "reduce_property_count":
        prop = params["property"]
        mapping = {entry["from"]: entry["to"] for entry in params["mapping"]}
        for element_id in suggestion.target_ids:
            el = _require_text(doc, element_id)
            value = getattr(el, prop)
            if value in mapping:
                doc = doc.with_element(replace(el, **{prop: mapping[value]}))
        return doc

    if kind == "even_out_lines":
        width = float(params["box_width"])
        for element_id in suggestion.target_ids:
            el = _require_text(doc, element_id)
            doc = doc.with_element(replace(el, box_width=width))
        return doc

    raise ValueError(f"unknown suggestion kind: {kind!r}")
