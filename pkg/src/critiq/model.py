"""Canvas document model: schema, parsing, canonical serialization, diffing.

The document is the unit of analysis and the wire payload of the critique
service. Coordinates use a top-left origin with y growing downward, in
CSS-style pixels; font sizes are treated as 1 pt == 1 px.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, fields, replace
from typing import Any, Union

from .errors import DuplicateId, SchemaViolation

FONT_STYLES = ("regular", "bold", "italic", "bold-italic")
INTERNAL_ALIGNS = ("left", "center", "right", "justify")

_HEX_COLOR = re.compile(r"^#[0-9a-fA-F]{6}$")


@dataclass(frozen=True)
class TextElement:
    """One block of text with a single style; x/y is the box top-left."""

    id: str
    x: float
    y: float
    box_width: float
    content: str
    font_family: str
    font_style: str
    font_size: float
    line_height_multiplier: float
    color: str
    internal_align: str

    type: str = "text"


@dataclass(frozen=True)
class ImageElement:
    id: str
    x: float
    y: float
    width: float
    height: float
    source: str

    type: str = "image"


@dataclass(frozen=True)
class GraphicElement:
    id: str
    x: float
    y: float
    width: float
    height: float
    shape: str
    fill: str

    type: str = "graphic"


Element = Union[TextElement, ImageElement, GraphicElement]


@dataclass(frozen=True)
class DesignDocument:
    canvas_width: float
    canvas_height: float
    background: str
    elements: tuple[Element, ...]

    def element(self, element_id: str) -> Element | None:
        for el in self.elements:
            if el.id == element_id:
                return el
        return None

    def text_elements(self) -> list[TextElement]:
        return [el for el in self.elements if isinstance(el, TextElement)]

    def with_element(self, updated: Element) -> DesignDocument:
        """Return a copy with the element of the same id replaced."""
        els = tuple(updated if el.id == updated.id else el for el in self.elements)
        return replace(self, elements=els)


def empty_document(width: float = 1080, height: float = 1080) -> DesignDocument:
    return DesignDocument(
        canvas_width=float(width),
        canvas_height=float(height),
        background="#ffffff",
        elements=(),
    )


# --- parsing -----------------------------------------------------------------

def _require(obj: dict, key: str, path: str) -> Any:
    if key not in obj:
        raise SchemaViolation(_join(path, key), "missing required field")
    return obj[key]


def _join(path: str, key: str) -> str:
    return key if not path else f"{path}.{key}"


def _number(value: Any, path: str, *, positive: bool = False) -> float:
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise SchemaViolation(path, f"expected a number, got {type(value).__name__}")
    out = float(value)
    if out != out or out in (float("inf"), float("-inf")):
        raise SchemaViolation(path, "number must be finite")
    if positive and out <= 0:
        raise SchemaViolation(path, f"must be > 0, got {value}")
    return out


def _string(value: Any, path: str, *, nonempty: bool = False) -> str:
    if not isinstance(value, str):
        raise SchemaViolation(path, f"expected a string, got {type(value).__name__}")
    if nonempty and not value:
        raise SchemaViolation(path, "must be a non-empty string")
    return value


def _color(value: Any, path: str) -> str:
    text = _string(value, path)
    if not _HEX_COLOR.match(text):
        raise SchemaViolation(path, f"expected #rrggbb color, got {text!r}")
    return text.lower()


def _enum(value: Any, path: str, allowed: tuple[str, ...]) -> str:
    text = _string(value, path)
    if text not in allowed:
        raise SchemaViolation(path, f"expected one of {allowed}, got {text!r}")
    return text


def _parse_element(obj: Any, path: str) -> Element:
    if not isinstance(obj, dict):
        raise SchemaViolation(path, f"expected an object, got {type(obj).__name__}")
    kind = _enum(_require(obj, "type", path), _join(path, "type"), ("text", "image", "graphic"))
    el_id = _string(_require(obj, "id", path), _join(path, "id"), nonempty=True)
    x = _number(_require(obj, "x", path), _join(path, "x"))
    y = _number(_require(obj, "y", path), _join(path, "y"))
    if kind == "text":
        return TextElement(
            id=el_id,
            x=x,
            y=y,
            box_width=_number(_require(obj, "box_width", path), _join(path, "box_width"), positive=True),
            content=_string(_require(obj, "content", path), _join(path, "content")),
            font_family=_string(_require(obj, "font_family", path), _join(path, "font_family"), nonempty=True),
            font_style=_enum(_require(obj, "font_style", path), _join(path, "font_style"), FONT_STYLES),
            font_size=_number(_require(obj, "font_size", path), _join(path, "font_size"), positive=True),
            line_height_multiplier=_number(
                obj.get("line_height_multiplier", 1.2), _join(path, "line_height_multiplier"), positive=True
            ),
            color=_color(_require(obj, "color", path), _join(path, "color")),
            internal_align=_enum(
                _require(obj, "internal_align", path), _join(path, "internal_align"), INTERNAL_ALIGNS
            ),
        )
    width = _number(_require(obj, "width", path), _join(path, "width"), positive=True)
    height = _number(_require(obj, "height", path), _join(path, "height"), positive=True)
    if kind == "image":
        return ImageElement(
            id=el_id, x=x, y=y, width=width, height=height,
            source=_string(_require(obj, "source", path), _join(path, "source")),
        )
    return GraphicElement(
        id=el_id, x=x, y=y, width=width, height=height,
        shape=_string(_require(obj, "shape", path), _join(path, "shape"), nonempty=True),
        fill=_color(_require(obj, "fill", path), _join(path, "fill")),
    )


def document_from_dict(obj: Any) -> DesignDocument:
    """Validate a decoded JSON object into a DesignDocument."""
    if not isinstance(obj, dict):
        raise SchemaViolation("", f"expected a JSON object, got {type(obj).__name__}")
    width = _number(_require(obj, "canvas_width", ""), "canvas_width", positive=True)
    height = _number(_require(obj, "canvas_height", ""), "canvas_height", positive=True)
    background = _color(_require(obj, "background", ""), "background")
    raw_elements = _require(obj, "elements", "")
    if not isinstance(raw_elements, list):
        raise SchemaViolation("elements", f"expected an array, got {type(raw_elements).__name__}")
    elements: list[Element] = []
    seen: set[str] = set()
    for i, raw in enumerate(raw_elements):
        el = _parse_element(raw, f"elements[{i}]")
        if el.id in seen:
            raise DuplicateId(el.id)
        seen.add(el.id)
        elements.append(el)
    return DesignDocument(
        canvas_width=width, canvas_height=height, background=background, elements=tuple(elements)
    )


def parse_design(json_text: str) -> DesignDocument:
    """Parse design JSON text into a validated document.

    Raises SchemaViolation (naming the bad path) or DuplicateId.
    """
    try:
        obj = json.loads(json_text)
    except json.JSONDecodeError as exc:
        raise SchemaViolation("", f"invalid JSON: {exc}") from exc
    return document_from_dict(obj)


# --- canonical serialization --------------------------------------------------

# Field order is frozen so that serialization is byte-stable; new fields must
# be appended deliberately.
_TEXT_ORDER = (
    "id", "type", "x", "y", "box_width", "content", "font_family", "font_style",
    "font_size", "line_height_multiplier", "color", "internal_align",
)
_IMAGE_ORDER = ("id", "type", "x", "y", "width", "height", "source")
_GRAPHIC_ORDER = ("id", "type", "x", "y", "width", "height", "shape", "fill")


def _num_out(value: float) -> int | float:
    # Integral values print without a fraction; others use repr (shortest
    # roundtrip) via json.dumps.
    return int(value) if float(value).is_integer() else float(value)


def element_to_dict(el: Element) -> dict[str, Any]:
    order = {"text": _TEXT_ORDER, "image": _IMAGE_ORDER, "graphic": _GRAPHIC_ORDER}[el.type]
    named = {f.name: getattr(el, f.name) for f in fields(el)}
    out: dict[str, Any] = {}
    for key in order:
        value = named[key]
        out[key] = _num_out(value) if isinstance(value, float) else value
    return out


def document_to_dict(doc: DesignDocument) -> dict[str, Any]:
    return {
        "canvas_width": _num_out(doc.canvas_width),
        "canvas_height": _num_out(doc.canvas_height),
        "background": doc.background,
        "elements": [element_to_dict(el) for el in doc.elements],
    }


def serialize_design(doc: DesignDocument) -> str:
    """Canonical JSON text: fixed key order, stable number formatting."""
    return json.dumps(document_to_dict(doc), indent=2, ensure_ascii=False) + "\n"


# --- diffing ------------------------------------------------------------------

class _Absent:
    """Marker for the missing side of an added/removed element."""

    def __repr__(self) -> str:  # pragma: no cover - cosmetic
        return "absent"


ABSENT = _Absent()


@dataclass(frozen=True)
class ChangeEntry:
    element_id: str  # element id, or a document-level key such as "background"
    property_path: str
    before_value: Any
    after_value: Any


@dataclass(frozen=True)
class ChangeSet:
    entries: tuple[ChangeEntry, ...]

    def __bool__(self) -> bool:
        return bool(self.entries)


_DOC_SCALARS = ("canvas_width", "canvas_height", "background")


def diff_designs(a: DesignDocument, b: DesignDocument) -> ChangeSet:
    """Entry per differing scalar property; add/remove as single entries."""
    entries: list[ChangeEntry] = []
    for key in _DOC_SCALARS:
        va, vb = getattr(a, key), getattr(b, key)
        if va != vb:
            entries.append(ChangeEntry(key, key, va, vb))

    ids_a = [el.id for el in a.elements]
    ids_b = [el.id for el in b.elements]
    by_a = {el.id: el for el in a.elements}
    by_b = {el.id: el for el in b.elements}

    for el_id in ids_a:
        if el_id not in by_b:
            entries.append(ChangeEntry(el_id, f"elements[{el_id}]", element_to_dict(by_a[el_id]), ABSENT))
    for el_id in ids_b:
        if el_id not in by_a:
            entries.append(ChangeEntry(el_id, f"elements[{el_id}]", ABSENT, element_to_dict(by_b[el_id])))

    for el_id in ids_a:
        ea, eb = by_a.get(el_id), by_b.get(el_id)
        if eb is None:
            continue
        if ea.type != eb.type:
            # A type morph replaces the whole element; report it as one entry.
            entries.append(ChangeEntry(el_id, f"elements[{el_id}].type", ea.type, eb.type))
            continue
        for f in fields(ea):
            if f.name in ("id", "type"):
                continue
            va, vb = getattr(ea, f.name), getattr(eb, f.name)
            if va != vb:
                entries.append(ChangeEntry(el_id, f"elements[{el_id}].{f.name}", va, vb))

    # Pure reordering leaves no scalar entries but the docs are not equal.
    if not entries and ids_a != ids_b:
        entries.append(ChangeEntry("elements", "elements.order", ids_a, ids_b))
    return ChangeSet(tuple(entries))
