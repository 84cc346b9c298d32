"""Deterministic SVG 1.1 rendering of a document plus an optional overlay.

Output is byte-stable for identical inputs: fixed attribute order, fixed
number formatting (two decimals, trailing zeros trimmed), no generated ids.
"""

from __future__ import annotations

import math
from xml.sax.saxutils import escape, quoteattr

from .annotations import AnnotationLayer, Arrow, DashedLine, FilledRect, GrayBox, Label
from .model import DesignDocument, GraphicElement, ImageElement, TextElement
from .palette import GUIDE_GRAY
from .textmetrics import TextExtent

_ASCENT_RATIO = 0.8  # nominal baseline offset within a line box
_LABEL_SIZE = 12
_DASH = "6 4"
_HEAD = 7.0  # arrowhead length in px


def _n(value: float) -> str:
    v = round(float(value), 2) + 0.0  # normalize -0.0
    text = f"{v:.2f}".rstrip("0").rstrip(".")
    return text if text else "0"


def _weight_style(font_style: str) -> tuple[str, str]:
    weight = "bold" if "bold" in font_style else "normal"
    style = "italic" if "italic" in font_style else "normal"
    return weight, style


def _text_line(x: float, y: float, text: str, family: str, size: float,
               color: str, weight: str = "normal", style: str = "normal") -> str:
    return (
        f'<text x="{_n(x)}" y="{_n(y)}" font-family={quoteattr(family)} '
        f'font-size="{_n(size)}" font-weight="{weight}" font-style="{style}" '
        f'fill="{color}">{escape(text)}</text>'
    )


def _render_element(el, extents: dict[str, TextExtent]) -> list[str]:
    if isinstance(el, TextElement):
        ext = extents.get(el.id)
        if ext is None:
            return []
        weight, style = _weight_style(el.font_style)
        out = []
        for line in ext.lines:
            if not line.text:
                continue
            baseline = line.bbox.y + _ASCENT_RATIO * el.font_size
            out.append(_text_line(line.bbox.x, baseline, line.text, el.font_family,
                                  el.font_size, el.color, weight, style))
        return out
    if isinstance(el, ImageElement):
        x, y, w, h = el.x, el.y, el.width, el.height
        return [
            f'<rect x="{_n(x)}" y="{_n(y)}" width="{_n(w)}" height="{_n(h)}" '
            f'fill="#e8e8e8" stroke="#9e9e9e"/>',
            f'<line x1="{_n(x)}" y1="{_n(y)}" x2="{_n(x + w)}" y2="{_n(y + h)}" stroke="#9e9e9e"/>',
            f'<line x1="{_n(x + w)}" y1="{_n(y)}" x2="{_n(x)}" y2="{_n(y + h)}" stroke="#9e9e9e"/>',
        ]
    if isinstance(el, GraphicElement):
        if el.shape == "ellipse":
            cx, cy = el.x + el.width / 2, el.y + el.height / 2
            return [f'<ellipse cx="{_n(cx)}" cy="{_n(cy)}" rx="{_n(el.width / 2)}" '
                    f'ry="{_n(el.height / 2)}" fill="{el.fill}"/>']
        return [f'<rect x="{_n(el.x)}" y="{_n(el.y)}" width="{_n(el.width)}" '
                f'height="{_n(el.height)}" fill="{el.fill}"/>']
    return []


def _render_primitive(p) -> list[str]:
    if isinstance(p, FilledRect):
        b = p.bbox
        return [f'<rect x="{_n(b.x)}" y="{_n(b.y)}" width="{_n(b.width)}" height="{_n(b.height)}" '
                f'fill="{p.color}" fill-opacity="{_n(p.opacity)}"/>']
    if isinstance(p, GrayBox):
        b = p.bbox
        return [f'<rect x="{_n(b.x)}" y="{_n(b.y)}" width="{_n(b.width)}" height="{_n(b.height)}" '
                f'fill="{GUIDE_GRAY}" fill-opacity="0.6"/>']
    if isinstance(p, DashedLine):
        return [f'<line x1="{_n(p.p1[0])}" y1="{_n(p.p1[1])}" x2="{_n(p.p2[0])}" y2="{_n(p.p2[1])}" '
                f'stroke="{p.color}" stroke-width="1.5" stroke-dasharray="{_DASH}"/>']
    if isinstance(p, Arrow):
        dash = f' stroke-dasharray="{_DASH}"' if p.stroke == "dashed" else ""
        out = [f'<line x1="{_n(p.p1[0])}" y1="{_n(p.p1[1])}" x2="{_n(p.p2[0])}" y2="{_n(p.p2[1])}" '
               f'stroke="{p.color}" stroke-width="2"{dash}/>']
        dx, dy = p.p2[0] - p.p1[0], p.p2[1] - p.p1[1]
        length = math.hypot(dx, dy)
        if length > 1e-9:
            ux, uy = dx / length, dy / length
            bx, by = p.p2[0] - _HEAD * ux, p.p2[1] - _HEAD * uy
            px, py = -uy * _HEAD / 2, ux * _HEAD / 2
            points = (f"{_n(p.p2[0])},{_n(p.p2[1])} {_n(bx + px)},{_n(by + py)} "
                      f"{_n(bx - px)},{_n(by - py)}")
            out.append(f'<polygon points="{points}" fill="{p.color}"/>')
        return out
    if isinstance(p, Label):
        return [_text_line(p.anchor[0], p.anchor[1], p.text, "sans-serif", _LABEL_SIZE, p.color)]
    return []


def render_svg(
    doc: DesignDocument,
    layer: AnnotationLayer | None,
    extents: dict[str, TextExtent],
) -> str:
    """Background, element placeholders, then overlay primitives, in order."""
    w, h = doc.canvas_width, doc.canvas_height
    parts = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{_n(w)}" '
        f'height="{_n(h)}" viewBox="0 0 {_n(w)} {_n(h)}">',
        f'<rect x="0" y="0" width="{_n(w)}" height="{_n(h)}" fill="{doc.background}"/>',
    ]
    for el in doc.elements:
        parts.extend(_render_element(el, extents))
    if layer is not None:
        parts.append(f'<g data-principle="{layer.principle}" data-mode="{layer.mode}">')
        for p in layer.primitives:
            parts.extend(_render_primitive(p))
        parts.append("</g>")
    parts.append("</svg>")
    return "\n".join(parts) + "\n"
