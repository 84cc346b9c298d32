"""Per-line text measurement from font metrics.

Analyzers need line widths, heights, and boxes. A MetricsProvider supplies
character advances and vertical ratios; the fallback provider is a
deterministic estimator so measurements are machine-independent. Wrapping is
greedy, breaking only at whitespace, with no hyphenation.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Protocol

from .model import TextElement


@dataclass(frozen=True)
class BBox:
    x: float
    y: float
    width: float
    height: float

    @property
    def right(self) -> float:
        return self.x + self.width

    @property
    def bottom(self) -> float:
        return self.y + self.height

    def union(self, other: BBox) -> BBox:
        x0 = min(self.x, other.x)
        y0 = min(self.y, other.y)
        x1 = max(self.right, other.right)
        y1 = max(self.bottom, other.bottom)
        return BBox(x0, y0, x1 - x0, y1 - y0)


@dataclass(frozen=True)
class LineBox:
    line_index: int
    text: str
    bbox: BBox


@dataclass(frozen=True)
class TextExtent:
    element_id: str
    lines: tuple[LineBox, ...]
    overall_bbox: BBox
    line_height: float


class MetricsProvider(Protocol):
    """Immutable source of glyph advances and vertical font ratios."""

    def advance(self, char: str, font_family: str, font_style: str, font_size: float) -> float:
        ...

    def ascent(self, font_family: str, font_style: str, font_size: float) -> float:
        ...

    def descent(self, font_family: str, font_style: str, font_size: float) -> float:
        ...

    def line_box_height(self, font_family: str, font_style: str, font_size: float) -> float:
        ...


@dataclass(frozen=True)
class FallbackMetrics:
    """Deterministic estimator: every glyph advances 0.6 x font size."""

    advance_ratio: float = 0.6
    ascent_ratio: float = 0.8
    descent_ratio: float = 0.2

    def advance(self, char: str, font_family: str, font_style: str, font_size: float) -> float:
        return self.advance_ratio * font_size

    def ascent(self, font_family: str, font_style: str, font_size: float) -> float:
        return self.ascent_ratio * font_size

    def descent(self, font_family: str, font_style: str, font_size: float) -> float:
        return self.descent_ratio * font_size

    def line_box_height(self, font_family: str, font_style: str, font_size: float) -> float:
        return font_size


def fallback_provider() -> FallbackMetrics:
    return FallbackMetrics()


def line_width(text: str, element: TextElement, provider: MetricsProvider) -> float:
    total = 0.0
    for ch in text:
        total += provider.advance(ch, element.font_family, element.font_style, element.font_size)
    return total


def _wrap_paragraph(paragraph: str, element: TextElement, provider: MetricsProvider) -> list[str]:
    """Greedy word wrap at box_width; a too-long word overflows on its own line."""
    words = paragraph.split()
    if not words:
        return [""]
    lines: list[str] = []
    current = words[0]
    for word in words[1:]:
        candidate = f"{current} {word}"
        if line_width(candidate, element, provider) <= element.box_width:
            current = candidate
        else:
            lines.append(current)
            current = word
    lines.append(current)
    return lines


def measure_text(element: TextElement, provider: MetricsProvider) -> TextExtent:
    """One LineBox per content line: explicit newlines first, then word wrap.

    Line i sits at y + i * line_height; its horizontal offset inside the box
    follows internal_align (justify measures as left).
    """
    lh = element.line_height_multiplier * element.font_size
    if element.content == "":
        return TextExtent(
            element_id=element.id,
            lines=(),
            overall_bbox=BBox(element.x, element.y, 0.0, 0.0),
            line_height=lh,
        )

    texts: list[str] = []
    for paragraph in element.content.split("\n"):
        texts.extend(_wrap_paragraph(paragraph, element, provider))

    # Line boxes must not overlap vertically even when the multiplier < 1.
    box_h = min(
        provider.line_box_height(element.font_family, element.font_style, element.font_size), lh
    )
    lines: list[LineBox] = []
    for i, text in enumerate(texts):
        width = line_width(text, element, provider)
        if element.internal_align == "center":
            dx = (element.box_width - width) / 2
        elif element.internal_align == "right":
            dx = element.box_width - width
        else:  # left and justify measure flush left
            dx = 0.0
        y = element.y + i * lh
        height = box_h if text else 0.0
        lines.append(LineBox(line_index=i, text=text, bbox=BBox(element.x + dx, y, width, height)))

    overall = lines[0].bbox
    for line in lines[1:]:
        overall = overall.union(line.bbox)
    return TextExtent(
        element_id=element.id, lines=tuple(lines), overall_bbox=overall, line_height=lh
    )


def measure_document(doc_text_elements: list[TextElement], provider: MetricsProvider) -> dict[str, TextExtent]:
    """Extents for every text element with non-empty content."""
    return {
        el.id: measure_text(el, provider)
        for el in doc_text_elements
        if el.content != ""
    }
