from __future__ import annotations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from critiq.model import TextElement
from critiq.textmetrics import fallback_provider, measure_text

from conftest import make_doc, make_text


def text_el(content, size=10, w=300, mult=1.2, align="left", x=50, y=40) -> TextElement:
    doc = make_doc([make_text("t", x, y, w, content, size, align=align, mult=mult)])
    return doc.elements[0]


def test_fallback_advance_is_point_six_of_size():
    p = fallback_provider()
    assert p.advance("W", "Anything", "regular", 20) == 12
    assert p.advance("i", "Other", "bold", 20) == 12


def test_fallback_advance_linear_in_size():
    p = fallback_provider()
    assert p.advance("a", "F", "regular", 0.001) < 0.001
    for size in (1, 7, 16, 64):
        assert p.advance("a", "F", "regular", 2 * size) == 2 * p.advance("a", "F", "regular", size)


def test_ten_char_line_width():
    ext = measure_text(text_el("abcdefghij", size=16), fallback_provider())
    assert ext.lines[0].bbox.width == pytest.approx(96, abs=1e-9)


def test_empty_content_zero_lines():
    ext = measure_text(text_el("", size=10, x=7, y=9), fallback_provider())
    assert ext.lines == ()
    assert (ext.overall_bbox.x, ext.overall_bbox.y) == (7, 9)
    assert ext.overall_bbox.width == 0 and ext.overall_bbox.height == 0


def test_two_char_line_width():
    ext = measure_text(text_el("Hi", size=10), fallback_provider())
    assert ext.lines[0].bbox.width == 12  # 2 x 0.6 x 10


def test_explicit_newline_line_positions():
    ext = measure_text(text_el("a\nb", size=10, mult=1.2, y=40), fallback_provider())
    assert len(ext.lines) == 2
    assert ext.line_height == 12
    assert ext.lines[0].bbox.y == 40
    assert ext.lines[1].bbox.y == 52


def test_alignment_offsets():
    # 2-char line is 12 px wide in a 100 px box.
    for align, expected_x in (("left", 50.0), ("justify", 50.0),
                              ("center", 50 + 44.0), ("right", 50 + 88.0)):
        ext = measure_text(text_el("Hi", size=10, w=100, align=align), fallback_provider())
        assert ext.lines[0].bbox.x == expected_x, align


def test_greedy_wrap_breaks_at_whitespace():
    # 25 chars fit per line at size 10 in a 150 px box (6 px per char).
    ext = measure_text(text_el("aaaa bbbb cccc dddd", size=10, w=66), fallback_provider())
    assert [l.text for l in ext.lines] == ["aaaa bbbb", "cccc dddd"]
    assert all(l.bbox.width <= 66 for l in ext.lines)


def test_single_long_word_overflows_at_true_width():
    ext = measure_text(text_el("abcdefghijkl", size=10, w=30), fallback_provider())
    assert len(ext.lines) == 1
    assert ext.lines[0].bbox.width == 72  # true width, wider than the box


def test_overall_bbox_contains_lines():
    ext = measure_text(text_el("one two three four five six", size=12, w=100),
                       fallback_provider())
    for line in ext.lines:
        assert line.bbox.x >= ext.overall_bbox.x - 1e-9
        assert line.bbox.right <= ext.overall_bbox.right + 1e-9
        assert line.bbox.y >= ext.overall_bbox.y - 1e-9
        assert line.bbox.bottom <= ext.overall_bbox.bottom + 1e-9


def test_lines_vertically_ordered_non_overlapping():
    ext = measure_text(text_el("a\nb\nc", size=10, mult=0.7), fallback_provider())
    for first, second in zip(ext.lines, ext.lines[1:]):
        assert second.bbox.y >= first.bbox.bottom - 1e-9


_words = st.lists(st.text(alphabet="abcdefg", min_size=1, max_size=8), min_size=1, max_size=8)


@settings(max_examples=80)
@given(_words, st.integers(2, 40), st.integers(20, 400))
def test_scale_linearity(words, size, width):
    # Doubling font size with the box doubles every line box and the line height.
    content = " ".join(words)
    p = fallback_provider()
    small = measure_text(text_el(content, size=size, w=width), p)
    large = measure_text(text_el(content, size=2 * size, w=2 * width), p)
    assert large.line_height == 2 * small.line_height
    assert len(large.lines) == len(small.lines)
    for a, b in zip(small.lines, large.lines):
        assert a.text == b.text
        assert b.bbox.width == 2 * a.bbox.width
        assert b.bbox.height == 2 * a.bbox.height


@settings(max_examples=60)
@given(_words, st.integers(2, 40), st.integers(20, 400))
def test_wrap_soundness(words, size, width):
    content = " ".join(words)
    ext = measure_text(text_el(content, size=size, w=width), fallback_provider())
    for line in ext.lines:
        if " " in line.text:
            assert line.bbox.width <= width + 1e-9
        # single unbreakable words may overflow at their true width


@settings(max_examples=40)
@given(_words, st.integers(2, 40))
def test_determinism(words, size):
    el = text_el(" ".join(words), size=size)
    p = fallback_provider()
    assert measure_text(el, p) == measure_text(el, p)
