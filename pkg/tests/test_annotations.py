from __future__ import annotations

import pytest

from critiq.analyzers import detect_all
from critiq.annotations import (
    Arrow,
    FilledRect,
    GrayBox,
    Label,
    gen_awareness,
    gen_solution,
)
from critiq.explanations import TEMPLATES, gen_explanation
from critiq.issues import ISSUE_KINDS, PRINCIPLES
from critiq.palette import AWARENESS_SERIES, GUIDE_GRAY, ISSUE_RED, SUGGESTION_GREEN
from critiq.svgrender import render_svg
from critiq.textmetrics import fallback_provider, measure_document

from conftest import GOLDEN_DIR, make_doc, make_text

MODES = ("awareness", "solution")


def assets_for(doc):
    provider = fallback_provider()
    result = detect_all(doc, provider)
    extents = measure_document(doc.text_elements(), provider)
    return result, extents


def all_layers(doc):
    result, extents = assets_for(doc)
    for principle in PRINCIPLES:
        yield gen_awareness(principle, doc, result, extents), result, extents
        yield gen_solution(principle, doc, result, extents), result, extents


def test_palette_constants():
    assert ISSUE_RED not in AWARENESS_SERIES
    assert SUGGESTION_GREEN not in AWARENESS_SERIES


def test_awareness_layers_never_use_red_or_green(corpus_docs):
    for doc in corpus_docs.values():
        result, extents = assets_for(doc)
        for principle in PRINCIPLES:
            layer = gen_awareness(principle, doc, result, extents)
            colors = layer.colors()
            assert ISSUE_RED not in colors
            assert SUGGESTION_GREEN not in colors


def test_solution_layers_with_issues_have_red_and_green(corpus_docs):
    for doc in corpus_docs.values():
        result, extents = assets_for(doc)
        for principle in PRINCIPLES:
            layer = gen_solution(principle, doc, result, extents)
            colors = layer.colors()
            if result.issue_flags[principle]:
                assert ISSUE_RED in colors
                assert SUGGESTION_GREEN in colors
            else:
                assert ISSUE_RED not in colors
                neutral = set(AWARENESS_SERIES) | {GUIDE_GRAY, SUGGESTION_GREEN}
                assert colors <= neutral


def test_layer_explanation_color_coherence(corpus_docs):
    for doc in corpus_docs.values():
        result, extents = assets_for(doc)
        for principle in PRINCIPLES:
            for mode in MODES:
                generate = gen_awareness if mode == "awareness" else gen_solution
                layer = generate(principle, doc, result, extents)
                table = gen_explanation(principle, mode, doc, result, extents)
                swatches = {row.color for row in table.all_rows()}
                assert set(layer.group_color_map.values()) == swatches, (
                    doc, principle, mode)


def test_no_unfilled_template_slots(corpus_docs):
    for doc in corpus_docs.values():
        result, extents = assets_for(doc)
        for principle in PRINCIPLES:
            for mode in MODES:
                table = gen_explanation(principle, mode, doc, result, extents)
                for row in table.all_rows():
                    assert "[" not in row.text and "]" not in row.text
                    assert "{" not in row.text and "}" not in row.text


def test_every_issue_kind_has_one_template():
    for principle, kinds in ISSUE_KINDS.items():
        for kind in kinds:
            assert f"{principle}.{kind}" in TEMPLATES


def test_filled_rects_match_measured_boxes(corpus_docs):
    for doc in corpus_docs.values():
        result, extents = assets_for(doc)
        line_boxes = {
            (round(l.bbox.x, 3), round(l.bbox.y, 3), round(l.bbox.width, 3), round(l.bbox.height, 3))
            for ext in extents.values() for l in ext.lines
        }
        overall = {
            (round(e.overall_bbox.x, 3), round(e.overall_bbox.y, 3),
             round(e.overall_bbox.width, 3), round(e.overall_bbox.height, 3))
            for e in extents.values()
        }
        allowed = line_boxes | overall
        for layer, _, _ in all_layers(doc):
            for p in layer.primitives:
                if isinstance(p, (FilledRect, GrayBox)):
                    key = (p.bbox.x, p.bbox.y, p.bbox.width, p.bbox.height)
                    match = any(
                        all(abs(key[j] - cand[j]) <= 0.5 for j in range(4))
                        for cand in allowed
                    )
                    assert match, (p, doc)


def test_primitives_within_canvas_with_slack(corpus_docs):
    for doc in corpus_docs.values():
        w, h = doc.canvas_width, doc.canvas_height
        x_lo, x_hi = -0.05 * w, 1.05 * w
        y_lo, y_hi = -0.05 * h, 1.05 * h
        for layer, _, _ in all_layers(doc):
            for p in layer.primitives:
                points = []
                if isinstance(p, (FilledRect, GrayBox)):
                    points = [(p.bbox.x, p.bbox.y), (p.bbox.right, p.bbox.bottom)]
                    assert 0 < getattr(p, "opacity", 1.0) <= 1.0
                elif isinstance(p, Arrow):
                    points = [p.p1, p.p2]
                elif isinstance(p, Label):
                    points = [p.anchor]
                else:
                    points = [p.p1, p.p2]
                for x, y in points:
                    assert x_lo - 1e-6 <= x <= x_hi + 1e-6
                    assert y_lo - 1e-6 <= y <= y_hi + 1e-6


def test_z_order_fills_guides_arrows_labels(corpus_docs):
    rank = {"filled_rect": 0, "gray_box": 0, "dashed_line": 1, "arrow": 2, "label": 3}
    for doc in corpus_docs.values():
        for layer, _, _ in all_layers(doc):
            ranks = [rank[p.to_dict()["kind"]] for p in layer.primitives]
            assert ranks == sorted(ranks)


def test_empty_doc_awareness_whitespace_has_margin_guides():
    doc = make_doc([])
    result, extents = assets_for(doc)
    layer = gen_awareness("whitespace", doc, result, extents)
    dashed = [p for p in layer.primitives if p.to_dict()["kind"] == "dashed_line"]
    assert len(dashed) == 4
    rects = [p for p in layer.primitives if p.to_dict()["kind"] in ("filled_rect", "gray_box")]
    assert rects == []


def test_two_alignment_groups_two_colors_two_axes():
    doc = make_doc([
        make_text("a", 80, 80, 200, "left text", 16),
        make_text("b", 80, 300, 200, "more left", 16),
        make_text("c", 700, 80, 200, "right text", 16, align="right"),
    ])
    result, extents = assets_for(doc)
    layer = gen_awareness("alignment", doc, result, extents)
    assert len(result.alignment.groups) == 2
    axes = [p for p in layer.primitives if p.to_dict()["kind"] == "dashed_line"]
    assert len(axes) == 2
    rect_colors = {p.color for p in layer.primitives if isinstance(p, FilledRect)}
    assert len(rect_colors) == 2


def test_weak_point_solution_red_title_green_arrows():
    doc = make_doc([
        make_text("title", 80, 80, 500, "quiet title", 16),
        make_text("body", 80, 400, 500, "quiet body", 14),
    ])
    result, extents = assets_for(doc)
    layer = gen_solution("hierarchy", doc, result, extents)
    reds = [p for p in layer.primitives if isinstance(p, FilledRect) and p.color == ISSUE_RED]
    assert len(reds) == 1
    arrows = [p for p in layer.primitives if isinstance(p, Arrow)]
    assert len(arrows) == 4
    assert all(a.color == SUGGESTION_GREEN for a in arrows)


def test_clean_hierarchy_confirms_title_in_green():
    doc = make_doc([
        make_text("title", 80, 80, 500, "BOLD TITLE", 40, style="bold"),
        make_text("body", 80, 400, 500, "calm body", 16),
    ])
    result, extents = assets_for(doc)
    layer = gen_solution("hierarchy", doc, result, extents)
    assert layer.colors() == {SUGGESTION_GREEN}
    assert len(layer.primitives) == 4  # dashed outline around the title


def test_unity_count_label_red_with_green_down_arrow():
    doc = make_doc([
        make_text(f"e{i}", 80, 80 + 160 * i, 300, "x", size)
        for i, size in enumerate((14, 16, 18, 20))
    ])
    result, extents = assets_for(doc)
    layer = gen_solution("unity", doc, result, extents)
    red_labels = [p for p in layer.primitives
                  if isinstance(p, Label) and p.color == ISSUE_RED]
    assert any("4 font sizes" in l.text for l in red_labels)
    arrows = [p for p in layer.primitives if isinstance(p, Arrow)]
    assert any(a.p2[1] > a.p1[1] and a.p1[0] == a.p2[0] for a in arrows)  # points down


def test_internal_align_suggestion_uses_dashed_arrow():
    doc = make_doc([
        make_text("skew", 80, 80, 200, "hello", 16, align="center"),
        make_text("rest", 80, 400, 200, "world", 16),
    ])
    result, extents = assets_for(doc)
    layer = gen_solution("alignment", doc, result, extents)
    dashed_arrows = [p for p in layer.primitives
                     if isinstance(p, Arrow) and p.stroke == "dashed"]
    assert dashed_arrows, "realignment should be drawn with a dashed arrow"


# --- SVG rendering -------------------------------------------------------------------

def test_render_base_design_only(seed_doc):
    extents = measure_document(seed_doc.text_elements(), fallback_provider())
    svg = render_svg(seed_doc, None, extents)
    assert svg.startswith('<?xml version="1.0"')
    assert "data-principle" not in svg
    assert svg.rstrip().endswith("</svg>")


def test_render_identical_bytes(seed_doc):
    result, extents = assets_for(seed_doc)
    layer = gen_solution("hierarchy", seed_doc, result, extents)
    a = render_svg(seed_doc, layer, extents)
    b = render_svg(seed_doc, layer, extents)
    assert a.encode() == b.encode()


def test_render_seed_solution_hierarchy_golden(seed_doc):
    result, extents = assets_for(seed_doc)
    layer = gen_solution("hierarchy", seed_doc, result, extents)
    golden = (GOLDEN_DIR / "seed_solution_hierarchy.svg").read_text(encoding="utf-8")
    assert render_svg(seed_doc, layer, extents) == golden
