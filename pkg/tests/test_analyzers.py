from __future__ import annotations

import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from critiq.analyzers import (
    analyze_alignment,
    analyze_hierarchy,
    analyze_unity,
    analyze_whitespace,
    detect_all,
)
from critiq.explanations import issue_message
from critiq.issues import PRINCIPLES, EmphasisLevel
from critiq.textmetrics import fallback_provider, measure_document

from conftest import make_doc, make_text


def measured(doc):
    return measure_document(doc.text_elements(), fallback_provider())


# --- hierarchy ------------------------------------------------------------------

def test_title_high_bodies_low_no_issue():
    # 48 pt title (line height 57.6) over three 14 pt bodies (16.8).
    doc = make_doc([
        make_text("title", 80, 80, 600, "BIG HEADLINE", 48, style="bold"),
        make_text("b1", 80, 300, 400, "first body line", 14),
        make_text("b2", 80, 420, 400, "second body line", 14),
        make_text("b3", 80, 540, 400, "third body line", 14),
    ])
    report = analyze_hierarchy(doc, measured(doc))
    assert report.emphasis["title"] is EmphasisLevel.HIGH
    assert all(report.emphasis[i] is EmphasisLevel.LOW for i in ("b1", "b2", "b3"))
    assert report.title_candidate == "title"
    assert report.issues == ()


def test_all_small_reports_weak_point_of_entry():
    doc = make_doc([
        make_text("a", 80, 80, 400, "some heading", 16),
        make_text("b", 80, 300, 400, "some body", 16),
    ])
    report = analyze_hierarchy(doc, measured(doc))
    assert len(report.issues) == 1
    issue = report.issues[0]
    assert issue.kind == "weak_point_of_entry"
    assert issue_message(issue) == "No elements seem to be visually emphasized"
    # topmost element wins the title tie at equal line heights
    assert report.title_candidate == "a"
    assert issue.suggestion.kind == "enlarge"


def test_two_large_elements_compete_targeting_non_title():
    doc = make_doc([
        make_text("first", 80, 80, 600, "HEADLINE ONE", 48, style="bold"),
        make_text("second", 80, 400, 600, "HEADLINE TWO", 48, style="bold"),
        make_text("body", 80, 700, 400, "body text here", 14),
    ])
    report = analyze_hierarchy(doc, measured(doc))
    assert len(report.issues) == 1
    issue = report.issues[0]
    assert issue.kind == "competing_emphasis"
    assert report.title_candidate == "first"
    assert issue.target_ids == ("second",)
    assert issue.suggestion.kind == "shrink"


def test_no_text_elements_empty_report():
    doc = make_doc([])
    report = analyze_hierarchy(doc, {})
    assert report.emphasis == {}
    assert report.title_candidate is None
    assert report.issues == ()


def test_cluster_centers_sorted():
    doc = make_doc([
        make_text("a", 80, 80, 400, "x", 48),
        make_text("b", 80, 300, 400, "y", 20),
        make_text("c", 80, 500, 400, "z", 14),
    ])
    report = analyze_hierarchy(doc, measured(doc))
    assert list(report.cluster_centers) == sorted(report.cluster_centers)


@settings(max_examples=60, deadline=None)
@given(
    sizes=st.lists(st.integers(8, 60), min_size=1, max_size=6),
    bump=st.integers(1, 40),
    index=st.integers(0, 5),
)
def test_emphasis_monotone_in_font_size(sizes, bump, index):
    index %= len(sizes)
    elements = [
        make_text(f"e{i}", 80, 80 + 200 * i, 400, f"text {i}", size)
        for i, size in enumerate(sizes)
    ]
    doc = make_doc(elements, height=max(1080, 200 * len(sizes) + 400))
    before = analyze_hierarchy(doc, measured(doc)).emphasis[f"e{index}"]

    bumped = list(sizes)
    bumped[index] += bump
    elements2 = [
        make_text(f"e{i}", 80, 80 + 200 * i, 400, f"text {i}", size)
        for i, size in enumerate(bumped)
    ]
    doc2 = make_doc(elements2, height=max(1080, 200 * len(sizes) + 400))
    after = analyze_hierarchy(doc2, measured(doc2)).emphasis[f"e{index}"]
    assert before <= after


# --- alignment -------------------------------------------------------------------

def test_shared_left_edge_single_group():
    doc = make_doc([
        make_text("a", 50, 80, 200, "one", 16),
        make_text("b", 50, 300, 200, "two", 16),
        make_text("c", 50, 500, 200, "three", 16),
    ])
    report = analyze_alignment(doc)
    assert len(report.groups) == 1
    assert report.groups[0].axis_kind == "left"
    assert report.groups[0].axis_x == pytest.approx(50)
    assert set(report.groups[0].members) == {"a", "b", "c"}
    assert report.issues == ()


def test_five_distinct_axes_too_many_groups():
    doc = make_doc([
        make_text(f"e{i}", 50 + 40 * i, 80 + 200 * i, 120, "short", 16)
        for i in range(5)
    ])
    report = analyze_alignment(doc)
    kinds = {i.kind for i in report.issues}
    assert "too_many_groups" in kinds
    issue = next(i for i in report.issues if i.kind == "too_many_groups")
    assert issue_message(issue) == "too many alignment groups"
    assert issue.suggestion.kind == "merge_to_axis"


def test_center_aligned_in_left_third_mismatch():
    doc = make_doc([
        make_text("skewed", 80, 80, 200, "hello", 16, align="center"),
        make_text("fine", 80, 400, 200, "world", 16),
    ])
    report = analyze_alignment(doc)
    assert len(report.mismatches) == 1
    mismatch = report.mismatches[0]
    assert mismatch.element_id == "skewed"
    assert mismatch.external_side == "left"
    assert mismatch.internal_align == "center"
    issue = next(i for i in report.issues if i.kind == "internal_external_mismatch")
    assert issue.suggestion.parameters["internal_align"] == "left"


def test_anchor_tolerance_groups_within_four_px():
    doc = make_doc([
        make_text("a", 50, 80, 200, "one", 16),
        make_text("b", 53, 300, 200, "two", 16),   # within 4 px of a
        make_text("c", 60, 500, 200, "three", 16),  # beyond
    ])
    report = analyze_alignment(doc)
    assert len(report.groups) == 2
    for group in report.groups:
        for member in group.members:
            el = doc.element(member)
            assert abs(el.x - group.axis_x) <= 4.0 + 1e-9


@settings(max_examples=50)
@given(st.lists(st.tuples(
    st.integers(0, 900), st.integers(1, 400),
    st.sampled_from(["left", "center", "right", "justify"]),
), min_size=0, max_size=8))
def test_every_text_element_in_exactly_one_group(items):
    elements = [
        make_text(f"e{i}", x, 50 + 100 * i, w, "t", 16, align=align)
        for i, (x, w, align) in enumerate(items)
    ]
    doc = make_doc(elements, height=max(1080, 100 * len(items) + 200))
    report = analyze_alignment(doc)
    seen = [m for g in report.groups for m in g.members]
    assert sorted(seen) == sorted(el.id for el in doc.text_elements())
    assert len(seen) == len(set(seen))


# --- whitespace --------------------------------------------------------------------

def test_left_margin_violation_distance_two():
    # 3% of 1080 is 32.4 px; an element 2 px from the edge violates it.
    doc = make_doc([make_text("close", 2, 500, 300, "near the edge", 16)])
    report = analyze_whitespace(doc, measured(doc))
    lefts = [v for v in report.margin_violations if v.edge == "left"]
    assert len(lefts) == 1
    assert lefts[0].distance == pytest.approx(2)
    issue = next(i for i in report.issues if i.kind == "margin")
    assert issue.suggestion.parameters["dx"] == pytest.approx(32.4 - 2)


def test_stacked_pair_gap_below_line_height():
    # Line height 20 (multiplier 1.0, size 20); boxes 4 px apart vertically.
    doc = make_doc([
        make_text("top", 100, 200, 400, "first block", 20, mult=1.0),
        make_text("bottom", 100, 224, 400, "second block", 20, mult=1.0),
    ])
    report = analyze_whitespace(doc, measured(doc))
    assert len(report.pair_violations) == 1
    pair = report.pair_violations[0]
    assert (pair.id_a, pair.id_b) == ("top", "bottom")
    assert pair.direction == "vertical"
    assert pair.gap == pytest.approx(4)


def test_far_apart_pair_not_flagged():
    doc = make_doc([
        make_text("a", 100, 100, 300, "first", 16),
        make_text("b", 100, 800, 300, "second", 16),
    ])
    report = analyze_whitespace(doc, measured(doc))
    assert report.pair_violations == ()


def test_ragged_short_middle_line():
    # Explicit breaks give line widths 300 / 90 / 276 at 6 px per char;
    # 90 < 0.6 x 300, so line 1 is ragged and the final line is exempt.
    content = "a" * 50 + "\n" + "b" * 15 + "\n" + "c" * 46
    doc = make_doc([make_text("para", 100, 100, 320, content, 10)])
    report = analyze_whitespace(doc, measured(doc))
    assert len(report.ragged_elements) == 1
    assert report.ragged_elements[0].line_indices == (1,)


def test_final_short_line_exempt():
    content = "a" * 50 + "\n" + "b" * 15
    doc = make_doc([make_text("para", 100, 100, 320, content, 10)])
    report = analyze_whitespace(doc, measured(doc))
    assert report.ragged_elements == ()


def test_single_line_never_ragged():
    doc = make_doc([make_text("one", 100, 100, 320, "just one line", 10)])
    report = analyze_whitespace(doc, measured(doc))
    assert report.ragged_elements == ()


# --- unity ----------------------------------------------------------------------

def test_uniform_styling_counts_one():
    doc = make_doc([
        make_text(f"e{i}", 80, 80 + 150 * i, 300, f"line {i}", 16) for i in range(5)
    ])
    report = analyze_unity(doc)
    assert report.distinct_counts == {
        "font_family": 1, "font_style": 1, "font_size": 1, "color": 1,
    }
    assert report.issues == ()


def test_four_font_sizes_flagged():
    doc = make_doc([
        make_text(f"e{i}", 80, 80 + 150 * i, 300, "x", size)
        for i, size in enumerate((14, 16, 18, 20))
    ])
    report = analyze_unity(doc)
    assert report.distinct_counts["font_size"] == 4
    issue = next(i for i in report.issues if i.kind == "too_many_variances")
    assert issue.suggestion.parameters["property"] == "font_size"
    assert issue_message(issue) == "too many variances in text"


def test_exactly_three_colors_is_acceptable():
    doc = make_doc([
        make_text(f"e{i}", 80, 80 + 150 * i, 300, "x", 16, color=color)
        for i, color in enumerate(("#111111", "#222222", "#333333"))
    ])
    report = analyze_unity(doc)
    assert report.distinct_counts["color"] == 3
    assert report.issues == ()


def test_unity_counts_match_brute_force_random():
    rng = random.Random(7)
    families = ["Inter", "Lora", "Futura", "Courier", "Arial"]
    styles = ["regular", "bold", "italic", "bold-italic"]
    colors = ["#101010", "#202020", "#303030", "#404040", "#505050"]
    for _ in range(100):
        n = rng.randint(0, 8)
        elements = [
            make_text(
                f"e{i}", 80, 50 + 120 * i, 300, "txt",
                rng.choice([12, 14, 16, 18, 20]),
            ) for i in range(n)
        ]
        for el in elements:
            el["font_family"] = rng.choice(families)
            el["font_style"] = rng.choice(styles)
            el["color"] = rng.choice(colors)
        doc = make_doc(elements, height=2000)
        report = analyze_unity(doc)
        texts = doc.text_elements()
        assert report.distinct_counts["font_family"] == len({t.font_family for t in texts})
        assert report.distinct_counts["font_style"] == len({t.font_style for t in texts})
        assert report.distinct_counts["font_size"] == len({t.font_size for t in texts})
        assert report.distinct_counts["color"] == len({t.color for t in texts})
        expected_issue = any(
            count > 3 for count in report.distinct_counts.values())
        assert bool(report.issues) == expected_issue


# --- detect_all --------------------------------------------------------------------

def test_empty_doc_all_flags_false():
    result = detect_all(make_doc([]))
    assert result.issue_flags == {p: False for p in PRINCIPLES}


def test_seed_violates_all_four(seed_doc):
    result = detect_all(seed_doc)
    assert result.issue_flags == {p: True for p in PRINCIPLES}
    for p in PRINCIPLES:
        assert len(result.report(p).issues) == 1


def test_flag_soundness_on_corpus(corpus_docs):
    for doc in corpus_docs.values():
        result = detect_all(doc)
        for p in PRINCIPLES:
            assert result.issue_flags[p] == bool(result.report(p).issues)


def test_issue_shape_invariants_on_corpus(corpus_docs):
    from critiq.issues import ISSUE_KINDS, SUGGESTION_KINDS

    for doc in corpus_docs.values():
        for issue in detect_all(doc).issues():
            assert issue.kind in ISSUE_KINDS[issue.principle]
            assert issue.target_ids
            assert issue.suggestion.kind in SUGGESTION_KINDS
            assert issue.suggestion.target_ids


def test_detect_all_deterministic(seed_doc):
    a = detect_all(seed_doc)
    b = detect_all(seed_doc)
    assert a == b
