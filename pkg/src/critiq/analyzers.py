"""The four principle analyzers: hierarchy, alignment, whitespace, unity.

Each analyzer is a pure function of the document (plus measured text extents
where occupied space matters) and returns a report with detected issues and
scripted suggestions. ``detect_all`` runs the full pipeline.
"""

from __future__ import annotations

import math
from dataclasses import replace

from .config import DEFAULT_THRESHOLDS, Thresholds
from .issues import (
    PRINCIPLES,
    UNITY_PROPERTIES,
    AlignmentGroup,
    AlignmentMismatch,
    AlignmentReport,
    CritiqueResult,
    EmphasisLevel,
    HierarchyReport,
    Issue,
    MarginViolation,
    PairViolation,
    RaggedElement,
    Suggestion,
    UnityReport,
    WhitespaceReport,
)
from .kmeans import cluster_of, kmeans_1d
from .model import DesignDocument, TextElement
from .textmetrics import (
    MetricsProvider,
    TextExtent,
    fallback_provider,
    line_width,
    measure_document,
    measure_text,
)


# --- hierarchy ---------------------------------------------------------------

def _level_for(center: float, thresholds: Thresholds) -> EmphasisLevel:
    if center >= thresholds.high_emphasis_px:
        return EmphasisLevel.HIGH
    if center >= thresholds.medium_emphasis_px:
        return EmphasisLevel.MEDIUM
    return EmphasisLevel.LOW


def size_crossing_high(multiplier: float, thresholds: Thresholds = DEFAULT_THRESHOLDS) -> int:
    """Smallest whole font size whose line height clears the high threshold, plus 1 pt slack."""
    return max(1, math.ceil(thresholds.high_emphasis_px / multiplier) + 1)


def size_below_high(multiplier: float, thresholds: Thresholds = DEFAULT_THRESHOLDS) -> int:
    """Largest whole font size whose line height stays below the high threshold, minus 1 pt slack."""
    return max(1, math.ceil(thresholds.high_emphasis_px / multiplier) - 2)


def analyze_hierarchy(
    doc: DesignDocument,
    extents: dict[str, TextExtent],
    thresholds: Thresholds = DEFAULT_THRESHOLDS,
) -> HierarchyReport:
    """Cluster line heights, map clusters to emphasis levels, flag entry-point issues."""
    texts = [el for el in doc.text_elements() if el.id in extents]
    if not texts:
        return HierarchyReport(emphasis={}, cluster_centers=(), title_candidate=None, issues=())

    heights = {el.id: extents[el.id].line_height for el in texts}
    values = [heights[el.id] for el in texts]
    k = min(3, len(set(values)))
    clusters = kmeans_1d(values, k)
    levels = [_level_for(c.center, thresholds) for c in clusters]
    emphasis = {el.id: levels[cluster_of(clusters, heights[el.id])] for el in texts}

    # Title: largest line height, then topmost, then document order.
    title = min(enumerate(texts), key=lambda t: (-heights[t[1].id], t[1].y, t[0]))[1]

    high_ids = [el.id for el in texts if emphasis[el.id] is EmphasisLevel.HIGH]
    issues: list[Issue] = []
    if not high_ids:
        issues.append(Issue(
            principle="hierarchy",
            kind="weak_point_of_entry",
            target_ids=(title.id,),
            message_template_id="hierarchy.weak_point_of_entry",
            suggestion=Suggestion(
                kind="enlarge",
                target_ids=(title.id,),
                parameters={"font_sizes": {title.id: size_crossing_high(title.line_height_multiplier, thresholds)}},
            ),
        ))
    elif len(high_ids) >= 2:
        competing = tuple(i for i in high_ids if i != title.id)
        by_id = {el.id: el for el in texts}
        issues.append(Issue(
            principle="hierarchy",
            kind="competing_emphasis",
            target_ids=competing,
            message_template_id="hierarchy.competing_emphasis",
            suggestion=Suggestion(
                kind="shrink",
                target_ids=competing,
                parameters={"font_sizes": {
                    i: size_below_high(by_id[i].line_height_multiplier, thresholds) for i in competing
                }},
            ),
        ))

    return HierarchyReport(
        emphasis=emphasis,
        cluster_centers=tuple(c.center for c in clusters),
        title_candidate=title.id,
        issues=tuple(issues),
    )


# --- alignment ---------------------------------------------------------------

_AXIS_KIND = {"left": "left", "justify": "left", "center": "center", "right": "right"}
_KIND_ORDER = ("left", "center", "right")


def _anchor(el: TextElement) -> tuple[str, float]:
    kind = _AXIS_KIND[el.internal_align]
    if kind == "left":
        return kind, el.x
    if kind == "center":
        return kind, el.x + el.box_width / 2
    return kind, el.x + el.box_width


def _external_side(el: TextElement, canvas_width: float) -> str:
    center = el.x + el.box_width / 2
    if center < canvas_width / 3:
        return "left"
    if center > 2 * canvas_width / 3:
        return "right"
    return "center"


def analyze_alignment(
    doc: DesignDocument, thresholds: Thresholds = DEFAULT_THRESHOLDS
) -> AlignmentReport:
    """Group text anchors into shared axes and check internal/external agreement."""
    texts = doc.text_elements()
    doc_index = {el.id: i for i, el in enumerate(texts)}

    groups: list[AlignmentGroup] = []
    for kind in _KIND_ORDER:
        anchored = sorted(
            ((value, el) for el in texts for k, value in [_anchor(el)] if k == kind),
            key=lambda pair: (pair[0], doc_index[pair[1].id]),
        )
        start = 0
        while start < len(anchored):
            end = start
            while end < len(anchored) and anchored[end][0] - anchored[start][0] <= thresholds.align_tolerance_px:
                end += 1
            run = anchored[start:end]
            axis = sum(v for v, _ in run) / len(run)
            members = tuple(el.id for el in sorted((el for _, el in run), key=lambda e: doc_index[e.id]))
            groups.append(AlignmentGroup(axis_kind=kind, axis_x=axis, members=members))
            start = end

    issues: list[Issue] = []
    if len(groups) > thresholds.max_alignment_groups:
        ranked = sorted(
            groups,
            key=lambda g: (-len(g.members), min(doc_index[m] for m in g.members)),
        )
        kept = ranked[: thresholds.max_alignment_groups]
        dissolved = ranked[thresholds.max_alignment_groups:]
        dissolved_kinds = {g.axis_kind for g in dissolved}
        dest = kept[0]
        if len(dissolved_kinds) == 1:
            same_kind = [g for g in kept if g.axis_kind in dissolved_kinds]
            if same_kind:
                dest = same_kind[0]
        moved = tuple(sorted(
            (m for g in dissolved for m in g.members), key=lambda i: doc_index[i]
        ))
        issues.append(Issue(
            principle="alignment",
            kind="too_many_groups",
            target_ids=moved,
            message_template_id="alignment.too_many_groups",
            suggestion=Suggestion(
                kind="merge_to_axis",
                target_ids=moved,
                parameters={"axis_kind": dest.axis_kind, "axis_x": dest.axis_x},
            ),
        ))

    mismatches: list[AlignmentMismatch] = []
    for el in texts:
        side = _external_side(el, doc.canvas_width)
        if el.internal_align != side:
            mismatches.append(AlignmentMismatch(
                element_id=el.id, external_side=side, internal_align=el.internal_align
            ))
            issues.append(Issue(
                principle="alignment",
                kind="internal_external_mismatch",
                target_ids=(el.id,),
                message_template_id="alignment.internal_external_mismatch",
                suggestion=Suggestion(
                    kind="change_internal_align",
                    target_ids=(el.id,),
                    parameters={"internal_align": side},
                ),
            ))

    return AlignmentReport(groups=tuple(groups), mismatches=tuple(mismatches), issues=tuple(issues))


# --- whitespace ----------------------------------------------------------------

_EDGES = ("left", "right", "top", "bottom")


def _even_out_width(el: TextElement, provider: MetricsProvider, ratio: float) -> float:
    """Box width whose greedy wrap keeps every non-final line at or above ratio x max.

    Prefers the widest passing candidate not wider than the current box, then
    the narrowest wider one; falls back to the current width when no wrap fixes
    the raggedness (explicit line breaks can make it unreachable).
    """
    def passes(width: float) -> bool:
        ext = measure_text(replace(el, box_width=width), provider)
        if len(ext.lines) < 2:
            return True
        max_w = max(line.bbox.width for line in ext.lines)
        return all(line.bbox.width >= ratio * max_w for line in ext.lines[:-1])

    candidates: set[float] = set()
    for paragraph in el.content.split("\n"):
        words = paragraph.split()
        for end in range(1, len(words) + 1):
            prefix = " ".join(words[:end])
            candidates.add(line_width(prefix, el, provider))
    candidates.add(el.box_width)

    narrower = sorted((w for w in candidates if 0 < w <= el.box_width), reverse=True)
    wider = sorted(w for w in candidates if w > el.box_width)
    for width in narrower + wider:
        if passes(width):
            return width
    return el.box_width


def analyze_whitespace(
    doc: DesignDocument,
    extents: dict[str, TextExtent],
    provider: MetricsProvider | None = None,
    thresholds: Thresholds = DEFAULT_THRESHOLDS,
) -> WhitespaceReport:
    """Margins against the canvas, pairwise gaps, and ragged line endings."""
    provider = provider or fallback_provider()
    texts = [el for el in doc.text_elements() if el.id in extents]
    margin = thresholds.margin_threshold(doc.canvas_width, doc.canvas_height)
    far = thresholds.far_filter(doc.canvas_width, doc.canvas_height)

    issues: list[Issue] = []

    margin_violations: list[MarginViolation] = []
    for el in texts:
        bbox = extents[el.id].overall_bbox
        distances = {
            "left": bbox.x,
            "right": doc.canvas_width - bbox.right,
            "top": bbox.y,
            "bottom": doc.canvas_height - bbox.bottom,
        }
        for edge in _EDGES:
            dist = distances[edge]
            if dist < margin:
                margin_violations.append(MarginViolation(element_id=el.id, edge=edge, distance=dist))
                delta = margin - dist
                dx = delta if edge == "left" else -delta if edge == "right" else 0.0
                dy = delta if edge == "top" else -delta if edge == "bottom" else 0.0
                issues.append(Issue(
                    principle="whitespace",
                    kind="margin",
                    target_ids=(el.id,),
                    message_template_id="whitespace.margin",
                    suggestion=Suggestion(
                        kind="move_by", target_ids=(el.id,), parameters={"dx": dx, "dy": dy}
                    ),
                ))

    pair_violations: list[PairViolation] = []
    for i in range(len(texts)):
        for j in range(i + 1, len(texts)):
            a, b = extents[texts[i].id].overall_bbox, extents[texts[j].id].overall_bbox
            gx = max(a.x, b.x) - min(a.right, b.right)  # signed; > 0 means disjoint
            gy = max(a.y, b.y) - min(a.bottom, b.bottom)
            if gx > far and gy > far:
                continue
            if gx > 0 and gy > 0:
                direction, signed = ("horizontal", gx) if gx <= gy else ("vertical", gy)
            elif gx > 0:
                direction, signed = "horizontal", gx
            elif gy > 0:
                direction, signed = "vertical", gy
            else:
                # Overlapping boxes: separate along the less-overlapped axis.
                direction, signed = ("horizontal", gx) if gx >= gy else ("vertical", gy)
            thresh = max(extents[texts[i].id].line_height, extents[texts[j].id].line_height)
            if signed < thresh:
                gap = max(0.0, signed)
                pair_violations.append(PairViolation(
                    id_a=texts[i].id, id_b=texts[j].id, gap=gap, direction=direction
                ))
                delta = thresh - signed + 1.0
                if direction == "horizontal":
                    mover = texts[j] if b.x >= a.x else texts[i]
                    params = {"dx": delta, "dy": 0.0}
                else:
                    mover = texts[j] if b.y >= a.y else texts[i]
                    params = {"dx": 0.0, "dy": delta}
                issues.append(Issue(
                    principle="whitespace",
                    kind="pair_spacing",
                    target_ids=(texts[i].id, texts[j].id),
                    message_template_id="whitespace.pair_spacing",
                    suggestion=Suggestion(kind="move_by", target_ids=(mover.id,), parameters=params),
                ))

    ragged: list[RaggedElement] = []
    for el in texts:
        lines = extents[el.id].lines
        if len(lines) < 2:
            continue
        max_w = max(line.bbox.width for line in lines)
        offenders = tuple(
            line.line_index for line in lines[:-1]
            if line.bbox.width < thresholds.ragged_ratio * max_w
        )
        if offenders:
            ragged.append(RaggedElement(element_id=el.id, line_indices=offenders))
            issues.append(Issue(
                principle="whitespace",
                kind="ragged_edge",
                target_ids=(el.id,),
                message_template_id="whitespace.ragged_edge",
                suggestion=Suggestion(
                    kind="even_out_lines",
                    target_ids=(el.id,),
                    parameters={"box_width": _even_out_width(el, provider, thresholds.ragged_ratio)},
                ),
            ))

    return WhitespaceReport(
        margin_violations=tuple(margin_violations),
        pair_violations=tuple(pair_violations),
        ragged_elements=tuple(ragged),
        issues=tuple(issues),
    )


# --- unity ---------------------------------------------------------------------

def _reduce_mapping(values_in_order: list, limit: int) -> list[tuple]:
    """Remap least-frequent values to the current most frequent until <= limit remain.

    Frequency ties break by first appearance: the earliest value is the
    preferred destination, the latest values are remapped first.
    """
    first_seen: dict = {}
    freq: dict = {}
    for v in values_in_order:
        freq[v] = freq.get(v, 0) + 1
        first_seen.setdefault(v, len(first_seen))

    mapping: list[tuple] = []
    while len(freq) > limit:
        dest = min(freq, key=lambda v: (-freq[v], first_seen[v]))
        fmin = min(freq.values())
        victims = sorted(
            (v for v in freq if freq[v] == fmin and v != dest),
            key=lambda v: first_seen[v],
        )
        if not victims:
            break
        for v in victims:
            mapping.append((v, dest))
            freq[dest] += freq.pop(v)
    return mapping


def analyze_unity(doc: DesignDocument, thresholds: Thresholds = DEFAULT_THRESHOLDS) -> UnityReport:
    """Count distinct text-property values; above the limit is an issue."""
    texts = doc.text_elements()
    properties = {
        el.id: (el.font_family, el.font_style, el.font_size, el.color) for el in texts
    }
    distinct_counts: dict[str, int] = {}
    issues: list[Issue] = []
    for prop in UNITY_PROPERTIES:
        values = [getattr(el, prop) for el in texts]
        distinct_counts[prop] = len(set(values))
        if distinct_counts[prop] > thresholds.max_property_variances:
            mapping = _reduce_mapping(values, thresholds.max_property_variances)
            remapped = {old for old, _ in mapping}
            targets = tuple(el.id for el in texts if getattr(el, prop) in remapped)
            issues.append(Issue(
                principle="unity",
                kind="too_many_variances",
                target_ids=targets,
                message_template_id="unity.too_many_variances",
                suggestion=Suggestion(
                    kind="reduce_property_count",
                    target_ids=targets,
                    parameters={
                        "property": prop,
                        "target": thresholds.max_property_variances,
                        "mapping": [{"from": old, "to": new} for old, new in mapping],
                    },
                ),
            ))
    return UnityReport(properties=properties, distinct_counts=distinct_counts, issues=tuple(issues))


# --- pipeline ------------------------------------------------------------------

def detect_all(
    doc: DesignDocument,
    provider: MetricsProvider | None = None,
    thresholds: Thresholds = DEFAULT_THRESHOLDS,
) -> CritiqueResult:
    """Measure text, run all four analyzers, and derive per-principle flags."""
    provider = provider or fallback_provider()
    extents = measure_document(doc.text_elements(), provider)
    result = CritiqueResult(
        hierarchy=analyze_hierarchy(doc, extents, thresholds),
        alignment=analyze_alignment(doc, thresholds),
        whitespace=analyze_whitespace(doc, extents, provider, thresholds),
        unity=analyze_unity(doc, thresholds),
        issue_flags={},
    )
    flags = {p: bool(result.report(p).issues) for p in PRINCIPLES}
    return replace(result, issue_flags=flags)
