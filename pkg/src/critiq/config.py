"""Tunable constants for the principle analyzers, in one place.

Every named threshold below is a calibration point: the detectors compare
measured geometry against these values, so changing one shifts what counts
as an issue everywhere at once.
"""

from __future__ import annotations

from dataclasses import dataclass


@dataclass(frozen=True)
class Thresholds:
    # Hierarchy: a line-height cluster at or above high_emphasis_px reads as
    # display scale; at or above medium_emphasis_px as heading scale.
    high_emphasis_px: float = 40.0
    medium_emphasis_px: float = 20.0

    # Alignment: anchors within align_tolerance_px share an axis; more than
    # max_alignment_groups axes reads as scattered.
    align_tolerance_px: float = 4.0
    max_alignment_groups: int = 3

    # Whitespace: fractions are of min(canvas_width, canvas_height).
    margin_fraction: float = 0.03
    far_filter_fraction: float = 0.25
    ragged_ratio: float = 0.6

    # Unity: strictly more than this many distinct values per text property
    # is excessive; exactly this many is acceptable.
    max_property_variances: int = 3

    def margin_threshold(self, canvas_width: float, canvas_height: float) -> float:
        return self.margin_fraction * min(canvas_width, canvas_height)

    def far_filter(self, canvas_width: float, canvas_height: float) -> float:
        return self.far_filter_fraction * min(canvas_width, canvas_height)


DEFAULT_THRESHOLDS = Thresholds()
