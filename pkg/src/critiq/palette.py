"""Color semantics for annotation layers.

Red flags issues and green marks suggestions or confirmations, so the
awareness series deliberately contains neither; all hues come from the same
published ten-color palette (plus its light variants) to stay neutral and
unambiguous.
"""

from __future__ import annotations

ISSUE_RED = "#d62728"
SUGGESTION_GREEN = "#2ca02c"
GUIDE_GRAY = "#7f7f7f"

# Grays, blues, oranges, purples; ordered so adjacent groups contrast.
AWARENESS_SERIES = (
    "#1f77b4",  # blue
    "#ff7f0e",  # orange
    "#9467bd",  # purple
    "#17becf",  # cyan
    "#8c564b",  # brown
    "#e377c2",  # pink
    "#7f7f7f",  # gray
    "#aec7e8",  # light blue
    "#ffbb78",  # light orange
    "#c5b0d5",  # light purple
)

# Emphasis ramp runs light gray -> light blue -> blue.
EMPHASIS_COLORS = {
    "low": "#c7c7c7",
    "medium": "#aec7e8",
    "high": "#1f77b4",
}


def series_color(index: int) -> str:
    return AWARENESS_SERIES[index % len(AWARENESS_SERIES)]
