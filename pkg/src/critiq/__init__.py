"""critiq: heuristic design critique for canvas documents.

Analyzes a design against four principles (hierarchy, alignment, whitespace,
unity), generates awareness- and solution-centered annotation overlays with
linked explanations, and serves them live to an editor client.
"""

from .analyzers import (
    analyze_alignment,
    analyze_hierarchy,
    analyze_unity,
    analyze_whitespace,
    detect_all,
)
from .annotations import AnnotationLayer, gen_awareness, gen_solution
from .config import DEFAULT_THRESHOLDS, Thresholds
from .edits import apply_suggestion
from .errors import (
    CritiqError,
    DuplicateId,
    EmptyInput,
    SchemaViolation,
    StaleSuggestion,
    UnknownPrinciple,
    UnknownSession,
)
from .evaluation import EvaluationReport, GroundTruthLabel, evaluate_corpus, load_labels
from .explanations import ExplanationTable, gen_explanation
from .issues import (
    PRINCIPLES,
    CritiqueResult,
    EmphasisLevel,
    Issue,
    Suggestion,
)
from .kmeans import Cluster, kmeans_1d
from .model import (
    DesignDocument,
    GraphicElement,
    ImageElement,
    TextElement,
    diff_designs,
    empty_document,
    parse_design,
    serialize_design,
)
from .service import CritiqueService, ManualClock
from .svgrender import render_svg
from .textmetrics import (
    LineBox,
    MetricsProvider,
    TextExtent,
    fallback_provider,
    measure_document,
    measure_text,
)

__version__ = "0.1.0"

__all__ = [
    "AnnotationLayer",
    "Cluster",
    "CritiqError",
    "CritiqueResult",
    "CritiqueService",
    "DEFAULT_THRESHOLDS",
    "DesignDocument",
    "DuplicateId",
    "EmphasisLevel",
    "EmptyInput",
    "EvaluationReport",
    "ExplanationTable",
    "GraphicElement",
    "GroundTruthLabel",
    "ImageElement",
    "Issue",
    "LineBox",
    "ManualClock",
    "MetricsProvider",
    "PRINCIPLES",
    "SchemaViolation",
    "StaleSuggestion",
    "Suggestion",
    "TextElement",
    "TextExtent",
    "Thresholds",
    "UnknownPrinciple",
    "UnknownSession",
    "analyze_alignment",
    "analyze_hierarchy",
    "analyze_unity",
    "analyze_whitespace",
    "apply_suggestion",
    "detect_all",
    "diff_designs",
    "empty_document",
    "evaluate_corpus",
    "fallback_provider",
    "gen_awareness",
    "gen_explanation",
    "gen_solution",
    "kmeans_1d",
    "load_labels",
    "measure_document",
    "measure_text",
    "parse_design",
    "render_svg",
    "serialize_design",
]
