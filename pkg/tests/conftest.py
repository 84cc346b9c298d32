from __future__ import annotations

import json
from pathlib import Path

import pytest

from critiq.model import DesignDocument, document_from_dict, parse_design

ROOT = Path(__file__).resolve().parent.parent
CORPUS_DESIGNS = ROOT / "corpus" / "designs"
CORPUS_LABELS = ROOT / "corpus" / "labels.json"
GOLDEN_DIR = Path(__file__).resolve().parent / "golden"


def make_text(el_id, x, y, w, content, size, *, style="regular", color="#333333",
              family="Inter", align="left", mult=1.2) -> dict:
    return {
        "id": el_id, "type": "text", "x": x, "y": y, "box_width": w,
        "content": content, "font_family": family, "font_style": style,
        "font_size": size, "line_height_multiplier": mult, "color": color,
        "internal_align": align,
    }


def make_doc(elements, width=1080, height=1080, background="#ffffff") -> DesignDocument:
    return document_from_dict({
        "canvas_width": width, "canvas_height": height,
        "background": background, "elements": elements,
    })


@pytest.fixture(scope="session")
def corpus_docs() -> dict[str, DesignDocument]:
    docs = {}
    for path in sorted(CORPUS_DESIGNS.glob("*.json")):
        docs[path.stem] = parse_design(path.read_text(encoding="utf-8"))
    assert len(docs) >= 26
    return docs


@pytest.fixture(scope="session")
def corpus_labels() -> list[dict]:
    return json.loads(CORPUS_LABELS.read_text(encoding="utf-8"))


@pytest.fixture(scope="session")
def seed_doc(corpus_docs) -> DesignDocument:
    return corpus_docs["seed_four_violations"]
