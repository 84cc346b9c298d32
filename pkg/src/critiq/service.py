"""Session state and message handling for the live critique loop.

A design update marks a session stale and schedules a trailing-debounce
recompute; a read of annotations during staleness forces the recompute
synchronously so replies never reflect an outdated document. The service is
clock-parametrized so tests can drive the debounce with a simulated clock.
"""

from __future__ import annotations

import hashlib
import json
import re
import time
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Callable

from .analyzers import detect_all
from .annotations import AnnotationLayer, gen_awareness, gen_solution
from .config import DEFAULT_THRESHOLDS, Thresholds
from .errors import DuplicateId, SchemaViolation
from .explanations import ExplanationTable, gen_explanation
from .issues import PRINCIPLES, CritiqueResult
from .model import DesignDocument, document_from_dict, document_to_dict, empty_document
from .textmetrics import MetricsProvider, fallback_provider, measure_document

DEBOUNCE_SECONDS = 4.0
MODES = ("awareness", "solution")

LOG_EVENTS = ("principle_click", "annotation_viewed", "design_snapshot", "toggle", "status_check")


@dataclass(frozen=True)
class LogRecord:
    ts: int  # ms epoch, monotone per session
    session_id: str
    event: str
    payload: dict[str, Any]

    def to_json(self) -> str:
        return json.dumps(
            {"ts": self.ts, "session_id": self.session_id, "event": self.event,
             "payload": self.payload},
            ensure_ascii=False,
        )


@dataclass
class Session:
    session_id: str
    doc: DesignDocument
    result: CritiqueResult
    layers: dict[tuple[str, str], AnnotationLayer]
    explanations: dict[tuple[str, str], ExplanationTable]
    stale: bool = False
    critiques_enabled: bool = True
    last_update: float = 0.0
    recompute_deadline: float | None = None
    recompute_count: int = 0
    log: list[LogRecord] = field(default_factory=list)
    _last_ts: int = 0


def _safe_filename(session_id: str) -> str:
    safe = re.sub(r"[^A-Za-z0-9._-]", "_", session_id)
    if safe != session_id:
        digest = hashlib.sha1(session_id.encode("utf-8")).hexdigest()[:8]
        safe = f"{safe}-{digest}"
    return f"{safe}.jsonl"


class CritiqueService:
    """Holds all sessions; one logical owner must serialize calls per session."""

    def __init__(
        self,
        provider: MetricsProvider | None = None,
        thresholds: Thresholds = DEFAULT_THRESHOLDS,
        log_dir: str | Path | None = None,
        debounce_seconds: float = DEBOUNCE_SECONDS,
        clock: Callable[[], float] = time.time,
    ):
        self.provider = provider or fallback_provider()
        self.thresholds = thresholds
        self.log_dir = Path(log_dir) if log_dir is not None else None
        self.debounce_seconds = debounce_seconds
        self.clock = clock
        self.sessions: dict[str, Session] = {}
        if self.log_dir is not None:
            self.log_dir.mkdir(parents=True, exist_ok=True)

    # -- session plumbing ------------------------------------------------

    def _compute_assets(self, doc: DesignDocument):
        result = detect_all(doc, self.provider, self.thresholds)
        extents = measure_document(doc.text_elements(), self.provider)
        layers: dict[tuple[str, str], AnnotationLayer] = {}
        explanations: dict[tuple[str, str], ExplanationTable] = {}
        for principle in PRINCIPLES:
            layers[(principle, "awareness")] = gen_awareness(
                principle, doc, result, extents, self.thresholds)
            layers[(principle, "solution")] = gen_solution(
                principle, doc, result, extents, self.thresholds)
            for mode in MODES:
                explanations[(principle, mode)] = gen_explanation(
                    principle, mode, doc, result, extents, self.thresholds)
        return result, layers, explanations

    def session(self, session_id: str) -> Session:
        existing = self.sessions.get(session_id)
        if existing is not None:
            return existing
        doc = empty_document()
        result, layers, explanations = self._compute_assets(doc)
        created = Session(
            session_id=session_id, doc=doc, result=result,
            layers=layers, explanations=explanations, last_update=self.clock(),
        )
        self.sessions[session_id] = created
        return created

    def _recompute(self, session: Session) -> None:
        session.result, session.layers, session.explanations = self._compute_assets(session.doc)
        session.stale = False
        session.recompute_deadline = None
        session.recompute_count += 1

    def _log(self, session: Session, event: str, payload: dict[str, Any]) -> None:
        ts = max(int(self.clock() * 1000), session._last_ts)
        session._last_ts = ts
        record = LogRecord(ts=ts, session_id=session.session_id, event=event, payload=payload)
        session.log.append(record)
        if self.log_dir is not None:
            path = self.log_dir / _safe_filename(session.session_id)
            with path.open("a", encoding="utf-8") as fh:
                fh.write(record.to_json() + "\n")

    # -- debounce ----------------------------------------------------------

    def deadline(self, session_id: str) -> float | None:
        session = self.sessions.get(session_id)
        return session.recompute_deadline if session else None

    def next_deadline(self) -> float | None:
        deadlines = [s.recompute_deadline for s in self.sessions.values()
                     if s.recompute_deadline is not None]
        return min(deadlines) if deadlines else None

    def run_due(self, now: float | None = None) -> int:
        """Fire every pending recompute whose deadline has passed."""
        now = self.clock() if now is None else now
        fired = 0
        for session in self.sessions.values():
            if session.recompute_deadline is not None and now >= session.recompute_deadline:
                session.recompute_deadline = None
                if session.stale:
                    self._recompute(session)
                    fired += 1
        return fired

    # -- handlers ----------------------------------------------------------

    def handle_design_update(self, session: Session, doc: DesignDocument) -> dict[str, Any]:
        now = self.clock()
        session.doc = doc
        session.stale = True
        session.last_update = now
        session.recompute_deadline = now + self.debounce_seconds
        self._log(session, "design_snapshot", {"doc": document_to_dict(doc)})
        return {"type": "ack", "ok": True}

    def handle_get_annotations(self, session: Session, principle: str, mode: str) -> dict[str, Any]:
        if session.stale:
            self._recompute(session)
        self._log(session, "principle_click", {"principle": principle})
        self._log(session, "annotation_viewed", {"principle": principle, "mode": mode})
        return {
            "type": "annotations",
            "principle": principle,
            "mode": mode,
            "layer": session.layers[(principle, mode)].to_dict(),
            "explanation": session.explanations[(principle, mode)].to_dict(),
            "stale": False,
        }

    def handle_get_status(self, session: Session) -> dict[str, Any]:
        self._log(session, "status_check", {})
        return self._status_reply(session)

    def handle_toggle(self, session: Session, enabled: bool) -> dict[str, Any]:
        session.critiques_enabled = enabled
        self._log(session, "toggle", {"enabled": enabled})
        return self._status_reply(session)

    def _status_reply(self, session: Session) -> dict[str, Any]:
        return {
            "type": "status",
            "issue_flags": {p: session.result.issue_flags[p] for p in PRINCIPLES},
            "critiques_enabled": session.critiques_enabled,
            "suppressed": not session.critiques_enabled,
        }

    # -- wire dispatch -------------------------------------------------------

    def handle_message(self, message: Any) -> dict[str, Any]:
        """Dispatch one decoded client message; always returns exactly one reply."""
        if not isinstance(message, dict) or "type" not in message:
            return _error("BadMessage", "message must be an object with a type field")
        kind = message["type"]
        session_id = message.get("session_id")
        if not isinstance(session_id, str) or not session_id:
            return _error("UnknownSession", "session_id must be a non-empty string")
        session = self.session(session_id)

        if kind == "design_update":
            try:
                doc = document_from_dict(message.get("doc"))
            except SchemaViolation as exc:
                return _error("SchemaViolation", str(exc))
            except DuplicateId as exc:
                return _error("DuplicateId", str(exc))
            return self.handle_design_update(session, doc)

        if kind == "get_annotations":
            principle = message.get("principle")
            if principle not in PRINCIPLES:
                return _error("UnknownPrinciple", f"unknown principle: {principle!r}")
            mode = message.get("mode")
            if mode not in MODES:
                return _error("UnknownMode", f"unknown mode: {mode!r}")
            return self.handle_get_annotations(session, principle, mode)

        if kind == "get_status":
            return self.handle_get_status(session)

        if kind == "toggle_critiques":
            enabled = message.get("enabled")
            if not isinstance(enabled, bool):
                return _error("BadMessage", "enabled must be a boolean")
            return self.handle_toggle(session, enabled)

        return _error("BadMessage", f"unknown message type: {kind!r}")


def _error(code: str, detail: str) -> dict[str, Any]:
    return {"type": "error", "code": code, "detail": detail}


class ManualClock:
    """Test clock: starts at t0 seconds and only moves when advanced."""

    def __init__(self, t0: float = 1_000_000.0):
        self._now = t0

    def __call__(self) -> float:
        return self._now

    def advance(self, seconds: float) -> float:
        self._now += seconds
        return self._now

    def set(self, t: float) -> float:
        self._now = t
        return self._now
