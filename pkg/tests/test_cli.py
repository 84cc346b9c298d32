from __future__ import annotations

import json
import os
import signal
import socket
import subprocess
import sys
import time

import pytest
from click.testing import CliRunner

from critiq.cli import main
from critiq.server import ServiceClient

from conftest import CORPUS_DESIGNS, CORPUS_LABELS, GOLDEN_DIR

SEED = str(CORPUS_DESIGNS / "seed_four_violations.json")
CLEAN = str(CORPUS_DESIGNS / "clean_stack.json")


def run_cli(*args):
    # click >= 8.2 separates stderr by default
    return CliRunner().invoke(main, list(args))


# --- analyze ---------------------------------------------------------------------

def test_analyze_clean_design_exit_zero():
    result = run_cli("analyze", CLEAN)
    assert result.exit_code == 0
    assert "clean" in result.output


def test_analyze_seed_exit_one_lists_four_issues():
    result = run_cli("analyze", SEED, "--format", "json")
    assert result.exit_code == 1
    payload = json.loads(result.output)
    assert all(payload["issue_flags"].values())
    total = sum(len(report["issues"]) for report in payload["reports"].values())
    assert total == 4


def test_analyze_missing_file_exit_two():
    result = run_cli("analyze", "nope/missing.json")
    assert result.exit_code == 2


def test_analyze_principle_filter_controls_exit_code():
    # The seed violates everything; a clean design filtered anywhere is 0.
    assert run_cli("analyze", SEED, "--principle", "unity").exit_code == 1
    assert run_cli("analyze", CLEAN, "--principle", "unity").exit_code == 0


def test_analyze_md_golden():
    result = run_cli("analyze", SEED)
    golden = (GOLDEN_DIR / "analyze_seed.md").read_text(encoding="utf-8")
    assert result.output == golden


# --- render -----------------------------------------------------------------------

def test_render_base_and_overlay(tmp_path):
    base = tmp_path / "base.svg"
    overlay = tmp_path / "overlay.svg"
    assert run_cli("render", SEED, "--out", str(base)).exit_code == 0
    assert run_cli("render", SEED, "--principle", "hierarchy", "--mode", "solution",
                   "--out", str(overlay)).exit_code == 0
    assert "data-principle" not in base.read_text()
    assert 'data-principle="hierarchy"' in overlay.read_text()
    golden = (GOLDEN_DIR / "seed_solution_hierarchy.svg").read_text(encoding="utf-8")
    assert overlay.read_text() == golden


def test_render_repeat_identical_bytes(tmp_path):
    a, b = tmp_path / "a.svg", tmp_path / "b.svg"
    run_cli("render", SEED, "--principle", "unity", "--out", str(a))
    run_cli("render", SEED, "--principle", "unity", "--out", str(b))
    assert a.read_bytes() == b.read_bytes()


def test_render_invalid_principle_exit_two(tmp_path):
    result = run_cli("render", SEED, "--principle", "balance",
                     "--out", str(tmp_path / "x.svg"))
    assert result.exit_code == 2


# --- diff ------------------------------------------------------------------------

def test_diff_identical_files_no_changes():
    result = run_cli("diff", SEED, SEED)
    assert result.exit_code == 0
    assert result.output.strip() == "no changes"


def test_diff_background_change(tmp_path):
    original = json.loads((CORPUS_DESIGNS / "clean_stack.json").read_text())
    original["background"] = "#000000"
    other = tmp_path / "variant.json"
    other.write_text(json.dumps(original))
    result = run_cli("diff", CLEAN, str(other))
    assert result.exit_code == 1
    assert result.output.strip() == "background: #ffffff -> #000000"


def test_diff_font_size_change(tmp_path):
    original = json.loads((CORPUS_DESIGNS / "clean_stack.json").read_text())
    for el in original["elements"]:
        if el["id"] == "title":
            el["font_size"] = 48
    other = tmp_path / "variant.json"
    other.write_text(json.dumps(original))
    result = run_cli("diff", CLEAN, str(other))
    assert result.exit_code == 1
    assert result.output.strip() == "elements[title].font_size: 40 -> 48"


def test_diff_parse_failure_exit_two(tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    assert run_cli("diff", CLEAN, str(bad)).exit_code == 2


# --- evaluate ----------------------------------------------------------------------

def test_evaluate_corpus_golden():
    result = run_cli("evaluate", str(CORPUS_DESIGNS), str(CORPUS_LABELS))
    assert result.exit_code == 0
    golden = (GOLDEN_DIR / "evaluate_corpus.txt").read_text(encoding="utf-8")
    assert result.output == golden


def test_evaluate_json_accuracies():
    result = run_cli("evaluate", str(CORPUS_DESIGNS), str(CORPUS_LABELS),
                     "--format", "json")
    payload = json.loads(result.output)
    assert payload["corpus_size"] >= 26
    for principle, stats in payload["principles"].items():
        assert stats["accuracy"] == 1.0, principle
    assert payload["principles"]["unity"]["na"] == 1


def test_evaluate_missing_design_exit_two(tmp_path):
    labels = [{"design_id": "ghost", "hierarchy": "issue",
               "alignment": "no_issue", "whitespace": "no_issue", "unity": "no_issue"}]
    labels_file = tmp_path / "labels.json"
    labels_file.write_text(json.dumps(labels))
    result = run_cli("evaluate", str(tmp_path), str(labels_file))
    assert result.exit_code == 2
    assert "ghost" in result.stderr


def test_evaluate_na_exclusion(tmp_path):
    # A design whose unity detector fires but is labeled NA must not count.
    labels = [{"design_id": "na_crowded_zine", "hierarchy": "issue",
               "alignment": "no_issue", "whitespace": "no_issue", "unity": "NA"}]
    labels_file = tmp_path / "labels.json"
    labels_file.write_text(json.dumps(labels))
    result = run_cli("evaluate", str(CORPUS_DESIGNS), str(labels_file), "--format", "json")
    payload = json.loads(result.output)
    unity = payload["principles"]["unity"]
    assert unity["na"] == 1
    assert unity["accuracy"] is None
    assert unity["tp"] + unity["tn"] + unity["fp"] + unity["fn"] == 0


# --- serve (end to end over the wire) -------------------------------------------------

def free_port() -> int:
    with socket.socket() as s:
        s.bind(("127.0.0.1", 0))
        return s.getsockname()[1]


@pytest.fixture()
def live_server(tmp_path):
    port = free_port()
    log_dir = tmp_path / "logs"
    proc = subprocess.Popen(
        [sys.executable, "-m", "critiq", "serve", "--port", str(port),
         "--log-dir", str(log_dir), "--debounce", "0.2"],
        stdout=subprocess.PIPE, stderr=subprocess.PIPE,
    )
    deadline = time.time() + 10
    while time.time() < deadline:
        try:
            with socket.create_connection(("127.0.0.1", port), timeout=0.2):
                break
        except OSError:
            time.sleep(0.05)
    else:
        proc.kill()
        raise RuntimeError("server did not come up")
    yield port, log_dir
    proc.send_signal(signal.SIGINT)
    try:
        proc.wait(timeout=5)
    except subprocess.TimeoutExpired:
        proc.kill()


def test_serve_status_and_seed_flags(live_server):
    port, log_dir = live_server
    seed_doc = json.loads((CORPUS_DESIGNS / "seed_four_violations.json").read_text())
    with ServiceClient(port=port) as client:
        status = client.request({"type": "get_status", "session_id": "e2e"})
        assert status["type"] == "status"
        assert not any(status["issue_flags"].values())

        ack = client.request({"type": "design_update", "session_id": "e2e",
                              "doc": seed_doc})
        assert ack["type"] == "ack"

        deadline = time.time() + 5
        flags = {}
        while time.time() < deadline:
            status = client.request({"type": "get_status", "session_id": "e2e"})
            flags = status["issue_flags"]
            if all(flags.values()):
                break
            time.sleep(0.05)
        assert all(flags.values()), flags

        reply = client.request({"type": "get_annotations", "session_id": "e2e",
                                "principle": "hierarchy", "mode": "solution"})
        assert reply["type"] == "annotations"
        assert reply["layer"]["primitives"]
        assert reply["stale"] is False

    # Interaction logs are flushed record by record.
    log_files = list(log_dir.glob("*.jsonl"))
    assert log_files and log_files[0].read_text().strip()


def test_serve_busy_port_exit_two(live_server):
    port, _ = live_server
    proc = subprocess.run(
        [sys.executable, "-m", "critiq", "serve", "--port", str(port)],
        capture_output=True, timeout=15,
    )
    assert proc.returncode == 2


def test_env_port_override(monkeypatch):
    monkeypatch.setenv("CRITIQ_PORT", "9123")
    from critiq.server import default_port
    assert default_port() == 9123
