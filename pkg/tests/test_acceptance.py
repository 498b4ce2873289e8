"""Acceptance criteria, one test per criterion, each printing a PASS/FAIL line.

Run with -s to see the per-criterion lines on passing runs.
"""

import csv
import io
import json
import random
import signal
import socket
import sqlite3
import string
import subprocess
import sys
import time
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path

import httpx
import pytest
from fastapi.testclient import TestClient

from dastool.cli import main
from dastool.config import CATEGORIES, load_config
from dastool.extraction import (
    DataAccessStatement,
    ExtractionResult,
    PrefilterResult,
    extract,
)
from dastool.ingest import Document, InputDescriptor, Span, load_document
from dastool.links import ResourceLink, extract_links
from dastool.service import CSV_HEADER, create_app
from dastool.store import Store

from conftest import CORPUS_DIR, ROOT, SNIPPET_1

CONFIG = load_config("builtin")


def _report(name: str, ok: bool, detail: str = "") -> None:
    status = "PASS" if ok else "FAIL"
    print(f"ACCEPTANCE {status}: {name}" + (f" ({detail})" if detail else ""))
    assert ok, f"{name}: {detail}"


def _load(text: str) -> Document:
    return load_document(
        InputDescriptor(format="plain_text", data=text),
        heading_lexicon=CONFIG.heading_lexicon,
    )


def test_seed_corpus_quality_gate(tmp_path, capsys):
    out = tmp_path / "report.json"
    started = time.perf_counter()
    code = main(["eval", str(CORPUS_DIR), "--output", str(out)])
    elapsed = time.perf_counter() - started
    capsys.readouterr()  # swallow the eval table; the criterion line follows
    report = json.loads(out.read_text(encoding="utf-8"))
    ok = (
        code == 0
        and report["corpus_size"] >= 60
        and report["recall"] >= 0.85
        and report["precision"] >= 0.85
        and elapsed < 5.0
    )
    _report(
        "seed corpus quality gate",
        ok,
        f"precision={report['precision']:.3f} recall={report['recall']:.3f} "
        f"docs={report['corpus_size']} elapsed={elapsed:.2f}s",
    )


def _fuzz_document_text(rng: random.Random) -> str:
    words = (
        "survey model cohort baseline analysis results methods sampling "
        "protocol figure appendix replication estimate seasonal"
    ).split()
    phrases = [e.phrase for e in CONFIG.lexicon]
    headings = ["Methods", "Data Availability", "Results", "Discussion", "Data sharing"]
    links = [
        "https://doi.org/10.5281/zenodo.777",
        "https://osf.io/q4vxe",
        "10.5061/dryad.q2bvq83k1",
    ]
    lines = []
    for _ in range(rng.randrange(1, 6)):
        if rng.random() < 0.3:
            lines.append(rng.choice(headings))
        tokens = [rng.choice(words) for _ in range(rng.randrange(3, 14))]
        if rng.random() < 0.5:
            tokens.insert(rng.randrange(len(tokens)), rng.choice(phrases))
        if rng.random() < 0.25:
            tokens.append(rng.choice(links))
        sentence = " ".join(tokens)
        lines.append(sentence[0].upper() + sentence[1:] + ".")
    return "\n".join(lines)


def test_two_stage_contract_fuzz():
    rng = random.Random(20240817)
    violations = 0
    checked = 0
    corpus_texts = [p.read_text(encoding="utf-8") for p in sorted(CORPUS_DIR.rglob("*.txt"))]
    fuzz_texts = [_fuzz_document_text(rng) for _ in range(1000)]
    for text in corpus_texts + fuzz_texts:
        result = extract(_load(text), CONFIG)
        checked += 1
        if result.statements and result.prefilter.score < CONFIG.prefilter_threshold:
            violations += 1
        if result.statements and not result.passed_prefilter:
            violations += 1
    _report("two-stage contract", violations == 0, f"{checked} documents, {violations} violations")


_KNOWN_LINKS = [
    # (text form, expected canonical)
    ("https://doi.org/10.5281/zenodo.4421289", "10.5281/zenodo.4421289"),
    ("http://dx.doi.org/10.1234/ABC.def", "10.1234/ABC.def"),
    ("doi:10.1093/nar/gkaa1100", "10.1093/nar/gkaa1100"),
    ("10.5061/dryad.Q2BVQ83K1", "10.5061/dryad.Q2BVQ83K1"),
    ("10.17632/abc123.2", "10.17632/abc123.2"),
    ("https://osf.io/q4vxe", "https://osf.io/q4vxe"),
    ("https://github.com/lab/tool", "https://github.com/lab/tool"),
    ("https://figshare.com/articles/dataset/9912345", "https://figshare.com/articles/dataset/9912345"),
    ("https://example.org/data/set?id=7&v=2", "https://example.org/data/set?id=7&v=2"),
    ("GSE45678", "GSE45678"),
    ("SRR1234567", "SRR1234567"),
    ("PRJNA731589", "PRJNA731589"),
    ("PRJEB4022", "PRJEB4022"),
    ("AB123456", "AB123456"),
    ("KX969442", "KX969442"),
]
_ACCESSION_CANONICALS = {"GSE45678", "SRR1234567", "PRJNA731589", "PRJEB4022", "AB123456", "KX969442"}


def _wrap_link(rng: random.Random, form: str) -> str:
    openers = ["", "(", "[", "\"", "'"]
    closers = ["", ")", "].", ",", ".", ";", ":", "\"", ")."]
    return rng.choice(openers) + form + rng.choice(closers)


def _noise_word(rng: random.Random) -> str:
    word = "".join(rng.choice(string.ascii_lowercase) for _ in range(rng.randrange(4, 11)))
    if rng.random() < 0.3 and len(word) >= 6:
        cut = rng.randrange(2, len(word) - 2)
        return word[:cut] + "-\n" + word[cut:]
    return word


def test_link_fidelity_generated_documents():
    rng = random.Random(4180)
    failures = []
    for trial in range(200):
        picks = rng.sample(_KNOWN_LINKS, rng.randrange(1, 5))
        tokens = []
        for form, _canonical in picks:
            tokens.append(_wrap_link(rng, form))
            tokens.extend(_noise_word(rng) for _ in range(rng.randrange(1, 5)))
        if any(canonical in _ACCESSION_CANONICALS for _form, canonical in picks):
            tokens.append("accession")
        rng.shuffle(tokens)
        raw_text = " ".join(tokens)
        document = _load(raw_text)
        links = extract_links(document.text)
        canonicals = {link.canonical for link in links}
        for _form, canonical in picks:
            if canonical not in canonicals:
                failures.append(f"trial {trial}: missing {canonical!r}")
        for link in links:
            if document.text[link.span.start:link.span.end] != link.raw:
                failures.append(f"trial {trial}: raw not verbatim for {link.canonical!r}")
    _report("link fidelity", not failures, f"200 documents, {len(failures)} failures"
            + ("; first: " + failures[0] if failures else ""))


def test_cmd_extract_determinism(tmp_path):
    outputs = []
    for index, jobs in enumerate(("1", "4", "4")):
        out = tmp_path / f"run{index}.jsonl"
        proc = subprocess.run(
            [sys.executable, "-m", "dastool", "extract", str(CORPUS_DIR),
             "--jobs", jobs, "--output", str(out)],
            cwd=ROOT, capture_output=True, text=True,
        )
        assert proc.returncode == 0, proc.stderr
        outputs.append(out.read_bytes())
    identical = outputs[0] == outputs[1] == outputs[2]
    _report("cmd_extract determinism", identical,
            f"3 runs over {len(outputs[0].splitlines())} documents, jobs=1/4/4")


def _nasty_text(rng: random.Random, index: int) -> str:
    pieces = [
        f"Statement {index}",
        'with "double quotes"',
        "a, comma, list",
        "pipe|separated|bits",
        "line\nbreak",
        "crlf\r\nbreak",
        "unicode é世界",
        "'single quotes'",
    ]
    rng.shuffle(pieces)
    return " ".join(pieces[: rng.randrange(3, len(pieces) + 1)])


def test_csv_round_trip_synthetic_records(tmp_path):
    rng = random.Random(1000)
    app = create_app(store_path=tmp_path / "csv.db")
    client = TestClient(app)
    store: Store = app.state.store

    expected = {}
    for i in range(1000):
        doc_id = f"{i:064x}"
        statement_text = _nasty_text(rng, i)
        title = _nasty_text(rng, i) if rng.random() < 0.5 else f"Title {i}"
        category = CATEGORIES[i % len(CATEGORIES)]
        links = []
        for j in range(rng.randrange(0, 3)):
            links.append(ResourceLink(
                kind="url", raw=f"https://example.org/{i}/{j}",
                canonical=f"https://example.org/{i}/{j}", span=Span(0, 10),
            ))
        statement = DataAccessStatement(
            id=f"{i:063x}f", document_id=doc_id, span=Span(0, max(1, len(statement_text))),
            text=statement_text, category=category, links=tuple(links),
            score=5 + (i % 7), confidence=(5 + (i % 7)) / (10 + (i % 7)),
        )
        document = Document(
            id=doc_id, source_format="plain_text", raw_len=len(statement_text.encode()),
            text=statement_text, sections=(), sentences=(), title=title, origin=None,
        )
        result = ExtractionResult(
            document_id=doc_id,
            prefilter=PrefilterResult(document_id=doc_id, score=10, matched=()),
            passed_prefilter=True, statements=(statement,),
            config_fingerprint=CONFIG.fingerprint,
        )
        store.put_document(document, result)

        decision = ("pending", "accepted", "rejected", "edited")[i % 4]
        decided_at = ""
        edited_text = None
        if decision != "pending":
            if decision == "edited":
                edited_text = "edited " + _nasty_text(rng, i)
            curation = store.decide(statement.id, decision, edited_text, "tester", expected_version=1)
            decided_at = curation["decided_at"]
        expected[statement.id] = (
            doc_id,
            title,
            edited_text if decision == "edited" else statement_text,
            category,
            "|".join(l.canonical for l in links),
            str(statement.score),
            str(statement.confidence),
            decision,
            decided_at,
        )

    response = client.get("/v1/export.csv")
    assert response.status_code == 200
    rows = list(csv.reader(io.StringIO(response.text)))
    header, body = rows[0], rows[1:]
    mismatches = 0
    if header != CSV_HEADER:
        mismatches += 1
    if len(body) != 1000:
        mismatches += 1
    if sorted(tuple(r) for r in body) != sorted(expected.values()):
        mismatches += 1
    _report("csv round trip", mismatches == 0, f"{len(body)} records, header+fields compared")


def test_api_workflow_scripted_client(tmp_path):
    app = create_app(store_path=tmp_path / "api.db")
    client = TestClient(app)
    steps = []

    payload = {"format": "plain_text", "content": SNIPPET_1.read_text(encoding="utf-8"),
               "metadata": {"title": "Mulching"}}
    created = client.post("/v1/documents", json=payload)
    steps.append(("submit 201", created.status_code == 201))
    record = created.json()["records"][0]
    sid = record["statement"]["id"]

    again = client.post("/v1/documents", json=payload)
    steps.append(("resubmit 200", again.status_code == 200))
    steps.append(("no duplicates", [r["statement"]["id"] for r in again.json()["records"]] == [sid]))

    listed = client.get("/v1/statements", params={"decision": "pending"})
    steps.append(("list pending", listed.json()["total"] == 1))

    decided = client.post(f"/v1/statements/{sid}/decision", json={
        "decision": "accepted", "actor": "curator", "expected_version": 1,
    })
    steps.append(("accept", decided.status_code == 200 and decided.json()["version"] == 2))

    stale = client.post(f"/v1/statements/{sid}/decision", json={
        "decision": "rejected", "actor": "late", "expected_version": 1,
    })
    steps.append(("stale conflict 409", stale.status_code == 409))

    exported = client.get("/v1/export.csv", params={"decision": "accepted"})
    rows = list(csv.reader(io.StringIO(exported.text)))
    steps.append(("export shows accepted", len(rows) == 2
                  and rows[1][CSV_HEADER.index("decision")] == "accepted"))

    failures = [name for name, ok in steps if not ok]
    _report("api workflow", not failures, "steps: " + ", ".join(name for name, _ in steps)
            + (f"; failed: {failures}" if failures else ""))


def _free_port() -> int:
    with socket.socket() as sock:
        sock.bind(("127.0.0.1", 0))
        return sock.getsockname()[1]


def _wait_ready(base: str, proc: subprocess.Popen, timeout: float = 15.0) -> None:
    deadline = time.time() + timeout
    while time.time() < deadline:
        if proc.poll() is not None:
            raise RuntimeError(f"server exited early: {proc.stderr.read()}")
        try:
            if httpx.get(base + "/v1/statements", timeout=1.0).status_code == 200:
                return
        except httpx.HTTPError:
            time.sleep(0.05)
    raise RuntimeError("server did not become ready")


def _start_server(store_path: Path, port: int) -> subprocess.Popen:
    return subprocess.Popen(
        [sys.executable, "-m", "dastool", "serve",
         "--addr", f"127.0.0.1:{port}", "--store", str(store_path)],
        cwd=ROOT, stdout=subprocess.PIPE, stderr=subprocess.PIPE, text=True,
    )


def test_crash_safety_mid_decision_burst(tmp_path):
    store_path = tmp_path / "crash.db"
    port = _free_port()
    base = f"http://127.0.0.1:{port}"
    proc = _start_server(store_path, port)
    try:
        _wait_ready(base, proc)
        with httpx.Client(timeout=10.0) as session:
            sids = []
            for i in range(100):
                text = ("Data Availability\nThe data are openly available in Zenodo at "
                        f"https://doi.org/10.5281/zenodo.{1000 + i}.\n")
                response = session.post(base + "/v1/documents", json={
                    "format": "plain_text", "content": text,
                })
                assert response.status_code == 201
                sids.append(response.json()["records"][0]["statement"]["id"])

        def _decide(sid):
            try:
                return httpx.post(base + f"/v1/statements/{sid}/decision", json={
                    "decision": "accepted", "actor": "burst", "expected_version": 1,
                }, timeout=5.0).status_code
            except httpx.HTTPError:
                return None

        with ThreadPoolExecutor(max_workers=16) as pool:
            futures = [pool.submit(_decide, sid) for sid in sids]
            # kill only once part of the burst has committed, so the SIGKILL
            # genuinely lands mid-burst with requests still in flight
            deadline = time.time() + 20
            while time.time() < deadline:
                if sum(1 for f in futures if f.done()) >= 20:
                    break
                time.sleep(0.002)
            proc.send_signal(signal.SIGKILL)
            outcomes = [f.result() for f in futures]
        proc.wait(timeout=10)
    finally:
        if proc.poll() is None:
            proc.kill()
            proc.wait(timeout=10)

    problems = []
    conn = sqlite3.connect(store_path)
    try:
        integrity = conn.execute("PRAGMA integrity_check").fetchone()[0]
        if integrity != "ok":
            problems.append(f"integrity: {integrity}")
        rows = conn.execute("SELECT id, version FROM statements").fetchall()
        if len(rows) != 100:
            problems.append(f"expected 100 statements, found {len(rows)}")
        for sid, version in rows:
            audit = conn.execute(
                "SELECT at FROM audit WHERE statement_id = ? ORDER BY at", (sid,)
            ).fetchall()
            if version != 1 + len(audit):
                problems.append(f"{sid[:8]}: version {version} vs {len(audit)} audit entries")
            timestamps = [a[0] for a in audit]
            if timestamps != sorted(set(timestamps)):
                problems.append(f"{sid[:8]}: audit timestamps not strictly increasing")
    finally:
        conn.close()

    # restart on the same store: it must serve reads and writes again
    port2 = _free_port()
    proc2 = _start_server(store_path, port2)
    try:
        _wait_ready(f"http://127.0.0.1:{port2}", proc2)
        listed = httpx.get(f"http://127.0.0.1:{port2}/v1/statements",
                           params={"page_size": 200}, timeout=5.0).json()
        if listed["total"] != 100:
            problems.append(f"restart lists {listed['total']} statements")
        exported = subprocess.run(
            [sys.executable, "-m", "dastool", "export", "--url", f"http://127.0.0.1:{port2}"],
            cwd=ROOT, capture_output=True, text=True,
        )
        if exported.returncode != 0 or len(exported.stdout.splitlines()) != 101:
            problems.append("post-restart export failed")
    finally:
        proc2.terminate()
        try:
            proc2.wait(timeout=10)
        except subprocess.TimeoutExpired:
            proc2.kill()
            proc2.wait(timeout=10)

    completed = sum(1 for code in outcomes if code == 200)
    interrupted = sum(1 for code in outcomes if code is None)
    if completed == 0:
        problems.append("kill landed before any decision committed; burst not exercised")
    _report("crash safety", not problems,
            f"{completed}/100 decisions landed, {interrupted} interrupted; "
            "store consistent after restart"
            + (f"; problems: {problems[:3]}" if problems else ""))
