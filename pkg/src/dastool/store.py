"""Embedded sqlite persistence for statements, curation decisions, and audit entries.

Single-writer/multi-reader: every write runs in one IMMEDIATE transaction, so
a killed process can lose at most uncommitted work and a statement's version
counter always equals 1 + its audit entry count.
"""

from __future__ import annotations

import json
import sqlite3
from contextlib import contextmanager
from datetime import datetime, timedelta, timezone
from pathlib import Path

from .config import CATEGORIES, DECISIONS
from .errors import (
    InvalidDecision,
    InvalidFilter,
    MissingEditedText,
    NotFound,
    StoreUnavailable,
    VersionConflict,
)

_SCHEMA = """
CREATE TABLE IF NOT EXISTS documents (
    id TEXT PRIMARY KEY,
    title TEXT,
    origin TEXT,
    source_format TEXT NOT NULL,
    raw_len INTEGER NOT NULL,
    text TEXT NOT NULL,
    extraction_json TEXT NOT NULL,
    created_at TEXT NOT NULL
);
CREATE TABLE IF NOT EXISTS statements (
    id TEXT PRIMARY KEY,
    document_id TEXT NOT NULL REFERENCES documents(id),
    span_start INTEGER NOT NULL,
    span_end INTEGER NOT NULL,
    text TEXT NOT NULL,
    category TEXT NOT NULL,
    links_json TEXT NOT NULL,
    score INTEGER NOT NULL,
    confidence REAL NOT NULL,
    decision TEXT NOT NULL DEFAULT 'pending',
    edited_text TEXT,
    actor TEXT NOT NULL DEFAULT '',
    decided_at TEXT,
    version INTEGER NOT NULL DEFAULT 1,
    created_at TEXT NOT NULL
);
CREATE TABLE IF NOT EXISTS audit (
    seq INTEGER PRIMARY KEY AUTOINCREMENT,
    statement_id TEXT NOT NULL,
    from_decision TEXT NOT NULL,
    to_decision TEXT NOT NULL,
    actor TEXT NOT NULL,
    at TEXT NOT NULL
);
CREATE INDEX IF NOT EXISTS idx_statements_order ON statements (created_at DESC, id);
CREATE INDEX IF NOT EXISTS idx_audit_statement ON audit (statement_id, at);
"""


def _utc_now() -> str:
    return datetime.now(timezone.utc).strftime("%Y-%m-%dT%H:%M:%S.%fZ")


def _curation_dict(row) -> dict:
    return {
        "decision": row["decision"],
        "edited_text": row["edited_text"],
        "actor": row["actor"] or None,
        "decided_at": row["decided_at"],
        "version": row["version"],
    }


def _record_dict(row) -> dict:
    return {
        "statement": {
            "id": row["id"],
            "document_id": row["document_id"],
            "span": {"start": row["span_start"], "end": row["span_end"]},
            "text": row["text"],
            "category": row["category"],
            "links": json.loads(row["links_json"]),
            "score": row["score"],
            "confidence": row["confidence"],
        },
        "document_metadata": {"title": row["title"], "origin": row["origin"]},
        "curation": _curation_dict(row),
        "created_at": row["created_at"],
    }


class Store:
    """File-backed store; safe for concurrent readers and serialized writers."""

    def __init__(self, path: str | Path):
        self.path = Path(path)
        try:
            self.path.parent.mkdir(parents=True, exist_ok=True)
            with self._connect() as conn:
                conn.executescript(_SCHEMA)
        except (OSError, sqlite3.Error) as exc:
            raise StoreUnavailable(f"cannot open store at {self.path}: {exc}") from exc

    def _connect(self) -> sqlite3.Connection:
        conn = sqlite3.connect(self.path, timeout=30)
        conn.row_factory = sqlite3.Row
        conn.execute("PRAGMA journal_mode=WAL")
        conn.execute("PRAGMA foreign_keys=ON")
        return conn

    @contextmanager
    def _write(self):
        conn = self._connect()
        try:
            conn.execute("BEGIN IMMEDIATE")
            yield conn
            conn.commit()
        except BaseException:
            conn.rollback()
            raise
        finally:
            conn.close()

    @contextmanager
    def _read(self):
        conn = self._connect()
        try:
            yield conn
        finally:
            conn.close()

    def close(self) -> None:
        # Connections are per-operation; checkpoint the WAL so a plain copy
        # of the database file is complete.
        try:
            with self._read() as conn:
                conn.execute("PRAGMA wal_checkpoint(TRUNCATE)")
        except sqlite3.Error:
            pass

    # -- documents -----------------------------------------------------

    def get_document_result(self, document_id: str):
        with self._read() as conn:
            row = conn.execute(
                "SELECT extraction_json FROM documents WHERE id = ?", (document_id,)
            ).fetchone()
        return json.loads(row["extraction_json"]) if row else None

    def get_document_text(self, document_id: str):
        with self._read() as conn:
            row = conn.execute(
                "SELECT text FROM documents WHERE id = ?", (document_id,)
            ).fetchone()
        return row["text"] if row else None

    def put_document(self, document, result) -> list[dict]:
        """Persist a document and one pending record per statement.

        Idempotent on document id: resubmitting stored content is a no-op
        that returns the existing records.
        """
        existing = self.get_document_result(document.id)
        if existing is not None:
            return self.records_for_document(document.id)
        now = _utc_now()
        try:
            with self._write() as conn:
                conn.execute(
                    "INSERT OR IGNORE INTO documents "
                    "(id, title, origin, source_format, raw_len, text, extraction_json, created_at) "
                    "VALUES (?, ?, ?, ?, ?, ?, ?, ?)",
                    (
                        document.id, document.title, document.origin,
                        document.source_format, document.raw_len, document.text,
                        json.dumps(result.to_dict(), ensure_ascii=False), now,
                    ),
                )
                for statement in result.statements:
                    conn.execute(
                        "INSERT OR IGNORE INTO statements "
                        "(id, document_id, span_start, span_end, text, category, "
                        " links_json, score, confidence, created_at) "
                        "VALUES (?, ?, ?, ?, ?, ?, ?, ?, ?, ?)",
                        (
                            statement.id, document.id,
                            statement.span.start, statement.span.end,
                            statement.text, statement.category,
                            json.dumps([l.to_dict() for l in statement.links], ensure_ascii=False),
                            statement.score, statement.confidence, now,
                        ),
                    )
        except sqlite3.Error as exc:
            raise StoreUnavailable(f"write failed: {exc}") from exc
        return self.records_for_document(document.id)

    def records_for_document(self, document_id: str) -> list[dict]:
        with self._read() as conn:
            rows = conn.execute(
                "SELECT s.*, d.title, d.origin FROM statements s "
                "JOIN documents d ON d.id = s.document_id "
                "WHERE s.document_id = ? ORDER BY s.span_start",
                (document_id,),
            ).fetchall()
        return [_record_dict(row) for row in rows]

    # -- statements ----------------------------------------------------

    def get_statement(self, statement_id: str):
        with self._read() as conn:
            row = conn.execute(
                "SELECT s.*, d.title, d.origin FROM statements s "
                "JOIN documents d ON d.id = s.document_id WHERE s.id = ?",
                (statement_id,),
            ).fetchone()
        return _record_dict(row) if row else None

    @staticmethod
    def _filter_clause(filters: dict):
        clauses, params = [], []
        category = filters.get("category")
        if category is not None:
            if category not in CATEGORIES:
                raise InvalidFilter(f"unknown category {category!r}")
            clauses.append("s.category = ?")
            params.append(category)
        decision = filters.get("decision")
        if decision is not None:
            if decision not in DECISIONS:
                raise InvalidFilter(f"unknown decision {decision!r}")
            clauses.append("s.decision = ?")
            params.append(decision)
        min_confidence = filters.get("min_confidence")
        if min_confidence is not None:
            try:
                params.append(float(min_confidence))
            except (TypeError, ValueError) as exc:
                raise InvalidFilter(f"min_confidence must be a number: {min_confidence!r}") from exc
            clauses.append("s.confidence >= ?")
        document_id = filters.get("document_id")
        if document_id is not None:
            clauses.append("s.document_id = ?")
            params.append(document_id)
        where = (" WHERE " + " AND ".join(clauses)) if clauses else ""
        return where, params

    def list_statements(self, filters: dict, page: int = 1, page_size: int = 50):
        where, params = self._filter_clause(filters)
        page = max(1, int(page))
        page_size = min(200, max(1, int(page_size)))
        base = (
            "FROM statements s JOIN documents d ON d.id = s.document_id" + where
        )
        with self._read() as conn:
            total = conn.execute("SELECT COUNT(*) AS n " + base, params).fetchone()["n"]
            rows = conn.execute(
                "SELECT s.*, d.title, d.origin " + base
                + " ORDER BY s.created_at DESC, s.id LIMIT ? OFFSET ?",
                params + [page_size, (page - 1) * page_size],
            ).fetchall()
        return total, [_record_dict(row) for row in rows]

    def decide(self, statement_id: str, decision: str, edited_text, actor: str,
               expected_version: int) -> dict:
        """Apply a curation decision with optimistic concurrency.

        The version bump, curation fields, and audit entry commit in one
        transaction keyed on the expected version.
        """
        if decision not in DECISIONS:
            raise InvalidDecision(f"unknown decision {decision!r}")
        if decision == "edited":
            if not edited_text or not str(edited_text).strip():
                raise MissingEditedText("decision 'edited' requires edited_text")
        else:
            edited_text = None
        with self._write() as conn:
            row = conn.execute(
                "SELECT decision, version FROM statements WHERE id = ?", (statement_id,)
            ).fetchone()
            if row is None:
                raise NotFound(f"statement {statement_id} not found")
            if row["version"] != expected_version:
                raise VersionConflict(
                    f"expected version {expected_version}, current is {row['version']}"
                )
            now = _utc_now()
            last = conn.execute(
                "SELECT MAX(at) AS at FROM audit WHERE statement_id = ?", (statement_id,)
            ).fetchone()["at"]
            if last is not None and now <= last:
                # Keep per-statement audit timestamps strictly increasing even
                # when decisions land within one clock tick.
                base = datetime.strptime(last, "%Y-%m-%dT%H:%M:%S.%fZ")
                now = (base.replace(tzinfo=timezone.utc) + timedelta(microseconds=1)
                       ).strftime("%Y-%m-%dT%H:%M:%S.%fZ")
            updated = conn.execute(
                "UPDATE statements SET decision = ?, edited_text = ?, actor = ?, "
                "decided_at = ?, version = version + 1 WHERE id = ? AND version = ?",
                (decision, edited_text, actor, now, statement_id, expected_version),
            )
            if updated.rowcount != 1:
                raise VersionConflict("concurrent update detected")
            conn.execute(
                "INSERT INTO audit (statement_id, from_decision, to_decision, actor, at) "
                "VALUES (?, ?, ?, ?, ?)",
                (statement_id, row["decision"], decision, actor, now),
            )
            new_row = conn.execute(
                "SELECT decision, edited_text, actor, decided_at, version "
                "FROM statements WHERE id = ?",
                (statement_id,),
            ).fetchone()
            return _curation_dict(new_row)

    def audit_for(self, statement_id: str) -> list[dict]:
        with self._read() as conn:
            rows = conn.execute(
                "SELECT statement_id, from_decision, to_decision, actor, at "
                "FROM audit WHERE statement_id = ? ORDER BY at",
                (statement_id,),
            ).fetchall()
        return [dict(row) for row in rows]

    def export_rows(self, filters: dict) -> list[dict]:
        """All matching statements in list order, shaped for CSV export."""
        where, params = self._filter_clause(filters)
        with self._read() as conn:
            rows = conn.execute(
                "SELECT s.*, d.title, d.origin FROM statements s "
                "JOIN documents d ON d.id = s.document_id" + where
                + " ORDER BY s.created_at DESC, s.id",
                params,
            ).fetchall()
        out = []
        for row in rows:
            links = json.loads(row["links_json"])
            text = row["edited_text"] if row["decision"] == "edited" else row["text"]
            out.append({
                "document_id": row["document_id"],
                "title": row["title"] or "",
                "statement_text": text or "",
                "category": row["category"],
                "links": "|".join(link["canonical"] for link in links),
                "score": row["score"],
                "confidence": row["confidence"],
                "decision": row["decision"],
                "decided_at": row["decided_at"] or "",
            })
        return out

    def statement_ids(self) -> list[str]:
        with self._read() as conn:
            rows = conn.execute("SELECT id FROM statements ORDER BY id").fetchall()
        return [row["id"] for row in rows]
