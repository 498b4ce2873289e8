"""HTTP curation API: submit documents, browse and decide statements, export CSV.

All endpoints live under /v1/ and return errors as {"error_code", "message"}.
check never touches the store; submit is idempotent on the content hash.
"""

from __future__ import annotations

import base64
import binascii
import csv
import io
from contextlib import asynccontextmanager
from pathlib import Path
from typing import Optional, Union

from fastapi import FastAPI, Query, Request, Response
from fastapi.exceptions import RequestValidationError
from fastapi.responses import JSONResponse
from fastapi.staticfiles import StaticFiles
from pydantic import BaseModel, Field

from . import __version__
from .config import load_config
from .errors import (
    ConverterFailure,
    DasToolError,
    EmptyDocument,
    IngestError,
    InvalidDecision,
    InvalidFilter,
    MissingEditedText,
    NotFound,
    StoreUnavailable,
    UnsupportedFormat,
    VersionConflict,
)
from .extraction import extract
from .ingest import InputDescriptor, load_document
from .store import Store

CSV_HEADER = [
    "document_id", "title", "statement_text", "category", "links",
    "score", "confidence", "decision", "decided_at",
]

_STATUS = {
    NotFound: 404,
    VersionConflict: 409,
    InvalidFilter: 400,
    InvalidDecision: 400,
    MissingEditedText: 400,
    UnsupportedFormat: 400,
    EmptyDocument: 400,
    ConverterFailure: 422,
    IngestError: 400,
    StoreUnavailable: 503,
}

CONTEXT_CHARS = 400


class SubmitRequest(BaseModel):
    format: str = "plain_text"
    content: Union[str, dict]
    metadata: Optional[dict] = None


class DecisionRequest(BaseModel):
    decision: str
    edited_text: Optional[str] = None
    actor: str = Field(min_length=1)
    expected_version: int


def _descriptor(payload: SubmitRequest) -> InputDescriptor:
    data: Union[str, bytes, dict] = payload.content
    if payload.format == "pdf":
        if not isinstance(payload.content, str):
            raise IngestError("pdf content must be base64-encoded")
        try:
            data = base64.b64decode(payload.content, validate=True)
        except (binascii.Error, ValueError) as exc:
            raise IngestError(f"invalid base64 pdf content: {exc}") from exc
    return InputDescriptor(format=payload.format, data=data, metadata=payload.metadata or {})


def _error_status(exc: DasToolError) -> int:
    for klass, status in _STATUS.items():
        if isinstance(exc, klass):
            return status
    return 400


def create_app(
    store_path: str | Path,
    config_source="builtin",
    pdf_converter: Optional[str] = None,
    static_dir: Optional[str | Path] = None,
) -> FastAPI:
    config = load_config(config_source)

    @asynccontextmanager
    async def _lifespan(app: FastAPI):
        yield
        app.state.store.close()  # flush the WAL on clean shutdown

    app = FastAPI(title="dastool curation service", version=__version__, lifespan=_lifespan)
    app.state.store = Store(store_path)
    app.state.config = config
    app.state.pdf_converter = pdf_converter

    @app.exception_handler(DasToolError)
    async def _domain_error(_request: Request, exc: DasToolError):
        return JSONResponse(
            status_code=_error_status(exc),
            content={"error_code": exc.code, "message": str(exc)},
        )

    @app.exception_handler(RequestValidationError)
    async def _validation_error(_request: Request, exc: RequestValidationError):
        return JSONResponse(
            status_code=400,
            content={"error_code": "validation_error", "message": str(exc.errors()[:3])},
        )

    def _run_pipeline(payload: SubmitRequest):
        document = load_document(
            _descriptor(payload),
            heading_lexicon=config.heading_lexicon,
            pdf_converter=app.state.pdf_converter,
        )
        return document, extract(document, config)

    @app.post("/v1/documents")
    def submit_document(payload: SubmitRequest, response: Response):
        document, result = _run_pipeline(payload)
        existing = app.state.store.get_document_result(document.id)
        records = app.state.store.put_document(document, result)
        response.status_code = 200 if existing is not None else 201
        return {
            "document_id": document.id,
            "extraction": existing if existing is not None else result.to_dict(),
            "records": records,
        }

    @app.post("/v1/check")
    def check_document(payload: SubmitRequest):
        _document, result = _run_pipeline(payload)
        return result.to_dict()

    @app.get("/v1/statements")
    def list_statements(
        category: Optional[str] = None,
        decision: Optional[str] = None,
        min_confidence: Optional[float] = None,
        document_id: Optional[str] = None,
        page: int = Query(default=1, ge=1),
        page_size: int = Query(default=50, ge=1, le=200),
    ):
        filters = {
            "category": category,
            "decision": decision,
            "min_confidence": min_confidence,
            "document_id": document_id,
        }
        total, items = app.state.store.list_statements(filters, page=page, page_size=page_size)
        return {"total": total, "page": page, "page_size": page_size, "items": items}

    @app.get("/v1/statements/{statement_id}")
    def get_statement(statement_id: str):
        record = app.state.store.get_statement(statement_id)
        if record is None:
            raise NotFound(f"statement {statement_id} not found")
        text = app.state.store.get_document_text(record["statement"]["document_id"])
        if text is not None:
            span = record["statement"]["span"]
            lo = max(0, span["start"] - CONTEXT_CHARS)
            hi = min(len(text), span["end"] + CONTEXT_CHARS)
            record["context"] = {
                "text": text[lo:hi],
                "statement_start": span["start"] - lo,
                "statement_end": span["end"] - lo,
            }
        record["audit"] = app.state.store.audit_for(statement_id)
        return record

    @app.post("/v1/statements/{statement_id}/decision")
    def decide(statement_id: str, payload: DecisionRequest):
        return app.state.store.decide(
            statement_id,
            decision=payload.decision,
            edited_text=payload.edited_text,
            actor=payload.actor,
            expected_version=payload.expected_version,
        )

    @app.get("/v1/export.csv")
    def export_csv(
        category: Optional[str] = None,
        decision: Optional[str] = None,
        min_confidence: Optional[float] = None,
        document_id: Optional[str] = None,
    ):
        filters = {
            "category": category,
            "decision": decision,
            "min_confidence": min_confidence,
            "document_id": document_id,
        }
        rows = app.state.store.export_rows(filters)
        buffer = io.StringIO()
        writer = csv.writer(buffer, lineterminator="\r\n")
        writer.writerow(CSV_HEADER)
        for row in rows:
            writer.writerow([row[column] for column in CSV_HEADER])
        return Response(
            content=buffer.getvalue().encode("utf-8"),
            media_type="text/csv; charset=utf-8",
            headers={"Content-Disposition": 'attachment; filename="statements.csv"'},
        )

    if static_dir and Path(static_dir).is_dir():
        app.mount("/", StaticFiles(directory=str(static_dir), html=True), name="dashboard")

    return app
