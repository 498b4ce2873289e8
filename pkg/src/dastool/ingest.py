"""Turn raw inputs (text, sectioned JSON, PDF via external converter) into Documents."""

from __future__ import annotations

import hashlib
import json
import re
import shlex
import subprocess
import tempfile
import unicodedata
from dataclasses import dataclass, field
from pathlib import Path
from typing import NamedTuple, Optional, Sequence

from .config import BUILTIN_CONFIG
from .errors import ConverterFailure, EmptyDocument, IngestError, UnsupportedFormat

FORMATS = ("plain_text", "sectioned", "pdf")

DEFAULT_HEADING_LEXICON = tuple(BUILTIN_CONFIG["heading_lexicon"])

HEADING_MAX_CHARS = 80
# Lowercase words that may stay uncapitalized inside a title-case heading.
_TITLE_SMALL_WORDS = frozenset(
    "a an the and or of in on for to with at by from".split()
)
_TERMINAL_PUNCT = ".!?,;"

_LIGATURES = {
    "ﬀ": "ff",
    "ﬁ": "fi",
    "ﬂ": "fl",
    "ﬃ": "ffi",
    "ﬄ": "ffl",
}

# PDF extractors emit NBSP-family spaces and form feeds; fold them early.
_SPACE_VARIANTS = re.compile("[  -   ]")
_INLINE_WS = re.compile(r"[ \t]+")
_DEHYPHENATE = re.compile(r"(?<=[A-Za-z])-\n([a-z])")

_ABBREVIATIONS = (
    "et al.", "e.g.", "i.e.", "cf.", "vs.", "ca.", "approx.",
    "Fig.", "Figs.", "No.", "Nos.", "Dr.", "Prof.", "Eq.", "Ref.",
)

_SENTENCE_BREAK = re.compile(r"[.!?](\s+)(?=[A-Z0-9])")
_CONNECTIVE = re.compile(r"(?:These|This|Further|Additional|They)\b")


class Span(NamedTuple):
    """Half-open character range into Document.text."""

    start: int
    end: int

    def to_dict(self) -> dict:
        return {"start": self.start, "end": self.end}


@dataclass(frozen=True)
class Section:
    heading: Optional[str]
    kind: str  # "availability_heading" | "other"
    span: Span


@dataclass(frozen=True)
class Sentence:
    span: Span
    section_index: int


@dataclass(frozen=True)
class InputDescriptor:
    """What callers hand to load_document: a format tag plus raw content."""

    format: str
    data: bytes | str | dict
    metadata: dict = field(default_factory=dict)


@dataclass(frozen=True)
class Document:
    id: str
    source_format: str
    raw_len: int
    text: str
    sections: tuple[Section, ...]
    sentences: tuple[Sentence, ...]
    title: Optional[str] = None
    origin: Optional[str] = None

    def sentence_text(self, sentence: Sentence) -> str:
        return self.text[sentence.span.start:sentence.span.end]


def normalize_text(raw: str) -> str:
    """Normalize text for matching: NFC, ligatures expanded, whitespace and
    PDF line-break hyphenation repaired. Idempotent."""
    text = raw.replace("\r\n", "\n").replace("\r", "\n").replace("\f", "\n")
    text = text.replace("­", "")  # soft hyphens
    for ligature, expansion in _LIGATURES.items():
        text = text.replace(ligature, expansion)
    text = _SPACE_VARIANTS.sub(" ", text)
    text = unicodedata.normalize("NFC", text)
    lines = [_INLINE_WS.sub(" ", line).strip() for line in text.split("\n")]
    text = "\n".join(lines)
    # Join "avail-\nable" -> "available"; only lowercase continuations so
    # hyphenated proper nouns at line ends survive.
    text = _DEHYPHENATE.sub(r"\1", text)
    return text


def _strip_enumeration(line: str) -> str:
    """Drop a leading section number like '7.' or '3.1)' from a heading line."""
    return re.sub(r"^\d+(?:\.\d+)*[.)]?\s+", "", line)


def heading_lexicon_match(heading: Optional[str], heading_lexicon: Sequence[str]) -> Optional[str]:
    """Return the heading-lexicon phrase this heading matches, if any."""
    if not heading:
        return None
    cleaned = _strip_enumeration(heading.strip()).rstrip(":").strip().lower()
    for phrase in heading_lexicon:
        if cleaned == phrase:
            return phrase
    return None


def _is_title_case(line: str) -> bool:
    words = line.split()
    if not words or not words[0][0].isupper():
        return False
    for word in words:
        first = word[0]
        if first.isupper() or first.isdigit():
            continue
        if word.lower().strip("()[],") in _TITLE_SMALL_WORDS:
            continue
        return False
    return True


def _is_heading_line(line: str, heading_lexicon: Sequence[str]) -> bool:
    if not line or len(line) > HEADING_MAX_CHARS:
        return False
    if line[-1] in _TERMINAL_PUNCT:
        return False
    if not any(ch.isalpha() for ch in line):
        return False
    if heading_lexicon_match(line, heading_lexicon):
        return True
    stripped = _strip_enumeration(line)
    if stripped.upper() == stripped:
        return True
    return _is_title_case(stripped)


def detect_sections(text: str, heading_lexicon: Sequence[str] = DEFAULT_HEADING_LEXICON) -> list[Section]:
    """Split normalized text into heading-delimited sections whose spans tile it."""
    if text == "":
        return []
    starts: list[tuple[int, Optional[str]]] = []
    offset = 0
    for line in text.split("\n"):
        if _is_heading_line(line, heading_lexicon):
            starts.append((offset, line))
        offset += len(line) + 1
    if not starts or starts[0][0] > 0:
        starts.insert(0, (0, None))
    sections = []
    for i, (start, heading) in enumerate(starts):
        end = starts[i + 1][0] if i + 1 < len(starts) else len(text)
        kind = "availability_heading" if heading_lexicon_match(heading, heading_lexicon) else "other"
        sections.append(Section(heading=heading, kind=kind, span=Span(start, end)))
    return sections


def _protected_spans(text: str, base: int) -> list[Span]:
    from .links import extract_links

    return [link.span for link in extract_links(text, base)]


def _is_abbreviation_end(text: str, punct_index: int) -> bool:
    head = text[: punct_index + 1]
    for abbr in _ABBREVIATIONS:
        if head.endswith(abbr):
            before = punct_index - len(abbr)
            if before < 0 or not text[before].isalpha():
                return True
    return False


def _split_span_into_sentences(text: str, start: int, end: int, section_index: int) -> list[Sentence]:
    chunk = text[start:end]
    if not chunk.strip():
        return []
    protected = _protected_spans(chunk, start)
    breaks = []
    for match in _SENTENCE_BREAK.finditer(chunk):
        punct_abs = start + match.start()
        if any(p.start <= punct_abs < p.end for p in protected):
            continue
        if _is_abbreviation_end(chunk, match.start()):
            continue
        breaks.append((start + match.start() + 1, start + match.end()))
    sentences = []
    cursor = start
    for cut_end, next_start in breaks + [(end, end)]:
        s, e = _trim(text, cursor, cut_end)
        if s < e:
            sentences.append(Sentence(span=Span(s, e), section_index=section_index))
        cursor = next_start
    return sentences


def _trim(text: str, start: int, end: int) -> tuple[int, int]:
    while start < end and text[start].isspace():
        start += 1
    while end > start and text[end - 1].isspace():
        end -= 1
    return start, end


def _body_start(text: str, section: Section) -> int:
    if section.heading is None:
        return section.span.start
    return min(section.span.end, section.span.start + len(section.heading) + 1)


def segment_sentences(document: "Document") -> list[Sentence]:
    """Sentence spans per section body; heading lines are not sentences."""
    return _segment(document.text, document.sections)


def _segment(text: str, sections: Sequence[Section]) -> list[Sentence]:
    sentences = []
    for index, section in enumerate(sections):
        sentences.extend(
            _split_span_into_sentences(text, _body_start(text, section), section.span.end, index)
        )
    return sentences


def _input_bytes(descriptor: InputDescriptor) -> bytes:
    data = descriptor.data
    if isinstance(data, bytes):
        return data
    if isinstance(data, str):
        return data.encode("utf-8")
    if isinstance(data, dict):
        return json.dumps(data, sort_keys=True, separators=(",", ":"), ensure_ascii=False).encode("utf-8")
    raise IngestError(f"unsupported input data type: {type(data).__name__}")


def _decode(data: bytes | str) -> str:
    if isinstance(data, bytes):
        return data.decode("utf-8", errors="replace")
    return data


def run_pdf_converter(pdf_bytes: bytes, converter: str) -> str:
    """Run the configured converter command template on a temp PDF path.

    The template gets '{path}' substituted (or the path appended) and must
    write plain UTF-8 text to stdout.
    """
    if not converter:
        raise ConverterFailure("no PDF converter configured")
    with tempfile.NamedTemporaryFile(suffix=".pdf", delete=False) as handle:
        handle.write(pdf_bytes)
        pdf_path = handle.name
    try:
        if "{path}" in converter:
            argv = [part.replace("{path}", pdf_path) for part in shlex.split(converter)]
        else:
            argv = shlex.split(converter) + [pdf_path]
        try:
            proc = subprocess.run(argv, capture_output=True, timeout=120)
        except (OSError, subprocess.TimeoutExpired) as exc:
            raise ConverterFailure(f"converter failed to run: {exc}") from exc
        if proc.returncode != 0:
            detail = proc.stderr.decode("utf-8", errors="replace").strip()
            raise ConverterFailure(
                f"converter exited with status {proc.returncode}: {detail[:200]}"
            )
        text = proc.stdout.decode("utf-8", errors="replace")
        if not text.strip():
            raise ConverterFailure("converter produced empty text")
        return text
    finally:
        Path(pdf_path).unlink(missing_ok=True)


def _sectioned_document(data, heading_lexicon: Sequence[str]) -> tuple[str, list[Section]]:
    if isinstance(data, (bytes, str)):
        try:
            data = json.loads(_decode(data))
        except json.JSONDecodeError as exc:
            raise IngestError(f"sectioned input is not valid JSON: {exc}") from exc
    if not isinstance(data, dict) or not isinstance(data.get("sections"), list):
        raise IngestError('sectioned input must be an object with a "sections" list')
    parts: list[str] = []
    sections: list[Section] = []
    offset = 0
    for record in data["sections"]:
        if not isinstance(record, dict) or not isinstance(record.get("body", ""), str):
            raise IngestError(f"sectioned record must be an object with a string body: {record!r}")
        heading_raw = record.get("heading")
        if heading_raw is not None and not isinstance(heading_raw, str):
            raise IngestError(f"section heading must be a string or null: {heading_raw!r}")
        heading = None
        if heading_raw:
            heading = normalize_text(heading_raw).replace("\n", " ").strip() or None
        body = normalize_text(record.get("body", ""))
        chunk = "\n".join(p for p in ((heading,) if heading else ()) + (body,) if p != "")
        chunk = (chunk or "") + "\n"
        kind = "availability_heading" if heading_lexicon_match(heading, heading_lexicon) else "other"
        sections.append(Section(heading=heading, kind=kind, span=Span(offset, offset + len(chunk))))
        parts.append(chunk)
        offset += len(chunk)
    return "".join(parts), sections


def load_document(
    source: InputDescriptor | dict,
    *,
    heading_lexicon: Sequence[str] = DEFAULT_HEADING_LEXICON,
    pdf_converter: Optional[str] = None,
) -> Document:
    """Build a normalized, sectioned, sentence-segmented Document.

    Deterministic: the id is the SHA-256 of the original input bytes, so
    identical bytes always produce identical Documents.
    """
    if isinstance(source, dict):
        source = InputDescriptor(
            format=source.get("format", "plain_text"),
            data=source.get("data", source.get("content", "")),
            metadata=source.get("metadata") or {},
        )
    if source.format not in FORMATS:
        raise UnsupportedFormat(f"unknown input format {source.format!r}")

    raw_bytes = _input_bytes(source)

    if source.format == "plain_text":
        text = normalize_text(_decode(source.data))
        sections = detect_sections(text, heading_lexicon)
    elif source.format == "sectioned":
        text, sections = _sectioned_document(source.data, heading_lexicon)
    else:  # pdf
        if not isinstance(source.data, bytes):
            raise IngestError("pdf input requires raw bytes")
        converted = run_pdf_converter(source.data, pdf_converter)
        text = normalize_text(converted)
        sections = detect_sections(text, heading_lexicon)

    if not text.strip():
        raise EmptyDocument("normalized text is empty")

    metadata = source.metadata or {}
    return Document(
        id=hashlib.sha256(raw_bytes).hexdigest(),
        source_format=source.format,
        raw_len=len(raw_bytes),
        text=text,
        sections=tuple(sections),
        sentences=tuple(_segment(text, sections)),
        title=metadata.get("title"),
        origin=metadata.get("origin"),
    )
