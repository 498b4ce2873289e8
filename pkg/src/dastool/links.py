"""Resource link extraction: URLs, DOIs, and context-gated database accessions."""

from __future__ import annotations

import re
from dataclasses import dataclass

from .errors import NotADoi

TRAILING_PUNCT = ".,;:)]}'\""

_URL = re.compile(r"https?://[A-Za-z0-9][^\s<>\"]*", re.IGNORECASE)
_DOI_ORG_URL = re.compile(r"^https?://(?:dx\.)?doi\.org/(.+)$", re.IGNORECASE)
_DOI = re.compile(r"(?:doi:\s*)?\b10\.\d{4,9}/[^\s<>\"]+", re.IGNORECASE)
_DOI_CORE = re.compile(r"^10\.\d{4,9}/\S+$")

# Accession patterns are deliberately narrow and only consulted when the
# word "accession" appears in the same candidate text.
_ACCESSION_PATTERNS = (
    re.compile(r"\bGSE\d+\b"),
    re.compile(r"\bSRR\d+\b"),
    re.compile(r"\bPRJ(?:NA|EB|DB)\d+\b"),
    re.compile(r"\b[A-Z]{1,2}\d{5,8}\b"),  # GenBank
)
_ACCESSION_CONTEXT = re.compile(r"\baccession\b", re.IGNORECASE)


@dataclass(frozen=True)
class ResourceLink:
    kind: str  # "url" | "doi" | "accession"
    raw: str
    canonical: str
    span: "Span"

    def to_dict(self) -> dict:
        return {
            "kind": self.kind,
            "raw": self.raw,
            "canonical": self.canonical,
            "span": self.span.to_dict(),
        }


def normalize_doi(raw: str) -> str:
    """Strip doi:/scheme/doi.org prefixes and lowercase the registrant prefix.

    The suffix keeps its case; idempotent on its own output.
    """
    s = raw.strip()
    s = re.sub(r"^(?:https?://)?(?:dx\.)?doi\.org/", "", s, flags=re.IGNORECASE)
    s = re.sub(r"^doi:\s*", "", s, flags=re.IGNORECASE)
    if not s.startswith("10."):
        raise NotADoi(f"not a DOI: {raw!r}")
    prefix, sep, suffix = s.partition("/")
    return prefix.lower() + sep + suffix


def _rstrip_punct(text: str, start: int, end: int) -> int:
    while end > start and text[end - 1] in TRAILING_PUNCT:
        end -= 1
    return end


def _overlaps(start: int, end: int, taken: list[tuple[int, int]]) -> bool:
    return any(start < t_end and t_start < end for t_start, t_end in taken)


def extract_links(text: str, base_offset: int = 0):
    """Find URL/DOI/accession links in a slice of normalized document text.

    Spans are absolute (offset by base_offset); duplicates by canonical value
    keep the first span; doi.org URLs come back as kind=doi.
    """
    from .ingest import Span  # local import to avoid a module cycle

    found: list[ResourceLink] = []
    taken: list[tuple[int, int]] = []

    def add(kind: str, start: int, end: int, canonical: str) -> None:
        found.append(ResourceLink(
            kind=kind,
            raw=text[start:end],
            canonical=canonical,
            span=Span(base_offset + start, base_offset + end),
        ))
        taken.append((start, end))

    for match in _URL.finditer(text):
        start, end = match.start(), _rstrip_punct(text, match.start(), match.end())
        if start >= end:
            continue
        raw = text[start:end]
        doi_url = _DOI_ORG_URL.match(raw)
        if doi_url and _DOI_CORE.match(doi_url.group(1)):
            add("doi", start, end, normalize_doi(raw))
        else:
            add("url", start, end, raw)

    for match in _DOI.finditer(text):
        start, end = match.start(), _rstrip_punct(text, match.start(), match.end())
        if start >= end or _overlaps(start, end, taken):
            continue
        add("doi", start, end, normalize_doi(text[start:end]))

    if _ACCESSION_CONTEXT.search(text):
        for pattern in _ACCESSION_PATTERNS:
            for match in pattern.finditer(text):
                start, end = match.start(), match.end()
                if _overlaps(start, end, taken):
                    continue
                add("accession", start, end, text[start:end])

    found.sort(key=lambda link: link.span.start)
    deduped: list[ResourceLink] = []
    seen: set[str] = set()
    for link in found:
        if link.canonical in seen:
            continue
        seen.add(link.canonical)
        deduped.append(link)
    return deduped
