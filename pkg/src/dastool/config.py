"""Extraction configuration: keyword lexicon, scored regex rules, thresholds.

Everything the two matching stages consume is data held here, so deployments
can retune phrases, weights, and rules without touching code.
"""

from __future__ import annotations

import hashlib
import json
import re
from dataclasses import dataclass, field
from functools import cached_property
from pathlib import Path

from .errors import ConfigInvalid

CATEGORIES = (
    "repository_deposited",
    "on_request",
    "in_paper_or_supplement",
    "restricted_conditional",
    "not_available",
    "unspecified_present",
)

# Tie-break order when vote tallies are equal (first wins).
CATEGORY_PRECEDENCE = (
    "not_available",
    "on_request",
    "restricted_conditional",
    "repository_deposited",
    "in_paper_or_supplement",
    "unspecified_present",
)

DECISIONS = ("pending", "accepted", "rejected", "edited")


def phrase_pattern(phrase: str) -> re.Pattern:
    """Whole-phrase matcher: case-insensitive, word-bounded, whitespace-tolerant."""
    parts = [re.escape(tok) for tok in phrase.split()]
    return re.compile(r"\b" + r"\s+".join(parts) + r"\b", re.IGNORECASE)


@dataclass(frozen=True)
class LexiconEntry:
    phrase: str
    weight: int

    @cached_property
    def pattern(self) -> re.Pattern:
        return phrase_pattern(self.phrase)


@dataclass(frozen=True)
class Rule:
    """A scored regex that votes for statement categories.

    requires_link: only fires when the candidate window contains a resource link.
    requires_heading: only fires when the candidate sits in an availability-headed
    section (this is how the heading bonus is expressed as plain rule data).
    """

    id: str
    pattern: str
    score: int
    votes: dict[str, int] = field(default_factory=dict)
    requires_link: bool = False
    requires_heading: bool = False

    @cached_property
    def compiled(self) -> re.Pattern:
        return re.compile(self.pattern, re.IGNORECASE)

    def to_dict(self) -> dict:
        return {
            "id": self.id,
            "pattern": self.pattern,
            "score": self.score,
            "votes": dict(sorted(self.votes.items())),
            "requires_link": self.requires_link,
            "requires_heading": self.requires_heading,
        }


@dataclass(frozen=True)
class ExtractionConfig:
    lexicon: tuple[LexiconEntry, ...]
    heading_lexicon: tuple[str, ...]
    prefilter_threshold: int
    rules: tuple[Rule, ...]
    accept_threshold: int
    confidence_k: float
    max_statement_sentences: int

    def to_dict(self) -> dict:
        return {
            "lexicon": [{"phrase": e.phrase, "weight": e.weight} for e in self.lexicon],
            "heading_lexicon": list(self.heading_lexicon),
            "prefilter_threshold": self.prefilter_threshold,
            "rules": [r.to_dict() for r in self.rules],
            "accept_threshold": self.accept_threshold,
            "confidence_k": self.confidence_k,
            "max_statement_sentences": self.max_statement_sentences,
        }

    @cached_property
    def fingerprint(self) -> str:
        canonical = json.dumps(self.to_dict(), sort_keys=True, separators=(",", ":"))
        return hashlib.sha256(canonical.encode("utf-8")).hexdigest()

    @cached_property
    def strong_entries(self) -> tuple[LexiconEntry, ...]:
        """Lexicon entries heavy enough (weight >= 3) to trigger a candidate."""
        return tuple(e for e in self.lexicon if e.weight >= 3)


_ALWAYS = r"[\s\S]"  # matches any candidate text; used by gate-only rules

_AVAIL_SUBJECT = (
    r"\b(?:data(?:sets?)?|meta-?data|code|scripts?|materials?|samples?|"
    r"sequences?|spectra|images?|recordings?|transcripts?)\b"
)
_AVAIL_VERB = (
    r"\b(?:are|is|were|was|have\s+been|has\s+been|can\s+be|will\s+be|may\s+be)\s+"
    r"(?:(?:openly|publicly|freely|now|also)\s+)?"
    r"(?:available|accessible|deposited|archived|hosted|obtained|accessed|"
    r"downloaded|retrieved|found)\s+(?:in|at|on|from|via|through)\b"
)

_RESTRICTED_REASON = (
    r"\b(?:ethic(?:s|al|ally)?|privacy|consent|confidential(?:ity)?|"
    r"licen[cs]e[sd]?|licensing|legal(?:ly)?|propriet(?:ary|y)|"
    r"restrict(?:ed|ions?)?|sensitive|gdpr|third[- ]party)\b"
)
_NOT_AVAILABLE = (
    r"(?:\bnot\s+(?:publicly|openly|freely)\s+available\b|"
    r"\bnot\s+available\s+(?:publicly|openly)\b|"
    r"\bcannot\s+be\s+(?:publicly\s+|openly\s+)?(?:shared|released|made\s+available)\b)"
)

BUILTIN_CONFIG: dict = {
    "lexicon": [
        {"phrase": "data availability statement", "weight": 5},
        {"phrase": "data availability", "weight": 5},
        {"phrase": "data access statement", "weight": 5},
        {"phrase": "availability of data and materials", "weight": 5},
        {"phrase": "data and code availability", "weight": 5},
        {"phrase": "data are available", "weight": 3},
        {"phrase": "data is available", "weight": 3},
        {"phrase": "datasets generated", "weight": 3},
        {"phrase": "underlying data", "weight": 3},
        {"phrase": "supporting data", "weight": 3},
        {"phrase": "openly available", "weight": 3},
        {"phrase": "data supporting the findings", "weight": 3},
        {"phrase": "upon reasonable request", "weight": 2},
        {"phrase": "deposited in", "weight": 2},
        {"phrase": "publicly available", "weight": 2},
        {"phrase": "accession number", "weight": 2},
        {"phrase": "supplementary material", "weight": 2},
        {"phrase": "supplementary information", "weight": 2},
        {"phrase": "corresponding author", "weight": 2},
        {"phrase": "zenodo", "weight": 1},
        {"phrase": "dryad", "weight": 1},
        {"phrase": "figshare", "weight": 1},
        {"phrase": "dataverse", "weight": 1},
        {"phrase": "osf.io", "weight": 1},
        {"phrase": "genbank", "weight": 1},
        {"phrase": "gene expression omnibus", "weight": 1},
        {"phrase": "arrayexpress", "weight": 1},
        {"phrase": "uk data service", "weight": 1},
        {"phrase": "github", "weight": 1},
    ],
    "heading_lexicon": [
        "data availability statement",
        "data availability",
        "availability of data and materials",
        "data access statement",
        "availability of data",
        "data and code availability",
        "data sharing",
    ],
    "prefilter_threshold": 4,
    "accept_threshold": 5,
    "confidence_k": 5,
    "max_statement_sentences": 5,
    "rules": [
        {
            "id": "R-avail-repo",
            "pattern": _AVAIL_SUBJECT + r"[^.!?]{0,80}?" + _AVAIL_VERB,
            "score": 4,
            "votes": {"repository_deposited": 2},
        },
        {
            "id": "R-on-request",
            "pattern": (
                r"\b(?:available|accessible|provided|shared|obtained|released)\b"
                r"[^.!?]{0,80}?\b(?:(?:up)?on|by)\s+"
                r"(?:reasonable\s+|written\s+|formal\s+)?request\b"
            ),
            "score": 4,
            "votes": {"on_request": 3},
        },
        {
            "id": "R-in-paper",
            "pattern": (
                r"\b(?:included|contained|provided|presented|reported)\s+"
                r"(?:with)?in\s+(?:this|the)\s+(?:published\s+)?"
                r"(?:article|paper|manuscript|study)\b"
                r"|\bsupplementary\s+(?:material|materials|information|file|files|"
                r"data|dataset|datasets|table|tables|appendix)\b"
                r"|\bsupporting\s+information\b"
            ),
            "score": 3,
            "votes": {"in_paper_or_supplement": 3},
        },
        {
            "id": "R-restricted",
            "pattern": (
                _NOT_AVAILABLE + r"[\s\S]{0,160}?" + _RESTRICTED_REASON
                + r"|" + _RESTRICTED_REASON + r"[\s\S]{0,160}?" + _NOT_AVAILABLE
            ),
            "score": 3,
            "votes": {"restricted_conditional": 4},
        },
        {
            "id": "R-no-data",
            "pattern": (
                r"\bno\s+(?:(?:new|primary|additional|original)\s+)?data(?:sets?)?\s+"
                r"(?:were|was|have\s+been|has\s+been|are|is)\s+"
                r"(?:created|generated|produced|collected|analysed|analyzed|used|"
                r"associated|deposited)\b"
                r"|\bdata\s+sharing\s+is\s+not\s+applicable\b"
            ),
            "score": 4,
            "votes": {"not_available": 3},
        },
        {
            "id": "R-avail-generic",
            "pattern": (
                r"\b(?:data|datasets?|code)\s+(?:are|is|were|was|will\s+be)\s+"
                r"(?:(?:being|now)\s+)?(?:made\s+)?available\b"
            ),
            "score": 2,
            "votes": {"unspecified_present": 1},
        },
        {
            "id": "R-link",
            "pattern": _ALWAYS,
            "score": 2,
            "votes": {"repository_deposited": 1},
            "requires_link": True,
        },
        {
            "id": "R-heading",
            "pattern": _ALWAYS,
            "score": 3,
            "votes": {},
            "requires_heading": True,
        },
    ],
}


def _require(cond: bool, message: str) -> None:
    if not cond:
        raise ConfigInvalid(message)


def _parse_lexicon(raw) -> tuple[LexiconEntry, ...]:
    _require(isinstance(raw, list) and raw, "lexicon must be a non-empty list")
    entries = []
    for item in raw:
        _require(isinstance(item, dict), f"lexicon entry must be an object: {item!r}")
        phrase = item.get("phrase")
        weight = item.get("weight")
        _require(isinstance(phrase, str) and phrase.strip() != "",
                 f"lexicon phrase must be a non-empty string: {item!r}")
        _require(isinstance(weight, int) and not isinstance(weight, bool) and weight > 0,
                 f"lexicon weight must be a positive integer for phrase {phrase!r}")
        entries.append(LexiconEntry(phrase=phrase.strip().lower(), weight=weight))
    return tuple(entries)


def _parse_rules(raw) -> tuple[Rule, ...]:
    _require(isinstance(raw, list) and raw, "rules must be a non-empty list")
    rules = []
    seen = set()
    for item in raw:
        _require(isinstance(item, dict), f"rule must be an object: {item!r}")
        rule_id = item.get("id")
        _require(isinstance(rule_id, str) and rule_id, f"rule id missing: {item!r}")
        _require(rule_id not in seen, f"duplicate rule id {rule_id!r}")
        seen.add(rule_id)
        pattern = item.get("pattern")
        _require(isinstance(pattern, str) and pattern,
                 f"rule {rule_id!r}: pattern must be a non-empty string")
        try:
            re.compile(pattern, re.IGNORECASE)
        except re.error as exc:
            raise ConfigInvalid(f"rule {rule_id!r}: pattern does not compile: {exc}") from exc
        score = item.get("score", 0)
        _require(isinstance(score, int) and not isinstance(score, bool) and score >= 0,
                 f"rule {rule_id!r}: score must be a non-negative integer")
        votes = item.get("votes") or {}
        _require(isinstance(votes, dict), f"rule {rule_id!r}: votes must be an object")
        for cat, count in votes.items():
            _require(cat in CATEGORIES, f"rule {rule_id!r}: unknown category {cat!r}")
            _require(isinstance(count, int) and not isinstance(count, bool) and count >= 0,
                     f"rule {rule_id!r}: vote for {cat!r} must be a non-negative integer")
        _require(score > 0 or votes,
                 f"rule {rule_id!r}: needs a positive score or at least one vote")
        rules.append(Rule(
            id=rule_id,
            pattern=pattern,
            score=score,
            votes=dict(votes),
            requires_link=bool(item.get("requires_link", False)),
            requires_heading=bool(item.get("requires_heading", False)),
        ))
    return tuple(rules)


def _from_dict(data: dict) -> ExtractionConfig:
    _require(isinstance(data, dict), "config must be a JSON object")
    lexicon = _parse_lexicon(data.get("lexicon"))
    heading_raw = data.get("heading_lexicon")
    _require(isinstance(heading_raw, list) and heading_raw,
             "heading_lexicon must be a non-empty list")
    heading = []
    for h in heading_raw:
        _require(isinstance(h, str) and h.strip(), f"heading_lexicon entry invalid: {h!r}")
        heading.append(h.strip().lower())
    pre = data.get("prefilter_threshold")
    _require(isinstance(pre, int) and not isinstance(pre, bool) and pre >= 0,
             "prefilter_threshold must be a non-negative integer")
    accept = data.get("accept_threshold")
    _require(isinstance(accept, int) and not isinstance(accept, bool) and accept > 0,
             "accept_threshold must be a positive integer")
    k = data.get("confidence_k")
    _require(isinstance(k, (int, float)) and not isinstance(k, bool) and k > 0,
             "confidence_k must be a positive number")
    max_sent = data.get("max_statement_sentences")
    _require(isinstance(max_sent, int) and not isinstance(max_sent, bool) and max_sent > 0,
             "max_statement_sentences must be a positive integer")
    rules = _parse_rules(data.get("rules"))
    return ExtractionConfig(
        lexicon=lexicon,
        heading_lexicon=tuple(heading),
        prefilter_threshold=pre,
        rules=rules,
        accept_threshold=accept,
        confidence_k=float(k),
        max_statement_sentences=max_sent,
    )


def load_config(source="builtin") -> ExtractionConfig:
    """Load and validate a config from the builtin defaults, a dict, or a JSON file."""
    if source == "builtin" or source is None:
        return _from_dict(BUILTIN_CONFIG)
    if isinstance(source, ExtractionConfig):
        return source
    if isinstance(source, dict):
        return _from_dict(source)
    if isinstance(source, (str, Path)):
        path = Path(source)
        try:
            text = path.read_text(encoding="utf-8")
        except OSError as exc:
            raise ConfigInvalid(f"cannot read config file {path}: {exc}") from exc
        try:
            data = json.loads(text)
        except json.JSONDecodeError as exc:
            raise ConfigInvalid(f"config file {path} is not valid JSON: {exc}") from exc
        return _from_dict(data)
    raise ConfigInvalid(f"unsupported config source: {source!r}")
