"""Two-stage statement detection: weighted keyword prefilter, then scored regex rules.

Stage 1 cheaply scores whole-document keyword hits to decide whether the
document is worth scanning. Stage 2 builds sentence-window candidates around
trigger phrases, scores them with the rule set, classifies by category votes,
and extracts resource links.
"""

from __future__ import annotations

import hashlib
import json
import re
from dataclasses import dataclass

from .config import CATEGORY_PRECEDENCE, ExtractionConfig, Rule
from .ingest import Document, Sentence, Span, heading_lexicon_match
from .links import ResourceLink, extract_links


@dataclass(frozen=True)
class PrefilterMatch:
    phrase: str
    count: int
    weight: int

    def to_dict(self) -> dict:
        return {"phrase": self.phrase, "count": self.count, "weight": self.weight}


@dataclass(frozen=True)
class PrefilterResult:
    document_id: str
    score: int
    matched: tuple[PrefilterMatch, ...]

    def to_dict(self) -> dict:
        return {
            "document_id": self.document_id,
            "score": self.score,
            "matched": [m.to_dict() for m in self.matched],
        }


@dataclass(frozen=True)
class CandidateSpan:
    span: Span
    trigger_phrases: tuple[str, ...]
    in_availability_section: bool


@dataclass(frozen=True)
class RuleMatchReport:
    matched_rule_ids: tuple[str, ...]
    total_score: int
    vote_tally: dict[str, int]


@dataclass(frozen=True)
class DataAccessStatement:
    id: str
    document_id: str
    span: Span
    text: str
    category: str
    links: tuple[ResourceLink, ...]
    score: int
    confidence: float

    def to_dict(self) -> dict:
        return {
            "id": self.id,
            "document_id": self.document_id,
            "span": self.span.to_dict(),
            "text": self.text,
            "category": self.category,
            "links": [link.to_dict() for link in self.links],
            "score": self.score,
            "confidence": self.confidence,
        }


@dataclass(frozen=True)
class ExtractionResult:
    document_id: str
    prefilter: PrefilterResult
    passed_prefilter: bool
    statements: tuple[DataAccessStatement, ...]
    config_fingerprint: str

    def to_dict(self) -> dict:
        return {
            "document_id": self.document_id,
            "prefilter": self.prefilter.to_dict(),
            "passed_prefilter": self.passed_prefilter,
            "statements": [s.to_dict() for s in self.statements],
            "config_fingerprint": self.config_fingerprint,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), ensure_ascii=False, separators=(",", ":"))


def statement_id(document_id: str, span: Span) -> str:
    key = f"{document_id}:{span.start}:{span.end}"
    return hashlib.sha256(key.encode("utf-8")).hexdigest()


def prefilter_score(document: Document, config: ExtractionConfig) -> PrefilterResult:
    """Stage 1: weighted whole-phrase counts over the full normalized text."""
    matched = []
    score = 0
    for entry in config.lexicon:
        count = len(entry.pattern.findall(document.text))
        if count:
            matched.append(PrefilterMatch(phrase=entry.phrase, count=count, weight=entry.weight))
            score += count * entry.weight
    return PrefilterResult(document_id=document.id, score=score, matched=tuple(matched))


_CONNECTIVE_START = re.compile(r"(?:These|This|Further|Additional|They)\b")


def _rule_fires(rule: Rule, text: str, has_link: bool, in_availability: bool) -> bool:
    if rule.requires_link and not has_link:
        return False
    if rule.requires_heading and not in_availability:
        return False
    return rule.compiled.search(text) is not None


def _sentence_extends(text: str, in_availability: bool, config: ExtractionConfig) -> bool:
    has_link = bool(extract_links(text))
    if has_link:
        return True
    if any(_rule_fires(rule, text, has_link, in_availability) for rule in config.rules):
        return True
    return _CONNECTIVE_START.match(text) is not None


def find_candidates(document: Document, config: ExtractionConfig) -> list[CandidateSpan]:
    """Stage 2 windows: start at a trigger sentence, extend while sentences
    stay on-topic (link, rule hit, or connective), cap at the configured
    window size, and absorb overlapping triggers into one candidate.
    """
    by_section: dict[int, list[Sentence]] = {}
    for sentence in document.sentences:
        by_section.setdefault(sentence.section_index, []).append(sentence)

    candidates = []
    for section_index, sentences in sorted(by_section.items()):
        section = document.sections[section_index]
        in_availability = section.kind == "availability_heading"
        heading_phrase = heading_lexicon_match(section.heading, config.heading_lexicon)
        strong_hits = [
            [e.phrase for e in config.strong_entries if e.pattern.search(document.sentence_text(s))]
            for s in sentences
        ]
        i = 0
        while i < len(sentences):
            if not strong_hits[i] and not in_availability:
                i += 1
                continue
            window_end = i
            while (
                window_end + 1 < len(sentences)
                and window_end - i + 1 < config.max_statement_sentences
                and _sentence_extends(
                    document.sentence_text(sentences[window_end + 1]), in_availability, config
                )
            ):
                window_end += 1
            phrases: list[str] = []
            for j in range(i, window_end + 1):
                phrases.extend(p for p in strong_hits[j] if p not in phrases)
            if not phrases and heading_phrase:
                phrases = [heading_phrase]
            candidates.append(CandidateSpan(
                span=Span(sentences[i].span.start, sentences[window_end].span.end),
                trigger_phrases=tuple(phrases),
                in_availability_section=in_availability,
            ))
            i = window_end + 1
    return candidates


def apply_rules(candidate: CandidateSpan, document: Document, config: ExtractionConfig) -> RuleMatchReport:
    """Score one candidate window: each matching rule contributes once."""
    text = document.text[candidate.span.start:candidate.span.end]
    has_link = bool(extract_links(text, candidate.span.start))
    matched = []
    total = 0
    tally: dict[str, int] = {}
    for rule in config.rules:
        if _rule_fires(rule, text, has_link, candidate.in_availability_section):
            matched.append(rule.id)
            total += rule.score
            for category, count in rule.votes.items():
                tally[category] = tally.get(category, 0) + count
    return RuleMatchReport(matched_rule_ids=tuple(matched), total_score=total, vote_tally=tally)


def classify(vote_tally: dict[str, int]) -> str:
    """Argmax category; ties broken by the fixed precedence order."""
    live = {cat: n for cat, n in vote_tally.items() if n > 0}
    if not live:
        return "unspecified_present"
    best = max(live.values())
    for category in CATEGORY_PRECEDENCE:
        if live.get(category) == best:
            return category
    return "unspecified_present"


def score_to_confidence(score: int, config: ExtractionConfig) -> float:
    """Map a non-negative rule score to [0, 1), strictly increasing."""
    return score / (score + config.confidence_k)


def extract(document: Document, config: ExtractionConfig) -> ExtractionResult:
    """Run the full two-stage pipeline on one document."""
    prefilter = prefilter_score(document, config)
    passed = prefilter.score >= config.prefilter_threshold
    statements = []
    if passed:
        for candidate in find_candidates(document, config):
            report = apply_rules(candidate, document, config)
            if report.total_score < config.accept_threshold:
                continue
            text = document.text[candidate.span.start:candidate.span.end]
            statements.append(DataAccessStatement(
                id=statement_id(document.id, candidate.span),
                document_id=document.id,
                span=candidate.span,
                text=text,
                category=classify(report.vote_tally),
                links=tuple(extract_links(text, candidate.span.start)),
                score=report.total_score,
                confidence=score_to_confidence(report.total_score, config),
            ))
    statements.sort(key=lambda s: s.span.start)
    return ExtractionResult(
        document_id=document.id,
        prefilter=prefilter,
        passed_prefilter=passed,
        statements=tuple(statements),
        config_fingerprint=config.fingerprint,
    )
