"""Score the pipeline against a labeled corpus of <name>.txt / <name>.gold.json pairs."""

from __future__ import annotations

import json
import time
from dataclasses import dataclass, field
from pathlib import Path

from .config import CATEGORIES, ExtractionConfig
from .errors import CorpusInvalid
from .extraction import extract
from .ingest import InputDescriptor, load_document


@dataclass(frozen=True)
class GoldSpan:
    start: int
    end: int
    category: str
    links: tuple[str, ...] = ()


@dataclass(frozen=True)
class CorpusDocument:
    name: str
    path: Path
    text: str
    gold: tuple[GoldSpan, ...]


@dataclass
class EvalReport:
    corpus_size: int
    config_fingerprint: str
    tp: int = 0
    fp: int = 0
    fn: int = 0
    tn: int = 0
    precision: float = 1.0
    recall: float = 1.0
    f1: float = 1.0
    per_category: dict = field(default_factory=dict)
    seconds: float = 0.0

    def to_dict(self) -> dict:
        return {
            "corpus_size": self.corpus_size,
            "config_fingerprint": self.config_fingerprint,
            "tp": self.tp,
            "fp": self.fp,
            "fn": self.fn,
            "tn": self.tn,
            "precision": self.precision,
            "recall": self.recall,
            "f1": self.f1,
            "per_category": self.per_category,
            "seconds": self.seconds,
        }

    def format_table(self) -> str:
        lines = [
            f"documents: {self.corpus_size}   "
            f"tp={self.tp} fp={self.fp} fn={self.fn} tn={self.tn}",
            f"precision: {self.precision:.3f}  recall: {self.recall:.3f}  f1: {self.f1:.3f}",
            "",
            f"{'category':<26} {'P':>6} {'R':>6} {'F1':>6} {'gold':>5}",
        ]
        for category in CATEGORIES:
            row = self.per_category.get(category)
            if not row:
                continue
            lines.append(
                f"{category:<26} {row['precision']:>6.3f} {row['recall']:>6.3f} "
                f"{row['f1']:>6.3f} {row['support']:>5}"
            )
        lines.append(f"\nelapsed: {self.seconds:.2f}s")
        return "\n".join(lines)


def _safe_div(numerator: int, denominator: int) -> float:
    """Precision/recall convention: an empty denominator reports 1.0."""
    return numerator / denominator if denominator else 1.0


def _parse_gold(path: Path) -> tuple[GoldSpan, ...]:
    try:
        data = json.loads(path.read_text(encoding="utf-8"))
    except (OSError, json.JSONDecodeError) as exc:
        raise CorpusInvalid(f"cannot parse gold file {path}: {exc}") from exc
    if not isinstance(data, dict) or not isinstance(data.get("spans"), list):
        raise CorpusInvalid(f'gold file {path} must contain a "spans" list')
    spans = []
    for item in data["spans"]:
        try:
            start, end = int(item["start"]), int(item["end"])
            category = item["category"]
        except (KeyError, TypeError, ValueError) as exc:
            raise CorpusInvalid(f"gold span malformed in {path}: {item!r}") from exc
        if category not in CATEGORIES:
            raise CorpusInvalid(f"gold file {path}: unknown category {category!r}")
        if not 0 <= start < end:
            raise CorpusInvalid(f"gold file {path}: bad span [{start}, {end})")
        spans.append(GoldSpan(start=start, end=end, category=category,
                              links=tuple(item.get("links") or ())))
    return tuple(spans)


def load_corpus(corpus_dir: str | Path) -> list[CorpusDocument]:
    root = Path(corpus_dir)
    if not root.is_dir():
        raise CorpusInvalid(f"corpus directory not found: {root}")
    txt_files = sorted(root.rglob("*.txt"))
    if not txt_files:
        raise CorpusInvalid(f"no .txt documents under {root}")
    documents = []
    for txt in txt_files:
        gold_path = txt.parent / (txt.stem + ".gold.json")
        if not gold_path.exists():
            raise CorpusInvalid(f"missing gold label file for {txt}")
        documents.append(CorpusDocument(
            name=txt.stem,
            path=txt,
            text=txt.read_text(encoding="utf-8"),
            gold=_parse_gold(gold_path),
        ))
    return documents


def _overlaps(a_start: int, a_end: int, b_start: int, b_end: int) -> bool:
    return a_start < b_end and b_start < a_end


def evaluate(corpus_dir: str | Path, config: ExtractionConfig) -> EvalReport:
    """Document-level scoring: a gold document counts as recovered when some
    extracted statement overlaps a gold span with a matching category."""
    corpus = load_corpus(corpus_dir)
    started = time.perf_counter()
    report = EvalReport(corpus_size=len(corpus), config_fingerprint=config.fingerprint)

    counts = {c: {"tp": 0, "fp": 0, "fn": 0, "support": 0, "predicted": 0} for c in CATEGORIES}
    for item in corpus:
        document = load_document(
            InputDescriptor(format="plain_text", data=item.text, metadata={"origin": str(item.path)}),
            heading_lexicon=config.heading_lexicon,
        )
        statements = extract(document, config).statements
        matched = any(
            _overlaps(s.span.start, s.span.end, g.start, g.end) and s.category == g.category
            for s in statements for g in item.gold
        )
        if item.gold:
            gold_cat = item.gold[0].category
            counts[gold_cat]["support"] += 1
            if matched:
                report.tp += 1
                counts[gold_cat]["tp"] += 1
            else:
                report.fn += 1
                counts[gold_cat]["fn"] += 1
        elif statements:
            report.fp += 1
            counts[statements[0].category]["fp"] += 1
        else:
            report.tn += 1
        for s in statements:
            counts[s.category]["predicted"] += 1

    report.precision = _safe_div(report.tp, report.tp + report.fp)
    report.recall = _safe_div(report.tp, report.tp + report.fn)
    denom = report.precision + report.recall
    report.f1 = 2 * report.precision * report.recall / denom if denom else 0.0
    for category, c in counts.items():
        if not (c["support"] or c["fp"] or c["predicted"]):
            continue
        precision = _safe_div(c["tp"], c["tp"] + c["fp"])
        recall = _safe_div(c["tp"], c["support"])
        f_denom = precision + recall
        report.per_category[category] = {
            "precision": precision,
            "recall": recall,
            "f1": 2 * precision * recall / f_denom if f_denom else 0.0,
            "support": c["support"],
            "predicted": c["predicted"],
        }
    report.seconds = time.perf_counter() - started
    return report
