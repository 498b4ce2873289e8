"""dastool: detect, classify, and curate data access statements in scholarly text."""

__version__ = "0.1.0"

from .config import (  # noqa: F401
    CATEGORIES,
    CATEGORY_PRECEDENCE,
    DECISIONS,
    ExtractionConfig,
    LexiconEntry,
    Rule,
    load_config,
)
from .errors import (  # noqa: F401
    ConfigInvalid,
    ConverterFailure,
    CorpusInvalid,
    DasToolError,
    EmptyDocument,
    IngestError,
    InvalidDecision,
    InvalidFilter,
    MissingEditedText,
    NotADoi,
    NotFound,
    StoreUnavailable,
    UnsupportedFormat,
    VersionConflict,
)
from .extraction import (  # noqa: F401
    CandidateSpan,
    DataAccessStatement,
    ExtractionResult,
    PrefilterResult,
    RuleMatchReport,
    apply_rules,
    classify,
    extract,
    find_candidates,
    prefilter_score,
    score_to_confidence,
)
from .ingest import (  # noqa: F401
    Document,
    InputDescriptor,
    Section,
    Sentence,
    Span,
    detect_sections,
    heading_lexicon_match,
    load_document,
    normalize_text,
    segment_sentences,
)
from .links import ResourceLink, extract_links, normalize_doi  # noqa: F401
from .store import Store  # noqa: F401
