"""Exception types shared across the toolkit."""


class DasToolError(Exception):
    """Base class for all toolkit errors."""

    code = "error"


class IngestError(DasToolError):
    """A document could not be turned into a normalized Document."""

    code = "ingest_error"


class UnsupportedFormat(IngestError):
    code = "unsupported_format"


class ConverterFailure(IngestError):
    """The external PDF converter failed or produced no text."""

    code = "converter_failure"


class EmptyDocument(IngestError):
    code = "empty_document"


class ConfigInvalid(DasToolError):
    code = "config_invalid"


class NotADoi(DasToolError):
    code = "not_a_doi"


class CorpusInvalid(DasToolError):
    code = "corpus_invalid"


class StoreUnavailable(DasToolError):
    code = "store_unavailable"


class NotFound(DasToolError):
    code = "not_found"


class VersionConflict(DasToolError):
    """The expected_version on a decision write was stale."""

    code = "version_conflict"


class MissingEditedText(DasToolError):
    code = "missing_edited_text"


class InvalidDecision(DasToolError):
    code = "invalid_decision"


class InvalidFilter(DasToolError):
    code = "invalid_filter"
