"""Exception types shared across the toolkit."""


class DialtbError(Exception):
    """Base class for all toolkit errors."""


class ConlluParseError(DialtbError, ValueError):
    """Malformed CoNLL-U input; carries the 1-based line number when known."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        super().__init__(f"line {line}: {message}" if line is not None else message)


class ManifestError(DialtbError, ValueError):
    """Bad corpus manifest (wrong columns, unknown partition, duplicate ids)."""


class MsegMismatchError(DialtbError, ValueError):
    """MSeg segmentation does not concatenate back to the word form."""


class AlignmentError(DialtbError, ValueError):
    """Two token streams that must be aligned diverge.

    ``position`` names the first divergent point as (doc_id, sentence_index,
    word_index), indices 1-based, with None for container-level mismatches.
    """

    def __init__(self, message: str, position: tuple = (None, None, None)):
        self.position = position
        super().__init__(message)


class AgreementError(DialtbError, ValueError):
    """Agreement statistic undefined for the given sequences."""


class AnalyticsError(DialtbError, ValueError):
    """Invalid analytics request (empty corpus, unknown query field, ...)."""


class DuplicateParallelKeyError(AnalyticsError):
    """A parallel key occurs on more than one document within one corpus."""


class ScenarioError(DialtbError, ValueError):
    """Experiment scenario cannot be assembled or trained as requested."""
