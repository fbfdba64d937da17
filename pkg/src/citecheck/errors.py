"""Exception types shared across the pipeline."""


class CitecheckError(Exception):
    """Base class for all citecheck errors."""


class UsageError(CitecheckError):
    """A caller violated an operation precondition (bad argument, bad config)."""


class MalformedPdf(CitecheckError):
    """Input bytes could not be parsed as a PDF."""


class EmptyDocument(CitecheckError):
    """No extractable text (e.g. an empty file or a scanned-image PDF)."""


class NoBibliographyFound(CitecheckError):
    """Neither a 'references' nor a 'bibliography' heading is present."""


class EmptyBibliography(CitecheckError):
    """A bibliography heading was found but no text follows it."""


class NoEntriesFound(CitecheckError):
    """The bibliography slice contains no bracketed entry markers."""


class SourceUnavailable(CitecheckError):
    """A metadata source failed after retries (network error or 5xx)."""

    def __init__(self, source: str, message: str):
        super().__init__(f"{source}: {message}")
        self.source = source


class RateLimited(CitecheckError):
    """A source kept throttling us after the retry budget was exhausted."""

    def __init__(self, source: str, message: str):
        super().__init__(f"{source}: {message}")
        self.source = source


class CacheCorrupt(CitecheckError):
    """A cache entry failed its checksum; it is evicted and treated as a miss."""


class VerdictMismatch(CitecheckError):
    """A verdict references a citation key that is not part of the paper."""


class UnknownRun(CitecheckError):
    """No run with the given id exists under the runs root."""


class UnknownCitation(CitecheckError):
    """The citation key does not exist in the run."""


class StaleRun(CitecheckError):
    """The run directory disappeared mid-session."""
