"""Exception types shared across the package."""


class LitrecError(Exception):
    """Base class for all errors raised by this package."""


class IngestError(LitrecError):
    """A source file could not be parsed; the message names the offending line."""

    def __init__(self, message: str, line: int | None = None):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line


class UnknownSeedError(LitrecError):
    """The requested seed article does not exist (distinct from an empty result)."""

    def __init__(self, seed: str):
        super().__init__(f"unknown seed article: {seed!r}")
        self.seed = seed


class UnknownJournalError(LitrecError):
    """The requested journal is not present in the vector store."""

    def __init__(self, journal: str):
        super().__init__(f"unknown journal: {journal!r}")
        self.journal = journal


class NoJournalTextError(LitrecError):
    """A journal has no full text, so it has no semantic vector to compare."""

    def __init__(self, journal: str):
        super().__init__(f"journal has no full text: {journal!r}")
        self.journal = journal


class ArtifactFormatError(LitrecError):
    """A serialized artifact (index, vector store, corpus dir) is malformed."""


class UniverseMismatchError(LitrecError):
    """Two result sets being combined were not computed over the same seed universe."""
