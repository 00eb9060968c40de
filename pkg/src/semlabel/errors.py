"""Exception hierarchy shared across the package."""


class SemLabelError(Exception):
    """Base class for all errors raised by this package."""


class ParseError(SemLabelError):
    """A line-oriented input file could not be parsed.

    Carries the offending path and 1-based line number so CLI output can
    point at the exact record.
    """

    def __init__(self, path, lineno, message):
        self.path = str(path)
        self.lineno = lineno
        super().__init__(f"{self.path}:{lineno}: {message}")


class ValidationError(SemLabelError):
    """Input data violates a documented contract (empty name, bad span, ...)."""


class ConfigurationError(SemLabelError):
    """A caller-supplied setting is unusable (budget too small, empty index)."""


class NotFoundError(SemLabelError):
    """Lookup of a document, annotation, or concept that does not exist."""


class ConflictError(SemLabelError):
    """State transition rejected (duplicate id, decision on a deleted span)."""


class UndefinedMetricError(SemLabelError):
    """A ratio whose denominator is empty; callers must not read 0 into it."""


class ConsistencyError(SemLabelError):
    """Two inputs that must describe the same pipeline run do not line up."""
