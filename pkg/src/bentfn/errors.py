"""Exception taxonomy shared by the whole package.

The CLI maps these onto process exit codes, so library code should raise
the most specific class that applies.
"""


class BentError(Exception):
    """Base class for all errors raised by this package."""


class ParameterError(BentError):
    """A construction or search was called with inadmissible parameters."""


class DomainError(BentError):
    """An argument is outside the mathematical domain of an operation."""


class ParseError(BentError):
    """A file or string could not be parsed.

    ``line`` is the 1-based line number when known.
    """

    def __init__(self, message: str, line: int | None = None):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line


class ResourceError(BentError):
    """A computation would exceed a configured size cap."""
