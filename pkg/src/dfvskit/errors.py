"""Exception types shared across the package."""


class ParseError(ValueError):
    """Input text does not conform to a file format.

    Carries the 1-based line number of the offending line when known.
    """

    def __init__(self, message, line=None):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line


class CapExceeded(RuntimeError):
    """An exhaustive search would exceed its configured size cap."""


class ValidationError(ValueError):
    """A decomposition, solution, or configuration failed validation."""
