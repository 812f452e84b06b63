"""Exception types shared across the package."""


class GraphError(ValueError):
    """Invalid graph structure or vertex reference."""


class GraphFormatError(GraphError):
    """Malformed edge-list input."""

    def __init__(self, message: str, lineno: int | None = None):
        self.lineno = lineno
        if lineno is not None:
            message = f"line {lineno}: {message}"
        super().__init__(message)


class NumericalError(ArithmeticError):
    """A computation left the range where binary64 results are trustworthy."""


class TransformError(NumericalError):
    """Edge-weight transform produced a non-finite or underflowing weight."""


class EnumerationCapError(ValueError):
    """Graph has too many edge records for brute-force forest enumeration."""
