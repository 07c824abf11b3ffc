"""Exception types shared across the package."""


class DomainError(ValueError):
    """An argument lies outside the domain of the function."""


class NumericalError(ArithmeticError):
    """An iterative method failed to converge within its iteration cap."""


class ConfigurationError(ValueError):
    """An experiment or command was configured inconsistently."""


class ParseError(ValueError):
    """Malformed input text; ``lineno`` is 1-based when known."""

    def __init__(self, message, lineno=None):
        if lineno is not None:
            message = f"line {lineno}: {message}"
        super().__init__(message)
        self.lineno = lineno
