class SblabError(Exception):
    """Base class for all errors raised by sblab."""


class DimensionError(SblabError, ValueError):
    """Exponent vectors of different lengths were mixed."""


class ContextError(SblabError, ValueError):
    """Polynomials from different rings were combined."""


class LeadingFormError(SblabError, ValueError):
    """A leading form or initial exponent was requested for the zero polynomial."""


class InputError(SblabError, ValueError):
    """Malformed user input (problem files, generator lists, parameters)."""


class ParseError(InputError):
    def __init__(self, message, line=None, column=None):
        self.line = line
        self.column = column
        if line is not None:
            message = f"{message} (line {line}, column {column})"
        super().__init__(message)


class ResourceError(SblabError, RuntimeError):
    """A desk-scale guardrail was exceeded."""


class CoefficientGrowthError(ResourceError):
    """Coefficients of a normal form outgrew the configured bit size."""
