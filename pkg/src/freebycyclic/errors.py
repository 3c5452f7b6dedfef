"""Exception types raised by the analysis pipeline."""


class FreeByCyclicError(Exception):
    """Base class for all package errors."""


class ParseError(FreeByCyclicError, ValueError):
    def __init__(self, message, line=None):
        self.line = line
        prefix = f"line {line}: " if line is not None else ""
        super().__init__(prefix + message)


class MalformedPathError(FreeByCyclicError, ValueError):
    """A dart sequence whose consecutive darts do not compose."""


class ValidationError(FreeByCyclicError, ValueError):
    """The input violates a normal-form axiom the pipeline depends on.

    ``diagnostics`` carries the named violations.
    """

    def __init__(self, message, diagnostics=()):
        self.diagnostics = list(diagnostics)
        super().__init__(message)


class UnsupportedInputError(FreeByCyclicError, ValueError):
    """The input lies outside the class of maps the decision procedure handles."""


class InternalInconsistencyError(FreeByCyclicError, RuntimeError):
    """Two independent decision routes disagreed."""

    def __init__(self, message, details=None):
        self.details = details or {}
        super().__init__(message)
