"""Exception types raised across the package."""


class NeumaierError(Exception):
    """Base class for all package errors."""


class DomainError(NeumaierError, ValueError):
    """An argument lies outside the domain an operation is defined on."""


class InvalidGraph6(NeumaierError, ValueError):
    pass


class CompleteGraph(NeumaierError, ValueError):
    pass


class InvalidSquare(NeumaierError, ValueError):
    pass


class AsymmetricSpec(NeumaierError, ValueError):
    pass


class DiagonalNonzero(NeumaierError, ValueError):
    pass


class MissingEdge(NeumaierError, ValueError):
    pass


class EdgeAlreadyPresent(NeumaierError, ValueError):
    pass


class BudgetExceeded(NeumaierError):
    """A search ran out of time. ``partial`` holds whatever was found so far."""

    def __init__(self, message, partial=None, stats=None):
        super().__init__(message)
        self.partial = partial if partial is not None else []
        self.stats = stats


class ShapeMismatch(NeumaierError, ValueError):
    pass


class MissingDesigns(NeumaierError, ValueError):
    pass


class NotApplicable(NeumaierError, ValueError):
    pass


class InconsistentFixedEdges(NeumaierError, ValueError):
    pass


class NonIntegralLambdaBranch(NeumaierError, ValueError):
    pass


class InputFormatError(NeumaierError, ValueError):
    """A text input file could not be parsed; carries the 1-based line number."""

    def __init__(self, message, line=None):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line
