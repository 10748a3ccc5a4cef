"""Exception hierarchy shared by every module of the package."""

from __future__ import annotations


class WeightMergeError(Exception):
    """Base class for all errors raised by weightmerge."""


class ParseError(WeightMergeError):
    """Malformed graph or plan text."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class ValidationError(WeightMergeError):
    """Well-formed input that violates a structural precondition."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class NegativeWeight(ValidationError):
    pass


class Disconnected(ValidationError):
    pass


class HasCycle(ValidationError):
    pass


class NoSuchEdge(ValidationError):
    pass


class NotATreeEdge(NoSuchEdge):
    pass


class NotAPath(ValidationError):
    pass


class NotAMatching(ValidationError):
    pass


class NotContiguous(ValidationError):
    pass


class NotAdjacentSupernodes(ValidationError):
    pass


class WrongState(ValidationError):
    pass


class NegativeResultWeight(ValidationError):
    def __init__(self, edge: int, weight):
        self.edge = edge
        self.weight = weight
        super().__init__(f"edge {edge} would get negative weight {weight}")


class TooLarge(WeightMergeError):
    """An oracle run exceeds its size cap."""


class InconsistentReport(WeightMergeError):
    """Predicted and recomputed errors disagree (should never happen)."""
