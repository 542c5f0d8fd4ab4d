"""Exception hierarchy shared by every module."""


class ARHError(Exception):
    """Base class for all errors raised by arhub."""


class InvalidInstance(ARHError, ValueError):
    pass


class MalformedGraph(InvalidInstance):
    pass


class DuplicateOccupancy(InvalidInstance):
    pass


class UpperBoundExceedsDegree(InvalidInstance):
    pass


class TooFewVertices(InvalidInstance):
    pass


class PlacedOnOccupied(ARHError, ValueError):
    pass


class InfeasibleDetected(ARHError):
    """A reduction rule proved the instance has no housing of size R."""

    def __init__(self, message, trace=None, instance=None):
        super().__init__(message)
        self.trace = trace
        self.instance = instance


class BudgetExceeded(ARHError):
    """Enumeration or table size went past the configured cap."""


class PreconditionError(ARHError, ValueError):
    """The instance is outside the class a solver was written for."""


class NotAForest(PreconditionError):
    pass


class DegreeTooHigh(PreconditionError):
    pass


class NotCompleteBipartite(PreconditionError):
    pass


class InvalidModulator(PreconditionError):
    pass


class TooManyInhabitants(PreconditionError):
    pass


class InvalidDecomposition(ARHError, ValueError):
    pass


class NotDivisibleBy3(ARHError, ValueError):
    pass


class InvalidParams(ARHError, ValueError):
    pass
