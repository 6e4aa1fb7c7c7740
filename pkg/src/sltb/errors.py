"""Exception types raised by the library."""


class SLTBError(Exception):
    """Base class for every error raised by sltb."""


class SimplexViolation(SLTBError, ValueError):
    pass


class DomainError(SLTBError, ValueError):
    pass


class OutOfTriangle(SLTBError, ValueError):
    pass


class UndefinedDirection(SLTBError, ValueError):
    pass


class EmptyInput(SLTBError, ValueError):
    pass


class AllWeightsZero(SLTBError, ValueError):
    pass


class LengthMismatch(SLTBError, ValueError):
    pass


class TooFewPairs(SLTBError, ValueError):
    pass


class SchemaError(SLTBError, ValueError):
    pass


class InvariantViolation(SLTBError, RuntimeError):
    """An invariant was broken during a simulation; ``key`` names the record."""

    def __init__(self, message: str, key: tuple = ()):
        super().__init__(message)
        self.key = key
