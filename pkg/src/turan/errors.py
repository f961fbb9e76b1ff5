"""Exception hierarchy shared by every module."""


class TuranError(Exception):
    pass


class InvariantViolation(TuranError, ValueError):
    pass


class ParseError(TuranError, ValueError):
    def __init__(self, message, line=None, column=None):
        loc = f" (line {line}, column {column})" if line is not None else ""
        super().__init__(message + loc)
        self.line = line
        self.column = column


class LoopsNotAllowed(TuranError, ValueError):
    pass


class CardinalityExceedsN(TuranError, ValueError):
    pass


class SpecMismatch(TuranError, ValueError):
    pass


class MultiplicityExceedsPart(TuranError, ValueError):
    pass


class WrongEdgeTypes(TuranError, ValueError):
    pass


class UnknownName(TuranError, KeyError):
    pass


class DomainMismatch(TuranError, ValueError):
    pass


class DimensionMismatch(TuranError, ValueError):
    pass


class TooLarge(TuranError):
    pass


class BudgetExceeded(TuranError):
    pass


class ConvergenceFailure(TuranError, ArithmeticError):
    pass


class UnsupportedTypes(TuranError, ValueError):
    pass


class InvalidR(TuranError, ValueError):
    pass
