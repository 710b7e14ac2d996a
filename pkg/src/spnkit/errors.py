"""Exception types shared across the package."""


class SpnKitError(Exception):
    """Base class for all spnkit errors."""


class ZeroPivotError(SpnKitError):
    """Pivot entry too close to zero for a Schur complement step."""


class NoConvergenceError(SpnKitError):
    """An iterative scheme failed to converge within its iteration cap."""


class DimensionTooLargeError(SpnKitError):
    """Input dimension exceeds the cap of an exhaustive routine."""


class UndecidedError(SpnKitError):
    """Neither a certificate nor a witness was found within iteration caps.

    This is an explicit outcome, never silently coerced to a verdict;
    it usually signals that tolerances or iteration caps need tuning.
    """


class NotInSupportedClassError(SpnKitError):
    """The recursive decomposer was asked to handle a matrix outside the
    structural classes it supports."""


class LpNumericalFailureError(SpnKitError):
    """Simplex pivoting stalled beyond its pivot cap."""


class InvalidParamsError(SpnKitError):
    """Generator parameters violate the constructor's hypotheses."""


class ParseError(SpnKitError):
    """Malformed matrix/vector text input.

    Carries the 1-based line and column of the offending token.
    """

    def __init__(self, message: str, line: int, column: int):
        super().__init__(f"{message} (line {line}, column {column})")
        self.line = line
        self.column = column
