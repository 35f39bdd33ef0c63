"""Exception hierarchy shared by all modules."""


class PolarfolError(Exception):
    """Base class for every error raised by the package."""


class NoSolution(PolarfolError):
    pass


class DegenerateForm(PolarfolError):
    pass


class InvalidRank(PolarfolError, ValueError):
    pass


class ContextMismatch(PolarfolError):
    pass


class NotInAlgebra(PolarfolError):
    """A matrix violates the su(1,n) identities."""


class NotNilpotent(PolarfolError):
    pass


class SingularGroupElement(PolarfolError):
    pass


class InconsistentModel(PolarfolError):
    pass


class NotInRootSpace(PolarfolError):
    pass


class NotInSolvablePart(PolarfolError):
    pass


class NotClosed(PolarfolError):
    def __init__(self, i: int, j: int, bracket=None):
        super().__init__(f"[b_{i}, b_{j}] leaves the span")
        self.i = i
        self.j = j
        self.bracket = bracket


class NotInP(PolarfolError):
    pass


class NotInBorel(PolarfolError):
    pass


class NotPolarInput(PolarfolError):
    pass


class BadParameters(PolarfolError, ValueError):
    pass


class NotTotallyReal(PolarfolError):
    pass


class WrongShape(PolarfolError):
    pass


class ConvergenceFailure(PolarfolError):
    pass


class GaugeFailure(PolarfolError):
    pass


class ParseError(PolarfolError):
    def __init__(self, message: str, line: int | None = None,
                 column: int | None = None):
        loc = f" (line {line}, column {column})" if line is not None else ""
        super().__init__(message + loc)
        self.line = line
        self.column = column
