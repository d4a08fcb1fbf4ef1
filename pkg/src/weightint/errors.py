"""Exception hierarchy.

Two families matter to callers: :class:`ValidationError` for malformed or
inconsistent inputs, and :class:`NumericalError` for inputs that are well
formed but numerically unusable. The CLI maps them to exit codes 1 and 2.
"""


class WeightIntError(Exception):
    """Base class for all errors raised by this package."""


class ValidationError(WeightIntError, ValueError):
    pass


class NumericalError(WeightIntError, ArithmeticError):
    pass


class DimensionMismatch(ValidationError):
    pass


class InvalidState(ValidationError):
    pass


class MalformedInputFile(ValidationError):
    pass


class NonHermitianInput(NumericalError):
    pass


class ConvergenceFailure(NumericalError):
    pass


class NonDecayingWeight(NumericalError):
    pass


class DegenerateGrid(NumericalError):
    pass
