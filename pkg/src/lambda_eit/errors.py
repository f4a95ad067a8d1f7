"""Exception hierarchy.

``InvalidParameter`` marks bad user input (CLI exit code 1); everything derived
from ``NumericError`` is a failure inside a computation (CLI exit code 2).
"""


class InvalidParameter(ValueError):
    pass


class NumericError(ArithmeticError):
    pass


class DegenerateDenominator(NumericError):
    pass


class NonPositiveDenominator(NumericError):
    pass


class StepTooLarge(NumericError):
    pass


class UnstableStep(NumericError):
    pass


class DimensionOverflow(NumericError):
    pass


class DimensionMismatch(NumericError):
    pass


class MissingColumn(KeyError):
    pass
