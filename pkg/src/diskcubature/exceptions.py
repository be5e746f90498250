"""Error types raised across the package."""


class DomainError(ValueError):
    """An argument lies outside the mathematical domain of an operation."""


class RuleGenerationError(ArithmeticError):
    """A Gauss rule could not be built to the required accuracy."""


class NumericError(ArithmeticError):
    """A non-finite value appeared during evaluation.

    ``point`` holds the offending location when one is known.
    """

    def __init__(self, message, point=None):
        super().__init__(message)
        self.point = point
