class CoordinateSingularityError(ArithmeticError):
    """Raised when a guarded division meets a zero denominator."""

    def __init__(self, expression):
        self.expression = expression
        super().__init__(f"coordinate singularity: denominator of {expression} vanishes")


class InvalidConstantsError(ValueError):
    """Raised when G, M or c is not strictly positive."""


class InvalidRadiusError(ValueError):
    """Raised when a radius is not strictly positive."""


class RegimeMismatchError(ValueError):
    """Raised when a requested regime disagrees with the sign of lambda."""


class ExpressionParseError(ValueError):
    """Raised when a prefix-notation expression cannot be read."""


class UnboundSymbolError(LookupError):
    """Raised when evaluation meets a variable or constant with no binding."""
