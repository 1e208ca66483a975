class SeriesError(ArithmeticError):
    """Base class for truncated-series arithmetic failures."""


class UnlimitedError(SeriesError):
    """Raised when the standard part of an unlimited number is requested."""

    def __init__(self, value):
        self.value = value
        super().__init__(f"{value} is unlimited; its standard part does not exist as a real number")


class SeriesDivisionByZero(SeriesError, ZeroDivisionError):
    """Raised when inverting the zero series."""


class NonFiniteError(SeriesError, ValueError):
    """Raised when a NaN or infinite real is embedded."""


class SeriesParseError(SeriesError, ValueError):
    """Raised when a serialized series cannot be read back."""
