class CoordinatePoleError(ArithmeticError):
    """Raised when a slope is requested where the chart's null slope has a pole."""

    def __init__(self, radius):
        self.radius = radius
        super().__init__(f"null slope has a coordinate pole at R = {radius}")


class InvalidRayError(ValueError):
    """Raised when a ray or its integration settings are invalid."""
