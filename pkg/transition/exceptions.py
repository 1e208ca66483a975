class InvalidTransitionError(ValueError):
    """Raised when a transition parameter is not strictly positive."""
