class RunConfigError(ValueError):
    """Raised when run options cannot be resolved into a configuration."""
