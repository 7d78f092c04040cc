class InvalidConfigError(ValueError):
    pass


class InitializationError(RuntimeError):
    """The initial training set could not be evaluated."""
