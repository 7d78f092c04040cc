class ConfigurationError(ValueError):
    """A run configuration is malformed, unknown or inconsistent."""


class BatchError(RuntimeError):
    """One or more queued inversions of a batch did not finish."""
