class DegenerateDatasetError(ValueError):
    """The measured field is identically zero, so the cost is undefined."""


class UndefinedMetricError(ValueError):
    pass


class OracleError(RuntimeError):
    """A forward evaluation of the cost failed for one DoF vector."""
