class InvalidShapeError(ValueError):
    """The spline parameters do not describe a closed area."""


class OutOfRangeError(ValueError):
    """A curve parameter is outside its admissible interval."""


class DofBoundsError(ValueError):
    """A DoF vector entry violates its bounds or layout."""
