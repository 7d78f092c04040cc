class TrainingError(ValueError):
    """The correlation matrix cannot be factorized, even with a nugget."""


class DuplicateSampleError(TrainingError):
    """Two training inputs coincide after normalization."""
