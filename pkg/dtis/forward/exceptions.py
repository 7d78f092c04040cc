from dtis.core.exceptions import FileFormatError


class GeometryError(ValueError):
    """Probes and investigation domain overlap."""


class InverseCrimeError(ValueError):
    """Synthetic data would be generated on the inversion grid."""


class DatasetFormatError(FileFormatError):
    """A dataset file does not follow the canonical CSV layout."""


class SolverError(ArithmeticError):
    def __init__(self, message: str, condition: float):
        super().__init__(f"{message} (condition estimate {condition:.3e})")
        self.condition = condition
