import numpy as np

from dtis.metrics.exceptions import OracleError


class QuadraticCost:
    """Normalized squared distance to a target, counting calls."""

    def __init__(self, target, span, failures: int = 0):
        self.target = np.asarray(target, dtype=float)
        self.span = np.asarray(span, dtype=float)
        self.failures = failures
        self.calls = 0
        self.evaluated: list[tuple[np.ndarray, float]] = []

    def value(self, points) -> np.ndarray:
        gap = (np.atleast_2d(points) - self.target) / self.span
        return np.sum(gap**2, axis=1)

    def __call__(self, values) -> float:
        self.calls += 1
        if self.failures:
            self.failures -= 1
            raise OracleError("forced failure")
        phi = float(self.value(values)[0])
        self.evaluated.append((np.array(values, dtype=float), phi))
        return phi


class ExactSurrogate:
    """Surrogate that knows the true cost and is never uncertain."""

    def __init__(self, cost: QuadraticCost, training):
        self.cost = cost
        self.training = training

    def predict_many(self, points):
        values = self.cost.value(points)
        return values, np.zeros(len(values))


class ExactFactory:
    def __init__(self, cost: QuadraticCost):
        self.cost = cost
        self.fits = 0

    def fit(self, training, previous=None) -> ExactSurrogate:
        self.fits += 1
        return ExactSurrogate(self.cost, training)


class FixedDraws:
    """Generator stand-in whose uniform draws are all equal to value."""

    def __init__(self, value: float):
        self.value = value

    def random(self, shape):
        return np.full(shape, self.value)
