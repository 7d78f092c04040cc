from dataclasses import dataclass
from functools import cached_property
from typing import Protocol

import numpy as np
from numpy.typing import ArrayLike, NDArray

from .exceptions import DuplicateSampleError, TrainingError

# Normalized distance under which two inputs count as the same sample.
DUPLICATE_DISTANCE = 1e-9


def _span(lower: NDArray, upper: NDArray) -> NDArray:
    span = upper - lower
    return np.where(span > 0, span, 1.0)


@dataclass(frozen=True, eq=False)
class TrainingSet:
    """
    Input/output pairs (xi, phi) of the surrogate.

    inputs holds one DoF vector per row, in the raw units of the DoFs;
    lower and upper are the DoF bounds used for normalization.
    """

    inputs: NDArray[np.float64]
    outputs: NDArray[np.float64]
    lower: NDArray[np.float64]
    upper: NDArray[np.float64]

    def __post_init__(self) -> None:
        inputs = np.atleast_2d(np.asarray(self.inputs, dtype=float))
        outputs = np.asarray(self.outputs, dtype=float).reshape(-1)
        object.__setattr__(self, "inputs", inputs)
        object.__setattr__(self, "outputs", outputs)
        object.__setattr__(self, "lower", np.asarray(self.lower, float))
        object.__setattr__(self, "upper", np.asarray(self.upper, float))

        if inputs.shape[0] != outputs.shape[0]:
            raise TrainingError(
                f"{inputs.shape[0]} inputs for {outputs.shape[0]} outputs"
            )
        if inputs.shape[1] != self.lower.shape[0]:
            raise TrainingError(
                f"Inputs have {inputs.shape[1]} columns, bounds have "
                f"{self.lower.shape[0]}"
            )
        if not np.all(np.isfinite(outputs)) or np.any(outputs < 0):
            raise TrainingError("Costs must be finite and non-negative")
        if np.any(inputs < self.lower) or np.any(inputs > self.upper):
            raise TrainingError("Training inputs must lie within bounds")
        points = self.normalized
        for s in range(1, len(points)):
            gaps = np.linalg.norm(points[:s] - points[s], axis=1)
            if np.min(gaps) <= DUPLICATE_DISTANCE:
                raise DuplicateSampleError(
                    f"Sample {s} duplicates sample {int(np.argmin(gaps))}"
                )

    @property
    def size(self) -> int:
        return len(self.outputs)

    @property
    def k(self) -> int:
        return self.inputs.shape[1]

    @cached_property
    def normalized(self) -> NDArray[np.float64]:
        return self.normalize(self.inputs)

    def normalize(self, points: ArrayLike) -> NDArray[np.float64]:
        """Maps raw DoF values to [0, 1] per dimension through the bounds."""
        values = np.asarray(points, dtype=float)
        return (values - self.lower) / _span(self.lower, self.upper)

    def is_duplicate(self, point: ArrayLike) -> bool:
        if not self.size:
            return False
        gaps = np.linalg.norm(self.normalized - self.normalize(point), axis=1)
        return bool(np.min(gaps) <= DUPLICATE_DISTANCE)

    def add(self, point: ArrayLike, phi: float) -> "TrainingSet":
        return TrainingSet(
            inputs=np.vstack([self.inputs, np.asarray(point, dtype=float)]),
            outputs=np.append(self.outputs, phi),
            lower=self.lower,
            upper=self.upper,
        )

    @property
    def best_index(self) -> int:
        """Index of the lowest cost; the earliest sample wins ties."""
        return int(np.argmin(self.outputs))


@dataclass(frozen=True)
class Hyperparameters:
    gamma: tuple[float, ...]
    beta: tuple[float, ...]

    def __post_init__(self) -> None:
        if len(self.gamma) != len(self.beta):
            raise ValueError("gamma and beta need one entry per dimension")
        if any(g <= 0 for g in self.gamma):
            raise ValueError(f"gamma must be positive: {self.gamma}")
        if any(not 1 <= b <= 2 for b in self.beta):
            raise ValueError(f"beta must lie in [1, 2]: {self.beta}")


@dataclass(frozen=True)
class Prediction:
    mean: float
    variance: float

    @property
    def std(self) -> float:
        return float(np.sqrt(self.variance))

    @property
    def lcb(self) -> float:
        return self.mean - 2 * self.std

    @property
    def ucb(self) -> float:
        return self.mean + 2 * self.std

    @property
    def lcb_plus(self) -> float:
        """Lower bound clamped at 0, since costs are non-negative."""
        return max(self.lcb, 0.0)


class Surrogate(Protocol):
    training: TrainingSet

    def predict_many(
        self, points: ArrayLike
    ) -> tuple[NDArray[np.float64], NDArray[np.float64]]:
        """Mean and variance at each row of points (raw DoF units)."""
        ...


class SurrogateFactory(Protocol):
    def fit(
        self, training: TrainingSet, previous: Surrogate | None
    ) -> Surrogate:
        """Builds a surrogate, possibly warm-started from the last one."""
        ...


@dataclass(frozen=True, eq=False)
class GpModel:
    """
    Trained ordinary-Kriging model.

    weights is R^-1 (phi - chi 1) and r_inv_one is R^-1 1, both using the
    nugget-regularized correlation matrix whose Cholesky factor is kept.
    """

    training: TrainingSet
    hyperparameters: Hyperparameters
    nugget: float
    cholesky: tuple[NDArray[np.float64], bool]
    chi: float
    nu2: float
    weights: NDArray[np.float64]
    r_inv_one: NDArray[np.float64]
    log_likelihood: float

    @property
    def one_r_inv_one(self) -> float:
        return float(np.sum(self.r_inv_one))

    def predict_many(
        self, points: ArrayLike
    ) -> tuple[NDArray[np.float64], NDArray[np.float64]]:
        # Imported here because kriging builds GpModel instances.
        from .kriging import predict_many

        return predict_many(self, points)
