from dataclasses import dataclass, field
from enum import StrEnum

import numpy as np
from numpy.typing import NDArray

from dtis.geometry.types import ContrastMap, DofVector, Layout
from dtis.surrogate.types import Surrogate, TrainingSet

from .exceptions import InvalidConfigError

MAX_RESAMPLES = 10


class Mode(StrEnum):
    SBD = "sbd"
    GO = "go"


@dataclass(frozen=True, eq=False)
class InversionConfig:
    """
    Swarm settings of one inversion.

    iterations is I_SbD in sbd mode and I_GO in go mode. initial_samples
    only matters in sbd mode.
    """

    layout: Layout
    q: int
    lower: NDArray[np.float64]
    upper: NDArray[np.float64]
    mode: Mode = Mode.SBD
    particles: int = 10
    iterations: int = 100
    initial_samples: int = 40
    inertia: float = 0.4
    cognitive: float = 2.0
    social: float = 2.0
    velocity_clamp: float = 0.5
    fit_beta: bool = False
    seed: int = 1

    def __post_init__(self) -> None:
        object.__setattr__(self, "mode", Mode(self.mode))
        object.__setattr__(self, "lower", np.asarray(self.lower, float))
        object.__setattr__(self, "upper", np.asarray(self.upper, float))
        if self.lower.shape != self.upper.shape or self.lower.ndim != 1:
            raise InvalidConfigError("Bounds must be two equal-length vectors")
        if np.any(self.lower >= self.upper):
            raise InvalidConfigError("Every lower bound must be below upper")
        if self.particles < 2:
            raise InvalidConfigError(
                f"Need P >= 2 particles: {self.particles}"
            )
        if self.iterations < 1:
            raise InvalidConfigError(
                f"Need at least one iteration: {self.iterations}"
            )
        if self.mode == Mode.SBD and self.initial_samples < 1:
            raise InvalidConfigError(
                f"Need S0 >= 1 initial samples: {self.initial_samples}"
            )
        coefficients = (self.inertia, self.cognitive, self.social)
        if min(coefficients) < 0:
            raise InvalidConfigError(
                f"Inertia and acceleration must be non-negative: "
                f"{coefficients}"
            )
        if self.velocity_clamp <= 0:
            raise InvalidConfigError(
                f"Velocity clamp must be positive: {self.velocity_clamp}"
            )

    @property
    def k(self) -> int:
        return len(self.lower)

    @property
    def span(self) -> NDArray[np.float64]:
        return self.upper - self.lower

    @property
    def max_velocity(self) -> NDArray[np.float64]:
        return self.velocity_clamp * self.span


@dataclass(frozen=True)
class TraceRow:
    iteration: int
    best_true_phi: float
    training_size: int
    fw_calls: int
    elapsed_s: float


@dataclass(eq=False)
class SwarmState:
    """
    Mutable state of the swarm; swarm operations update it in place.

    personal_best_score holds the score the personal best was stored with:
    the lower confidence bound under the model of that iteration in sbd
    mode, the true cost in go mode.
    """

    positions: NDArray[np.float64]
    velocities: NDArray[np.float64]
    personal_best: NDArray[np.float64]
    personal_best_score: NDArray[np.float64]
    global_best: NDArray[np.float64]
    global_best_phi: float
    training: TrainingSet | None = None
    model: Surrogate | None = None
    iteration: int = 0
    trace: list[TraceRow] = field(default_factory=list)

    @property
    def particles(self) -> int:
        return len(self.positions)


@dataclass(eq=False)
class InversionResult:
    mode: Mode
    solution: DofVector
    contrast: ContrastMap
    best_phi: float
    trace: list[TraceRow]
    fw_calls: int
    elapsed_s: float
    final_positions: NDArray[np.float64]
    training: TrainingSet | None = None
    model: Surrogate | None = None

    @property
    def initial_phi(self) -> float:
        return self.trace[0].best_true_phi
