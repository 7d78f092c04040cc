from dataclasses import dataclass, field
from typing import Protocol

import numpy as np
from numpy.typing import ArrayLike, NDArray

from dtis.geometry.types import DofVector

ANCHORS = ((-1.0, 1.0), (0.0, 1.0), (-1.0, 0.0))


class Oracle(Protocol):
    """Full-wave cost of a DoF vector, counting its evaluations."""

    calls: int

    def __call__(self, values: ArrayLike) -> float: ...


@dataclass(frozen=True, eq=False)
class LandscapeRequest:
    """
    Two-parameter slice of the cost through three DoF vectors.

    The slice passes through `actual` at (a, b) = (-1, 1), through `first`
    at (0, 1) and through `second` at (-1, 0).
    """

    first: DofVector
    second: DofVector
    actual: DofVector
    a_range: tuple[float, float] = (-1.5, 0.5)
    b_range: tuple[float, float] = (-0.5, 1.5)
    resolution: int = 41

    def __post_init__(self) -> None:
        for other in (self.second, self.actual):
            if (other.layout, other.q) != (self.first.layout, self.first.q):
                raise ValueError(
                    "Landscape anchors must share layout and spline order"
                )
            same_bounds = np.array_equal(
                other.lower, self.first.lower
            ) and np.array_equal(other.upper, self.first.upper)
            if not same_bounds:
                raise ValueError("Landscape anchors must share bounds")
        if self.resolution < 2:
            raise ValueError(f"Resolution must be >= 2: {self.resolution}")
        for a, b in ANCHORS:
            inside_a = self.a_range[0] <= a <= self.a_range[1]
            inside_b = self.b_range[0] <= b <= self.b_range[1]
            if not (inside_a and inside_b):
                raise ValueError(
                    f"Ranges {self.a_range} x {self.b_range} miss the "
                    f"anchor ({a}, {b})"
                )

    @property
    def a_values(self) -> NDArray[np.float64]:
        return _lattice(self.a_range, self.resolution)

    @property
    def b_values(self) -> NDArray[np.float64]:
        return _lattice(self.b_range, self.resolution)

    def point(self, a: float, b: float) -> NDArray[np.float64]:
        """Unclamped DoF values at (a, b)."""
        return (
            b * ((a + 1) * self.first.values - a * self.actual.values)
            + (b - 1) * a * self.second.values
        )


def _lattice(bounds: tuple[float, float], count: int) -> NDArray[np.float64]:
    # Rounded so that anchor coordinates such as -1 land exactly.
    return np.round(np.linspace(bounds[0], bounds[1], count), 12)


@dataclass(eq=False)
class Landscape:
    """Cost on the (a, b) lattice; failed cells hold NaN."""

    a: NDArray[np.float64]
    b: NDArray[np.float64]
    phi: NDArray[np.float64]
    clamped: int = 0
    failures: list[tuple[float, float]] = field(default_factory=list)

    def at(self, a: float, b: float) -> float:
        i = int(np.argmin(np.abs(self.a - a)))
        j = int(np.argmin(np.abs(self.b - b)))
        return float(self.phi[i, j])
