import math
from dataclasses import dataclass
from functools import cached_property

import numpy as np
from numpy.typing import NDArray

# Lengths are measured in wavelengths, so the free-space wavenumber is 2*pi.
WAVENUMBER = 2 * math.pi


@dataclass(frozen=True)
class Grid:
    """
    Uniform square discretization of the investigation domain D.

    D is centered on the origin. Cells are numbered row-major: the row
    index runs over y (ascending) and the column index over x (ascending),
    so cell n = row * n_side + col.
    """

    side: float
    n_side: int

    def __post_init__(self) -> None:
        if not math.isfinite(self.side) or self.side <= 0:
            raise ValueError(f"Grid side must be positive: {self.side}")
        if self.n_side < 1:
            raise ValueError(f"Grid needs at least one cell: {self.n_side}")

    @property
    def n(self) -> int:
        return self.n_side**2

    @property
    def cell_size(self) -> float:
        return self.side / self.n_side

    @property
    def equivalent_radius(self) -> float:
        """Radius of the circle with the same area as one cell."""
        return self.cell_size / math.sqrt(math.pi)

    @property
    def k0(self) -> float:
        return WAVENUMBER

    @cached_property
    def axis(self) -> NDArray[np.float64]:
        """Cell center coordinates along one axis."""
        return -self.side / 2 + self.cell_size * (
            np.arange(self.n_side) + 0.5
        )

    @cached_property
    def centers(self) -> NDArray[np.float64]:
        """(N, 2) array of cell centers in row-major order."""
        xx, yy = np.meshgrid(self.axis, self.axis, indexing="xy")
        return np.column_stack([xx.ravel(), yy.ravel()])

    def contains(self, point: NDArray[np.float64]) -> bool:
        half = self.side / 2
        return bool(np.all(np.abs(point) <= half))


@dataclass(frozen=True)
class MeasurementSetup:
    """V plane-wave views and M probes evenly spread on a circle."""

    views: int
    probes: int
    radius: float

    def __post_init__(self) -> None:
        if self.views < 1 or self.probes < 1:
            raise ValueError(
                f"Need at least one view and one probe: "
                f"V={self.views}, M={self.probes}"
            )
        if not math.isfinite(self.radius) or self.radius <= 0:
            raise ValueError(f"Probe radius must be positive: {self.radius}")

    @cached_property
    def incidence_angles(self) -> NDArray[np.float64]:
        return 2 * np.pi * np.arange(self.views) / self.views

    @cached_property
    def probe_angles(self) -> NDArray[np.float64]:
        return 2 * np.pi * np.arange(self.probes) / self.probes

    @cached_property
    def probe_positions(self) -> NDArray[np.float64]:
        """(M, 2) array of probe coordinates."""
        return self.radius * np.column_stack(
            [np.cos(self.probe_angles), np.sin(self.probe_angles)]
        )


@dataclass(eq=False)
class ScatteringDataset:
    """
    Scattered-field samples, one column per view.

    scattered has shape (M, V). The grid describes the discretization that
    generated the samples (the fine grid for synthetic data).
    """

    setup: MeasurementSetup
    grid: Grid
    scattered: NDArray[np.complex128]
    snr_db: float | None = None
    seed: int | None = None

    def __post_init__(self) -> None:
        self.scattered = np.asarray(self.scattered, dtype=complex)
        expected = (self.setup.probes, self.setup.views)
        if self.scattered.shape != expected:
            raise ValueError(
                f"Scattered samples have shape {self.scattered.shape}, "
                f"expected {expected}"
            )
        if not np.all(np.isfinite(self.scattered)):
            raise ValueError("Scattered samples must be finite")
