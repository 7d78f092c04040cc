import math
from dataclasses import dataclass
from enum import StrEnum

import numpy as np
from numpy.typing import ArrayLike, NDArray

from dtis.forward.types import Grid

from .exceptions import DofBoundsError, InvalidShapeError


class Layout(StrEnum):
    SINGLE = "single"
    DOUBLY_CONNECTED = "doubly_connected"
    MULTI_OBJECT = "multi_object"


def dof_count(layout: Layout, q: int) -> int:
    """Number of unknowns K for a layout with Q control points per contour."""
    match layout:
        case Layout.SINGLE:
            return 4 + q
        case Layout.DOUBLY_CONNECTED:
            return 7 + q
        case Layout.MULTI_OBJECT:
            return 8 + 2 * q
    raise ValueError(f"Unknown layout: {layout}")


@dataclass(frozen=True)
class SplineContour:
    """
    Closed contour made of Q quadratic Bezier segments.

    The q-th control point sits at angle (q-1)*2*pi/Q from the barycenter,
    at distance radii[q-1].
    """

    barycenter: tuple[float, float]
    radii: tuple[float, ...]

    def __post_init__(self) -> None:
        if len(self.radii) < 3:
            raise InvalidShapeError(
                f"A closed contour needs at least 3 control points, "
                f"got {len(self.radii)}"
            )
        for radius in self.radii:
            if not math.isfinite(radius) or radius <= 0:
                raise InvalidShapeError(
                    f"Contour radii must be positive and finite: {self.radii}"
                )
        if not all(math.isfinite(c) for c in self.barycenter):
            raise InvalidShapeError(
                f"Barycenter must be finite: {self.barycenter}"
            )

    @property
    def q(self) -> int:
        return len(self.radii)

    def scaled(self, factor: float) -> "SplineContour":
        """Same barycenter, every radius multiplied by factor."""
        return SplineContour(
            barycenter=self.barycenter,
            radii=tuple(factor * radius for radius in self.radii),
        )

    def shifted(self, dx: float, dy: float) -> "SplineContour":
        x, y = self.barycenter
        return SplineContour(barycenter=(x + dx, y + dy), radii=self.radii)


@dataclass(frozen=True)
class Region:
    """A contour filled with a homogeneous contrast."""

    contour: SplineContour
    tau: complex


@dataclass(frozen=True, eq=False)
class DofVector:
    """
    Unknowns of the inversion, laid out as:

    - single: x, y, Re tau, Im tau, rho_1..rho_Q
    - doubly_connected: x, y, Re tau_out, Im tau_out, Re tau_int,
      Im tau_int, rho_1..rho_Q (outer), upsilon
    - multi_object: x1, y1, x2, y2, Re tau1, Im tau1, Re tau2, Im tau2,
      rho1_1..rho1_Q, rho2_1..rho2_Q
    """

    layout: Layout
    q: int
    values: NDArray[np.float64]
    lower: NDArray[np.float64]
    upper: NDArray[np.float64]

    def __post_init__(self) -> None:
        for name in ("values", "lower", "upper"):
            array = np.array(getattr(self, name), dtype=float)
            array.setflags(write=False)
            object.__setattr__(self, name, array)

        k = dof_count(self.layout, self.q)
        for name in ("values", "lower", "upper"):
            array = getattr(self, name)
            if array.shape != (k,):
                raise DofBoundsError(
                    f"{self.layout} with Q={self.q} needs K={k} entries, "
                    f"{name} has shape {array.shape}"
                )
            if not np.all(np.isfinite(array)):
                raise DofBoundsError(f"{name} must be finite: {array}")
        if np.any(self.lower > self.upper):
            raise DofBoundsError("Lower bounds exceed upper bounds")
        outside = (self.values < self.lower) | (self.values > self.upper)
        if np.any(outside):
            indices = np.flatnonzero(outside).tolist()
            raise DofBoundsError(
                f"Entries {indices} are out of bounds: "
                f"{self.values[outside]}"
            )
        if self.layout == Layout.DOUBLY_CONNECTED:
            upsilon = self.values[-1]
            if not 0 < upsilon < 1:
                raise DofBoundsError(
                    f"Scale factor must lie in (0, 1): {upsilon}"
                )

    @property
    def k(self) -> int:
        return len(self.values)

    @property
    def span(self) -> NDArray[np.float64]:
        return self.upper - self.lower

    def with_values(self, values: ArrayLike) -> "DofVector":
        """A DofVector with the same layout and bounds."""
        return DofVector(
            layout=self.layout,
            q=self.q,
            values=np.asarray(values, dtype=float),
            lower=self.lower,
            upper=self.upper,
        )

    def clip(self, values: ArrayLike) -> "DofVector":
        """Like with_values, after clamping the entries to the bounds."""
        return self.with_values(
            np.clip(np.asarray(values, dtype=float), self.lower, self.upper)
        )

    def regions(self) -> list[Region]:
        """
        Filled contours in painting order. Later regions overwrite earlier
        ones when they share a cell.
        """
        v = self.values
        q = self.q
        match self.layout:
            case Layout.SINGLE:
                contour = SplineContour(
                    barycenter=(v[0], v[1]), radii=tuple(v[4 : 4 + q])
                )
                return [Region(contour, complex(v[2], v[3]))]
            case Layout.DOUBLY_CONNECTED:
                outer = SplineContour(
                    barycenter=(v[0], v[1]), radii=tuple(v[6 : 6 + q])
                )
                inner = outer.scaled(v[6 + q])
                return [
                    Region(outer, complex(v[2], v[3])),
                    Region(inner, complex(v[4], v[5])),
                ]
            case Layout.MULTI_OBJECT:
                first = SplineContour(
                    barycenter=(v[0], v[1]), radii=tuple(v[8 : 8 + q])
                )
                second = SplineContour(
                    barycenter=(v[2], v[3]),
                    radii=tuple(v[8 + q : 8 + 2 * q]),
                )
                # The first object wins where the two overlap.
                return [
                    Region(second, complex(v[6], v[7])),
                    Region(first, complex(v[4], v[5])),
                ]
        raise ValueError(f"Unknown layout: {self.layout}")


@dataclass(eq=False)
class ContrastMap:
    """Pixel contrasts on a grid, in the grid's row-major cell order."""

    grid: Grid
    values: NDArray[np.complex128]

    def __post_init__(self) -> None:
        self.values = np.asarray(self.values, dtype=complex)
        if self.values.shape != (self.grid.n,):
            raise ValueError(
                f"Contrast map needs {self.grid.n} values, "
                f"got shape {self.values.shape}"
            )
        if not np.all(np.isfinite(self.values)):
            raise ValueError("Contrast values must be finite")

    @classmethod
    def empty(cls, grid: Grid) -> "ContrastMap":
        return cls(grid=grid, values=np.zeros(grid.n, dtype=complex))

    def as_image(self) -> NDArray[np.complex128]:
        """(n_side, n_side) view indexed [row over y, col over x]."""
        return self.values.reshape(self.grid.n_side, self.grid.n_side)
