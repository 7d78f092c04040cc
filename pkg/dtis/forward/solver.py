import logging
from dataclasses import dataclass

import numpy as np
from numpy.typing import ArrayLike, NDArray
from scipy import linalg

from dtis.geometry.types import ContrastMap

from .exceptions import SolverError
from .green import green_internal
from .types import WAVENUMBER, Grid, MeasurementSetup

logger = logging.getLogger(__name__)

# Systems with a reciprocal condition number below this are resonant.
MIN_RCOND = 1e-13


@dataclass(frozen=True, eq=False)
class FactorizedSystem:
    """LU factors of I - G_D diag(tau), shared by every view."""

    lu: NDArray[np.complex128]
    pivots: NDArray[np.int32]
    condition: float

    def solve(self, rhs: ArrayLike) -> NDArray[np.complex128]:
        return linalg.lu_solve(
            (self.lu, self.pivots), np.asarray(rhs, dtype=complex)
        )


def incident_field(
    points: ArrayLike, v: int, setup: MeasurementSetup
) -> NDArray[np.complex128]:
    """
    Unit plane wave of view v (1-based) sampled at the given points.

    I(x, y) = exp(+j k0 (x cos(phi_v) + y sin(phi_v))) under the
    exp(-j 2 pi f t) time convention.
    """
    if not 1 <= v <= setup.views:
        raise ValueError(f"View index must be in [1, {setup.views}]: {v}")
    positions = np.atleast_2d(np.asarray(points, dtype=float))
    angle = setup.incidence_angles[v - 1]
    direction = np.array([np.cos(angle), np.sin(angle)])
    return np.exp(1j * WAVENUMBER * positions @ direction)


def incident_fields(
    points: ArrayLike, setup: MeasurementSetup
) -> NDArray[np.complex128]:
    """All V incident fields at once, as a (len(points), V) matrix."""
    positions = np.atleast_2d(np.asarray(points, dtype=float))
    directions = np.vstack(
        [np.cos(setup.incidence_angles), np.sin(setup.incidence_angles)]
    )
    return np.exp(1j * WAVENUMBER * positions @ directions)


def factorize(
    grid: Grid,
    contrast: ContrastMap,
    green_int: NDArray[np.complex128] | None = None,
) -> FactorizedSystem:
    """
    LU-factorizes the state equation of a contrast.

    Args:
        grid (Grid): the discretization of the contrast.
        contrast (ContrastMap): pixel contrasts on grid.
        green_int (NDArray | None): precomputed green_internal(grid).

    Raises:
        SolverError: if the system is singular or numerically resonant.

    Returns:
        FactorizedSystem: the reusable factorization.
    """
    if contrast.grid.n != grid.n:
        raise ValueError(
            f"Contrast has {contrast.grid.n} cells, grid has {grid.n}"
        )
    if green_int is None:
        green_int = green_internal(grid)
    system = np.eye(grid.n, dtype=complex) - green_int * contrast.values
    norm = np.linalg.norm(system, 1)

    lu, pivots = linalg.lu_factor(system, check_finite=False)
    if np.any(np.diagonal(lu) == 0):
        raise SolverError("State equation is singular", np.inf)
    (gecon,) = linalg.get_lapack_funcs(("gecon",), (lu,))
    rcond, _ = gecon(lu, norm, norm="1")
    condition = np.inf if rcond == 0 else 1 / rcond
    if rcond < MIN_RCOND:
        raise SolverError("State equation is ill-conditioned", condition)
    logger.debug(f"Factorized state equation, condition {condition:.3e}")
    return FactorizedSystem(lu=lu, pivots=pivots, condition=condition)


def total_field_solve(
    grid: Grid,
    contrast: ContrastMap,
    incident: ArrayLike,
    green_int: NDArray[np.complex128] | None = None,
) -> NDArray[np.complex128]:
    """
    Solves [I - G_D diag(tau)] T = I for one or many incident fields.

    incident may be a single (N,) vector or an (N, V) matrix holding one
    view per column; the factorization is computed once in either case.
    """
    return factorize(grid, contrast, green_int).solve(incident)


def equivalent_currents(
    contrast: ContrastMap, total_field: ArrayLike
) -> NDArray[np.complex128]:
    """J = tau * T, cellwise; broadcasts over view columns."""
    field = np.asarray(total_field, dtype=complex)
    tau = contrast.values if field.ndim == 1 else contrast.values[:, None]
    return tau * field


def scattered_field(
    green_ext: NDArray[np.complex128], currents: ArrayLike
) -> NDArray[np.complex128]:
    """S = G_O J at the probes; broadcasts over view columns."""
    currents = np.asarray(currents, dtype=complex)
    if currents.shape[0] != green_ext.shape[1]:
        raise ValueError(
            f"{currents.shape[0]} currents for a Green's matrix with "
            f"{green_ext.shape[1]} cells"
        )
    return green_ext @ currents
