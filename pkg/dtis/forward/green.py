import numpy as np
from numpy.typing import NDArray
from scipy.spatial.distance import cdist

from dtis.specfun.bessel import bessel_j1, hankel1_order0, hankel1_order1

from .exceptions import GeometryError
from .types import Grid, MeasurementSetup


def _cell_factor(grid: Grid) -> complex:
    """j*pi*k0*a/2, common to every equivalent-circle cell integral."""
    return 1j * np.pi * grid.k0 * grid.equivalent_radius / 2


def green_external(
    grid: Grid, setup: MeasurementSetup
) -> NDArray[np.complex128]:
    """
    Builds the (M, N) matrix mapping cell currents to probe fields.

    Each cell is replaced by the circle of equal area, whose integral of
    the free-space kernel has the closed form
    (j*pi*k0*a/2) * J1(k0*a) * H0(k0*rho).

    Raises:
        GeometryError: if a probe lies inside the investigation domain.
    """
    probes = setup.probe_positions
    inside = np.all(np.abs(probes) <= grid.side / 2, axis=1)
    if np.any(inside):
        raise GeometryError(
            f"Probes {np.flatnonzero(inside).tolist()} lie inside the "
            f"investigation domain of side {grid.side}"
        )
    distance = cdist(probes, grid.centers)
    factor = _cell_factor(grid) * bessel_j1(grid.k0 * grid.equivalent_radius)
    return factor * hankel1_order0(grid.k0 * distance)


def green_internal(grid: Grid) -> NDArray[np.complex128]:
    """
    Builds the symmetric (N, N) matrix of cell-to-cell interactions.

    Off-diagonal entries use the same closed form as green_external. The
    self-cell integral is analytic: (j*pi*k0*a/2) * H1(k0*a) - 1.
    """
    k0a = grid.k0 * grid.equivalent_radius
    distance = cdist(grid.centers, grid.centers)
    np.fill_diagonal(distance, grid.equivalent_radius)
    matrix = (
        _cell_factor(grid)
        * bessel_j1(k0a)
        * hankel1_order0(grid.k0 * distance)
    )
    np.fill_diagonal(matrix, _cell_factor(grid) * hankel1_order1(k0a) - 1)
    return matrix
