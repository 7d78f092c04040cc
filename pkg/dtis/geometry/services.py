import logging
from collections.abc import Sequence

import numpy as np
from numpy.typing import NDArray

from dtis.forward.types import Grid

from .splines import (
    DEFAULT_SAMPLES_PER_SEGMENT,
    contour_polyline,
    points_in_polygon,
)
from .types import ContrastMap, DofVector, Layout, dof_count

logger = logging.getLogger(__name__)

DEFAULT_TAU_MAX = 6.0
DEFAULT_IMAG_TAU_MAX = 1.0
UPSILON_RANGE = (0.1, 0.9)


def default_bounds(
    layout: Layout,
    q: int,
    side: float,
    tau_max: float = DEFAULT_TAU_MAX,
) -> tuple[NDArray[np.float64], NDArray[np.float64]]:
    """
    Builds the search box of a layout inside a domain of the given side.

    Barycenters stay within +-0.4 L_D so the objects remain inside D,
    radii range over [0.025 L_D, 0.4 L_D], real contrasts over
    [0, tau_max] and imaginary contrasts over [0, 1].

    Returns:
        tuple[NDArray, NDArray]: the lower and upper bound vectors.
    """
    position = (-0.4 * side, 0.4 * side)
    radius = (0.025 * side, 0.4 * side)
    re_tau = (0.0, tau_max)
    im_tau = (0.0, DEFAULT_IMAG_TAU_MAX)

    match layout:
        case Layout.SINGLE:
            pairs = [position, position, re_tau, im_tau] + [radius] * q
        case Layout.DOUBLY_CONNECTED:
            pairs = (
                [position, position, re_tau, im_tau, re_tau, im_tau]
                + [radius] * q
                + [UPSILON_RANGE]
            )
        case Layout.MULTI_OBJECT:
            pairs = [position] * 4 + [re_tau, im_tau] * 2 + [radius] * 2 * q
        case _:
            raise ValueError(f"Unknown layout: {layout}")

    assert len(pairs) == dof_count(layout, q)
    lower, upper = (np.array(bound, dtype=float) for bound in zip(*pairs))
    return lower, upper


def _make(
    layout: Layout,
    q: int,
    values: list[float],
    side: float,
    tau_max: float,
) -> DofVector:
    lower, upper = default_bounds(layout, q, side, tau_max)
    return DofVector(
        layout=layout,
        q=q,
        values=np.asarray(values, dtype=float),
        lower=lower,
        upper=upper,
    )


def encode_single(
    barycenter: tuple[float, float],
    radii: Sequence[float],
    tau: complex,
    side: float,
    tau_max: float = DEFAULT_TAU_MAX,
) -> DofVector:
    values = [*barycenter, tau.real, tau.imag, *radii]
    return _make(Layout.SINGLE, len(radii), values, side, tau_max)


def encode_doubly_connected(
    barycenter: tuple[float, float],
    outer_radii: Sequence[float],
    upsilon: float,
    tau_out: complex,
    tau_int: complex,
    side: float,
    tau_max: float = DEFAULT_TAU_MAX,
) -> DofVector:
    values = [
        *barycenter,
        tau_out.real,
        tau_out.imag,
        tau_int.real,
        tau_int.imag,
        *outer_radii,
        upsilon,
    ]
    return _make(
        Layout.DOUBLY_CONNECTED, len(outer_radii), values, side, tau_max
    )


def encode_multi_object(
    barycenters: tuple[tuple[float, float], tuple[float, float]],
    radii: tuple[Sequence[float], Sequence[float]],
    taus: tuple[complex, complex],
    side: float,
    tau_max: float = DEFAULT_TAU_MAX,
) -> DofVector:
    if len(radii[0]) != len(radii[1]):
        raise ValueError("Both objects need the same number of radii")
    values = [
        *barycenters[0],
        *barycenters[1],
        taus[0].real,
        taus[0].imag,
        taus[1].real,
        taus[1].imag,
        *radii[0],
        *radii[1],
    ]
    return _make(Layout.MULTI_OBJECT, len(radii[0]), values, side, tau_max)


def decode_to_contrast(
    dof: DofVector,
    grid: Grid,
    samples_per_segment: int = DEFAULT_SAMPLES_PER_SEGMENT,
) -> ContrastMap:
    """
    Rasterizes the contours of a DofVector on the cell centers of a grid.

    A cell takes the contrast of the last region whose contour encloses its
    center, so holes of doubly connected scatterers overwrite the outer
    layer and the first of two objects wins where they overlap. Parts of a
    contour outside the domain simply cover no cells.

    Args:
        dof (DofVector): the unknowns to decode.
        grid (Grid): the target discretization.
        samples_per_segment (int): polyline density of each Bezier segment.

    Returns:
        ContrastMap: the pixel contrasts, exactly 0 in the background.
    """
    values = np.zeros(grid.n, dtype=complex)
    for region in dof.regions():
        polygon = contour_polyline(region.contour, samples_per_segment)
        inside = points_in_polygon(polygon, grid.centers)
        values[inside] = region.tau
    return ContrastMap(grid=grid, values=values)
