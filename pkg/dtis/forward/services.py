import logging
from functools import cached_property

import numpy as np
from numpy.typing import NDArray

from dtis.geometry.services import decode_to_contrast
from dtis.geometry.splines import DEFAULT_SAMPLES_PER_SEGMENT
from dtis.geometry.types import ContrastMap, DofVector

from .exceptions import InverseCrimeError
from .green import green_external, green_internal
from .solver import (
    equivalent_currents,
    factorize,
    incident_fields,
    scattered_field,
)
from .types import Grid, MeasurementSetup, ScatteringDataset

logger = logging.getLogger(__name__)


class ForwardModel:
    """
    Forward pipeline on a fixed grid and measurement setup.

    The Green's matrices and incident fields depend only on the grid and
    the setup, so they are built once and reused for every contrast.
    """

    def __init__(
        self,
        grid: Grid,
        setup: MeasurementSetup,
        samples_per_segment: int = DEFAULT_SAMPLES_PER_SEGMENT,
    ):
        self.grid = grid
        self.setup = setup
        self.samples_per_segment = samples_per_segment

    @cached_property
    def green_ext(self) -> NDArray[np.complex128]:
        return green_external(self.grid, self.setup)

    @cached_property
    def green_int(self) -> NDArray[np.complex128]:
        return green_internal(self.grid)

    @cached_property
    def incident(self) -> NDArray[np.complex128]:
        return incident_fields(self.grid.centers, self.setup)

    def contrast(self, scene: DofVector | ContrastMap) -> ContrastMap:
        if isinstance(scene, ContrastMap):
            if scene.grid != self.grid:
                raise ValueError(
                    f"Contrast map grid {scene.grid} does not match "
                    f"{self.grid}"
                )
            return scene
        return decode_to_contrast(scene, self.grid, self.samples_per_segment)

    def total_fields(self, contrast: ContrastMap) -> NDArray[np.complex128]:
        """(N, V) total fields, one LU factorization for all views."""
        if not np.any(contrast.values):
            return self.incident.copy()
        system = factorize(self.grid, contrast, self.green_int)
        return system.solve(self.incident)

    def scattered(
        self, scene: DofVector | ContrastMap
    ) -> NDArray[np.complex128]:
        """(M, V) scattered field at the probes."""
        contrast = self.contrast(scene)
        currents = equivalent_currents(contrast, self.total_fields(contrast))
        return scattered_field(self.green_ext, currents)


def check_inverse_crime(
    data_grid: Grid, inversion_grid: Grid, allow: bool = False
) -> None:
    """
    Raises:
        InverseCrimeError: if data and inversion share a discretization
        and allow is False.
    """
    if data_grid.n_side == inversion_grid.n_side:
        if not allow:
            raise InverseCrimeError(
                f"Data and inversion both use {data_grid.n_side} cells per "
                f"side; pick another synthesis grid or allow it explicitly"
            )
        logger.warning(
            f"Inverse crime allowed: both grids use {data_grid.n_side} "
            f"cells per side"
        )


def noise_variance(scattered: NDArray[np.complex128], snr_db: float) -> float:
    """Per-sample variance giving the requested SNR in expectation."""
    power = np.sum(np.abs(scattered) ** 2) / scattered.size
    return float(power * 10 ** (-snr_db / 10))


def add_noise(
    scattered: NDArray[np.complex128],
    snr_db: float,
    rng: np.random.Generator,
) -> NDArray[np.complex128]:
    """
    Adds complex circular Gaussian noise to an (M, V) array.

    Draws are made view-major, then probe, then real before imaginary.
    """
    probes, views = scattered.shape
    sigma = np.sqrt(noise_variance(scattered, snr_db) / 2)
    draws = rng.standard_normal((views, probes, 2))
    noise = sigma * (draws[..., 0] + 1j * draws[..., 1])
    return scattered + noise.T


def synthesize_dataset(
    scene: DofVector | ContrastMap,
    fine_grid: Grid,
    setup: MeasurementSetup,
    snr_db: float | None = None,
    rng_seed: int | None = None,
    inversion_grid: Grid | None = None,
    allow_inverse_crime: bool = False,
    samples_per_segment: int = DEFAULT_SAMPLES_PER_SEGMENT,
) -> ScatteringDataset:
    """
    Generates scattered-field data for a scene.

    Args:
        scene (DofVector | ContrastMap): the scatterer, decoded on
        fine_grid when given as DoFs.
        fine_grid (Grid): synthesis discretization.
        setup (MeasurementSetup): views and probes.
        snr_db (float | None): noise level; None for noiseless data.
        rng_seed (int | None): seed of the noise generator.
        inversion_grid (Grid | None): grid the data will be inverted on,
        checked against fine_grid.
        allow_inverse_crime (bool): accept equal discretizations.
        samples_per_segment (int): polyline density for decoding.

    Raises:
        InverseCrimeError: if fine_grid matches inversion_grid.
        GeometryError: if probes lie inside the domain.
        SolverError: if the state equation is singular.

    Returns:
        ScatteringDataset: the (M, V) samples.
    """
    if inversion_grid is not None:
        check_inverse_crime(fine_grid, inversion_grid, allow_inverse_crime)

    model = ForwardModel(fine_grid, setup, samples_per_segment)
    scattered = model.scattered(scene)
    if snr_db is not None:
        rng = np.random.default_rng(rng_seed)
        scattered = add_noise(scattered, snr_db, rng)
        logger.info(f"Added noise at {snr_db} dB SNR (seed {rng_seed})")
    return ScatteringDataset(
        setup=setup,
        grid=fine_grid,
        scattered=scattered,
        snr_db=snr_db,
        seed=rng_seed,
    )
