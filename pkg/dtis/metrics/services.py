import logging

import numpy as np
from numpy.typing import ArrayLike, NDArray

from dtis.forward.exceptions import SolverError
from dtis.forward.services import ForwardModel, check_inverse_crime
from dtis.forward.types import Grid, ScatteringDataset
from dtis.geometry.splines import DEFAULT_SAMPLES_PER_SEGMENT
from dtis.geometry.types import ContrastMap, DofVector, Layout
from dtis.surrogate.types import Surrogate

from .exceptions import (
    DegenerateDatasetError,
    OracleError,
    UndefinedMetricError,
)
from .types import Landscape, LandscapeRequest, Oracle

logger = logging.getLogger(__name__)

# True costs below this are left out of the prediction error.
MIN_TRUE_COST = 1e-12


def cost_phi(
    measured: ScatteringDataset | NDArray[np.complex128],
    predicted: NDArray[np.complex128],
) -> float:
    """
    Normalized data mismatch sum |S - S~|^2 / sum |S|^2 over views and
    probes.

    Raises:
        ValueError: if the shapes differ.
        DegenerateDatasetError: if the measured field is identically zero.
    """
    samples = getattr(measured, "scattered", measured)
    if samples.shape != predicted.shape:
        raise ValueError(
            f"Measured shape {samples.shape} does not match predicted "
            f"shape {predicted.shape}"
        )
    power = np.sum(np.abs(samples) ** 2)
    if power == 0:
        raise DegenerateDatasetError("Measured scattered field is zero")
    return float(np.sum(np.abs(samples - predicted) ** 2) / power)


def error_index(actual: ContrastMap, retrieved: ContrastMap) -> float:
    """
    Pixel-averaged reconstruction error mean |tau - tau~| / |tau + 1|.

    Raises:
        ValueError: if the maps live on different grids.
    """
    if actual.grid != retrieved.grid:
        raise ValueError(
            f"Grids differ: {actual.grid} and {retrieved.grid}; resample "
            f"the reference on the inversion grid first"
        )
    terms = np.abs(actual.values - retrieved.values) / np.abs(
        actual.values + 1
    )
    return float(np.mean(terms))


def prediction_error_eta(
    positions: ArrayLike, model: Surrogate, oracle: Oracle
) -> float:
    """
    Mean relative error of the surrogate mean against the true cost.

    Args:
        positions (ArrayLike): (P, K) final swarm positions.
        model (Surrogate): the trained surrogate.
        oracle (Oracle): full-wave cost, called once per particle.

    Raises:
        UndefinedMetricError: if every particle has a vanishing true cost.

    Returns:
        float: (1/P') sum |phi - phi^| / phi over the P' kept particles.
    """
    points = np.atleast_2d(np.asarray(positions, dtype=float))
    if not len(points):
        raise UndefinedMetricError("No particles to assess")
    predicted, _ = model.predict_many(points)
    errors = []
    for p, (point, estimate) in enumerate(zip(points, predicted), start=1):
        true = oracle(point)
        if true < MIN_TRUE_COST:
            logger.warning(
                f"Skipping particle {p} in the prediction error: true cost "
                f"{true:.3e} vanishes"
            )
            continue
        errors.append(abs(true - estimate) / true)
    if not errors:
        raise UndefinedMetricError(
            "Every particle has a vanishing true cost"
        )
    return float(np.mean(errors))


def time_saving(
    particles: int, go_iterations: int, initial_samples: int, iterations: int
) -> float:
    """Fraction of full-wave solves saved against the bare swarm."""
    budget = particles * go_iterations
    if budget <= 0:
        raise ValueError(f"Bare-swarm budget must be positive: {budget}")
    return (budget - (initial_samples + iterations)) / budget


class CostOracle:
    """
    Full-wave cost of DoF vectors against a measured dataset.

    Every call decodes the DoFs on the inversion grid, solves the forward
    problem and compares with the measurements. `calls` counts attempts,
    failed ones included.
    """

    def __init__(
        self,
        dataset: ScatteringDataset,
        grid: Grid,
        layout: Layout,
        q: int,
        lower: ArrayLike,
        upper: ArrayLike,
        samples_per_segment: int = DEFAULT_SAMPLES_PER_SEGMENT,
        allow_inverse_crime: bool = False,
    ):
        check_inverse_crime(dataset.grid, grid, allow_inverse_crime)
        self.dataset = dataset
        self.layout = layout
        self.q = q
        self.lower = np.asarray(lower, dtype=float)
        self.upper = np.asarray(upper, dtype=float)
        self.model = ForwardModel(grid, dataset.setup, samples_per_segment)
        self.calls = 0

    @property
    def grid(self) -> Grid:
        return self.model.grid

    def dof(self, values: ArrayLike) -> DofVector:
        return DofVector(
            layout=self.layout,
            q=self.q,
            values=np.asarray(values, dtype=float),
            lower=self.lower,
            upper=self.upper,
        )

    def __call__(self, values: ArrayLike) -> float:
        """
        Raises:
            OracleError: if the state equation cannot be solved.
        """
        self.calls += 1
        try:
            predicted = self.model.scattered(self.dof(values))
        except SolverError as e:
            raise OracleError(f"Forward solve {self.calls} failed: {e}") from e
        return cost_phi(self.dataset, predicted)


def landscape(request: LandscapeRequest, oracle: Oracle) -> Landscape:
    """
    Evaluates the full-wave cost on the (a, b) lattice of a slice.

    Lattice points whose DoFs leave the bounds are clamped before
    decoding. Cells whose forward solve fails are left as NaN.
    """
    lower, upper = request.first.lower, request.first.upper
    a_values, b_values = request.a_values, request.b_values
    result = Landscape(
        a=a_values,
        b=b_values,
        phi=np.full((len(a_values), len(b_values)), np.nan),
    )
    for i, a in enumerate(a_values):
        for j, b in enumerate(b_values):
            point = request.point(a, b)
            clamped = np.clip(point, lower, upper)
            if not np.array_equal(point, clamped):
                result.clamped += 1
            try:
                result.phi[i, j] = oracle(clamped)
            except OracleError as e:
                logger.warning(f"Landscape cell ({a}, {b}) failed: {e}")
                result.failures.append((float(a), float(b)))
        logger.debug(f"Landscape row a={a} done")
    logger.info(
        f"Landscape of {result.phi.size} cells: {result.clamped} clamped, "
        f"{len(result.failures)} failed"
    )
    return result
