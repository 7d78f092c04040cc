import logging
import time

import numpy as np

from dtis.forward.types import Grid, ScatteringDataset
from dtis.geometry.services import decode_to_contrast
from dtis.geometry.splines import DEFAULT_SAMPLES_PER_SEGMENT
from dtis.geometry.types import DofVector
from dtis.metrics.services import CostOracle
from dtis.metrics.types import Oracle
from dtis.surrogate.kriging import KrigingFactory
from dtis.surrogate.types import SurrogateFactory

from .swarm import (
    evaluate_swarm,
    init,
    init_bare,
    rank_best_promising,
    reinforce_if_promising,
    update_bests_with_costs,
    update_global_best,
    update_personal_bests,
    update_velocities_positions,
)
from .types import InversionConfig, InversionResult, Mode, SwarmState, TraceRow

logger = logging.getLogger(__name__)


def _record(
    state: SwarmState, size: int, oracle: Oracle, started: float
) -> None:
    row = TraceRow(
        iteration=state.iteration,
        best_true_phi=state.global_best_phi,
        training_size=size,
        fw_calls=oracle.calls,
        elapsed_s=time.perf_counter() - started,
    )
    state.trace.append(row)
    logger.debug(
        f"Iteration {row.iteration}: best {row.best_true_phi:.4e}, "
        f"{row.fw_calls} forward solves"
    )


def _surrogate_search(
    config: InversionConfig,
    oracle: Oracle,
    factory: SurrogateFactory,
    rng: np.random.Generator,
    started: float,
) -> SwarmState:
    state = init(config, oracle, factory, rng)
    _record(state, state.training.size, oracle, started)
    for i in range(1, config.iterations + 1):
        state.iteration = i
        index = rank_best_promising(state)
        reinforce_if_promising(state, oracle, factory, index)
        update_personal_bests(state)
        update_global_best(state)
        _record(state, state.training.size, oracle, started)
        if i < config.iterations:
            update_velocities_positions(state, config, rng)
    return state


def _bare_search(
    config: InversionConfig,
    oracle: Oracle,
    rng: np.random.Generator,
    started: float,
) -> SwarmState:
    state = init_bare(config, rng)
    for i in range(1, config.iterations + 1):
        state.iteration = i
        costs = evaluate_swarm(state, oracle)
        update_bests_with_costs(state, costs)
        _record(state, config.particles * i, oracle, started)
        if i < config.iterations:
            update_velocities_positions(state, config, rng)
    return state


def search(
    config: InversionConfig,
    oracle: Oracle,
    grid: Grid,
    factory: SurrogateFactory | None = None,
    samples_per_segment: int = DEFAULT_SAMPLES_PER_SEGMENT,
) -> InversionResult:
    """
    Runs the swarm against any cost oracle.

    In sbd mode the swarm is steered by a surrogate and only promising
    particles are evaluated with the oracle. In go mode every particle is
    evaluated at every iteration.

    Args:
        config (InversionConfig): swarm settings and seed.
        oracle (Oracle): full-wave cost of a DoF vector.
        grid (Grid): grid the solution is decoded on.
        factory (SurrogateFactory | None): surrogate builder; a Kriging
        factory seeded from the config when None.
        samples_per_segment (int): polyline density for decoding.

    Returns:
        InversionResult: the global best, its contrast map and the trace.
    """
    started = time.perf_counter()
    rng = np.random.default_rng(config.seed)
    logger.info(
        f"Starting {config.mode} search: P={config.particles}, "
        f"I={config.iterations}, K={config.k}, seed={config.seed}"
    )
    if config.mode == Mode.SBD:
        if factory is None:
            factory = KrigingFactory(
                seed=config.seed, fit_beta=config.fit_beta
            )
        state = _surrogate_search(config, oracle, factory, rng, started)
    else:
        state = _bare_search(config, oracle, rng, started)

    solution = DofVector(
        layout=config.layout,
        q=config.q,
        values=state.global_best,
        lower=config.lower,
        upper=config.upper,
    )
    elapsed = time.perf_counter() - started
    logger.info(
        f"Finished {config.mode} search: cost {state.global_best_phi:.4e} "
        f"after {oracle.calls} forward solves in {elapsed:.1f} s"
    )
    return InversionResult(
        mode=config.mode,
        solution=solution,
        contrast=decode_to_contrast(solution, grid, samples_per_segment),
        best_phi=state.global_best_phi,
        trace=state.trace,
        fw_calls=oracle.calls,
        elapsed_s=elapsed,
        final_positions=state.positions.copy(),
        training=state.training,
        model=state.model,
    )


def run(
    config: InversionConfig,
    dataset: ScatteringDataset,
    inversion_grid: Grid,
    samples_per_segment: int = DEFAULT_SAMPLES_PER_SEGMENT,
    allow_inverse_crime: bool = False,
) -> InversionResult:
    """
    Inverts a measured dataset on the inversion grid.

    Raises:
        InverseCrimeError: if the dataset was generated on the inversion
        grid and allow_inverse_crime is False.
        InitializationError: if the initial training set cannot be built.
    """
    oracle = CostOracle(
        dataset,
        inversion_grid,
        config.layout,
        config.q,
        config.lower,
        config.upper,
        samples_per_segment,
        allow_inverse_crime,
    )
    return search(
        config,
        oracle,
        inversion_grid,
        samples_per_segment=samples_per_segment,
    )
