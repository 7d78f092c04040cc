import logging

import numpy as np
from numpy.typing import NDArray

from dtis.metrics.exceptions import OracleError
from dtis.metrics.types import Oracle
from dtis.surrogate.sampling import lhs_sample
from dtis.surrogate.types import Surrogate, SurrogateFactory, TrainingSet

from .exceptions import InitializationError
from .types import MAX_RESAMPLES, InversionConfig, SwarmState

logger = logging.getLogger(__name__)


def lower_bounds(
    model: Surrogate, points: NDArray[np.float64]
) -> NDArray[np.float64]:
    """mean - 2 std of the surrogate at each row of points."""
    mean, variance = model.predict_many(points)
    return mean - 2 * np.sqrt(variance)


def _random_swarm(
    config: InversionConfig, rng: np.random.Generator
) -> tuple[NDArray[np.float64], NDArray[np.float64]]:
    shape = (config.particles, config.k)
    positions = rng.uniform(config.lower, config.upper, size=shape)
    limit = config.max_velocity
    velocities = rng.uniform(-limit, limit, size=shape)
    return positions, velocities


def _evaluate_initial_sample(
    xi: NDArray[np.float64],
    oracle: Oracle,
    config: InversionConfig,
    rng: np.random.Generator,
) -> tuple[NDArray[np.float64], float, int]:
    """Evaluates one sample; also returns how many replacements it took."""
    for attempt in range(MAX_RESAMPLES + 1):
        try:
            return xi, oracle(xi), attempt
        except OracleError as e:
            logger.warning(
                f"Initial sample failed ({e}); drawing replacement "
                f"{attempt + 1} of {MAX_RESAMPLES}"
            )
            xi = rng.uniform(config.lower, config.upper)
    raise InitializationError(
        f"Initial sample still failing after {MAX_RESAMPLES} replacements"
    )


def init(
    config: InversionConfig,
    oracle: Oracle,
    factory: SurrogateFactory,
    rng: np.random.Generator,
) -> SwarmState:
    """
    Builds the initial training set and swarm of the surrogate-driven
    search.

    The S0 initial samples come from a Latin hypercube over the bounds and
    are all evaluated with the oracle. A sample whose evaluation fails is
    replaced by a uniform draw, up to MAX_RESAMPLES times.

    Args:
        config (InversionConfig): swarm settings.
        oracle (Oracle): full-wave cost.
        factory (SurrogateFactory): builds the surrogate.
        rng (Generator): source of every random draw of the search.

    Raises:
        InitializationError: if a sample cannot be evaluated.

    Returns:
        SwarmState: iteration 0, personal bests at the initial positions
        and the global best at the best initial sample.
    """
    samples = lhs_sample(
        config.k, config.initial_samples, config.lower, config.upper, rng
    )
    inputs, outputs, replaced = [], [], 0
    for xi in samples:
        xi, phi, attempts = _evaluate_initial_sample(xi, oracle, config, rng)
        inputs.append(xi)
        outputs.append(phi)
        replaced += attempts
    training = TrainingSet(
        inputs=np.array(inputs),
        outputs=np.array(outputs),
        lower=config.lower,
        upper=config.upper,
    )
    logger.info(
        f"Initial training set of {training.size} samples, best cost "
        f"{training.outputs.min():.4e}"
    )
    if replaced:
        logger.info(
            f"{replaced} failed initial samples were replaced; they count "
            f"as forward solves, so the run may exceed S0 + I solves"
        )
    model = factory.fit(training, None)
    positions, velocities = _random_swarm(config, rng)
    best = training.best_index
    return SwarmState(
        positions=positions,
        velocities=velocities,
        personal_best=positions.copy(),
        personal_best_score=lower_bounds(model, positions),
        global_best=training.inputs[best].copy(),
        global_best_phi=float(training.outputs[best]),
        training=training,
        model=model,
    )


def init_bare(
    config: InversionConfig, rng: np.random.Generator
) -> SwarmState:
    """Initial swarm of the bare search, before any evaluation."""
    positions, velocities = _random_swarm(config, rng)
    return SwarmState(
        positions=positions,
        velocities=velocities,
        personal_best=positions.copy(),
        personal_best_score=np.full(config.particles, np.inf),
        global_best=positions[0].copy(),
        global_best_phi=np.inf,
    )


def rank_best_promising(state: SwarmState) -> int:
    """
    Index (0-based) of the particle with the lowest raw lower bound, not
    clamped at 0; the lowest index wins ties.
    """
    bounds = lower_bounds(state.model, state.positions)
    return int(np.argmin(bounds))


def reinforce_if_promising(
    state: SwarmState,
    oracle: Oracle,
    factory: SurrogateFactory,
    index: int | None = None,
) -> SwarmState:
    """
    Evaluates the best promising particle when the surrogate expects it to
    beat every sample, then retrains on the enlarged training set.

    Near-duplicates of existing samples and failed evaluations leave the
    training set and the model unchanged.
    """
    if index is None:
        index = rank_best_promising(state)
    xi = state.positions[index]
    bound = max(float(lower_bounds(state.model, xi[None, :])[0]), 0.0)
    incumbent = float(state.training.outputs.min())
    if bound >= incumbent:
        logger.debug(
            f"Iteration {state.iteration}: particle {index + 1} bound "
            f"{bound:.4e} does not beat {incumbent:.4e}"
        )
        return state
    if state.training.is_duplicate(xi):
        logger.warning(
            f"Iteration {state.iteration}: particle {index + 1} duplicates "
            f"a training sample; not reinforcing"
        )
        return state
    try:
        phi = oracle(xi)
    except OracleError as e:
        logger.warning(
            f"Iteration {state.iteration}: reinforcement skipped: {e}"
        )
        return state

    state.training = state.training.add(xi, phi)
    state.model = factory.fit(state.training, state.model)
    logger.info(
        f"Iteration {state.iteration}: reinforced with particle "
        f"{index + 1}, cost {phi:.4e} (S={state.training.size})"
    )
    return state


def update_personal_bests(state: SwarmState) -> SwarmState:
    """
    Moves each personal best to the current position when the current
    model gives the position a strictly lower bound than the best.
    """
    current = lower_bounds(state.model, state.positions)
    stored = lower_bounds(state.model, state.personal_best)
    better = current < stored
    state.personal_best[better] = state.positions[better]
    state.personal_best_score = np.where(better, current, stored)
    return state


def update_global_best(state: SwarmState) -> SwarmState:
    """Anchors the global best to the lowest-cost training sample."""
    best = state.training.best_index
    state.global_best = state.training.inputs[best].copy()
    state.global_best_phi = float(state.training.outputs[best])
    return state


def evaluate_swarm(
    state: SwarmState, oracle: Oracle
) -> NDArray[np.float64]:
    """True cost of every particle; failed evaluations score +inf."""
    costs = np.empty(state.particles)
    for p, xi in enumerate(state.positions):
        try:
            costs[p] = oracle(xi)
        except OracleError as e:
            logger.warning(
                f"Iteration {state.iteration}: particle {p + 1} failed: {e}"
            )
            costs[p] = np.inf
    return costs


def update_bests_with_costs(
    state: SwarmState, costs: NDArray[np.float64]
) -> SwarmState:
    """Personal and global best updates of the bare search."""
    better = costs < state.personal_best_score
    state.personal_best[better] = state.positions[better]
    state.personal_best_score = np.where(
        better, costs, state.personal_best_score
    )
    best = int(np.argmin(state.personal_best_score))
    if state.personal_best_score[best] < state.global_best_phi:
        state.global_best = state.personal_best[best].copy()
        state.global_best_phi = float(state.personal_best_score[best])
    return state


def update_velocities_positions(
    state: SwarmState,
    config: InversionConfig,
    rng: np.random.Generator,
) -> SwarmState:
    """
    Moves the swarm one step.

    Velocities follow w v + l1 s1 (zeta - xi) + l2 s2 (psi - xi) with
    s1 and s2 uniform in [0, 1] per particle and dimension, drawn as two
    (P, K) blocks. Velocities are clamped to +-velocity_clamp of each
    range; a position leaving the bounds is clamped and that velocity
    component zeroed.
    """
    shape = state.positions.shape
    cognitive_draw = rng.random(shape)
    social_draw = rng.random(shape)
    x = state.positions
    velocities = (
        config.inertia * state.velocities
        + config.cognitive * cognitive_draw * (state.personal_best - x)
        + config.social * social_draw * (state.global_best - x)
    )
    limit = config.max_velocity
    velocities = np.clip(velocities, -limit, limit)

    moved = x + velocities
    outside = (moved < config.lower) | (moved > config.upper)
    state.positions = np.clip(moved, config.lower, config.upper)
    velocities[outside] = 0.0
    state.velocities = velocities
    return state
