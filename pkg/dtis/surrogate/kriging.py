import logging
from dataclasses import dataclass

import numpy as np
from numpy.typing import ArrayLike, NDArray
from scipy import linalg, optimize

from .exceptions import TrainingError
from .sampling import lhs_unit
from .types import GpModel, Hyperparameters, Prediction, TrainingSet

logger = logging.getLogger(__name__)

DEFAULT_BETA = 2.0
DEFAULT_LOG_GAMMA = 0.0
LOG_GAMMA_RANGE = (-3.0, 3.0)
BETA_RANGE = (1.0, 2.0)
RESTARTS = 5
MAX_EVALUATIONS = 200
NUGGETS = (1e-10, 1e-8, 1e-6)
# Smaller nuggets are passed over when R + nugget I is worse than this.
MIN_RCOND = 1e-10


def correlation(
    xi_a: ArrayLike,
    xi_b: ArrayLike,
    gamma: ArrayLike,
    beta: ArrayLike,
) -> float:
    """
    prod_k exp(-gamma_k |xi_a,k - xi_b,k|^beta_k).

    Both points are expected in bounds-normalized coordinates.
    """
    gap = np.abs(np.asarray(xi_a, float) - np.asarray(xi_b, float))
    return float(np.exp(-np.sum(np.asarray(gamma) * gap ** np.asarray(beta))))


def correlation_matrix(
    a: NDArray[np.float64],
    b: NDArray[np.float64],
    gamma: ArrayLike,
    beta: ArrayLike,
) -> NDArray[np.float64]:
    """Pairwise correlations between the rows of a and the rows of b."""
    gap = np.abs(a[:, None, :] - b[None, :, :])
    exponent = np.sum(np.asarray(gamma) * gap ** np.asarray(beta), axis=-1)
    return np.exp(-exponent)


def _factorize(
    matrix: NDArray[np.float64],
) -> tuple[tuple[NDArray[np.float64], bool], float]:
    """
    Cholesky-factorizes R + nugget * I with the smallest workable nugget.

    A nugget is workable when the factorization succeeds and its
    reciprocal condition estimate reaches MIN_RCOND; the largest nugget
    only needs the factorization to succeed.

    Raises:
        TrainingError: if even the largest nugget leaves R indefinite.
    """
    identity = np.eye(len(matrix))
    for nugget in NUGGETS:
        regularized = matrix + nugget * identity
        try:
            factor = linalg.cho_factor(regularized, lower=True)
        except linalg.LinAlgError:
            logger.debug(f"Correlation matrix indefinite at nugget {nugget}")
            continue
        rcond = _reciprocal_condition(regularized, factor[0])
        if rcond < MIN_RCOND and nugget != NUGGETS[-1]:
            logger.debug(
                f"Correlation matrix ill-conditioned at nugget {nugget} "
                f"(rcond {rcond:.2e})"
            )
            continue
        return factor, nugget
    raise TrainingError(
        "Correlation matrix is not positive definite even with a nugget of "
        f"{NUGGETS[-1]}; remove near-duplicate samples"
    )


def _reciprocal_condition(
    matrix: NDArray[np.float64], lower: NDArray[np.float64]
) -> float:
    (pocon,) = linalg.get_lapack_funcs(("pocon",), (lower,))
    norm = np.abs(matrix).sum(axis=0).max()
    rcond, _ = pocon(lower, norm, uplo="L")
    return float(rcond)


def train(
    training: TrainingSet, hyperparameters: Hyperparameters
) -> GpModel:
    """
    Trains an ordinary-Kriging model for fixed hyperparameters.

    Args:
        training (TrainingSet): the samples.
        hyperparameters (Hyperparameters): gamma and beta per dimension.

    Raises:
        TrainingError: if the correlation matrix cannot be factorized.

    Returns:
        GpModel: the trend chi, process variance nu2, the factorization
        and the concentrated log-likelihood.
    """
    if len(hyperparameters.gamma) != training.k:
        raise TrainingError(
            f"{len(hyperparameters.gamma)} hyperparameters for "
            f"{training.k} dimensions"
        )
    points = training.normalized
    phi = training.outputs
    size = training.size
    matrix = correlation_matrix(
        points, points, hyperparameters.gamma, hyperparameters.beta
    )
    factor, nugget = _factorize(matrix)

    ones = np.ones(size)
    r_inv_one = linalg.cho_solve(factor, ones)
    chi = float(r_inv_one @ phi / np.sum(r_inv_one))
    residual = phi - chi
    weights = linalg.cho_solve(factor, residual)
    nu2 = max(float(residual @ weights) / size, 0.0)

    log_det = 2 * np.sum(np.log(np.diagonal(factor[0])))
    if nu2 > 0:
        log_likelihood = -0.5 * (size * np.log(nu2) + log_det)
    else:
        log_likelihood = np.inf
    return GpModel(
        training=training,
        hyperparameters=hyperparameters,
        nugget=nugget,
        cholesky=factor,
        chi=chi,
        nu2=nu2,
        weights=weights,
        r_inv_one=r_inv_one,
        log_likelihood=float(log_likelihood),
    )


def predict_many(
    model: GpModel, points: ArrayLike
) -> tuple[NDArray[np.float64], NDArray[np.float64]]:
    """
    Kriging mean and variance at many points.

    Args:
        model (GpModel): a trained model.
        points (ArrayLike): (m, K) points in raw DoF units.

    Returns:
        tuple[NDArray, NDArray]: means and variances, variances clamped at
        zero against roundoff.
    """
    query = model.training.normalize(np.atleast_2d(points))
    hyper = model.hyperparameters
    r = correlation_matrix(
        query, model.training.normalized, hyper.gamma, hyper.beta
    )
    mean = model.chi + r @ model.weights

    r_inv_r = linalg.cho_solve(model.cholesky, r.T)
    explained = np.sum(r.T * r_inv_r, axis=0)
    trend_gap = 1 - r @ model.r_inv_one
    variance = model.nu2 * (
        1 - explained + trend_gap**2 / model.one_r_inv_one
    )
    return mean, np.maximum(variance, 0.0)


def predict(model: GpModel, xi: ArrayLike) -> Prediction:
    mean, variance = predict_many(model, np.atleast_2d(xi))
    return Prediction(mean=float(mean[0]), variance=float(variance[0]))


def _hyperparameters(theta: NDArray, k: int, fit_beta: bool):
    gamma = tuple(float(g) for g in 10 ** theta[:k])
    if fit_beta:
        beta = tuple(float(b) for b in theta[k:])
    else:
        beta = (DEFAULT_BETA,) * k
    return Hyperparameters(gamma=gamma, beta=beta)


def log_likelihood(
    training: TrainingSet, hyperparameters: Hyperparameters
) -> float:
    """Concentrated log-likelihood, -inf when training fails."""
    try:
        return train(training, hyperparameters).log_likelihood
    except TrainingError:
        return -np.inf


def default_hyperparameters(k: int) -> Hyperparameters:
    return Hyperparameters(
        gamma=(10**DEFAULT_LOG_GAMMA,) * k, beta=(DEFAULT_BETA,) * k
    )


def fit_hyperparameters(
    training: TrainingSet,
    rng: int | np.random.Generator | None = None,
    fit_beta: bool = False,
    start: Hyperparameters | None = None,
    restarts: int = RESTARTS,
    max_evaluations: int = MAX_EVALUATIONS,
) -> Hyperparameters:
    """
    Maximizes the concentrated log-likelihood over gamma (and beta).

    Nelder-Mead runs on log10(gamma) in [-3, 3] and, when fit_beta is set,
    beta in [1, 2]. Without a start point the runs begin at a Latin
    hypercube design over that box; with one, the search resumes from it
    plus one fresh random start.

    Args:
        training (TrainingSet): the samples.
        rng (int | Generator | None): seed or generator of the starts.
        fit_beta (bool): also fit beta, otherwise beta = 2.
        start (Hyperparameters | None): warm start, usually the previous
        optimum.
        restarts (int): number of cold starts.
        max_evaluations (int): likelihood evaluations per start.

    Returns:
        Hyperparameters: the best point found.
    """
    k = training.k
    if np.ptp(training.outputs) == 0:
        logger.info("Constant training outputs; using default hyperparameters")
        return default_hyperparameters(k)
    if training.size < k + 1:
        logger.warning(
            f"Only {training.size} samples for {k} dimensions; the "
            f"likelihood is poorly determined"
        )

    box = [LOG_GAMMA_RANGE] * k + ([BETA_RANGE] * k if fit_beta else [])
    low, high = (np.array(edge) for edge in zip(*box))
    generator = np.random.default_rng(rng)

    def objective(theta: NDArray) -> float:
        value = log_likelihood(training, _hyperparameters(theta, k, fit_beta))
        return -value if np.isfinite(value) else np.inf

    if start is None:
        starts = low + lhs_unit(len(box), restarts, generator) * (high - low)
    else:
        warm = np.log10(start.gamma)
        if fit_beta:
            warm = np.concatenate([warm, start.beta])
        fresh = low + lhs_unit(len(box), 1, generator) * (high - low)
        starts = np.vstack([np.clip(warm, low, high), fresh])

    best_theta, best_value = None, np.inf
    for x0 in starts:
        result = optimize.minimize(
            objective,
            x0,
            method="Nelder-Mead",
            bounds=optimize.Bounds(low, high),
            options={"maxfev": max_evaluations, "xatol": 1e-6, "fatol": 1e-10},
        )
        logger.debug(f"Likelihood search from {x0}: {-result.fun}")
        if result.fun < best_value:
            best_theta, best_value = result.x, result.fun

    if best_theta is None:
        logger.warning("Likelihood search failed; using defaults")
        return default_hyperparameters(k)
    return _hyperparameters(np.clip(best_theta, low, high), k, fit_beta)


@dataclass
class KrigingFactory:
    """
    Refits hyperparameters and retrains on every call.

    Each refit draws its random starts from a generator seeded by
    (seed, training size), so a run replays identically.
    """

    seed: int = 0
    fit_beta: bool = False
    restarts: int = RESTARTS
    max_evaluations: int = MAX_EVALUATIONS

    def fit(self, training: TrainingSet, previous=None) -> GpModel:
        start = None
        if isinstance(previous, GpModel):
            start = previous.hyperparameters
        hyperparameters = fit_hyperparameters(
            training,
            rng=np.random.default_rng([self.seed, training.size]),
            fit_beta=self.fit_beta,
            start=start,
            restarts=self.restarts,
            max_evaluations=self.max_evaluations,
        )
        model = train(training, hyperparameters)
        logger.debug(
            f"Trained surrogate on {training.size} samples: "
            f"chi={model.chi:.4g} nu2={model.nu2:.4g}"
        )
        return model
