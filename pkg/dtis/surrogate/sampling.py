import numpy as np
from numpy.typing import ArrayLike, NDArray


def lhs_unit(
    dimensions: int, samples: int, rng: np.random.Generator
) -> NDArray[np.float64]:
    """
    Latin hypercube design in the unit cube.

    Each dimension is cut into `samples` equal strata. A random
    permutation assigns one stratum to every sample, and the value is
    drawn uniformly inside it. Permutations are drawn first, one per
    dimension, then the in-stratum offsets.
    """
    if samples < 1:
        raise ValueError(f"Need at least one sample: {samples}")
    strata = np.column_stack(
        [rng.permutation(samples) for _ in range(dimensions)]
    )
    return (strata + rng.random((samples, dimensions))) / samples


def lhs_sample(
    k: int,
    s: int,
    lower: ArrayLike,
    upper: ArrayLike,
    rng: int | np.random.Generator | None = None,
) -> NDArray[np.float64]:
    """
    Latin hypercube design scaled to the DoF bounds.

    Args:
        k (int): number of dimensions.
        s (int): number of samples.
        lower (ArrayLike): lower bounds, one per dimension.
        upper (ArrayLike): upper bounds, one per dimension.
        rng (int | Generator | None): seed or generator.

    Returns:
        NDArray: (s, k) array, one sample per row.
    """
    lower = np.asarray(lower, dtype=float)
    upper = np.asarray(upper, dtype=float)
    if lower.shape != (k,) or upper.shape != (k,):
        raise ValueError(f"Bounds need {k} entries")
    if not (np.all(np.isfinite(lower)) and np.all(np.isfinite(upper))):
        raise ValueError("Bounds must be finite")
    unit = lhs_unit(k, s, np.random.default_rng(rng))
    # Keep the upper edge of the last stratum inside the closed box.
    return np.minimum(lower + unit * (upper - lower), upper)
