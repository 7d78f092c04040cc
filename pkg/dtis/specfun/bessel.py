import math

import numpy as np
from numpy.typing import ArrayLike, NDArray
from scipy import special

from .exceptions import DomainError
from .types import CylinderFunctionValue


def _check_argument(x: ArrayLike) -> NDArray[np.float64]:
    values = np.asarray(x, dtype=float)
    if not np.all(np.isfinite(values)):
        raise DomainError(f"Cylinder functions need finite arguments: {x}")
    if np.any(values <= 0):
        raise DomainError(f"Cylinder functions need positive arguments: {x}")
    return values


def cylinder_functions(x: float) -> CylinderFunctionValue:
    """
    Evaluates J0, J1, Y0 and Y1 at a single positive real argument.

    The values come from the Cephes routines wrapped by scipy.special,
    which switch between rational approximations near the origin and
    Hankel asymptotic expansions for large arguments.

    Args:
        x (float): the argument, strictly positive and finite.

    Raises:
        DomainError: if x is non-finite or not positive.

    Returns:
        CylinderFunctionValue: the four Bessel values at x.
    """
    try:
        value = float(x)
    except (TypeError, ValueError) as e:
        raise DomainError(f"Cylinder functions need a real: {x}") from e
    if not math.isfinite(value):
        raise DomainError(f"Cylinder functions need a finite real: {x}")
    _check_argument(value)
    return CylinderFunctionValue(
        j0=float(special.j0(value)),
        j1=float(special.j1(value)),
        y0=float(special.y0(value)),
        y1=float(special.y1(value)),
    )


def hankel1_order0(x: ArrayLike) -> NDArray[np.complex128]:
    """Vectorized H0^(1) for the Green's matrix kernels."""
    values = _check_argument(x)
    return special.j0(values) + 1j * special.y0(values)


def hankel1_order1(x: ArrayLike) -> NDArray[np.complex128]:
    """Vectorized H1^(1) for the self-cell integral."""
    values = _check_argument(x)
    return special.j1(values) + 1j * special.y1(values)


def bessel_j1(x: ArrayLike) -> NDArray[np.float64]:
    values = _check_argument(x)
    return special.j1(values)
