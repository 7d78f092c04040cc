import math

import numpy as np
from numpy.typing import ArrayLike, NDArray
from scipy import special

from .types import WAVENUMBER


def _order_count(radius: float, tau: complex) -> int:
    """Wiscombe-style truncation for the series of the inner medium."""
    size = abs(WAVENUMBER * np.sqrt(1 + tau)) * radius
    return int(math.ceil(size + 4 * size ** (1 / 3) + 10))


def _polar(points: ArrayLike) -> tuple[NDArray, NDArray]:
    positions = np.atleast_2d(np.asarray(points, dtype=float))
    rho = np.hypot(positions[:, 0], positions[:, 1])
    phi = np.arctan2(positions[:, 1], positions[:, 0])
    return rho, phi


def mie_coefficients(
    radius: float, tau: complex
) -> tuple[NDArray[np.int_], NDArray[np.complex128], NDArray[np.complex128]]:
    """
    Series coefficients of a homogeneous circular cylinder.

    The total field is sum_n j^n [J_n(k0 rho) + a_n H_n(k0 rho)]
    e^{jn(phi - phi_i)} outside and sum_n j^n c_n J_n(k1 rho)
    e^{jn(phi - phi_i)} inside, with k1 = k0 sqrt(1 + tau).

    Returns:
        tuple: orders n, scattering coefficients a_n, interior c_n.
    """
    k0 = WAVENUMBER
    k1 = k0 * np.sqrt(complex(1 + tau))
    count = _order_count(radius, tau)
    orders = np.arange(-count, count + 1)
    x0, x1 = k0 * radius, k1 * radius

    j_out = special.jv(orders, x0)
    dj_out = special.jvp(orders, x0)
    h_out = special.hankel1(orders, x0)
    dh_out = special.h1vp(orders, x0)
    j_in = special.jv(orders, x1)
    dj_in = special.jvp(orders, x1)

    a = (k1 * dj_in * j_out - k0 * dj_out * j_in) / (
        k0 * dh_out * j_in - k1 * dj_in * h_out
    )
    c = (j_out + a * h_out) / j_in
    return orders, a, c


def cylinder_scattered_field(
    points: ArrayLike,
    radius: float,
    tau: complex,
    incidence_angles: ArrayLike,
) -> NDArray[np.complex128]:
    """
    Analytic scattered field of a centered dielectric cylinder.

    Args:
        points (ArrayLike): (M, 2) observation points outside the cylinder.
        radius (float): cylinder radius in wavelengths.
        tau (complex): homogeneous contrast of the cylinder.
        incidence_angles (ArrayLike): plane-wave directions in radians.

    Returns:
        NDArray: (M, V) scattered field, one column per incidence angle.
    """
    rho, phi = _polar(points)
    if np.any(rho < radius):
        raise ValueError("Scattered-field points must lie outside")
    orders, a, _ = mie_coefficients(radius, tau)
    angles = np.atleast_1d(np.asarray(incidence_angles, dtype=float))

    radial = (1j**orders * a)[None, :] * special.hankel1(
        orders[None, :], WAVENUMBER * rho[:, None]
    )
    phase = np.exp(
        1j * orders[None, :, None] * (phi[:, None, None] - angles[None, None])
    )
    return np.einsum("mn,mnv->mv", radial, phase)


def cylinder_total_field(
    points: ArrayLike,
    radius: float,
    tau: complex,
    incidence_angle: float,
) -> NDArray[np.complex128]:
    """
    Analytic total field for one incidence, inside and outside.

    Outside, the incident plane wave is added in closed form so that far
    points do not depend on the truncation of its Bessel expansion.
    """
    positions = np.atleast_2d(np.asarray(points, dtype=float))
    rho, phi = _polar(positions)
    orders, _, c = mie_coefficients(radius, tau)
    k1 = WAVENUMBER * np.sqrt(complex(1 + tau))
    inside = rho < radius
    field = np.empty(len(rho), dtype=complex)

    if np.any(inside):
        n = orders[None, :]
        phase = 1j**n * np.exp(1j * n * (phi[inside, None] - incidence_angle))
        radial = c * special.jv(n, k1 * rho[inside, None])
        field[inside] = np.sum(radial * phase, axis=1)

    outside = ~inside
    if np.any(outside):
        angle = incidence_angle
        direction = np.array([np.cos(angle), np.sin(angle)])
        incident = np.exp(1j * WAVENUMBER * positions[outside] @ direction)
        scattered = cylinder_scattered_field(
            positions[outside], radius, tau, [incidence_angle]
        )
        field[outside] = incident + scattered[:, 0]
    return field
