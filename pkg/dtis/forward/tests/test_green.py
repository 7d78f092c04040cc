import numpy as np
from django.test import SimpleTestCase
from scipy import integrate, special

from dtis.forward.exceptions import GeometryError
from dtis.forward.green import green_external, green_internal
from dtis.forward.types import WAVENUMBER, Grid, MeasurementSetup

SINGLE_CELL = Grid(side=0.1, n_side=1)


def square_cell_integral(grid: Grid, point: np.ndarray, n: int = 64):
    """Midpoint rule for j(k0^2/4) * integral of H0 over the cell at 0."""
    h = grid.cell_size / n
    axis = -grid.cell_size / 2 + h * (np.arange(n) + 0.5)
    xx, yy = np.meshgrid(axis, axis)
    distance = np.hypot(point[0] - xx, point[1] - yy)
    kernel = special.hankel1(0, WAVENUMBER * distance)
    return 1j * WAVENUMBER**2 / 4 * kernel.sum() * h * h


def disc_self_integral(grid: Grid) -> complex:
    """Adaptive polar quadrature of j(k0^2/4) * integral of H0 on the disc."""
    a = grid.equivalent_radius

    def part(f):
        return integrate.quad(
            lambda r: 2 * np.pi * r * f(WAVENUMBER * r),
            0,
            a,
            epsabs=1e-14,
            epsrel=1e-12,
            limit=200,
        )[0]

    value = complex(part(special.j0), part(special.y0))
    return 1j * WAVENUMBER**2 / 4 * value


class GreenExternalTest(SimpleTestCase):
    def test_matches_cell_quadrature(self) -> None:
        setup = MeasurementSetup(views=1, probes=8, radius=3.0)
        matrix = green_external(SINGLE_CELL, setup)
        for m, probe in enumerate(setup.probe_positions):
            with self.subTest(probe=m):
                expected = square_cell_integral(SINGLE_CELL, probe)
                error = abs(matrix[m, 0] - expected) / abs(expected)
                self.assertLess(error, 1e-3)

    def test_decays_like_inverse_square_root(self) -> None:
        for radius in (10.0, 20.0, 40.0):
            with self.subTest(radius=radius):
                near = green_external(
                    SINGLE_CELL, MeasurementSetup(1, 1, radius)
                )
                far = green_external(
                    SINGLE_CELL, MeasurementSetup(1, 1, 2 * radius)
                )
                ratio = abs(far[0, 0]) / abs(near[0, 0])
                self.assertAlmostEqual(ratio, 1 / np.sqrt(2), delta=0.02)

    def test_symmetric_probes_see_equal_entries(self) -> None:
        matrix = green_external(SINGLE_CELL, MeasurementSetup(1, 2, 3.0))
        self.assertAlmostEqual(matrix[0, 0], matrix[1, 0], delta=1e-12)

    def test_probes_inside_the_domain_are_rejected(self) -> None:
        with self.assertRaises(GeometryError):
            green_external(Grid(2.0, 4), MeasurementSetup(4, 8, 0.9))


class GreenInternalTest(SimpleTestCase):
    def setUp(self) -> None:
        self.grid = Grid(side=2.0, n_side=10)
        self.matrix = green_internal(self.grid)

    def test_is_symmetric(self) -> None:
        np.testing.assert_allclose(self.matrix, self.matrix.T, atol=1e-12)

    def test_diagonal_is_uniform(self) -> None:
        diagonal = np.diagonal(self.matrix)
        np.testing.assert_array_equal(diagonal, diagonal[0])

    def test_diagonal_matches_polar_quadrature(self) -> None:
        expected = disc_self_integral(self.grid)
        error = abs(self.matrix[0, 0] - expected) / abs(expected)
        self.assertLess(error, 1e-6)

    def test_off_diagonal_uses_center_distances(self) -> None:
        a = self.grid.equivalent_radius
        factor = 1j * np.pi * WAVENUMBER * a / 2 * special.j1(WAVENUMBER * a)
        distance = self.grid.cell_size
        self.assertAlmostEqual(
            self.matrix[0, 1],
            factor * special.hankel1(0, WAVENUMBER * distance),
            delta=1e-14,
        )
