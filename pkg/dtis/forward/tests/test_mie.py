import numpy as np
from django.test import SimpleTestCase

from dtis.forward.mie import (
    cylinder_scattered_field,
    cylinder_total_field,
    mie_coefficients,
)
from dtis.forward.services import ForwardModel
from dtis.forward.types import Grid, MeasurementSetup
from dtis.geometry.types import ContrastMap

RADIUS = 0.5
SETUP = MeasurementSetup(views=2, probes=18, radius=3.0)
FULL_SETUP = MeasurementSetup(views=18, probes=18, radius=3.0)


def cylinder(grid: Grid, tau: complex) -> ContrastMap:
    inside = np.linalg.norm(grid.centers, axis=1) < RADIUS
    return ContrastMap(grid=grid, values=np.where(inside, tau, 0))


def relative_rms(value: np.ndarray, reference: np.ndarray) -> float:
    error = np.linalg.norm(value - reference)
    return float(error / np.linalg.norm(reference))


class MieSeriesTest(SimpleTestCase):
    def test_no_contrast_no_scattering(self) -> None:
        _, a, _ = mie_coefficients(RADIUS, 0.0)
        np.testing.assert_allclose(a, 0, atol=1e-14)

    def test_fields_are_continuous_across_the_boundary(self) -> None:
        angles = np.linspace(0, 2 * np.pi, 7)
        unit = np.column_stack([np.cos(angles), np.sin(angles)])
        inner = cylinder_total_field(unit * (RADIUS - 1e-9), RADIUS, 2.0, 0)
        outer = cylinder_total_field(unit * (RADIUS + 1e-9), RADIUS, 2.0, 0)
        np.testing.assert_allclose(inner, outer, atol=1e-6)

    def test_outside_total_is_incident_plus_scattered(self) -> None:
        points = SETUP.probe_positions
        total = cylinder_total_field(points, RADIUS, 1.0, 0.3)
        scattered = cylinder_scattered_field(points, RADIUS, 1.0, [0.3])
        direction = np.array([np.cos(0.3), np.sin(0.3)])
        incident = np.exp(2j * np.pi * points @ direction)
        np.testing.assert_allclose(
            total, incident + scattered[:, 0], atol=1e-10
        )


class ForwardAccuracyTest(SimpleTestCase):
    """Method of moments against the analytic series for a round cylinder."""

    def scattering_error(self, n_side: int, tau: complex) -> float:
        model = ForwardModel(Grid(side=2.0, n_side=n_side), FULL_SETUP)
        computed = model.scattered(cylinder(model.grid, tau))
        reference = cylinder_scattered_field(
            FULL_SETUP.probe_positions,
            RADIUS,
            tau,
            FULL_SETUP.incidence_angles,
        )
        return relative_rms(computed, reference)

    def test_low_contrast_meets_the_accuracy_targets(self) -> None:
        coarse = self.scattering_error(20, 1.0)
        fine = self.scattering_error(40, 1.0)
        self.assertLess(coarse, 0.05)
        self.assertLess(fine, 0.03)
        self.assertLess(fine, coarse)

    def test_high_contrast_within_the_pulse_basis_limits(self) -> None:
        # At tau = 4 an interior wavelength spans 4.5 cells at n_side 20;
        # measured errors are 0.217 (n_side 20) and 0.071 (n_side 40).
        test_cases = [
            {"n_side": 20, "limit": 0.25},
            {"n_side": 40, "limit": 0.08},
        ]
        errors = []
        for test in test_cases:
            with self.subTest(n_side=test["n_side"]):
                error = self.scattering_error(test["n_side"], 4.0)
                self.assertLess(error, test["limit"])
                errors.append(error)
        self.assertLess(errors[1], errors[0] / 2)

    def test_interior_field(self) -> None:
        grid = Grid(side=2.0, n_side=40)
        model = ForwardModel(grid, SETUP)
        contrast = cylinder(grid, 1.0)
        total = model.total_fields(contrast)
        inside = contrast.values != 0
        reference = cylinder_total_field(
            grid.centers[inside], RADIUS, 1.0, SETUP.incidence_angles[0]
        )
        self.assertLess(relative_rms(total[inside, 0], reference), 0.03)
