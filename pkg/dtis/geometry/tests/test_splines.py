import numpy as np
from django.test import SimpleTestCase

from dtis.geometry.exceptions import InvalidShapeError, OutOfRangeError
from dtis.geometry.splines import (
    bezier_eval,
    contour_polyline,
    control_points,
    point_in_contour,
    points_in_polygon,
    virtual_points,
)
from dtis.geometry.types import SplineContour

ROUND = SplineContour(barycenter=(0.0, 0.0), radii=(0.5, 0.5, 0.5, 0.5))
IRREGULAR = SplineContour(
    barycenter=(0.1, 0.1), radii=(0.6, 0.2, 0.2, 0.2, 0.4, 0.6, 0.6, 0.1)
)


def winding_numbers(polygon: np.ndarray, points: np.ndarray) -> np.ndarray:
    """Independent containment oracle: total turning angle around p."""
    a = polygon[:, None, :] - points[None, :, :]
    b = np.roll(polygon, -1, axis=0)[:, None, :] - points[None, :, :]
    cross = a[..., 0] * b[..., 1] - a[..., 1] * b[..., 0]
    dot = (a * b).sum(axis=-1)
    return np.rint(np.arctan2(cross, dot).sum(axis=0) / (2 * np.pi))


def distance_to_edges(polygon: np.ndarray, points: np.ndarray) -> np.ndarray:
    start = polygon[:, None, :]
    edge = np.roll(polygon, -1, axis=0)[:, None, :] - start
    offset = points[None, :, :] - start
    t = np.clip(
        (offset * edge).sum(axis=-1) / (edge * edge).sum(axis=-1), 0, 1
    )
    nearest = start + t[..., None] * edge
    return np.linalg.norm(points[None, :, :] - nearest, axis=-1).min(axis=0)


class ControlPointsTest(SimpleTestCase):
    def test_round_contour(self) -> None:
        np.testing.assert_allclose(
            control_points(ROUND),
            [[0.5, 0.0], [0.0, 0.5], [-0.5, 0.0], [0.0, -0.5]],
            atol=1e-15,
        )

    def test_invalid_shapes_are_rejected(self) -> None:
        test_cases = [
            {"barycenter": (1.0, 1.0), "radii": (0.0, 0.5, 0.5, 0.5)},
            {"barycenter": (0.0, 0.0), "radii": (0.5, -0.1, 0.5)},
            {"barycenter": (0.0, 0.0), "radii": (0.5, 0.5)},
            {"barycenter": (np.nan, 0.0), "radii": (0.5, 0.5, 0.5)},
        ]
        for test in test_cases:
            with self.subTest(test=test):
                with self.assertRaises(InvalidShapeError):
                    SplineContour(**test)

    def test_translation_shifts_every_control_point(self) -> None:
        shifted = IRREGULAR.shifted(0.3, -0.7)
        np.testing.assert_allclose(
            control_points(shifted) - control_points(IRREGULAR),
            np.tile([0.3, -0.7], (IRREGULAR.q, 1)),
            atol=1e-15,
        )


class BezierEvalTest(SimpleTestCase):
    def test_endpoints_and_midpoint(self) -> None:
        c = control_points(IRREGULAR)
        v = virtual_points(IRREGULAR)
        for q in range(1, IRREGULAR.q + 1):
            with self.subTest(q=q):
                start, end = v[q - 1], v[q % IRREGULAR.q]
                np.testing.assert_array_equal(
                    bezier_eval(IRREGULAR, q, 0.0), start
                )
                np.testing.assert_array_equal(
                    bezier_eval(IRREGULAR, q, 1.0), end
                )
                np.testing.assert_allclose(
                    bezier_eval(IRREGULAR, q, 0.5),
                    0.25 * start + 0.5 * c[q % IRREGULAR.q] + 0.25 * end,
                    atol=1e-15,
                )

    def test_joints_are_midpoints_of_following_control_points(self):
        contour = SplineContour(
            barycenter=(0.0, 0.0), radii=(0.3, 0.5, 0.7, 0.4)
        )
        test_cases = [
            {"q": 1, "joint": [0.15, 0.25]},
            {"q": 2, "joint": [-0.35, 0.25]},
            {"q": 3, "joint": [-0.35, -0.2]},
            {"q": 4, "joint": [0.15, -0.2]},
        ]
        for test in test_cases:
            with self.subTest(q=test["q"]):
                np.testing.assert_allclose(
                    virtual_points(contour)[test["q"] - 1],
                    test["joint"],
                    atol=1e-15,
                )
                np.testing.assert_allclose(
                    bezier_eval(contour, test["q"], 0.0),
                    test["joint"],
                    atol=1e-15,
                )

    def test_round_contour_stays_between_joint_and_pull_radii(self) -> None:
        polygon = contour_polyline(ROUND, 64)
        radii = np.linalg.norm(polygon, axis=1)
        self.assertGreaterEqual(radii.min(), np.sqrt(2) / 4 - 1e-12)
        self.assertLessEqual(radii.max(), 0.375 + 1e-12)
        angles = np.linspace(0, 2 * np.pi, 16, endpoint=False)
        ring = np.column_stack([np.cos(angles), np.sin(angles)])
        self.assertTrue(np.all(points_in_polygon(polygon, 0.34 * ring)))
        self.assertFalse(np.any(points_in_polygon(polygon, 0.38 * ring)))

    def test_last_segment_closes_on_the_first(self) -> None:
        np.testing.assert_allclose(
            bezier_eval(IRREGULAR, IRREGULAR.q, 1.0),
            bezier_eval(IRREGULAR, 1, 0.0),
            atol=1e-12,
        )

    def test_out_of_range_parameters(self) -> None:
        for q, alpha in ((1, -0.01), (1, 1.01), (0, 0.5), (5, 0.5)):
            with self.subTest(q=q, alpha=alpha):
                with self.assertRaises(OutOfRangeError):
                    bezier_eval(ROUND, q, alpha)


class ContourPolylineTest(SimpleTestCase):
    def test_two_samples_per_segment(self) -> None:
        polygon = contour_polyline(ROUND, 2)
        self.assertEqual(polygon.shape, (8, 2))
        np.testing.assert_allclose(
            polygon[::2], virtual_points(ROUND), atol=1e-15
        )
        midpoints = [bezier_eval(ROUND, q, 0.5) for q in range(1, 5)]
        np.testing.assert_allclose(polygon[1::2], midpoints, atol=1e-15)

    def test_equal_radii_give_rotational_symmetry(self) -> None:
        contour = SplineContour(barycenter=(0.3, -0.2), radii=(0.4,) * 6)
        samples = 16
        polygon = contour_polyline(contour, samples)
        angle = 2 * np.pi / contour.q
        rotation = np.array(
            [[np.cos(angle), -np.sin(angle)], [np.sin(angle), np.cos(angle)]]
        )
        centered = polygon - contour.barycenter
        np.testing.assert_allclose(
            centered @ rotation.T,
            np.roll(centered, -samples, axis=0),
            atol=1e-12,
        )

    def test_refinement_keeps_shared_vertices(self) -> None:
        coarse = contour_polyline(IRREGULAR, 16).reshape(IRREGULAR.q, 16, 2)
        fine = contour_polyline(IRREGULAR, 32).reshape(IRREGULAR.q, 32, 2)
        np.testing.assert_array_equal(fine[:, ::2], coarse)

    def test_too_few_samples(self) -> None:
        with self.assertRaises(InvalidShapeError):
            contour_polyline(ROUND, 1)


class PointInContourTest(SimpleTestCase):
    def test_round_contour_examples(self) -> None:
        polygon = contour_polyline(ROUND)
        self.assertTrue(point_in_contour(polygon, (0.0, 0.0)))
        self.assertFalse(point_in_contour(polygon, (1.0, 1.0)))

    def test_vertex_on_the_ray_counts_once(self) -> None:
        diamond = [(1.0, 0.0), (0.0, 1.0), (-1.0, 0.0), (0.0, -1.0)]
        test_cases = [
            {"point": (-0.5, 0.0), "inside": True},
            {"point": (-2.0, 0.0), "inside": False},
            {"point": (2.0, 0.0), "inside": False},
            {"point": (0.0, 0.5), "inside": True},
        ]
        for test in test_cases:
            with self.subTest(test=test):
                self.assertEqual(
                    point_in_contour(diamond, test["point"]), test["inside"]
                )

    def test_degenerate_polygon_contains_nothing(self) -> None:
        line = [(0.0, 0.0), (1.0, 1.0), (2.0, 2.0), (3.0, 3.0)]
        self.assertFalse(point_in_contour(line, (1.0, 1.0)))
        self.assertFalse(point_in_contour(line, (1.5, 1.4)))

    def test_agrees_with_winding_number_oracle(self) -> None:
        rng = np.random.default_rng(20240601)
        points = rng.uniform(-1.0, 1.0, size=(10_000, 2))
        for contour in (ROUND, IRREGULAR):
            with self.subTest(contour=contour):
                polygon = contour_polyline(contour)
                ours = points_in_polygon(polygon, points)
                oracle = winding_numbers(polygon, points) % 2 == 1
                far = distance_to_edges(polygon, points) > 1e-9
                np.testing.assert_array_equal(ours[far], oracle[far])
