import numpy as np
from numpy.typing import ArrayLike, NDArray

from .exceptions import InvalidShapeError, OutOfRangeError
from .types import SplineContour

DEFAULT_SAMPLES_PER_SEGMENT = 32

# Relative shoelace area under which a polygon counts as collinear.
DEGENERATE_AREA = 1e-14


def control_points(contour: SplineContour) -> NDArray[np.float64]:
    """
    Control points C(q) of a contour, as a (Q, 2) array.

    C(q) = barycenter + rho(q) * (cos(theta_q), sin(theta_q)) with
    theta_q = (q - 1) * 2 * pi / Q.
    """
    angles = 2 * np.pi * np.arange(contour.q) / contour.q
    radii = np.asarray(contour.radii, dtype=float)
    return np.asarray(contour.barycenter, dtype=float) + np.column_stack(
        [radii * np.cos(angles), radii * np.sin(angles)]
    )


def virtual_points(contour: SplineContour) -> NDArray[np.float64]:
    """
    Segment joints V(q), as a (Q, 2) array.

    V(q) is the midpoint of C(q) and C(q+1), with C(Q+1) = C(1).
    """
    points = control_points(contour)
    return (points + np.roll(points, -1, axis=0)) / 2


def pull_points(contour: SplineContour) -> NDArray[np.float64]:
    """
    Middle Bezier control of each segment, as a (Q, 2) array.

    Segment q joins V(q) and V(q+1); the only control point lying between
    them is C(q+1), so row q - 1 holds C(q+1).
    """
    return np.roll(control_points(contour), -1, axis=0)


def bezier_eval(contour: SplineContour, q: int, alpha: float) -> NDArray:
    """
    Evaluates the q-th quadratic Bezier segment.

    B(q)(alpha) = (1 - alpha)^2 V(q) + 2 alpha (1 - alpha) C(q+1)
    + alpha^2 V(q+1).

    Args:
        contour (SplineContour): the contour.
        q (int): 1-based segment index.
        alpha (float): curve parameter in [0, 1].

    Raises:
        OutOfRangeError: if q or alpha is outside its range.

    Returns:
        NDArray: the (x, y) position.
    """
    if not 1 <= q <= contour.q:
        raise OutOfRangeError(
            f"Segment index must be in [1, {contour.q}]: {q}"
        )
    if not 0 <= alpha <= 1:
        raise OutOfRangeError(f"Curve parameter must be in [0, 1]: {alpha}")
    pull = pull_points(contour)
    v = virtual_points(contour)
    start = v[q - 1]
    end = v[q % contour.q]
    return (
        (1 - alpha) ** 2 * start
        + 2 * alpha * (1 - alpha) * pull[q - 1]
        + alpha**2 * end
    )


def contour_polyline(
    contour: SplineContour,
    samples_per_segment: int = DEFAULT_SAMPLES_PER_SEGMENT,
) -> NDArray[np.float64]:
    """
    Samples the contour at alpha = j / s, j = 0..s-1, on every segment.

    The returned (Q * s, 2) polygon is implicitly closed: its last edge
    runs from the final vertex back to V(1).
    """
    if samples_per_segment < 2:
        raise InvalidShapeError(
            f"Need at least 2 samples per segment: {samples_per_segment}"
        )
    c = pull_points(contour)
    start = virtual_points(contour)
    end = np.roll(start, -1, axis=0)
    alpha = (np.arange(samples_per_segment) / samples_per_segment)[
        None, :, None
    ]
    points = (
        (1 - alpha) ** 2 * start[:, None, :]
        + 2 * alpha * (1 - alpha) * c[:, None, :]
        + alpha**2 * end[:, None, :]
    )
    return points.reshape(-1, 2)


def _is_degenerate(polygon: NDArray[np.float64]) -> bool:
    x, y = polygon[:, 0], polygon[:, 1]
    area = 0.5 * abs(np.dot(x, np.roll(y, -1)) - np.dot(y, np.roll(x, -1)))
    extent = np.ptp(polygon, axis=0).max()
    return bool(area <= DEGENERATE_AREA * max(extent, 1.0) ** 2)


def points_in_polygon(
    polygon: ArrayLike, points: ArrayLike
) -> NDArray[np.bool_]:
    """
    Even-odd crossing-number containment for many points at once.

    A horizontal ray is cast towards +x. An edge is counted when exactly
    one of its end points lies strictly above the ray (half-open rule), so
    a vertex lying on the ray is counted once.

    Args:
        polygon (ArrayLike): (n, 2) vertices, implicitly closed, n >= 3.
        points (ArrayLike): (m, 2) query positions.

    Returns:
        NDArray[np.bool_]: m flags, all False for a degenerate polygon.
    """
    poly = np.asarray(polygon, dtype=float)
    pts = np.atleast_2d(np.asarray(points, dtype=float))
    if poly.ndim != 2 or poly.shape[0] < 3:
        raise InvalidShapeError("A polygon needs at least 3 vertices")
    if _is_degenerate(poly):
        return np.zeros(len(pts), dtype=bool)

    xi, yi = poly[:, 0][:, None], poly[:, 1][:, None]
    nxt = np.roll(poly, -1, axis=0)
    xj, yj = nxt[:, 0][:, None], nxt[:, 1][:, None]
    px, py = pts[:, 0][None, :], pts[:, 1][None, :]

    straddles = (yi > py) != (yj > py)
    with np.errstate(divide="ignore", invalid="ignore"):
        x_cross = xi + (py - yi) * (xj - xi) / (yj - yi)
    crossings = straddles & (px < x_cross)
    return np.count_nonzero(crossings, axis=0) % 2 == 1


def point_in_contour(polygon: ArrayLike, point: ArrayLike) -> bool:
    return bool(points_in_polygon(polygon, [point])[0])
