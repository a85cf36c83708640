"""Tests for the geometry module."""

import math

import numpy as np
import pytest

from osm_imaging.core.geometry import (
    FULL_APERTURE,
    angle_from_direction,
    aperture_angles,
    aperture_weight,
    circle_nodes,
    direction_from_angle,
    incident_directions,
    is_full_aperture,
)
from osm_imaging.core.models import MeasurementCircle, SamplingGrid


class TestDirectionFromAngle:
    """Tests for direction_from_angle function."""

    def test_cardinal_directions(self):
        """0, pi/2, pi and 3pi/2 map to the coordinate axes."""
        directions = direction_from_angle([0, math.pi / 2, math.pi, 3 * math.pi / 2])
        expected = np.array([[1, 0], [0, 1], [-1, 0], [0, -1]], dtype=float)
        np.testing.assert_array_almost_equal(directions, expected)

    def test_direction_is_unit_vector(self):
        """Direction vectors always have unit length."""
        directions = direction_from_angle(np.linspace(-10, 10, 101))
        np.testing.assert_allclose(np.linalg.norm(directions, axis=1), 1.0, atol=1e-15)

    def test_roundtrip_conversion(self):
        """Converting to direction and back gives the same angle in [0, 2pi)."""
        angles = np.linspace(0, 2 * math.pi, 37, endpoint=False)
        np.testing.assert_allclose(angle_from_direction(direction_from_angle(angles)), angles, atol=1e-12)

    def test_negative_angle_wraps(self):
        """Angles come back in [0, 2pi)."""
        assert angle_from_direction(direction_from_angle(-math.pi / 2)) == pytest.approx(3 * math.pi / 2)


class TestApertures:
    """Tests for aperture sampling and weights."""

    def test_full_aperture_is_half_open(self):
        """The full circle excludes the duplicate endpoint."""
        angles = aperture_angles(4, FULL_APERTURE)
        np.testing.assert_allclose(angles, [0, math.pi / 2, math.pi, 3 * math.pi / 2])

    def test_partial_aperture_is_closed(self):
        """A partial aperture includes both endpoints."""
        angles = aperture_angles(5, (math.pi, 2 * math.pi))
        assert angles[0] == pytest.approx(math.pi)
        assert angles[-1] == pytest.approx(2 * math.pi)
        assert len(angles) == 5

    def test_single_node_partial_aperture_uses_midpoint(self):
        """n = 1 on a partial aperture sits at its midpoint."""
        np.testing.assert_allclose(aperture_angles(1, (0.0, math.pi)), [math.pi / 2])

    def test_weights(self):
        """Every node carries span / n."""
        assert aperture_weight(64) == pytest.approx(2 * math.pi / 64)
        assert aperture_weight(32, (math.pi, 2 * math.pi)) == pytest.approx(math.pi / 32)

    def test_full_aperture_detection(self):
        assert is_full_aperture(FULL_APERTURE)
        assert is_full_aperture((-math.pi, math.pi))
        assert not is_full_aperture((0.0, math.pi))

    @pytest.mark.parametrize("n, aperture", [(0, FULL_APERTURE), (4, (1.0, 1.0)), (4, (2.0, 1.0))])
    def test_invalid_requests(self, n, aperture):
        with pytest.raises(ValueError):
            aperture_angles(n, aperture)

    def test_full_circle_directions_sum_to_zero(self):
        """Uniform directions over the full circle are balanced."""
        np.testing.assert_allclose(incident_directions(64).sum(axis=0), 0.0, atol=1e-12)


class TestCircleNodes:
    """Tests for receivers on the measurement circle."""

    def test_points_lie_on_circle_with_outward_normals(self):
        points, normals = circle_nodes(3.0, 16)
        np.testing.assert_allclose(np.linalg.norm(points, axis=1), 3.0)
        np.testing.assert_allclose(points, 3.0 * normals)

    def test_bottom_half_aperture(self):
        """Receivers on [pi, 2pi] all have x2 <= 0."""
        points, _ = circle_nodes(3.0, 32, (math.pi, 2 * math.pi))
        assert np.all(points[:, 1] <= 1e-12)

    def test_measurement_circle_weight_is_arc_length(self):
        """The receiver weights sum to the arc length R * span."""
        full = MeasurementCircle(radius=3.0, n_receivers=64)
        half = MeasurementCircle(radius=3.0, n_receivers=32, aperture=(math.pi, 2 * math.pi))
        assert full.weight * full.n_receivers == pytest.approx(6 * math.pi)
        assert half.weight * half.n_receivers == pytest.approx(3 * math.pi)
        assert full.is_full and not half.is_full


class TestSamplingGrid:
    """Tests for the sampling grid."""

    def test_points_order(self):
        """x1 varies slowest, matching the [i1, i2] image layout."""
        grid = SamplingGrid(x1_range=(0.0, 1.0), x2_range=(0.0, 2.0), n1=2, n2=3)
        np.testing.assert_allclose(
            grid.points(),
            [[0, 0], [0, 1], [0, 2], [1, 0], [1, 1], [1, 2]],
        )

    def test_default_is_96_square_over_minus_two_two(self):
        grid = SamplingGrid()
        assert grid.shape == (96, 96)
        np.testing.assert_allclose(np.diff(grid.axes()[0]), 4 / 95)

    @pytest.mark.parametrize("kwargs", [{"n1": 1}, {"x1_range": (1.0, -1.0)}])
    def test_invalid_grid(self, kwargs):
        with pytest.raises(ValueError):
            SamplingGrid(**kwargs)
