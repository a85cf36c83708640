"""Tests for shapes, contrast maps and the medium catalogue."""

import math

import numpy as np
import pytest
from scipy.spatial import cKDTree

from osm_imaging.core.errors import ConfigError
from osm_imaging.core.shapes import (
    MEDIUM_NAMES,
    ContrastMap,
    Difference,
    Disk,
    Kite,
    Rectangle,
    SquareWithCavity,
    Union,
    contrast_eval,
    distance_to_support,
    kite_boundary,
    medium_from_name,
)


class TestPrimitiveShapes:
    """Membership of disks and rectangles."""

    def test_disk_is_open(self):
        disk = Disk(center=(1.0, 0.0), radius=0.5)
        assert disk.contains([1.0, 0.0])
        assert disk.contains([1.49, 0.0])
        assert not disk.contains([1.5, 0.0])  # rim excluded

    def test_rectangle_is_open(self):
        rect = Rectangle(center=(0.6, -0.6), half_widths=(0.45, 0.25))
        assert rect.contains([0.6, -0.6])
        assert rect.contains([1.0, -0.4])
        assert not rect.contains([1.05, -0.6])
        assert not rect.contains([0.6, -0.3])

    def test_vectorized_shape(self):
        """Masks follow the leading dimensions of the input."""
        points = np.zeros((3, 4, 2))
        assert Disk((0.0, 0.0), 1.0).contains(points).shape == (3, 4)

    @pytest.mark.parametrize(
        "factory",
        [lambda: Disk((0.0, 0.0), 0.0), lambda: Rectangle((0.0, 0.0), (1.0, -1.0))],
    )
    def test_invalid_dimensions(self, factory):
        with pytest.raises(ValueError):
            factory()


class TestKite:
    """Tests for the kite-shaped region."""

    def test_boundary_parametrization(self):
        np.testing.assert_allclose(kite_boundary(0.0), [0.5, 0.0])
        np.testing.assert_allclose(kite_boundary(math.pi), [-0.5, 0.0], atol=1e-15)
        np.testing.assert_allclose(kite_boundary(math.pi / 2), [-0.65, 0.6], atol=1e-15)

    def test_interior_and_notch(self):
        """The origin is inside; the notch left of x1 = -0.5 on the axis is outside."""
        kite = Kite()
        assert kite.contains([0.0, 0.0])
        assert not kite.contains([-0.6, 0.0])

    def test_upper_wing(self):
        """At x2 = 0.5 the region spans roughly -0.728 < x1 < -0.175."""
        kite = Kite()
        assert kite.contains([-0.6, 0.5])
        assert kite.contains([-0.2, 0.5])
        assert not kite.contains([0.0, 0.5])
        assert not kite.contains([-0.75, 0.5])

    def test_symmetric_about_x1_axis(self):
        kite = Kite()
        rng = np.random.default_rng(0)
        points = rng.uniform(-1.0, 1.0, size=(500, 2))
        mirrored = points * np.array([1.0, -1.0])
        # points within the polyline sagitta of the curve may flip
        far_from_curve = cKDTree(kite.vertices).query(points)[0] > 0.01
        inside = kite.contains(points)
        np.testing.assert_array_equal(inside[far_from_curve], kite.contains(mirrored)[far_from_curve])

    def test_bounding_box(self):
        x1lo, x1hi, x2lo, x2hi = Kite().bounding_box()
        assert x1hi == pytest.approx(0.501, abs=1e-6)
        assert x2lo == pytest.approx(-0.601, abs=1e-6)
        assert x2hi == pytest.approx(0.601, abs=1e-6)
        assert -0.75 < x1lo < -0.72

    def test_shifted_kite(self):
        assert Kite(center=(1.0, 1.0)).contains([1.0, 1.0])
        assert not Kite(center=(1.0, 1.0)).contains([0.0, 0.0])


class TestCompositeShapes:
    """Unions, differences and the square with cavity."""

    def test_union(self):
        shape = Union((Disk((-1.0, 0.0), 0.5), Disk((1.0, 0.0), 0.5)))
        np.testing.assert_array_equal(shape.contains([[-1, 0], [1, 0], [0, 0]]), [True, True, False])
        assert shape.bounding_box() == pytest.approx((-1.5, 1.5, -0.5, 0.5))

    def test_difference(self):
        shape = Difference(Rectangle((0.0, 0.0), (1.0, 1.0)), Disk((0.0, 0.0), 0.5))
        assert not shape.contains([0.0, 0.0])
        assert shape.contains([0.8, 0.8])

    def test_square_with_cavity_excludes_closed_cavity(self):
        square = SquareWithCavity()
        assert not square.contains([0.0, 0.0])
        assert not square.contains([0.3, 0.0])  # cavity rim excluded
        assert square.contains([0.31, 0.0])
        assert square.contains([0.45, 0.45])
        assert not square.contains([0.5, 0.0])  # square edge excluded

    def test_cavity_must_fit(self):
        with pytest.raises(ValueError):
            SquareWithCavity(half_width=0.5, cavity_radius=0.6)


class TestContrastMap:
    """Tests for contrast maps and the catalogue."""

    def test_catalogue_names(self):
        for name in MEDIUM_NAMES:
            assert medium_from_name(name).name == name

    def test_catalogue_contrasts(self):
        assert contrast_eval(medium_from_name("kite"), (0.0, 0.0)) == 0.5 + 0.1j
        assert contrast_eval(medium_from_name("disk_rectangle"), (-0.6, 0.6)) == 0.5
        assert contrast_eval(medium_from_name("disk_rectangle"), (0.6, -0.6)) == 0.5
        assert contrast_eval(medium_from_name("square_cavity"), (0.4, 0.0)) == 1.0
        assert contrast_eval(medium_from_name("square_cavity"), (0.0, 0.0)) == 0.0

    def test_disk_rectangle_layout(self):
        """Disk in the upper-left quadrant, rectangle in the lower-right."""
        medium = medium_from_name("disk_rectangle")
        assert not medium.contains([0.6, 0.6])
        assert not medium.contains([-0.6, -0.6])

    def test_contrast_override(self):
        medium = medium_from_name("disk", contrast=2.0 + 0.5j, disk_center=(0.5, 0.0), disk_radius=0.2)
        assert contrast_eval(medium, (0.5, 0.0)) == 2.0 + 0.5j
        assert contrast_eval(medium, (0.0, 0.0)) == 0.0

    def test_first_piece_wins(self):
        medium = ContrastMap(((Disk((0.0, 0.0), 1.0), 1.0), (Disk((0.0, 0.0), 2.0), 3.0)))
        values = contrast_eval(medium, [[0.0, 0.0], [1.5, 0.0], [3.0, 0.0]])
        np.testing.assert_array_equal(values, [1.0, 3.0, 0.0])

    def test_negative_imaginary_part_rejected(self):
        with pytest.raises(ConfigError):
            medium_from_name("kite", contrast=0.5 - 0.1j)

    def test_unknown_medium(self):
        with pytest.raises(ConfigError) as excinfo:
            medium_from_name("banana")
        assert excinfo.value.fields == ["medium"]

    def test_zero_map(self):
        medium = medium_from_name("disk", contrast=0.0)
        assert medium.is_zero
        assert not medium.contains([0.0, 0.0])

    def test_support_radius(self):
        assert medium_from_name("square_cavity").support_radius == pytest.approx(math.sqrt(0.5))
        assert medium_from_name("disk").support_radius == pytest.approx(math.sqrt(0.32))

    def test_scaled(self):
        medium = medium_from_name("disk").scaled(2.0)
        assert contrast_eval(medium, (0.0, 0.0)) == 1.0


class TestDistanceToSupport:
    """Tests for distance_to_support."""

    def test_disk_distances(self):
        medium = medium_from_name("disk", disk_radius=0.4)
        distances = distance_to_support(medium, [[0.0, 0.0], [1.4, 0.0], [0.0, -2.4]])
        assert distances[0] == 0.0
        assert distances[1] == pytest.approx(1.0, abs=0.01)
        assert distances[2] == pytest.approx(2.0, abs=0.01)

    def test_empty_support(self):
        medium = medium_from_name("disk", contrast=0.0)
        assert np.all(np.isinf(distance_to_support(medium, [[1.0, 1.0]])))
