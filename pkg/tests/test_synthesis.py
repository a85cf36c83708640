"""Tests for data synthesis and the noise model."""

import math

import numpy as np
import pytest

from osm_imaging.core.errors import ConfigError, DegenerateError
from osm_imaging.core.models import MeasurementCircle, NoiseSpec
from osm_imaging.core.shapes import ContrastMap, Disk, Rectangle, Union, medium_from_name
from osm_imaging.forward.solver import VolumeGrid
from osm_imaging.simulator.synthesis import (
    achieved_noise,
    add_noise,
    noise_generators,
    synthesize,
    synthesize_disk_series,
    synthesize_with_solutions,
)


def create_test_dataset(n_receivers=32, n_directions=16, k=8.0):
    """Exact disk dataset from the series solution."""
    circle = MeasurementCircle(radius=3.0, n_receivers=n_receivers)
    return synthesize_disk_series(0.5, 0.4, k, circle, n_directions)


def create_rotated_disk_rectangle():
    """The disk-and-rectangle medium turned by a quarter turn counter-clockwise."""
    shape = Union((Disk(center=(-0.6, -0.6), radius=0.4), Rectangle(center=(0.6, 0.6), half_widths=(0.25, 0.45))))
    return ContrastMap(((shape, 0.5),), name="disk_rectangle_rotated")


class TestSynthesis:
    """Tests for the solver-backed synthesis."""

    def test_matches_disk_series(self):
        circle = MeasurementCircle(radius=3.0, n_receivers=16)
        medium = medium_from_name("disk", contrast=0.5, disk_radius=0.4)
        result = synthesize_with_solutions(medium, 4.0, circle, 4, grid=VolumeGrid(m=96))
        exact = synthesize_disk_series(0.5, 0.4, 4.0, circle, 4)
        assert np.linalg.norm(result.dataset.u - exact.u) / np.linalg.norm(exact.u) < 0.02
        assert np.linalg.norm(result.dataset.du - exact.du) / np.linalg.norm(exact.du) < 0.02
        assert result.max_residual < 1e-7
        assert len(result.solutions) == 4
        assert result.to_dict()["n_solves"] == 4

    def test_dataset_shape_and_metadata(self):
        circle = MeasurementCircle(radius=3.0, n_receivers=12, aperture=(math.pi, 2 * math.pi))
        medium = medium_from_name("disk", contrast=0.5, disk_radius=0.4)
        dataset = synthesize(medium, 4.0, circle, 6, (math.pi, 2 * math.pi), grid=VolumeGrid(m=32))
        assert dataset.u.shape == (12, 6)
        assert dataset.du.shape == (12, 6)
        assert dataset.direction_aperture == (math.pi, 2 * math.pi)
        assert dataset.noise_level == 0.0

    def test_quarter_turn_covariance(self):
        """Rotating the medium by 90 degrees shifts receivers and directions by n/4."""
        k, n = 4.0, 16
        circle = MeasurementCircle(radius=3.0, n_receivers=n)
        grid = VolumeGrid(m=48)
        original = synthesize(medium_from_name("disk_rectangle"), k, circle, n, grid=grid)
        rotated = synthesize(create_rotated_disk_rectangle(), k, circle, n, grid=grid)
        shifted = np.roll(np.roll(rotated.u, -n // 4, axis=0), -n // 4, axis=1)
        np.testing.assert_allclose(shifted, original.u, atol=1e-6 * np.max(np.abs(original.u)))

    def test_zero_contrast_gives_zero_data(self):
        circle = MeasurementCircle(radius=3.0, n_receivers=8)
        dataset = synthesize(medium_from_name("disk", contrast=0.0), 4.0, circle, 4, grid=VolumeGrid(m=16))
        assert not np.any(dataset.u)

    def test_receivers_must_enclose_medium(self):
        circle = MeasurementCircle(radius=0.5, n_receivers=8)
        with pytest.raises(ConfigError) as excinfo:
            synthesize(medium_from_name("kite"), 4.0, circle, 4, grid=VolumeGrid(m=16))
        assert "radius" in excinfo.value.fields

    def test_disk_series_needs_enclosing_circle(self):
        with pytest.raises(ConfigError):
            synthesize_disk_series(0.5, 0.4, 8.0, MeasurementCircle(radius=0.3, n_receivers=8), 4)


class TestNoise:
    """Tests for the relative Frobenius noise model."""

    @pytest.mark.parametrize("level", [0.3, 0.6, 0.9])
    def test_noise_level_is_exact(self, level):
        dataset = create_test_dataset()
        noisy = add_noise(dataset, NoiseSpec(level=level, seed=1))
        achieved = achieved_noise(dataset, noisy)
        assert achieved["u"] == pytest.approx(level, abs=1e-13)
        assert achieved["du"] == pytest.approx(level, abs=1e-13)
        assert noisy.noise_level == level

    def test_zero_level_returns_same_dataset(self):
        dataset = create_test_dataset()
        assert add_noise(dataset, NoiseSpec(level=0.0, seed=5)) is dataset
        assert achieved_noise(dataset, dataset) == {"u": 0.0, "du": 0.0}

    def test_same_seed_same_noise(self):
        dataset = create_test_dataset()
        first = add_noise(dataset, NoiseSpec(level=0.3, seed=42))
        second = add_noise(dataset, NoiseSpec(level=0.3, seed=42))
        np.testing.assert_array_equal(first.u, second.u)
        np.testing.assert_array_equal(first.du, second.du)

    def test_different_seeds_differ(self):
        dataset = create_test_dataset()
        first = add_noise(dataset, NoiseSpec(level=0.3, seed=1))
        second = add_noise(dataset, NoiseSpec(level=0.3, seed=2))
        assert not np.allclose(first.u, second.u)

    def test_streams_are_independent(self):
        """N1 and N2 come from different streams of the same seed."""
        rng_u, rng_du = noise_generators(3)
        assert not np.allclose(rng_u.uniform(size=8), rng_du.uniform(size=8))

    def test_noise_entries_in_complex_square(self):
        dataset = create_test_dataset()
        noisy = add_noise(dataset, NoiseSpec(level=0.3, seed=9))
        scale = 0.3 * np.linalg.norm(dataset.u)
        # entries of N1 / ||N1|| have |re|, |im| <= 1 / ||N1||, and ||N1|| >= 1
        perturbation = (noisy.u - dataset.u) / scale
        assert np.max(np.abs(perturbation.real)) <= 1.0
        assert np.max(np.abs(perturbation.imag)) <= 1.0

    def test_scattered_field_only_dataset(self):
        dataset = create_test_dataset().without_normal_derivative()
        noisy = add_noise(dataset, NoiseSpec(level=0.3, seed=0))
        assert noisy.du is None
        assert set(achieved_noise(dataset, noisy)) == {"u"}

    def test_all_zero_dataset_rejected(self):
        dataset = create_test_dataset()
        zero = dataset.with_data(u=np.zeros_like(dataset.u), du=np.zeros_like(dataset.du), noise_level=0.0)
        with pytest.raises(DegenerateError):
            add_noise(zero, NoiseSpec(level=0.3, seed=0))

    def test_noise_spec_range(self):
        with pytest.raises(ValueError):
            NoiseSpec(level=2.0)
