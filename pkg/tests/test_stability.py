"""Tests for the stability constants."""

import numpy as np
import pytest

from osm_imaging.core.errors import MissingDataError
from osm_imaging.core.models import MeasurementCircle, NoiseSpec, SamplingGrid
from osm_imaging.imaging import (
    imaging_I,
    imaging_I2,
    stability_bound,
    stability_constant_I,
    stability_constant_I2,
)
from osm_imaging.simulator.synthesis import add_noise, synthesize_disk_series


@pytest.fixture(scope="module")
def clean():
    circle = MeasurementCircle(radius=3.0, n_receivers=48)
    return synthesize_disk_series(0.5 + 0.1j, 0.4, 8.0, circle, 24)


@pytest.fixture(scope="module")
def grid():
    return SamplingGrid(x1_range=(-1.5, 1.5), x2_range=(-1.5, 1.5), n1=15, n2=15)


class TestStabilityBounds:
    """The perturbation of each indicator stays below its bound."""

    @pytest.mark.parametrize("delta", [0.3, 0.9])
    @pytest.mark.parametrize("seed", range(4))
    def test_I_bound(self, clean, grid, delta, seed):
        noisy = add_noise(clean, NoiseSpec(level=delta, seed=seed))
        change = np.abs(imaging_I(clean, grid).values - imaging_I(noisy, grid).values)
        assert np.all(change <= stability_bound(stability_constant_I(clean), delta))

    @pytest.mark.parametrize("delta", [0.3, 0.9])
    @pytest.mark.parametrize("seed", range(4))
    def test_I2_bound(self, clean, grid, delta, seed):
        noisy = add_noise(clean, NoiseSpec(level=delta, seed=seed))
        change = np.abs(imaging_I2(clean, grid).values - imaging_I2(noisy, grid).values)
        bound = stability_bound(stability_constant_I2(clean, grid.points()), delta).reshape(grid.shape)
        assert np.all(change <= bound)

    def test_bound_vanishes_without_noise(self, clean):
        assert stability_bound(stability_constant_I(clean), 0.0) == 0.0

    def test_constant_I2_is_pointwise(self, clean):
        constants = stability_constant_I2(clean, [[0.0, 0.0], [1.0, 0.0], [0.0, 1.0]])
        assert constants.shape == (3,)
        assert np.all(constants > 0.0)

    def test_needs_normal_derivative(self, clean):
        with pytest.raises(MissingDataError):
            stability_constant_I(clean.without_normal_derivative())
