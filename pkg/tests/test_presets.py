"""Tests for the named scenario presets."""

import math

import pytest

from osm_imaging.core.errors import ConfigError
from osm_imaging.experiment.presets import preset, preset_names


class TestPresetNames:
    """Tests for the preset catalogue."""

    def test_catalogue_size(self):
        names = preset_names()
        assert len(names) == 21
        assert names == sorted(names)

    def test_every_name_builds(self):
        for name in preset_names():
            config = preset(name)
            assert config.name == name
            assert config.output_dir == f"output/{name}"

    @pytest.mark.parametrize("name", ["fig5-kite", "fig1-banana", "fig1-kite-k6", "kite", ""])
    def test_unknown_preset(self, name):
        with pytest.raises(ConfigError) as excinfo:
            preset(name)
        assert excinfo.value.fields == ["preset"]


class TestPresetParameters:
    """Each preset carries the parameters of its scenario."""

    def test_near_field_defaults(self):
        config = preset("fig1-kite")
        assert config.k == 8.0
        assert config.radius == 3.0
        assert config.noise_level == 0.3
        assert (config.n_receivers, config.n_directions) == (64, 64)
        assert config.functionals == ("I", "I2")
        assert config.sampling_points == (96, 96)

    def test_square_cavity_uses_larger_data(self):
        config = preset("fig1-square_cavity")
        assert (config.n_receivers, config.n_directions) == (96, 96)

    def test_lower_wave_number(self):
        config = preset("fig1-disk_rectangle-k4")
        assert config.k == 4.0
        assert config.functionals == ("I",)
        assert preset("fig1-disk_rectangle-k8").k == 8.0

    def test_high_noise(self):
        assert preset("fig2-kite").noise_level == 0.6
        config = preset("fig2-kite-90")
        assert config.noise_level == 0.9
        assert config.functionals == ("I", "I2")

    def test_far_field(self):
        config = preset("fig3-disk_rectangle")
        assert config.radius == 100.0
        assert config.functionals == ("I", "I_far", "I2_far")

    @pytest.mark.parametrize("medium, size", [("kite", 32), ("disk_rectangle", 32), ("square_cavity", 48)])
    def test_bottom_half_aperture(self, medium, size):
        config = preset(f"fig4-{medium}")
        assert config.receiver_aperture == pytest.approx((math.pi, 2 * math.pi))
        assert config.direction_aperture == pytest.approx((math.pi, 2 * math.pi))
        assert (config.n_receivers, config.n_directions) == (size, size)
        assert not config.measurement_circle().is_full

    def test_presets_pass_geometry_checks(self):
        for name in preset_names():
            preset(name).validate_geometry()
