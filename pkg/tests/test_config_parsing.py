"""Tests for experiment configuration loading and validation."""

import json
import math
from pathlib import Path

import pytest

from osm_imaging.core.errors import ConfigError
from osm_imaging.experiment.config import ExperimentConfig, parse_key_value_text, parse_number

CONFIG_DIR = Path(__file__).parent.parent / "config"


def _base_config_dict() -> dict:
    return {
        "name": "unit",
        "medium": "disk",
        "disk_radius": 0.3,
        "k": 4.0,
        "n_receivers": 16,
        "n_directions": 8,
        "sampling_points": [21, 21],
        "functionals": ["I", "I2"],
    }


@pytest.mark.parametrize(
    "token, expected",
    [
        ("pi", math.pi),
        ("2pi", 2 * math.pi),
        ("-pi", -math.pi),
        ("pi/2", math.pi / 2),
        ("1.5*pi", 1.5 * math.pi),
        ("1e-8", 1e-8),
        ("3", 3.0),
        (0.25, 0.25),
    ],
)
def test_parse_number(token, expected):
    assert parse_number(token) == pytest.approx(expected)


def test_parse_number_rejects_garbage():
    with pytest.raises(ValueError):
        parse_number("two pi")


def test_key_value_text_comments_and_blank_lines():
    data = parse_key_value_text("# header\n\nk = 8   # wave number\nmedium=kite\n")
    assert data == {"k": "8", "medium": "kite"}


def test_key_value_text_rejects_duplicates():
    with pytest.raises(ConfigError) as excinfo:
        parse_key_value_text("k = 8\nk = 4\n")
    assert excinfo.value.fields == ["k"]


def test_key_value_text_rejects_malformed_line():
    with pytest.raises(ConfigError, match="Line 2"):
        parse_key_value_text("k = 8\nmedium kite\n")


def test_text_config_parses_tuples_and_pi():
    config = ExperimentConfig.from_text(
        "medium = kite\n"
        "receiver_aperture = pi, 2pi\n"
        "direction_aperture = (pi 2pi)\n"
        "sampling_points = 64 48\n"
        "functionals = I, I_far\n"
        "contrast = 0.5+0.1i\n"
        "cache = false\n"
    )
    assert config.receiver_aperture == pytest.approx((math.pi, 2 * math.pi))
    assert config.direction_aperture == pytest.approx((math.pi, 2 * math.pi))
    assert config.sampling_points == (64, 48)
    assert config.functionals == ("I", "I_far")
    assert config.contrast == 0.5 + 0.1j
    assert config.cache is False


def test_defaults():
    config = ExperimentConfig()
    assert config.medium == "kite"
    assert config.k == 8.0
    assert config.radius == 3.0
    assert config.noise_level == 0.3
    assert config.functionals == ("I", "I2")
    assert config.receiver_aperture == (0.0, 2 * math.pi)


def test_full_aperture_is_normalized():
    config = ExperimentConfig.from_dict({"receiver_aperture": [-math.pi, math.pi]})
    assert config.receiver_aperture[1] - config.receiver_aperture[0] == 2 * math.pi


@pytest.mark.parametrize(
    "key, value",
    [
        ("bogus", 1),
        ("k", -1.0),
        ("noise_level", 2.0),
        ("contrast", "0.5-0.1i"),
        ("receiver_aperture", [1.0, 0.5]),
        ("receiver_aperture", [0.0, 7.0]),
        ("sampling_domain", [2.0, -2.0, -2.0, 2.0]),
        ("sampling_points", [1, 10]),
        ("functionals", ["I", "I"]),
        ("functionals", ["I3"]),
        ("functionals", []),
        ("output_formats", ["png"]),
        ("medium", "banana"),
    ],
)
def test_invalid_field_is_named(key, value):
    data = _base_config_dict()
    data[key] = value
    with pytest.raises(ConfigError) as excinfo:
        ExperimentConfig.from_dict(data)
    assert key in excinfo.value.fields


def test_every_invalid_field_is_reported():
    data = _base_config_dict()
    data.update({"k": 0.0, "n_receivers": 0})
    with pytest.raises(ConfigError) as excinfo:
        ExperimentConfig.from_dict(data)
    assert set(excinfo.value.fields) == {"k", "n_receivers"}


def test_disk_center_requires_disk_medium():
    with pytest.raises(ConfigError):
        ExperimentConfig.from_dict({"medium": "kite", "disk_center": [0.5, 0.0]})


def test_dict_roundtrip():
    config = ExperimentConfig.from_dict({**_base_config_dict(), "contrast": "1+0.2i", "disk_center": [0.2, 0.1]})
    assert ExperimentConfig.from_dict(config.to_dict()).to_dict() == config.to_dict()
    json.dumps(config.to_dict())


def test_overrides():
    config = ExperimentConfig().with_overrides(["k=4", "noise_level = 0", "functionals=I2_far"])
    assert config.k == 4.0
    assert config.noise_level == 0.0
    assert config.functionals == ("I2_far",)


def test_overrides_switch_medium():
    config = ExperimentConfig.from_dict(_base_config_dict() | {"disk_center": [0.5, 0.0]})
    switched = config.with_overrides(["medium=kite"])
    assert switched.medium == "kite"
    assert switched.disk_center == (0.0, 0.0)


def test_malformed_override():
    with pytest.raises(ConfigError):
        ExperimentConfig().with_overrides(["k"])


def test_builders():
    config = ExperimentConfig.from_dict(_base_config_dict())
    assert config.measurement_circle().n_receivers == 16
    assert config.sampling_grid().shape == (21, 21)
    assert config.volume_grid().m == 96
    assert config.noise_spec().level == 0.3
    assert config.build_medium().name == "disk"


def test_geometry_checks():
    with pytest.raises(ConfigError) as excinfo:
        ExperimentConfig(radius=0.5).validate_geometry()
    assert excinfo.value.fields == ["radius"]
    with pytest.raises(ConfigError) as excinfo:
        ExperimentConfig(solver_box=0.5).validate_geometry()
    assert excinfo.value.fields == ["solver_box"]


def test_json_file(tmp_path):
    path = tmp_path / "run.json"
    path.write_text(json.dumps(_base_config_dict()))
    assert ExperimentConfig.from_file(path).name == "unit"


def test_bad_json_file(tmp_path):
    path = tmp_path / "run.json"
    path.write_text("{not json")
    with pytest.raises(ConfigError):
        ExperimentConfig.from_file(path)


def test_missing_file(tmp_path):
    with pytest.raises(ConfigError):
        ExperimentConfig.from_file(tmp_path / "missing.cfg")


def test_shipped_configs_load():
    near = ExperimentConfig.from_file(CONFIG_DIR / "default_config.cfg")
    far = ExperimentConfig.from_file(CONFIG_DIR / "far_field_config.json")
    assert near.medium == "kite"
    assert near.receiver_aperture == pytest.approx((0.0, 2 * math.pi))
    assert far.radius == 100.0
    assert far.functionals == ("I", "I_far", "I2_far")
