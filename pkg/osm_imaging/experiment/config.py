"""Experiment configuration.

A run is described by one flat set of keys. Files are either JSON objects
(``*.json``) or human-written ``key = value`` text:

    # near-field kite reconstruction
    medium = kite
    k = 8
    radius = 3
    n_receivers = 64
    receiver_aperture = 0, 2pi
    functionals = I, I2

Tuples are comma- or whitespace-separated. Angles and other numbers may be
written with ``pi`` (``pi``, ``2pi``, ``1.5*pi``, ``pi/2``).
"""

from __future__ import annotations

import json
import math
import re
from pathlib import Path
from typing import Any, Iterable, Literal, Optional, Union

from pydantic import BaseModel, ConfigDict, Field, ValidationError, field_validator, model_validator

from ..core.errors import ConfigError
from ..core.geometry import FULL_APERTURE
from ..core.models import FUNCTIONALS, MeasurementCircle, NoiseSpec, SamplingGrid
from ..core.shapes import ContrastMap, medium_from_name
from ..forward.solver import VolumeGrid

_PI_TOKEN = re.compile(r"^([+-]?(?:\d+\.?\d*|\.\d+)?(?:e[+-]?\d+)?)\*?pi(?:/(\d+(?:\.\d*)?))?$")

_NUMBER_FIELDS = ("k", "disk_radius", "radius", "noise_level", "solver_box", "solver_tolerance")
_TUPLE_FIELDS = (
    "disk_center",
    "sampling_domain",
    "sampling_points",
    "receiver_aperture",
    "direction_aperture",
    "functionals",
    "output_formats",
)
_NUMERIC_TUPLE_FIELDS = ("disk_center", "sampling_domain", "receiver_aperture", "direction_aperture")
_APERTURE_TOLERANCE = 1e-9


def parse_number(token: Union[str, float, int]) -> float:
    """Parse a number that may be written in multiples of pi.

    Examples:
        >>> parse_number("2pi") == 2 * math.pi
        True
        >>> parse_number("pi/2") == math.pi / 2
        True
    """
    if not isinstance(token, str):
        return float(token)
    text = token.strip().lower().replace(" ", "")
    match = _PI_TOKEN.match(text)
    if match is None:
        return float(text)
    coefficient, denominator = match.groups()
    if coefficient in ("", "+"):
        value = 1.0
    elif coefficient == "-":
        value = -1.0
    else:
        value = float(coefficient)
    value *= math.pi
    if denominator:
        value /= float(denominator)
    return value


def _split(value: str) -> list[str]:
    return [part for part in re.split(r"[,\s]+", value.strip().strip("()[]")) if part]


def parse_key_value_text(text: str) -> dict[str, str]:
    """Parse ``key = value`` lines; ``#`` starts a comment.

    Raises:
        ConfigError: On malformed lines or duplicate keys.
    """
    data: dict[str, str] = {}
    for line_no, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"Line {line_no}: expected 'key = value', got '{raw.strip()}'")
        key, value = (part.strip() for part in line.split("=", 1))
        if not key:
            raise ConfigError(f"Line {line_no}: missing key")
        if key in data:
            raise ConfigError(f"Line {line_no}: duplicate key '{key}'", fields=[key])
        data[key] = value
    return data


class ExperimentConfig(BaseModel):
    """Declarative description of one reconstruction run.

    Attributes:
        name: Run name, used for output file names.
        medium: Catalogue medium ("kite", "disk_rectangle", "square_cavity", "disk").
        contrast: Optional eta overriding the catalogue value.
        disk_center: Center of the "disk" medium.
        disk_radius: Radius of the "disk" medium.
        k: Wave number.
        sampling_domain: (x1lo, x1hi, x2lo, x2hi) of the sampling grid.
        sampling_points: (n1, n2) sampling points.
        radius: Measurement radius R.
        n_receivers: Receivers N_x on the measurement circle.
        receiver_aperture: Angular interval of the receivers.
        n_directions: Incident directions N_d.
        direction_aperture: Angular interval of the incident directions.
        xhat_count: Observation directions for I and I_far (default N_d).
        noise_level: Relative noise level delta.
        seed: Noise seed.
        functionals: Indicators to evaluate.
        solver_grid: Volume-grid cells per axis m.
        solver_box: Half-width of the solver box.
        solver_tolerance: Relative GMRES tolerance.
        output_dir: Directory for images, datasets and the report.
        output_formats: Image formats to write.
        cache: Reuse clean datasets across runs.
    """

    model_config = ConfigDict(extra="forbid", frozen=True, arbitrary_types_allowed=True)

    name: str = "experiment"
    medium: Literal["kite", "disk_rectangle", "square_cavity", "disk"] = "kite"
    contrast: Optional[complex] = None
    disk_center: tuple[float, float] = (0.0, 0.0)
    disk_radius: float = Field(0.4, gt=0)
    k: float = Field(8.0, gt=0)
    sampling_domain: tuple[float, float, float, float] = (-2.0, 2.0, -2.0, 2.0)
    sampling_points: tuple[int, int] = (96, 96)
    radius: float = Field(3.0, gt=0)
    n_receivers: int = Field(64, ge=1)
    receiver_aperture: tuple[float, float] = FULL_APERTURE
    n_directions: int = Field(64, ge=1)
    direction_aperture: tuple[float, float] = FULL_APERTURE
    xhat_count: Optional[int] = Field(None, ge=1)
    noise_level: float = Field(0.3, ge=0.0, le=1.5)
    seed: int = 0
    functionals: tuple[str, ...] = ("I", "I2")
    solver_grid: int = Field(96, ge=2)
    solver_box: float = Field(1.2, gt=0)
    solver_tolerance: float = Field(1e-8, gt=0)
    output_dir: str = "output"
    output_formats: tuple[str, ...] = ("csv", "pgm")
    cache: bool = True

    @field_validator(*_NUMBER_FIELDS, mode="before")
    @classmethod
    def _parse_numbers(cls, value: Any) -> Any:
        return parse_number(value) if isinstance(value, str) else value

    @field_validator(*_TUPLE_FIELDS, mode="before")
    @classmethod
    def _parse_tuples(cls, value: Any, info) -> Any:
        if isinstance(value, str):
            value = _split(value)
        if info.field_name in _NUMERIC_TUPLE_FIELDS and isinstance(value, (list, tuple)):
            value = [parse_number(v) for v in value]
        return value

    @field_validator("contrast", mode="before")
    @classmethod
    def _parse_contrast(cls, value: Any) -> Any:
        if value is None or isinstance(value, complex):
            return value
        if isinstance(value, (int, float)):
            return complex(value)
        if isinstance(value, (list, tuple)) and len(value) == 2:
            return complex(float(value[0]), float(value[1]))
        if isinstance(value, str):
            text = value.strip().replace(" ", "")
            if text.lower() in ("", "none", "default"):
                return None
            return complex(text.replace("i", "j"))
        raise ValueError(f"cannot interpret {value!r} as a complex contrast")

    @field_validator("contrast")
    @classmethod
    def _contrast_is_absorbing(cls, value: Optional[complex]) -> Optional[complex]:
        if value is not None and value.imag < 0:
            raise ValueError("contrast must satisfy Im(eta) >= 0")
        return value

    @field_validator("receiver_aperture", "direction_aperture")
    @classmethod
    def _check_aperture(cls, value: tuple[float, float]) -> tuple[float, float]:
        lo, hi = value
        if not hi > lo:
            raise ValueError("aperture upper bound must exceed the lower bound")
        if hi - lo > 2.0 * math.pi + _APERTURE_TOLERANCE:
            raise ValueError("aperture cannot exceed the full circle")
        if abs(hi - lo - 2.0 * math.pi) <= _APERTURE_TOLERANCE:
            return (lo, lo + 2.0 * math.pi)
        return value

    @field_validator("sampling_domain")
    @classmethod
    def _check_domain(cls, value: tuple[float, float, float, float]) -> tuple[float, float, float, float]:
        x1lo, x1hi, x2lo, x2hi = value
        if not (x1hi > x1lo and x2hi > x2lo):
            raise ValueError("sampling ranges must be increasing intervals")
        return value

    @field_validator("sampling_points")
    @classmethod
    def _check_points(cls, value: tuple[int, int]) -> tuple[int, int]:
        if min(value) < 2:
            raise ValueError("need at least 2 sampling points per axis")
        return value

    @field_validator("functionals")
    @classmethod
    def _check_functionals(cls, value: tuple[str, ...]) -> tuple[str, ...]:
        if not value:
            raise ValueError("at least one functional is required")
        unknown = [f for f in value if f not in FUNCTIONALS]
        if unknown:
            raise ValueError(f"unknown functionals {unknown}, expected a subset of {list(FUNCTIONALS)}")
        if len(set(value)) != len(value):
            raise ValueError("functionals must not repeat")
        return value

    @field_validator("output_formats")
    @classmethod
    def _check_formats(cls, value: tuple[str, ...]) -> tuple[str, ...]:
        unknown = [f for f in value if f not in ("csv", "pgm")]
        if unknown:
            raise ValueError(f"unknown output formats {unknown}, expected a subset of ['csv', 'pgm']")
        return value

    @model_validator(mode="after")
    def _check_disk_fields(self) -> "ExperimentConfig":
        if self.medium != "disk" and self.disk_center != (0.0, 0.0):
            raise ValueError("disk_center only applies to medium = disk")
        return self

    @classmethod
    def from_dict(cls, data: dict) -> "ExperimentConfig":
        """Create a configuration from a dictionary.

        Raises:
            ConfigError: Naming every offending field.
        """
        try:
            return cls.model_validate(data)
        except ValidationError as exc:
            fields = []
            messages = []
            for error in exc.errors():
                field = ".".join(str(part) for part in error["loc"]) or "config"
                fields.append(field)
                messages.append(f"{field}: {error['msg']}")
            raise ConfigError("Invalid configuration: " + "; ".join(messages), fields=fields) from None

    @classmethod
    def from_text(cls, text: str) -> "ExperimentConfig":
        """Create a configuration from ``key = value`` text."""
        return cls.from_dict(parse_key_value_text(text))

    @classmethod
    def from_file(cls, path: Union[str, Path]) -> "ExperimentConfig":
        """Load a configuration from a JSON or key-value text file."""
        path = Path(path)
        try:
            text = path.read_text()
        except OSError as exc:
            raise ConfigError(f"Cannot read config file {path}: {exc}") from exc
        if path.suffix.lower() == ".json":
            try:
                data = json.loads(text)
            except json.JSONDecodeError as exc:
                raise ConfigError(f"Invalid JSON in {path}: {exc}") from exc
            if not isinstance(data, dict):
                raise ConfigError(f"{path} must contain a JSON object")
            return cls.from_dict(data)
        return cls.from_text(text)

    def to_dict(self) -> dict:
        """Convert to a JSON-friendly dictionary."""
        data = self.model_dump()
        data["contrast"] = None if self.contrast is None else str(self.contrast)
        for key, value in data.items():
            if isinstance(value, tuple):
                data[key] = list(value)
        return data

    def with_overrides(self, overrides: Iterable[str]) -> "ExperimentConfig":
        """Copy with ``key=value`` overrides applied.

        Raises:
            ConfigError: On malformed overrides or invalid values.
        """
        updates = parse_key_value_text("\n".join(overrides))
        data = self.to_dict()
        data.update(updates)
        if data["medium"] != "disk" and "disk_center" not in updates:
            data.pop("disk_center")
        return self.from_dict(data)

    def build_medium(self) -> ContrastMap:
        """The contrast map this run images."""
        return medium_from_name(
            self.medium,
            contrast=self.contrast,
            disk_center=self.disk_center,
            disk_radius=self.disk_radius,
        )

    def measurement_circle(self) -> MeasurementCircle:
        """Receiver geometry."""
        return MeasurementCircle(
            radius=self.radius,
            n_receivers=self.n_receivers,
            aperture=self.receiver_aperture,
        )

    def sampling_grid(self) -> SamplingGrid:
        """Sampling grid for the images."""
        x1lo, x1hi, x2lo, x2hi = self.sampling_domain
        return SamplingGrid(
            x1_range=(x1lo, x1hi),
            x2_range=(x2lo, x2hi),
            n1=self.sampling_points[0],
            n2=self.sampling_points[1],
        )

    def volume_grid(self) -> VolumeGrid:
        """Solver grid."""
        return VolumeGrid(half_width=self.solver_box, m=self.solver_grid)

    def noise_spec(self) -> NoiseSpec:
        """Noise level and seed."""
        return NoiseSpec(level=self.noise_level, seed=self.seed)

    def validate_geometry(self) -> ContrastMap:
        """Check geometric preconditions that need the medium.

        Returns:
            The medium.

        Raises:
            ConfigError: If the receivers do not enclose the medium or the
                solver box does not cover it.
        """
        medium = self.build_medium()
        if not medium.is_zero and self.radius <= medium.support_radius:
            raise ConfigError(
                f"radius {self.radius} must exceed the medium support radius {medium.support_radius:.3f}",
                fields=["radius"],
            )
        if not self.volume_grid().covers(medium):
            raise ConfigError(
                f"solver_box {self.solver_box} does not cover the medium bounding box {medium.bounding_box()}",
                fields=["solver_box"],
            )
        return medium


