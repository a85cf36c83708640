"""Data models shared by the synthesis and imaging stages."""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from typing import Optional

import numpy as np

from .geometry import (
    FULL_APERTURE,
    aperture_weight,
    circle_nodes,
    incident_directions,
    is_full_aperture,
)

FUNCTIONALS = ("I", "I_far", "I2", "I2_far")


@dataclass(frozen=True)
class MeasurementCircle:
    """Receivers on the circle |x| = R.

    Attributes:
        radius: Circle radius R.
        n_receivers: Number of receivers N_x.
        aperture: Angular interval (theta_lo, theta_hi) in radians.
    """

    radius: float
    n_receivers: int
    aperture: tuple[float, float] = FULL_APERTURE

    def __post_init__(self):
        if self.radius <= 0:
            raise ValueError(f"Circle radius must be positive, got {self.radius}")
        if self.n_receivers < 1:
            raise ValueError(f"Need at least one receiver, got {self.n_receivers}")

    @property
    def is_full(self) -> bool:
        """Whether the receivers cover the whole circle."""
        return is_full_aperture(self.aperture)

    @property
    def weight(self) -> float:
        """Arc-length quadrature weight per receiver: R * span / N_x."""
        return self.radius * aperture_weight(self.n_receivers, self.aperture)

    def nodes(self) -> tuple[np.ndarray, np.ndarray]:
        """Receiver positions and outward normals, each of shape (N_x, 2)."""
        return circle_nodes(self.radius, self.n_receivers, self.aperture)

    def to_dict(self) -> dict:
        """Convert to dictionary."""
        return {
            "radius": self.radius,
            "n_receivers": self.n_receivers,
            "aperture": list(self.aperture),
        }


@dataclass(frozen=True)
class SamplingGrid:
    """Rectangular grid of sampling points z.

    Attributes:
        x1_range: Closed interval (lo, hi) along x1.
        x2_range: Closed interval (lo, hi) along x2.
        n1: Number of points along x1 (>= 2).
        n2: Number of points along x2 (>= 2).
    """

    x1_range: tuple[float, float] = (-2.0, 2.0)
    x2_range: tuple[float, float] = (-2.0, 2.0)
    n1: int = 96
    n2: int = 96

    def __post_init__(self):
        if self.n1 < 2 or self.n2 < 2:
            raise ValueError(f"Sampling grid needs at least 2 points per axis, got {self.n1}x{self.n2}")
        if self.x1_range[1] <= self.x1_range[0] or self.x2_range[1] <= self.x2_range[0]:
            raise ValueError("Sampling ranges must be increasing intervals")

    @property
    def shape(self) -> tuple[int, int]:
        """Image shape (n1, n2)."""
        return (self.n1, self.n2)

    def axes(self) -> tuple[np.ndarray, np.ndarray]:
        """Coordinates along x1 and x2."""
        return (
            np.linspace(self.x1_range[0], self.x1_range[1], self.n1),
            np.linspace(self.x2_range[0], self.x2_range[1], self.n2),
        )

    def points(self) -> np.ndarray:
        """All sampling points, shape (n1 * n2, 2), x1 index varying slowest."""
        a1, a2 = self.axes()
        g1, g2 = np.meshgrid(a1, a2, indexing="ij")
        return np.column_stack([g1.ravel(), g2.ravel()])


@dataclass(frozen=True)
class NoiseSpec:
    """Relative noise level and RNG seed.

    Attributes:
        level: Relative Frobenius-norm noise level delta, in [0, 1.5].
        seed: Master seed; independent streams are derived for each matrix.
    """

    level: float = 0.0
    seed: int = 0

    def __post_init__(self):
        if not (0.0 <= self.level <= 1.5):
            raise ValueError(f"Noise level must lie in [0, 1.5], got {self.level}")


@dataclass(frozen=True, eq=False)
class CauchyDataset:
    """Multi-static Cauchy data on a measurement circle.

    Attributes:
        k: Wave number.
        circle: Receiver geometry.
        n_directions: Number of incident directions N_d.
        direction_aperture: Aperture of the incident directions.
        u: Scattered field, complex array of shape (N_x, N_d).
        du: Normal derivative of the scattered field, same shape, or None.
        noise_level: Noise level already applied to the data.
    """

    k: float
    circle: MeasurementCircle
    n_directions: int
    direction_aperture: tuple[float, float]
    u: np.ndarray
    du: Optional[np.ndarray] = None
    noise_level: float = 0.0

    def __post_init__(self):
        expected = (self.circle.n_receivers, self.n_directions)
        if self.u.shape != expected:
            raise ValueError(f"u has shape {self.u.shape}, expected {expected}")
        if self.du is not None and self.du.shape != expected:
            raise ValueError(f"du has shape {self.du.shape}, expected {expected}")
        if not np.all(np.isfinite(self.u)) or (self.du is not None and not np.all(np.isfinite(self.du))):
            raise ValueError("Dataset entries must be finite")

    @property
    def has_normal_derivative(self) -> bool:
        """Whether the dataset carries the full Cauchy pair."""
        return self.du is not None

    @property
    def directions(self) -> np.ndarray:
        """Incident directions, shape (N_d, 2)."""
        return incident_directions(self.n_directions, self.direction_aperture)

    @property
    def direction_weight(self) -> float:
        """Quadrature weight per incident direction."""
        return aperture_weight(self.n_directions, self.direction_aperture)

    def with_data(self, u: np.ndarray, du: Optional[np.ndarray], noise_level: float) -> "CauchyDataset":
        """Copy of this dataset with replaced matrices."""
        return replace(self, u=u, du=du, noise_level=noise_level)

    def without_normal_derivative(self) -> "CauchyDataset":
        """Copy that keeps only the scattered field."""
        return replace(self, du=None)

    def summary(self) -> dict:
        """Short description for reports."""
        return {
            "k": self.k,
            "circle": self.circle.to_dict(),
            "n_directions": self.n_directions,
            "direction_aperture": list(self.direction_aperture),
            "has_normal_derivative": self.has_normal_derivative,
            "noise_level": self.noise_level,
        }


@dataclass(frozen=True, eq=False)
class FarFieldMatrix:
    """Far-field pattern u^inf(xhat, d) on direction sets.

    Attributes:
        xhat: Observation directions, shape (n_xhat, 2).
        directions: Incident directions, shape (N_d, 2).
        values: Complex array of shape (n_xhat, N_d).
    """

    xhat: np.ndarray
    directions: np.ndarray
    values: np.ndarray

    def __post_init__(self):
        expected = (len(self.xhat), len(self.directions))
        if self.values.shape != expected:
            raise ValueError(f"Far-field values have shape {self.values.shape}, expected {expected}")


@dataclass(frozen=True, eq=False)
class IndicatorImage:
    """Indicator values over a sampling grid.

    Attributes:
        grid: The sampling grid.
        values: Non-negative real array of shape (n1, n2).
        functional: One of "I", "I_far", "I2", "I2_far".
        k: Wave number of the data.
        delta: Noise level of the data.
        normalized: Whether values were divided by their maximum.
    """

    grid: SamplingGrid
    values: np.ndarray
    functional: str
    k: float
    delta: float = 0.0
    normalized: bool = False
    metadata: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.values.shape != self.grid.shape:
            raise ValueError(f"Image values have shape {self.values.shape}, expected {self.grid.shape}")

    @property
    def argmax_point(self) -> np.ndarray:
        """Sampling point where the indicator is largest."""
        i1, i2 = np.unravel_index(int(np.argmax(self.values)), self.values.shape)
        a1, a2 = self.grid.axes()
        return np.array([a1[i1], a2[i2]])

    @property
    def is_degenerate(self) -> bool:
        """True for an all-zero image."""
        return not np.any(self.values > 0.0)
