"""Scatterer shapes, contrast maps and the named medium catalogue.

Shapes are open sets, matching the catalogue definitions: a point on a
disk rim or rectangle edge is outside. Every shape answers a vectorized
membership query on points of shape (..., 2) and reports an axis-aligned
bounding box (x1lo, x1hi, x2lo, x2hi).
"""

from __future__ import annotations

import math
from abc import ABC, abstractmethod
from dataclasses import dataclass, field
from typing import Optional, Sequence

import numpy as np
from numpy.typing import ArrayLike, NDArray
from scipy.spatial import cKDTree

from .errors import ConfigError

BoundingBox = tuple[float, float, float, float]

KITE_SEGMENTS = 4096
MEDIUM_NAMES = ("kite", "disk_rectangle", "square_cavity", "disk")

_CHUNK = 256


def kite_boundary(t: ArrayLike) -> NDArray[np.float64]:
    """Point(s) on the kite curve.

    x(t) = ((cos t + 0.65 cos 2t - 0.65) / 2, 1.5 sin t / 2.5)

    Examples:
        >>> kite_boundary(0.0)
        array([0.5, 0. ])
    """
    t = np.asarray(t, dtype=float)
    x1 = 0.5 * (np.cos(t) + 0.65 * np.cos(2.0 * t) - 0.65)
    x2 = 1.5 * np.sin(t) / 2.5
    return np.stack([x1, x2], axis=-1)


def _as_points(points: ArrayLike) -> NDArray[np.float64]:
    pts = np.asarray(points, dtype=float)
    if pts.shape[-1] != 2:
        raise ValueError(f"Points must have a trailing dimension of 2, got shape {pts.shape}")
    return pts


class Shape(ABC):
    """Base class for scatterer shapes."""

    @abstractmethod
    def contains(self, points: ArrayLike) -> NDArray[np.bool_]:
        """Membership mask for points of shape (..., 2)."""

    @abstractmethod
    def bounding_box(self) -> BoundingBox:
        """Axis-aligned box (x1lo, x1hi, x2lo, x2hi) enclosing the shape."""


@dataclass(frozen=True)
class Disk(Shape):
    """Open disk |x - center| < radius."""

    center: tuple[float, float]
    radius: float

    def __post_init__(self):
        if self.radius <= 0:
            raise ValueError(f"Disk radius must be positive, got {self.radius}")

    def contains(self, points: ArrayLike) -> NDArray[np.bool_]:
        pts = _as_points(points)
        dx = pts[..., 0] - self.center[0]
        dy = pts[..., 1] - self.center[1]
        return dx * dx + dy * dy < self.radius * self.radius

    def bounding_box(self) -> BoundingBox:
        c1, c2 = self.center
        r = self.radius
        return (c1 - r, c1 + r, c2 - r, c2 + r)


@dataclass(frozen=True)
class Rectangle(Shape):
    """Open axis-aligned rectangle |x_i - center_i| < half_widths_i."""

    center: tuple[float, float]
    half_widths: tuple[float, float]

    def __post_init__(self):
        if min(self.half_widths) <= 0:
            raise ValueError(f"Rectangle half-widths must be positive, got {self.half_widths}")

    def contains(self, points: ArrayLike) -> NDArray[np.bool_]:
        pts = _as_points(points)
        return (np.abs(pts[..., 0] - self.center[0]) < self.half_widths[0]) & (
            np.abs(pts[..., 1] - self.center[1]) < self.half_widths[1]
        )

    def bounding_box(self) -> BoundingBox:
        c1, c2 = self.center
        w1, w2 = self.half_widths
        return (c1 - w1, c1 + w1, c2 - w2, c2 + w2)


@dataclass(frozen=True)
class Kite(Shape):
    """Region enclosed by the kite curve, shifted by ``center``.

    Membership is decided by the winding number against a closed polyline
    with ``n_segments`` edges sampled uniformly in the curve parameter.
    """

    center: tuple[float, float] = (0.0, 0.0)
    n_segments: int = KITE_SEGMENTS
    _vertices: NDArray = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        t = 2.0 * math.pi * np.arange(self.n_segments) / self.n_segments
        vertices = kite_boundary(t) + np.asarray(self.center, dtype=float)
        object.__setattr__(self, "_vertices", vertices)

    @property
    def vertices(self) -> NDArray[np.float64]:
        """Polyline vertices, shape (n_segments, 2); the last edge closes to vertex 0."""
        return self._vertices

    def winding_number(self, points: ArrayLike) -> NDArray[np.int64]:
        """Winding number of the polyline around each point."""
        pts = _as_points(points)
        flat = pts.reshape(-1, 2)
        a = self._vertices
        b = np.roll(a, -1, axis=0)
        edge = b - a
        out = np.zeros(len(flat), dtype=np.int64)

        for start in range(0, len(flat), _CHUNK):
            p = flat[start:start + _CHUNK]
            px = p[:, 0:1]
            py = p[:, 1:2]
            # Cross product of the edge with (p - a): positive when p is left of the edge
            side = edge[None, :, 0] * (py - a[None, :, 1]) - edge[None, :, 1] * (px - a[None, :, 0])
            upward = (a[None, :, 1] <= py) & (b[None, :, 1] > py) & (side > 0)
            downward = (a[None, :, 1] > py) & (b[None, :, 1] <= py) & (side < 0)
            out[start:start + _CHUNK] = upward.sum(axis=1) - downward.sum(axis=1)

        return out.reshape(pts.shape[:-1])

    def contains(self, points: ArrayLike) -> NDArray[np.bool_]:
        return self.winding_number(points) != 0

    def bounding_box(self) -> BoundingBox:
        v = self._vertices
        # Polyline chords stay inside the curve's hull; pad for the sagitta
        pad = 1e-3
        return (
            float(v[:, 0].min()) - pad,
            float(v[:, 0].max()) + pad,
            float(v[:, 1].min()) - pad,
            float(v[:, 1].max()) + pad,
        )


@dataclass(frozen=True)
class Union(Shape):
    """Union of shapes."""

    parts: tuple[Shape, ...]

    def __post_init__(self):
        if not self.parts:
            raise ValueError("Union needs at least one part")

    def contains(self, points: ArrayLike) -> NDArray[np.bool_]:
        mask = self.parts[0].contains(points)
        for part in self.parts[1:]:
            mask = mask | part.contains(points)
        return mask

    def bounding_box(self) -> BoundingBox:
        boxes = np.array([p.bounding_box() for p in self.parts])
        return (boxes[:, 0].min(), boxes[:, 1].max(), boxes[:, 2].min(), boxes[:, 3].max())


@dataclass(frozen=True)
class Difference(Shape):
    """Points of ``outer`` that are not in ``inner``."""

    outer: Shape
    inner: Shape

    def contains(self, points: ArrayLike) -> NDArray[np.bool_]:
        return self.outer.contains(points) & ~self.inner.contains(points)

    def bounding_box(self) -> BoundingBox:
        return self.outer.bounding_box()


@dataclass(frozen=True)
class SquareWithCavity(Shape):
    """Open square |x_i| < half_width minus the closed disk |x| <= cavity_radius."""

    half_width: float = 0.5
    cavity_radius: float = 0.3

    def __post_init__(self):
        if not (0 < self.cavity_radius < self.half_width):
            raise ValueError(
                f"Cavity radius {self.cavity_radius} must lie in (0, {self.half_width})"
            )

    def contains(self, points: ArrayLike) -> NDArray[np.bool_]:
        pts = _as_points(points)
        in_square = (np.abs(pts[..., 0]) < self.half_width) & (np.abs(pts[..., 1]) < self.half_width)
        in_cavity = pts[..., 0] ** 2 + pts[..., 1] ** 2 <= self.cavity_radius ** 2
        return in_square & ~in_cavity

    def bounding_box(self) -> BoundingBox:
        w = self.half_width
        return (-w, w, -w, w)


@dataclass(frozen=True)
class ContrastMap:
    """Piecewise-constant contrast function eta.

    Attributes:
        pieces: Sequence of (shape, eta) pairs. A point takes the value of the
            first piece containing it; the background is 0.
        name: Optional catalogue name, used in reports.
    """

    pieces: tuple[tuple[Shape, complex], ...]
    name: Optional[str] = None

    def __post_init__(self):
        for _, eta in self.pieces:
            if complex(eta).imag < 0:
                raise ConfigError(f"Contrast must satisfy Im(eta) >= 0, got {eta}", fields=["contrast"])

    @property
    def is_zero(self) -> bool:
        """True when the map has no nonzero piece."""
        return all(complex(eta) == 0 for _, eta in self.pieces)

    def bounding_box(self) -> BoundingBox:
        """Box enclosing every piece; a degenerate box at the origin when empty."""
        if not self.pieces:
            return (0.0, 0.0, 0.0, 0.0)
        boxes = np.array([shape.bounding_box() for shape, _ in self.pieces])
        return (
            float(boxes[:, 0].min()),
            float(boxes[:, 1].max()),
            float(boxes[:, 2].min()),
            float(boxes[:, 3].max()),
        )

    @property
    def support_radius(self) -> float:
        """Radius of the smallest origin-centered circle enclosing the bounding box."""
        x1lo, x1hi, x2lo, x2hi = self.bounding_box()
        return math.hypot(max(abs(x1lo), abs(x1hi)), max(abs(x2lo), abs(x2hi)))

    def contains(self, points: ArrayLike) -> NDArray[np.bool_]:
        """Mask of points inside the support of the map."""
        pts = _as_points(points)
        mask = np.zeros(pts.shape[:-1], dtype=bool)
        for shape, eta in self.pieces:
            if complex(eta) != 0:
                mask |= shape.contains(pts)
        return mask

    def scaled(self, factor: float) -> "ContrastMap":
        """Map with every eta multiplied by ``factor``."""
        return ContrastMap(tuple((shape, complex(eta) * factor) for shape, eta in self.pieces), self.name)


def contrast_eval(contrast: ContrastMap, points: ArrayLike):
    """Evaluate eta at one point or an array of points.

    Args:
        contrast: The contrast map.
        points: A point (2,) or points of shape (..., 2).

    Returns:
        Complex value (scalar input) or complex array of shape (...).

    Examples:
        >>> contrast_eval(medium_from_name("kite"), (5.0, 5.0))
        0j
    """
    pts = _as_points(points)
    values = np.zeros(pts.shape[:-1], dtype=complex)
    assigned = np.zeros(pts.shape[:-1], dtype=bool)
    for shape, eta in contrast.pieces:
        inside = shape.contains(pts) & ~assigned
        values[inside] = complex(eta)
        assigned |= inside
    return complex(values[()]) if values.ndim == 0 else values


def medium_from_name(
    name: str,
    contrast: Optional[complex] = None,
    disk_center: Sequence[float] = (0.0, 0.0),
    disk_radius: float = 0.4,
) -> ContrastMap:
    """Build a catalogue medium.

    Args:
        name: One of "kite", "disk_rectangle", "square_cavity", "disk".
        contrast: Optional eta overriding the catalogue value.
        disk_center: Center of the "disk" medium.
        disk_radius: Radius of the "disk" medium.

    Returns:
        ContrastMap for the medium.

    Raises:
        ConfigError: If the name is unknown.
    """
    if name == "kite":
        eta = 0.5 + 0.1j if contrast is None else contrast
        pieces = ((Kite(), eta),)
    elif name == "disk_rectangle":
        eta = 0.5 if contrast is None else contrast
        shape = Union(
            (
                Disk(center=(-0.6, 0.6), radius=0.4),
                Rectangle(center=(0.6, -0.6), half_widths=(0.45, 0.25)),
            )
        )
        pieces = ((shape, eta),)
    elif name == "square_cavity":
        eta = 1.0 if contrast is None else contrast
        pieces = ((SquareWithCavity(half_width=0.5, cavity_radius=0.3), eta),)
    elif name == "disk":
        eta = 0.5 if contrast is None else contrast
        pieces = ((Disk(center=(float(disk_center[0]), float(disk_center[1])), radius=disk_radius), eta),)
    else:
        raise ConfigError(
            f"Unknown medium '{name}', expected one of {', '.join(MEDIUM_NAMES)}", fields=["medium"]
        )
    return ContrastMap(pieces=tuple((s, complex(v)) for s, v in pieces), name=name)


def distance_to_support(
    contrast: ContrastMap,
    points: ArrayLike,
    resolution: int = 400,
) -> NDArray[np.float64]:
    """Approximate distance from each point to the support of the map.

    The support is sampled on a ``resolution`` x ``resolution`` grid over its
    bounding box; distances are nearest-sample distances and are 0 inside.
    Accuracy is about one sample spacing.
    """
    pts = _as_points(points)
    flat = pts.reshape(-1, 2)
    x1lo, x1hi, x2lo, x2hi = contrast.bounding_box()
    a1 = np.linspace(x1lo, x1hi, resolution)
    a2 = np.linspace(x2lo, x2hi, resolution)
    g1, g2 = np.meshgrid(a1, a2, indexing="ij")
    samples = np.column_stack([g1.ravel(), g2.ravel()])
    samples = samples[contrast.contains(samples)]
    if len(samples) == 0:
        return np.full(pts.shape[:-1], np.inf)

    dist, _ = cKDTree(samples).query(flat)
    dist = np.where(contrast.contains(flat), 0.0, dist)
    return dist.reshape(pts.shape[:-1])
