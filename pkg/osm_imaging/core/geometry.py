"""Planar geometry helpers: directions, apertures, receivers and grids.

Coordinate System:
    - x1 horizontal, x2 vertical, lengths dimensionless
    - angles in radians, counter-clockwise from the positive x1 axis

Aperture Convention:
    An aperture is a pair (theta_lo, theta_hi). A span of 2*pi is the full
    circle and is sampled half-open, [theta_lo, theta_lo + 2*pi), so the
    duplicate endpoint is excluded. Any shorter span is a partial aperture
    and is sampled closed, with both endpoints included.
    Every node carries the same quadrature weight, span / n.
"""

from __future__ import annotations

import math

import numpy as np
from numpy.typing import ArrayLike, NDArray

FULL_APERTURE = (0.0, 2.0 * math.pi)

_FULL_SPAN_TOLERANCE = 1e-12


def direction_from_angle(theta: ArrayLike) -> NDArray[np.float64]:
    """Convert angles to unit direction vectors.

    Args:
        theta: Angle(s) in radians.

    Returns:
        Array of shape (..., 2) with rows (cos theta, sin theta).

    Examples:
        >>> direction_from_angle(0.0)
        array([1., 0.])

        >>> direction_from_angle(math.pi / 2).round(12)
        array([0., 1.])
    """
    theta = np.asarray(theta, dtype=float)
    return np.stack([np.cos(theta), np.sin(theta)], axis=-1)


def angle_from_direction(direction: ArrayLike) -> NDArray[np.float64]:
    """Convert direction vectors back to angles in [0, 2*pi).

    This is the inverse of direction_from_angle.
    """
    direction = np.asarray(direction, dtype=float)
    theta = np.arctan2(direction[..., 1], direction[..., 0])
    return np.mod(theta, 2.0 * math.pi)


def aperture_span(aperture: tuple[float, float]) -> float:
    """Angular length of an aperture."""
    lo, hi = aperture
    return float(hi - lo)


def is_full_aperture(aperture: tuple[float, float]) -> bool:
    """True when the aperture covers the whole circle."""
    return abs(aperture_span(aperture) - 2.0 * math.pi) < _FULL_SPAN_TOLERANCE


def aperture_angles(n: int, aperture: tuple[float, float] = FULL_APERTURE) -> NDArray[np.float64]:
    """Uniformly spaced angles over an aperture.

    Args:
        n: Number of nodes (>= 1).
        aperture: (theta_lo, theta_hi) in radians.

    Returns:
        Array of n angles following the aperture convention of this module.
    """
    if n < 1:
        raise ValueError(f"Need at least one node, got n={n}")
    lo, hi = aperture
    if hi <= lo:
        raise ValueError(f"Aperture upper bound must exceed lower bound, got {aperture}")
    if is_full_aperture(aperture):
        return lo + 2.0 * math.pi * np.arange(n) / n
    if n == 1:
        return np.array([0.5 * (lo + hi)])
    return np.linspace(lo, hi, n)


def aperture_weight(n: int, aperture: tuple[float, float] = FULL_APERTURE) -> float:
    """Per-node quadrature weight (span / n) for an aperture sampled with n nodes."""
    return aperture_span(aperture) / n


def incident_directions(n: int, aperture: tuple[float, float] = FULL_APERTURE) -> NDArray[np.float64]:
    """Incident plane-wave directions d = (cos theta, sin theta) over an aperture.

    Returns:
        Array of shape (n, 2).
    """
    return direction_from_angle(aperture_angles(n, aperture))


def circle_nodes(
    radius: float,
    n: int,
    aperture: tuple[float, float] = FULL_APERTURE,
) -> tuple[NDArray[np.float64], NDArray[np.float64]]:
    """Nodes on a circle of given radius with their outward unit normals.

    Returns:
        Tuple of (points, normals), each of shape (n, 2), with
        points = radius * normals.
    """
    normals = direction_from_angle(aperture_angles(n, aperture))
    return radius * normals, normals
