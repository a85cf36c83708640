"""Separation-of-variables solution for a homogeneous penetrable disk.

For a disk of radius a and contrast eta0 centered at the origin, the
interior wave number is k_i = k sqrt(1 + eta0). Matching u and du/dr at
r = a mode by mode gives the scattered field

    u_sc(rho, phi) = sum_n b_n H_n(k rho) exp(i n (phi - theta_d))

    b_n = i^n [k_i J_n'(k_i a) J_n(k a) - k J_n(k_i a) J_n'(k a)]
              / [k J_n(k_i a) H_n'(k a) - k_i J_n'(k_i a) H_n(k a)]

A disk centered at c is handled by translation: u_sc(x) = exp(i k c.d) u0(x - c),
and the far field picks up exp(i k c.(d - xhat)).

The series is evaluated with scipy.special and is independent of the
volume solver; it serves as the reference for validation.
"""

from __future__ import annotations

import logging
import math
from typing import Optional

import numpy as np
from numpy.typing import ArrayLike, NDArray
from scipy.special import h1vp, hankel1, jv, jvp

from ..core.errors import ConfigError
from ..core.geometry import angle_from_direction

logger = logging.getLogger(__name__)

TRUNCATION_MARGIN = 20
TAIL_TOLERANCE = 1e-12


def truncation_order(eta0: complex, radius: float, k: float) -> int:
    """Default series order: largest of k a and |k_i| a, plus a fixed margin."""
    k_i = k * np.sqrt(1.0 + complex(eta0))
    return int(math.ceil(max(k * radius, abs(k_i) * radius))) + TRUNCATION_MARGIN


def disk_series_coefficients(eta0: complex, radius: float, k: float, order: int) -> tuple[NDArray, NDArray]:
    """Mode indices n = -order..order and the scattering coefficients b_n."""
    n = np.arange(-order, order + 1)
    k_i = k * np.sqrt(1.0 + complex(eta0))
    ka = k * radius
    kia = k_i * radius
    j_in, dj_in = jv(n, kia), jvp(n, kia)
    j_out, dj_out = jv(n, ka), jvp(n, ka)
    h_out, dh_out = hankel1(n, ka), h1vp(n, ka)
    numerator = k_i * dj_in * j_out - k * j_in * dj_out
    denominator = k * j_in * dh_out - k_i * dj_in * h_out
    return n, (1j ** n) * numerator / denominator


def _local_polar(x: NDArray, center: NDArray) -> tuple[NDArray, NDArray, NDArray]:
    local = x - center
    rho = np.hypot(local[:, 0], local[:, 1])
    phi = np.arctan2(local[:, 1], local[:, 0])
    return local, rho, phi


def _check_tail(terms: NDArray, total: NDArray) -> None:
    tail = np.max(np.abs(terms[:, [0, -1]]), initial=0.0)
    scale = np.max(np.abs(total), initial=0.0)
    if scale > 0 and tail > TAIL_TOLERANCE * scale:
        logger.warning("Disk series truncation tail %.2e exceeds %.0e of the partial sum", tail / scale, TAIL_TOLERANCE)


def _prepare(eta0, radius, k, x, direction, center, order):
    if radius <= 0 or k <= 0:
        raise ConfigError("Disk radius and wave number must be positive", fields=["disk_radius", "k"])
    points = np.atleast_2d(np.asarray(x, dtype=float))
    c = np.asarray(center, dtype=float)
    d = np.asarray(direction, dtype=float)
    local, rho, phi = _local_polar(points, c)
    if np.any(rho <= radius):
        raise ConfigError("Disk series is only evaluated outside the disk", fields=["disk_radius"])
    if order is None:
        order = truncation_order(eta0, radius, k)
    n, b = disk_series_coefficients(eta0, radius, k, order)
    theta_d = float(angle_from_direction(d))
    shift = np.exp(1j * k * float(c @ d))
    return points, local, rho, phi, n, b, theta_d, shift


def disk_series_oracle(
    eta0: complex,
    radius: float,
    k: float,
    x: ArrayLike,
    direction: ArrayLike,
    center: ArrayLike = (0.0, 0.0),
    order: Optional[int] = None,
):
    """Scattered field of the penetrable disk at exterior point(s) x.

    Args:
        eta0: Constant contrast inside the disk.
        radius: Disk radius a.
        k: Wave number.
        x: Point (2,) or points (p, 2) with |x - center| > a.
        direction: Incident direction d.
        center: Disk center.
        order: Truncation order N; defaults to truncation_order().

    Returns:
        Complex scalar for a single point, else an array of shape (p,).
    """
    points, _, rho, phi, n, b, theta_d, shift = _prepare(eta0, radius, k, x, direction, center, order)
    angular = np.exp(1j * n[None, :] * (phi[:, None] - theta_d))
    terms = b[None, :] * hankel1(n[None, :], k * rho[:, None]) * angular
    total = terms.sum(axis=1)
    _check_tail(terms, total)
    values = shift * total
    return values[0] if np.ndim(x) == 1 else values


def disk_series_normal_derivative(
    eta0: complex,
    radius: float,
    k: float,
    x: ArrayLike,
    nu: ArrayLike,
    direction: ArrayLike,
    center: ArrayLike = (0.0, 0.0),
    order: Optional[int] = None,
):
    """Derivative of the disk scattered field along nu at exterior point(s) x."""
    points, local, rho, phi, n, b, theta_d, shift = _prepare(eta0, radius, k, x, direction, center, order)
    normals = np.broadcast_to(np.atleast_2d(np.asarray(nu, dtype=float)), points.shape)
    angular = np.exp(1j * n[None, :] * (phi[:, None] - theta_d))
    kr = k * rho[:, None]
    d_rho = (b[None, :] * k * h1vp(n[None, :], kr) * angular).sum(axis=1)
    d_phi = (b[None, :] * hankel1(n[None, :], kr) * 1j * n[None, :] * angular).sum(axis=1) / rho

    e_rho = local / rho[:, None]
    e_phi = np.column_stack([-e_rho[:, 1], e_rho[:, 0]])
    values = shift * (
        d_rho * np.sum(normals * e_rho, axis=1) + d_phi * np.sum(normals * e_phi, axis=1)
    )
    return values[0] if np.ndim(x) == 1 else values


def disk_series_far_field(
    eta0: complex,
    radius: float,
    k: float,
    xhat: ArrayLike,
    direction: ArrayLike,
    center: ArrayLike = (0.0, 0.0),
    order: Optional[int] = None,
):
    """Far-field pattern of the penetrable disk in direction(s) xhat."""
    directions = np.atleast_2d(np.asarray(xhat, dtype=float))
    d = np.asarray(direction, dtype=float)
    c = np.asarray(center, dtype=float)
    if order is None:
        order = truncation_order(eta0, radius, k)
    n, b = disk_series_coefficients(eta0, radius, k, order)
    theta = angle_from_direction(directions)
    theta_d = float(angle_from_direction(d))
    amplitude = math.sqrt(2.0 / (math.pi * k)) * np.exp(-0.25j * math.pi)
    terms = b[None, :] * ((-1j) ** n)[None, :] * np.exp(1j * n[None, :] * (theta[:, None] - theta_d))
    shift = np.exp(1j * k * ((d - directions) @ c))
    values = amplitude * shift * terms.sum(axis=1)
    return values[0] if np.ndim(xhat) == 1 else values
