"""Free-space Green's function of the 2D Helmholtz equation and its relatives.

    Phi(x, y)         = (i/4) H0(k |x - y|)
    dPhi/dnu(x)       = -(i k / 4) H1(k |x - y|) ((x - y) . nu) / |x - y|
    Phi_inf(xhat, y)  = gamma * exp(-i k xhat . y),  gamma = exp(i pi/4) / sqrt(8 pi k)
    Im Phi(x, z)      = J0(k |x - z|) / 4

All kernels broadcast over leading dimensions of their point arguments.
"""

from __future__ import annotations

import cmath
import math

import numpy as np
from numpy.typing import ArrayLike, NDArray

from ..core.errors import SingularityError
from ..core.specfun import bessel_j01, hankel1_0, hankel1_01


def far_field_constant(k: float) -> complex:
    """gamma = exp(i pi / 4) / sqrt(8 pi k)."""
    return cmath.exp(0.25j * math.pi) / math.sqrt(8.0 * math.pi * k)


def _separation(x: ArrayLike, y: ArrayLike) -> tuple[NDArray, NDArray]:
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    diff = x - y
    r = np.hypot(diff[..., 0], diff[..., 1])
    return diff, r


def _scalar_or_array(value: NDArray):
    return value[()] if value.ndim == 0 else value


def green(x: ArrayLike, y: ArrayLike, k: float):
    """Green's function Phi(x, y) = (i/4) H0(k |x - y|).

    Args:
        x: Observation point(s), shape (..., 2).
        y: Source point(s), broadcastable against x.
        k: Wave number (> 0).

    Returns:
        Complex scalar or array over the broadcast leading shape.

    Raises:
        SingularityError: If any pair of points coincides.
    """
    _, r = _separation(x, y)
    if np.any(r == 0.0):
        raise SingularityError("Green's function is singular at coincident points")
    return _scalar_or_array(0.25j * np.asarray(hankel1_0(k * r)))


def green_normal_derivative(x: ArrayLike, nu: ArrayLike, y: ArrayLike, k: float):
    """Normal derivative of Phi(x, y) with respect to x along nu.

    Raises:
        SingularityError: If any pair of points coincides.
    """
    diff, r = _separation(x, y)
    if np.any(r == 0.0):
        raise SingularityError("Green's function derivative is singular at coincident points")
    nu = np.asarray(nu, dtype=float)
    projection = np.sum(diff * nu, axis=-1) / r
    _, h1 = hankel1_01(k * r)
    return _scalar_or_array(-0.25j * k * np.asarray(h1) * projection)


def green_with_normal_derivative(
    x: NDArray, nu: NDArray, y: NDArray, k: float
) -> tuple[NDArray, NDArray]:
    """Phi and dPhi/dnu(x) from a single Hankel evaluation.

    Raises:
        SingularityError: If any pair of points coincides.
    """
    diff, r = _separation(x, y)
    if np.any(r == 0.0):
        raise SingularityError("Green's function is singular at coincident points")
    h0, h1 = hankel1_01(k * r)
    projection = np.sum(diff * np.asarray(nu, dtype=float), axis=-1) / r
    return 0.25j * np.asarray(h0), -0.25j * k * np.asarray(h1) * projection


def far_field_green2(xhat: ArrayLike, y: ArrayLike, k: float, nu: ArrayLike | None = None):
    """Far-field pattern of the Green's function and, optionally, its normal derivative.

    Args:
        xhat: Observation direction(s), shape (..., 2).
        y: Source point(s), broadcastable against xhat.
        k: Wave number.
        nu: Normal(s) at y. When given, dPhi_inf/dnu(y) = -i k (xhat . nu) Phi_inf
            is returned as a second value.

    Returns:
        Phi_inf, or the pair (Phi_inf, dPhi_inf/dnu).

    Examples:
        >>> round(abs(far_field_green2((1.0, 0.0), (0.0, 0.0), 8.0)) * math.sqrt(64 * math.pi), 12)
        1.0
    """
    xhat = np.asarray(xhat, dtype=float)
    y = np.asarray(y, dtype=float)
    phase = np.sum(xhat * y, axis=-1)
    phi_inf = far_field_constant(k) * np.exp(-1j * k * phase)
    if nu is None:
        return _scalar_or_array(np.asarray(phi_inf))
    cos_angle = np.sum(xhat * np.asarray(nu, dtype=float), axis=-1)
    d_phi_inf = -1j * k * cos_angle * phi_inf
    return _scalar_or_array(np.asarray(phi_inf)), _scalar_or_array(np.asarray(d_phi_inf))


def im_green(x: ArrayLike, z: ArrayLike, k: float, nu: ArrayLike | None = None):
    """Imaginary part of the Green's function, J0(k |x - z|) / 4.

    Smooth everywhere, including x = z. With ``nu`` the normal derivative
    in x, -(k/4) J1(k r) ((x - z) . nu) / r, is returned as a second value;
    it tends to 0 at r = 0.
    """
    diff, r = _separation(x, z)
    j0, j1 = bessel_j01(k * r)
    value = 0.25 * np.asarray(j0)
    if nu is None:
        return _scalar_or_array(value)
    safe_r = np.where(r > 0.0, r, 1.0)
    projection = np.where(r > 0.0, np.sum(diff * np.asarray(nu, dtype=float), axis=-1) / safe_r, 0.0)
    derivative = -0.25 * k * np.asarray(j1) * projection
    return _scalar_or_array(value), _scalar_or_array(derivative)


def singular_cell_integral(h: float, k: float) -> complex:
    """Integral of Phi over the equal-area disk of a square cell of side h.

    Uses radius rho = h / sqrt(pi):
        (i pi / 2) [ (rho / k) H1(k rho) + 2i / (pi k^2) ]
    """
    rho = h / math.sqrt(math.pi)
    _, h1 = hankel1_01(k * rho)
    return complex(0.5j * math.pi * ((rho / k) * complex(h1) + 2j / (math.pi * k * k)))
