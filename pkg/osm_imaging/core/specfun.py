"""Cylindrical special functions of order zero and one.

Evaluates J0, J1, Y0, Y1 and the Hankel functions of the first kind
H0(1) = J0 + iY0, H1(1) = J1 + iY1 for real non-negative arguments.
All functions accept scalars or numpy arrays and are vectorized.

Evaluation strategy by argument range:
    x < 8         power series; Y0/Y1 in their logarithmic-series form
    8 <= x < 30   Miller backward recurrence normalized by
                  J0 + 2*sum(J_2k) = 1, with the Neumann series for Y0, Y1
    x >= 30       Hankel asymptotic expansion in amplitude/phase form

The functions are pure and thread-safe.
"""

from __future__ import annotations

import math

import numpy as np
from numpy.typing import ArrayLike, NDArray

from .errors import DomainError

EULER_GAMMA = 0.57721566490153286061

_SERIES_LIMIT = 8.0
_ASYMPTOTIC_LIMIT = 30.0
_SERIES_TERMS = 40
_ASYMPTOTIC_TERMS = 20
_MILLER_START = 90
_RESCALE_THRESHOLD = 1e200

_TWO_OVER_PI = 2.0 / math.pi


def _checked(x: ArrayLike, strictly_positive: bool) -> NDArray[np.float64]:
    arr = np.asarray(x, dtype=float)
    if not np.all(np.isfinite(arr)):
        raise DomainError("Argument must be finite")
    if strictly_positive:
        if np.any(arr <= 0.0):
            raise DomainError("Hankel functions require x > 0 (logarithmic singularity at 0)")
    elif np.any(arr < 0.0):
        raise DomainError("Bessel functions are only evaluated for x >= 0")
    return arr


def _series(x: NDArray) -> tuple[NDArray, NDArray, NDArray, NDArray]:
    q = 0.25 * x * x
    safe_x = np.where(x > 0.0, x, 1.0)
    log_term = np.log(0.5 * safe_x) + EULER_GAMMA

    t = np.ones_like(x)  # (-q)^m / (m!)^2
    s = np.ones_like(x)  # (-q)^m / (m! (m+1)!)
    j0 = t.copy()
    j1_sum = s.copy()
    y0_sum = np.zeros_like(x)
    y1_sum = s * (1.0 - 2.0 * EULER_GAMMA)  # m = 0: H_0 + H_1 - 2*gamma
    harmonic = 0.0
    for m in range(1, _SERIES_TERMS):
        t = t * (-q) / (m * m)
        s = s * (-q) / (m * (m + 1))
        harmonic_next = harmonic + 1.0 / m
        j0 = j0 + t
        j1_sum = j1_sum + s
        y0_sum = y0_sum + harmonic_next * t
        y1_sum = y1_sum + (harmonic_next + harmonic_next + 1.0 / (m + 1) - 2.0 * EULER_GAMMA) * s
        harmonic = harmonic_next

    j1 = 0.5 * x * j1_sum
    y0 = _TWO_OVER_PI * (log_term * j0 - y0_sum)
    y1 = (
        -_TWO_OVER_PI / safe_x
        + _TWO_OVER_PI * (log_term - EULER_GAMMA) * j1
        - 0.5 * x * y1_sum / math.pi
    )
    return j0, j1, y0, y1


def _miller(x: NDArray) -> tuple[NDArray, NDArray, NDArray, NDArray]:
    f_next = np.zeros_like(x)
    f_cur = np.ones_like(x)
    n = _MILLER_START
    norm = 2.0 * f_cur
    t0 = ((-1) ** (n // 2)) * f_cur / (n // 2)
    t1 = np.zeros_like(x)
    f1 = np.zeros_like(x)

    while n > 0:
        f_prev = (2.0 * n / x) * f_cur - f_next
        order = n - 1
        if order == 0:
            norm = norm + f_prev
        elif order % 2 == 0:
            k = order // 2
            norm = norm + 2.0 * f_prev
            t0 = t0 + ((-1) ** k) * f_prev / k
        else:
            j = (order - 1) // 2
            if j == 0:
                coeff = -1.0
                f1 = f_prev
            else:
                coeff = ((-1) ** (j + 1)) * (1.0 / (j + 1) + 1.0 / j)
            t1 = t1 + coeff * f_prev

        f_next, f_cur = f_cur, f_prev
        n -= 1

        peak = np.max(np.abs(f_cur)) if f_cur.size else 0.0
        if peak > _RESCALE_THRESHOLD:
            scale = 1.0 / _RESCALE_THRESHOLD
            f_cur, f_next = f_cur * scale, f_next * scale
            norm, t0, t1, f1 = norm * scale, t0 * scale, t1 * scale, f1 * scale

    j0 = f_cur / norm
    j1 = f1 / norm
    log_term = np.log(0.5 * x) + EULER_GAMMA
    y0 = _TWO_OVER_PI * (log_term * j0 - 2.0 * t0 / norm)
    y1 = _TWO_OVER_PI * (log_term * j1 - j0 / x + t1 / norm)
    return j0, j1, y0, y1


def _asymptotic_order(x: NDArray, order: int) -> tuple[NDArray, NDArray]:
    mu = 4.0 * order * order
    a = 1.0
    p = np.ones_like(x)
    q = np.zeros_like(x)
    inv_x = 1.0 / x
    power = np.ones_like(x)
    for k in range(1, _ASYMPTOTIC_TERMS):
        a = a * (mu - (2 * k - 1) ** 2) / (8.0 * k)
        power = power * inv_x
        sign = -1.0 if (k // 2) % 2 else 1.0
        if k % 2 == 0:
            p = p + sign * a * power
        else:
            q = q + sign * a * power
    chi = x - (0.5 * order + 0.25) * math.pi
    amplitude = np.sqrt(_TWO_OVER_PI / x)
    cos_chi, sin_chi = np.cos(chi), np.sin(chi)
    j = amplitude * (p * cos_chi - q * sin_chi)
    y = amplitude * (p * sin_chi + q * cos_chi)
    return j, y


def _asymptotic(x: NDArray) -> tuple[NDArray, NDArray, NDArray, NDArray]:
    j0, y0 = _asymptotic_order(x, 0)
    j1, y1 = _asymptotic_order(x, 1)
    return j0, j1, y0, y1


def _evaluate(x: NDArray) -> tuple[NDArray, NDArray, NDArray, NDArray]:
    flat = x.ravel()
    out = [np.empty_like(flat) for _ in range(4)]
    branches = (
        (flat < _SERIES_LIMIT, _series),
        ((flat >= _SERIES_LIMIT) & (flat < _ASYMPTOTIC_LIMIT), _miller),
        (flat >= _ASYMPTOTIC_LIMIT, _asymptotic),
    )
    for mask, kernel in branches:
        if np.any(mask):
            for target, values in zip(out, kernel(flat[mask])):
                target[mask] = values
    return tuple(arr.reshape(x.shape) for arr in out)  # type: ignore[return-value]


def _wrap(arr: NDArray):
    return arr[()] if arr.ndim == 0 else arr


def bessel_j0(x: ArrayLike):
    """Bessel function of the first kind, order 0, for x >= 0.

    Raises:
        DomainError: If x is negative or non-finite.
    """
    arr = _checked(x, strictly_positive=False)
    return _wrap(_evaluate(arr)[0])


def bessel_j1(x: ArrayLike):
    """Bessel function of the first kind, order 1, for x >= 0."""
    arr = _checked(x, strictly_positive=False)
    return _wrap(_evaluate(arr)[1])


def bessel_y0(x: ArrayLike):
    """Bessel function of the second kind, order 0, for x > 0."""
    arr = _checked(x, strictly_positive=True)
    return _wrap(_evaluate(arr)[2])


def bessel_y1(x: ArrayLike):
    """Bessel function of the second kind, order 1, for x > 0."""
    arr = _checked(x, strictly_positive=True)
    return _wrap(_evaluate(arr)[3])


def bessel_j01(x: ArrayLike) -> tuple:
    """Return (J0(x), J1(x)) from a single evaluation pass."""
    arr = _checked(x, strictly_positive=False)
    j0, j1, _, _ = _evaluate(arr)
    return _wrap(j0), _wrap(j1)


def hankel1_0(x: ArrayLike):
    """Hankel function of the first kind, order 0: J0(x) + i*Y0(x), x > 0.

    Raises:
        DomainError: If x <= 0 or non-finite.
    """
    arr = _checked(x, strictly_positive=True)
    j0, _, y0, _ = _evaluate(arr)
    return _wrap(j0 + 1j * y0)


def hankel1_1(x: ArrayLike):
    """Hankel function of the first kind, order 1: J1(x) + i*Y1(x), x > 0."""
    arr = _checked(x, strictly_positive=True)
    _, j1, _, y1 = _evaluate(arr)
    return _wrap(j1 + 1j * y1)


def hankel1_01(x: ArrayLike) -> tuple:
    """Return (H0(1)(x), H1(1)(x)) from a single evaluation pass."""
    arr = _checked(x, strictly_positive=True)
    j0, j1, y0, y1 = _evaluate(arr)
    return _wrap(j0 + 1j * y0), _wrap(j1 + 1j * y1)
