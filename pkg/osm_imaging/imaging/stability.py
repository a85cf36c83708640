"""Explicit stability constants of the imaging functionals.

With discrete L2 norms weighted by the same quadratures the functionals use,

    I(z) - I_delta(z)   <= C_I (2 delta + delta^2)
    I2(z) - I2_delta(z) <= C_2(z) (2 delta + delta^2)

for data perturbed with relative Frobenius noise delta on both U and dU, where

    C_I   = |S|^2 (||Phi_inf||^2 + ||dPhi_inf/dnu||^2)_{S x dOmega} (||U||^2 + ||dU||^2)_{dOmega x S}
    C_2(z) = |S| (||ImPhi(., z)||^2 + ||dImPhi(., z)/dnu||^2)_{dOmega} (||U||^2 + ||dU||^2)_{dOmega x S}

and |S| = 2 pi. Both follow from the Cauchy-Schwarz inequality applied to
the quadrature sums, so they hold exactly for the discrete functionals.
The constants use the clean data.
"""

from __future__ import annotations

import math
from typing import Optional

import numpy as np
from numpy.typing import ArrayLike, NDArray

from ..core.errors import MissingDataError
from ..core.geometry import FULL_APERTURE, aperture_weight, incident_directions
from ..core.models import CauchyDataset
from ..forward.green import far_field_green2, im_green

CIRCLE_LENGTH = 2.0 * math.pi


def _data_norm_sq(dataset: CauchyDataset) -> float:
    if dataset.du is None:
        raise MissingDataError("Stability constants need the normal-derivative data")
    weight = dataset.circle.weight * dataset.direction_weight
    return float((np.sum(np.abs(dataset.u) ** 2) + np.sum(np.abs(dataset.du) ** 2)) * weight)


def stability_constant_I(dataset: CauchyDataset, xhat_count: Optional[int] = None) -> float:
    """C_I for the dataset's geometry and clean data."""
    n_xhat = xhat_count or dataset.n_directions
    xhat = incident_directions(n_xhat, FULL_APERTURE)
    points, normals = dataset.circle.nodes()
    phi_inf, d_phi_inf = far_field_green2(xhat[:, None, :], points[None, :, :], dataset.k, normals[None, :, :])
    weight = aperture_weight(n_xhat, FULL_APERTURE) * dataset.circle.weight
    kernel_norm_sq = float((np.sum(np.abs(phi_inf) ** 2) + np.sum(np.abs(d_phi_inf) ** 2)) * weight)
    return CIRCLE_LENGTH ** 2 * kernel_norm_sq * _data_norm_sq(dataset)


def stability_constant_I2(dataset: CauchyDataset, points: ArrayLike) -> NDArray[np.float64]:
    """C_2(z) at each sampling point of shape (p, 2)."""
    z = np.atleast_2d(np.asarray(points, dtype=float))
    receivers, normals = dataset.circle.nodes()
    im_phi, d_im_phi = im_green(receivers[None, :, :], z[:, None, :], dataset.k, normals[None, :, :])
    kernel_norm_sq = (np.sum(im_phi ** 2, axis=1) + np.sum(d_im_phi ** 2, axis=1)) * dataset.circle.weight
    return CIRCLE_LENGTH * kernel_norm_sq * _data_norm_sq(dataset)


def stability_bound(constant, delta: float):
    """C (2 delta + delta^2)."""
    return constant * (2.0 * delta + delta * delta)
