"""Orthogonality-sampling imaging functionals.

For sampling points z and a dataset of Cauchy data on |x| = R:

    I(z)      = sum_xhat | sum_d u_inf(xhat, d) exp(-i k z.d) w_d |^2 w_xhat
    I_far(z)  = I(z) with du_sc/dnu replaced by i k u_sc in the far-field extraction
    I2(z)     = sum_d | sum_x [dImPhi/dnu(x, z) u_sc - ImPhi(x, z) du_sc/dnu] w_x |^2 w_d
    I2_far(z) = I2(z) with du_sc/dnu replaced by i k u_sc

u_inf is recovered from the Cauchy data with the Helmholtz representation

    u_inf(xhat, d) = sum_x [u_sc dPhi_inf/dnu(xhat, x) - du_sc/dnu Phi_inf(xhat, x)] w_x

Every quadrature uses uniform weights: w_x = R * span / N_x on the
receiver arc, w_d = span / N_d over the incident directions and
w_xhat = 2 pi / n_xhat over the full circle of observation directions.
"""

from __future__ import annotations

import logging
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import replace
from typing import Callable, Optional, Sequence

import numpy as np
from numpy.typing import ArrayLike, NDArray

from ..core.errors import ConfigError, DegenerateError, MissingDataError
from ..core.geometry import FULL_APERTURE, aperture_weight, incident_directions
from ..core.models import FUNCTIONALS, CauchyDataset, FarFieldMatrix, IndicatorImage, SamplingGrid
from ..forward.green import far_field_green2, im_green
from ..forward.solver import ForwardSolution, worker_count

logger = logging.getLogger(__name__)

Z_CHUNK = 2048


def phi_test(z: ArrayLike, d: ArrayLike, k: float):
    """Test function exp(-i k z . d), broadcasting over leading dimensions."""
    z = np.asarray(z, dtype=float)
    d = np.asarray(d, dtype=float)
    value = np.exp(-1j * k * np.sum(z * d, axis=-1))
    return value[()] if np.ndim(value) == 0 else value


def _test_matrix(directions: NDArray, points: NDArray, k: float) -> NDArray[np.complex128]:
    """exp(-i k z . d) with shape (N_d, n_z)."""
    return np.exp(-1j * k * (directions @ points.T))


def _observation_directions(dataset: CauchyDataset, xhat_count: Optional[int]) -> NDArray:
    count = xhat_count or dataset.n_directions
    if count < 1:
        raise ConfigError(f"xhat_count must be positive, got {count}", fields=["xhat_count"])
    return incident_directions(count, FULL_APERTURE)


def _far_field_kernels(dataset: CauchyDataset, xhat: NDArray) -> tuple[NDArray, NDArray]:
    """Phi_inf(xhat, x) and dPhi_inf/dnu(x), shape (n_xhat, N_x) each."""
    points, normals = dataset.circle.nodes()
    return far_field_green2(xhat[:, None, :], points[None, :, :], dataset.k, normals[None, :, :])


def _normal_data(dataset: CauchyDataset, impedance: bool) -> NDArray[np.complex128]:
    if impedance:
        return 1j * dataset.k * dataset.u
    if dataset.du is None:
        raise MissingDataError(
            "Dataset has no normal-derivative data; use a far-field variant (I_far, I2_far)"
        )
    return dataset.du


def extract_far_field(
    dataset: CauchyDataset,
    xhat: Optional[ArrayLike] = None,
    impedance: bool = False,
) -> FarFieldMatrix:
    """Far-field pattern from Cauchy data via the Helmholtz representation.

    Args:
        dataset: Cauchy data.
        xhat: Observation directions (n_xhat, 2); defaults to N_d directions
            over the full circle.
        impedance: Replace du_sc/dnu by i k u_sc (needs only U).

    Raises:
        MissingDataError: If the exact kernel is requested without dU.
    """
    xhat = _observation_directions(dataset, None) if xhat is None else np.atleast_2d(np.asarray(xhat, dtype=float))
    normal = _normal_data(dataset, impedance)
    phi_inf, d_phi_inf = _far_field_kernels(dataset, xhat)
    values = (d_phi_inf @ dataset.u - phi_inf @ normal) * dataset.circle.weight
    return FarFieldMatrix(xhat=xhat, directions=dataset.directions, values=values)


def _chunked(points: NDArray, evaluate: Callable[[NDArray], NDArray], max_workers: Optional[int]) -> NDArray:
    chunks = [points[i:i + Z_CHUNK] for i in range(0, len(points), Z_CHUNK)]
    workers = min(worker_count(max_workers), len(chunks))
    if workers <= 1:
        return np.concatenate([evaluate(c) for c in chunks])
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return np.concatenate(list(pool.map(evaluate, chunks)))


def _image(grid: SamplingGrid, values: NDArray, functional: str, dataset: CauchyDataset) -> IndicatorImage:
    return IndicatorImage(
        grid=grid,
        values=values.reshape(grid.shape),
        functional=functional,
        k=dataset.k,
        delta=dataset.noise_level,
    )


def _far_field_values(
    dataset: CauchyDataset,
    points: NDArray,
    xhat_count: Optional[int],
    impedance: bool,
    max_workers: Optional[int],
) -> NDArray[np.float64]:
    xhat = _observation_directions(dataset, xhat_count)
    far_field = extract_far_field(dataset, xhat, impedance=impedance).values
    w_d = dataset.direction_weight
    w_xhat = aperture_weight(len(xhat), FULL_APERTURE)
    directions = dataset.directions

    def evaluate(points):
        f_phi = far_field @ _test_matrix(directions, points, dataset.k) * w_d
        return np.sum(np.abs(f_phi) ** 2, axis=0) * w_xhat

    return _chunked(points, evaluate, max_workers)


def imaging_I(
    dataset: CauchyDataset,
    grid: SamplingGrid,
    xhat_count: Optional[int] = None,
    max_workers: Optional[int] = None,
) -> IndicatorImage:
    """Indicator I(z) from the far field extracted from the full Cauchy pair.

    Raises:
        MissingDataError: If the dataset has no normal-derivative data.
    """
    values = _far_field_values(dataset, grid.points(), xhat_count, impedance=False, max_workers=max_workers)
    return _image(grid, values, "I", dataset)


def imaging_I_far(
    dataset: CauchyDataset,
    grid: SamplingGrid,
    xhat_count: Optional[int] = None,
    max_workers: Optional[int] = None,
) -> IndicatorImage:
    """Indicator I_far(z), which needs only the scattered field U."""
    values = _far_field_values(dataset, grid.points(), xhat_count, impedance=True, max_workers=max_workers)
    return _image(grid, values, "I_far", dataset)


def imaging_I_at(
    dataset: CauchyDataset,
    points: ArrayLike,
    xhat_count: Optional[int] = None,
    impedance: bool = False,
) -> NDArray[np.float64]:
    """I (or I_far) at arbitrary sampling points of shape (p, 2)."""
    z = np.atleast_2d(np.asarray(points, dtype=float))
    return _far_field_values(dataset, z, xhat_count, impedance=impedance, max_workers=1)


def imaging_I_direct(
    dataset: CauchyDataset,
    grid: SamplingGrid,
    xhat_count: Optional[int] = None,
) -> IndicatorImage:
    """I(z) with the sum over d taken first, before the boundary sum.

    Uses the same quadratures as imaging_I; only the order of the finite
    sums differs.
    """
    xhat = _observation_directions(dataset, xhat_count)
    normal = _normal_data(dataset, impedance=False)
    phi_inf, d_phi_inf = _far_field_kernels(dataset, xhat)
    w = dataset.circle.weight * dataset.direction_weight
    w_xhat = aperture_weight(len(xhat), FULL_APERTURE)
    directions = dataset.directions

    def evaluate(points):
        test = _test_matrix(directions, points, dataset.k)
        f_phi = (d_phi_inf @ (dataset.u @ test) - phi_inf @ (normal @ test)) * w
        return np.sum(np.abs(f_phi) ** 2, axis=0) * w_xhat

    points = grid.points()
    values = np.concatenate([evaluate(points[i:i + Z_CHUNK]) for i in range(0, len(points), Z_CHUNK)])
    return _image(grid, values, "I", dataset)


def _boundary_image(
    dataset: CauchyDataset,
    points: NDArray,
    impedance: bool,
    max_workers: Optional[int],
) -> NDArray[np.float64]:
    normal = _normal_data(dataset, impedance)
    receivers, normals = dataset.circle.nodes()
    w_x = dataset.circle.weight
    w_d = dataset.direction_weight

    def evaluate(z):
        im_phi, d_im_phi = im_green(receivers[None, :, :], z[:, None, :], dataset.k, normals[None, :, :])
        a = (d_im_phi @ dataset.u - im_phi @ normal) * w_x
        return np.sum(np.abs(a) ** 2, axis=1) * w_d

    return _chunked(points, evaluate, max_workers)


def imaging_I2(
    dataset: CauchyDataset,
    grid: SamplingGrid,
    max_workers: Optional[int] = None,
) -> IndicatorImage:
    """Indicator I2(z) built on Im Phi(x, z) = J0(k |x - z|) / 4.

    Raises:
        MissingDataError: If the dataset has no normal-derivative data.
    """
    values = _boundary_image(dataset, grid.points(), impedance=False, max_workers=max_workers)
    return _image(grid, values, "I2", dataset)


def imaging_I2_far(
    dataset: CauchyDataset,
    grid: SamplingGrid,
    max_workers: Optional[int] = None,
) -> IndicatorImage:
    """Indicator I2_far(z), which needs only the scattered field U."""
    values = _boundary_image(dataset, grid.points(), impedance=True, max_workers=max_workers)
    return _image(grid, values, "I2_far", dataset)


def imaging_I2_at(dataset: CauchyDataset, points: ArrayLike, impedance: bool = False) -> NDArray[np.float64]:
    """I2 (or I2_far) at arbitrary sampling points of shape (p, 2)."""
    return _boundary_image(dataset, np.atleast_2d(np.asarray(points, dtype=float)), impedance, max_workers=1)


def imaging_I2_volume(
    solutions: Sequence[ForwardSolution],
    points: ArrayLike,
    direction_weight: float,
) -> NDArray[np.float64]:
    """I2 evaluated from the volume fields instead of boundary data.

        I2(z) = sum_d | k^2 sum_c ImPhi(y_c, z) eta(y_c) u(y_c, d) h^2 |^2 w_d

    Args:
        solutions: Forward solutions, one per incident direction.
        points: Sampling points, shape (p, 2).
        direction_weight: Quadrature weight w_d of the incident directions.
    """
    z = np.atleast_2d(np.asarray(points, dtype=float))
    if not solutions:
        return np.zeros(len(z))
    k = solutions[0].k
    support = solutions[0].support_points
    if len(support) == 0:
        return np.zeros(len(z))
    sources = np.column_stack([s.source for s in solutions])
    im_phi = im_green(support[None, :, :], z[:, None, :], k)
    a = k * k * (im_phi @ sources)
    return np.sum(np.abs(a) ** 2, axis=1) * direction_weight


def normalize(image: IndicatorImage) -> IndicatorImage:
    """Divide an image by its maximum.

    Raises:
        DegenerateError: If the image is identically zero.
    """
    peak = float(np.max(image.values))
    if not peak > 0.0:
        raise DegenerateError(f"Cannot normalize an all-zero {image.functional} image")
    return replace(image, values=image.values / peak, normalized=True)


_DISPATCH = {
    "I": lambda ds, grid, xhat_count, workers: imaging_I(ds, grid, xhat_count, workers),
    "I_far": lambda ds, grid, xhat_count, workers: imaging_I_far(ds, grid, xhat_count, workers),
    "I2": lambda ds, grid, xhat_count, workers: imaging_I2(ds, grid, workers),
    "I2_far": lambda ds, grid, xhat_count, workers: imaging_I2_far(ds, grid, workers),
}


def compute_image(
    dataset: CauchyDataset,
    grid: SamplingGrid,
    functional: str,
    xhat_count: Optional[int] = None,
    max_workers: Optional[int] = None,
) -> IndicatorImage:
    """Evaluate a functional by name ("I", "I_far", "I2" or "I2_far")."""
    if functional not in _DISPATCH:
        raise ConfigError(
            f"Unknown functional '{functional}', expected one of {', '.join(FUNCTIONALS)}",
            fields=["functionals"],
        )
    logger.info("Evaluating %s on a %dx%d grid", functional, grid.n1, grid.n2)
    return _DISPATCH[functional](dataset, grid, xhat_count, max_workers)


def separation_ratio(image: IndicatorImage, inside: NDArray[np.bool_], far: NDArray[np.bool_]) -> float:
    """Mean indicator over ``inside`` points divided by the mean over ``far`` points.

    Both masks have the image shape. Returns inf when the far mean is 0.
    """
    if not np.any(inside) or not np.any(far):
        return math.nan
    far_mean = float(np.mean(image.values[far]))
    inside_mean = float(np.mean(image.values[inside]))
    return math.inf if far_mean == 0.0 else inside_mean / far_mean
