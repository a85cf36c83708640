"""Synthesis of multi-static Cauchy data and the relative noise model.

Data for incident direction d_l at receiver x_j:

    U[j, l]  = u_sc(x_j, d_l)
    dU[j, l] = du_sc/dnu(x_j, d_l)

Noise is added with a fixed relative Frobenius norm:

    U_delta = U + delta * N1 / ||N1||_F * ||U||_F

where N1 (and N2 for dU) have entries a + ib with a, b uniform on [-1, 1].
"""

from __future__ import annotations

import logging
import time
from dataclasses import dataclass, field
from typing import Optional

import numpy as np
from numpy.typing import NDArray

from ..core.errors import ConfigError, DegenerateError
from ..core.geometry import FULL_APERTURE, incident_directions
from ..core.models import CauchyDataset, MeasurementCircle, NoiseSpec
from ..core.shapes import ContrastMap
from ..forward.green import green_with_normal_derivative
from ..forward.oracle import disk_series_normal_derivative, disk_series_oracle
from ..forward.solver import (
    DEFAULT_TOLERANCE,
    ForwardSolution,
    VolumeGrid,
    check_clearance,
    solve_all,
)

logger = logging.getLogger(__name__)


@dataclass
class SynthesisResult:
    """A synthesized dataset with solver diagnostics.

    Attributes:
        dataset: The clean Cauchy dataset.
        solutions: Forward solutions, one per incident direction.
        elapsed_seconds: Wall time of the forward batch.
    """

    dataset: CauchyDataset
    solutions: list[ForwardSolution] = field(default_factory=list)
    elapsed_seconds: float = 0.0

    @property
    def max_residual(self) -> float:
        """Largest relative residual over all directions."""
        return max((s.residual for s in self.solutions), default=0.0)

    @property
    def max_iterations(self) -> int:
        """Largest GMRES iteration count over all directions."""
        return max((s.iterations for s in self.solutions), default=0)

    def to_dict(self) -> dict:
        """Convert to dictionary."""
        return {
            "n_solves": len(self.solutions),
            "max_residual": self.max_residual,
            "max_iterations": self.max_iterations,
            "residuals": [s.residual for s in self.solutions],
            "elapsed_seconds": round(self.elapsed_seconds, 3),
        }


def _check_receivers_outside(contrast: ContrastMap, circle: MeasurementCircle) -> None:
    if not contrast.is_zero and circle.radius <= contrast.support_radius:
        raise ConfigError(
            f"Measurement radius {circle.radius} must exceed the support radius "
            f"{contrast.support_radius:.3f} of the medium",
            fields=["radius"],
        )


def dataset_from_solutions(
    solutions: list[ForwardSolution],
    circle: MeasurementCircle,
    direction_aperture: tuple[float, float] = FULL_APERTURE,
) -> CauchyDataset:
    """Evaluate u_sc and du_sc/dnu of each solution at the receivers.

    The receiver-to-support kernel matrices are built once and applied to
    all directions together.

    Raises:
        ProximityError: If a receiver lies within h of the support.
    """
    if not solutions:
        raise ConfigError("Need at least one incident direction", fields=["n_directions"])
    first = solutions[0]
    k = first.k
    points, normals = circle.nodes()
    n_rx, n_dir = len(points), len(solutions)
    support = first.support_points

    if len(support) == 0:
        u = np.zeros((n_rx, n_dir), dtype=complex)
        du = np.zeros((n_rx, n_dir), dtype=complex)
    else:
        check_clearance(points, support, first.grid.h)
        phi, d_phi = green_with_normal_derivative(
            points[:, None, :], normals[:, None, :], support[None, :, :], k
        )
        sources = np.column_stack([s.source for s in solutions])
        u = k * k * (phi @ sources)
        du = k * k * (d_phi @ sources)

    return CauchyDataset(
        k=k,
        circle=circle,
        n_directions=n_dir,
        direction_aperture=direction_aperture,
        u=u,
        du=du,
    )


def synthesize_with_solutions(
    contrast: ContrastMap,
    k: float,
    circle: MeasurementCircle,
    n_directions: int,
    direction_aperture: tuple[float, float] = FULL_APERTURE,
    grid: Optional[VolumeGrid] = None,
    tolerance: float = DEFAULT_TOLERANCE,
    max_workers: Optional[int] = None,
) -> SynthesisResult:
    """Solve the forward problem for every direction and sample the Cauchy data.

    Raises:
        ConfigError: If the receivers are not outside the medium or the grid
            does not cover it.
        SolverError: If any solve fails to converge.
    """
    grid = grid or VolumeGrid()
    _check_receivers_outside(contrast, circle)
    directions = incident_directions(n_directions, direction_aperture)

    start = time.perf_counter()
    solutions = solve_all(contrast, list(directions), k, grid, tolerance=tolerance, max_workers=max_workers)
    dataset = dataset_from_solutions(solutions, circle, direction_aperture)
    elapsed = time.perf_counter() - start
    logger.info(
        "Synthesized %dx%d dataset (k=%g, R=%g) in %.2fs",
        circle.n_receivers,
        n_directions,
        k,
        circle.radius,
        elapsed,
    )
    return SynthesisResult(dataset=dataset, solutions=solutions, elapsed_seconds=elapsed)


def synthesize(
    contrast: ContrastMap,
    k: float,
    circle: MeasurementCircle,
    n_directions: int,
    direction_aperture: tuple[float, float] = FULL_APERTURE,
    grid: Optional[VolumeGrid] = None,
    tolerance: float = DEFAULT_TOLERANCE,
    max_workers: Optional[int] = None,
) -> CauchyDataset:
    """Clean Cauchy dataset for a medium; see synthesize_with_solutions."""
    return synthesize_with_solutions(
        contrast,
        k,
        circle,
        n_directions,
        direction_aperture,
        grid=grid,
        tolerance=tolerance,
        max_workers=max_workers,
    ).dataset


def synthesize_disk_series(
    eta0: complex,
    radius: float,
    k: float,
    circle: MeasurementCircle,
    n_directions: int,
    direction_aperture: tuple[float, float] = FULL_APERTURE,
    center: tuple[float, float] = (0.0, 0.0),
) -> CauchyDataset:
    """Exact Cauchy dataset of a homogeneous disk from its series solution."""
    if circle.radius <= np.hypot(*center) + radius:
        raise ConfigError("Measurement circle must enclose the disk", fields=["radius"])
    points, normals = circle.nodes()
    directions = incident_directions(n_directions, direction_aperture)
    u = np.column_stack([disk_series_oracle(eta0, radius, k, points, d, center) for d in directions])
    du = np.column_stack(
        [disk_series_normal_derivative(eta0, radius, k, points, normals, d, center) for d in directions]
    )
    return CauchyDataset(
        k=k,
        circle=circle,
        n_directions=n_directions,
        direction_aperture=direction_aperture,
        u=u,
        du=du,
    )


def noise_generators(seed: int) -> tuple[np.random.Generator, np.random.Generator]:
    """Two independent PCG64 streams derived from the master seed, for N1 and N2."""
    first, second = np.random.SeedSequence(seed).spawn(2)
    return np.random.Generator(np.random.PCG64(first)), np.random.Generator(np.random.PCG64(second))


def _noise_matrix(rng: np.random.Generator, shape: tuple[int, int]) -> NDArray[np.complex128]:
    real = rng.uniform(-1.0, 1.0, size=shape)
    imag = rng.uniform(-1.0, 1.0, size=shape)
    return real + 1j * imag


def _perturb(data: NDArray, noise: NDArray, level: float) -> NDArray:
    return data + level * noise / np.linalg.norm(noise) * np.linalg.norm(data)


def add_noise(dataset: CauchyDataset, spec: NoiseSpec) -> CauchyDataset:
    """Apply the relative Frobenius-norm noise model to U and dU independently.

    Args:
        dataset: Clean dataset.
        spec: Noise level and seed.

    Returns:
        Noisy copy; the input dataset itself when the level is 0.

    Raises:
        DegenerateError: If U is identically zero and the level is positive.
    """
    if spec.level == 0.0:
        return dataset
    if np.linalg.norm(dataset.u) == 0.0:
        raise DegenerateError("Cannot add relative noise to an all-zero dataset")

    rng_u, rng_du = noise_generators(spec.seed)
    shape = dataset.u.shape
    u = _perturb(dataset.u, _noise_matrix(rng_u, shape), spec.level)
    du = None
    if dataset.du is not None:
        du = _perturb(dataset.du, _noise_matrix(rng_du, shape), spec.level)
    return dataset.with_data(u=u, du=du, noise_level=spec.level)


def achieved_noise(clean: CauchyDataset, noisy: CauchyDataset) -> dict:
    """Relative Frobenius gaps ||U_delta - U|| / ||U|| for both matrices."""

    def relative(a, b):
        norm = np.linalg.norm(a)
        return 0.0 if norm == 0.0 else float(np.linalg.norm(b - a) / norm)

    result = {"u": relative(clean.u, noisy.u)}
    if clean.du is not None and noisy.du is not None:
        result["du"] = relative(clean.du, noisy.du)
    return result
