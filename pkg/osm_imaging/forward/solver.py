"""Lippmann-Schwinger forward solver on a uniform volume grid.

The total field u solves (I - K) u = u_in with

    (K u)(x) = k^2 * integral of Phi(x, y) eta(y) u(y) dy.

K is discretized by a Nystrom rule on the cell centers of an m x m grid.
Off-diagonal cells use Phi(x, y_c) h^2; the self cell uses the integral of
Phi over the equal-area disk. Because the kernel only depends on x - y_c,
K is applied as a zero-padded FFT convolution, and the system is solved
matrix-free with restarted GMRES.
"""

from __future__ import annotations

import logging
import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np
from numpy.typing import ArrayLike, NDArray
from scipy import fft
from scipy.sparse.linalg import LinearOperator, gmres

from ..core.errors import ConfigError, ProximityError, SolverError
from ..core.shapes import ContrastMap, contrast_eval
from .green import (
    far_field_constant,
    green,
    green_with_normal_derivative,
    singular_cell_integral,
)

logger = logging.getLogger(__name__)

DEFAULT_TOLERANCE = 1e-8
GMRES_RESTART = 100
GMRES_MAX_CYCLES = 20
POINTS_PER_WAVELENGTH = 10


def worker_count(max_workers: Optional[int] = None) -> int:
    """Number of worker threads, capped by the OSM_THREADS environment variable."""
    limit = os.environ.get("OSM_THREADS")
    count = max_workers or os.cpu_count() or 1
    if limit:
        try:
            count = min(count, max(1, int(limit)))
        except ValueError:
            raise ConfigError(f"OSM_THREADS must be an integer, got '{limit}'", fields=["OSM_THREADS"]) from None
    return max(1, count)


@dataclass(frozen=True)
class VolumeGrid:
    """Uniform m x m grid of square cells over (-half_width, half_width)^2.

    Attributes:
        half_width: Half the side length of the solver box.
        m: Cells per axis.
    """

    half_width: float = 1.2
    m: int = 96

    def __post_init__(self):
        if self.half_width <= 0:
            raise ValueError(f"Solver box half-width must be positive, got {self.half_width}")
        if self.m < 2:
            raise ValueError(f"Volume grid needs at least 2 cells per axis, got m={self.m}")

    @property
    def h(self) -> float:
        """Cell side length."""
        return 2.0 * self.half_width / self.m

    @property
    def axis(self) -> NDArray[np.float64]:
        """Cell-center coordinates along one axis."""
        return -self.half_width + self.h * (np.arange(self.m) + 0.5)

    def centers(self) -> NDArray[np.float64]:
        """Cell centers, shape (m, m, 2), indexed [i1, i2]."""
        g1, g2 = np.meshgrid(self.axis, self.axis, indexing="ij")
        return np.stack([g1, g2], axis=-1)

    def covers(self, contrast: ContrastMap) -> bool:
        """Whether the contrast support lies inside the open solver box."""
        if contrast.is_zero:
            return True
        x1lo, x1hi, x2lo, x2hi = contrast.bounding_box()
        b = self.half_width
        return -b < x1lo and x1hi < b and -b < x2lo and x2hi < b

    def resolves(self, k: float) -> bool:
        """Whether h <= wavelength / 10."""
        return self.h <= 2.0 * math.pi / k / POINTS_PER_WAVELENGTH


class LippmannSchwingerOperator(LinearOperator):
    """Matrix-free operator u -> u - K_h u acting on flattened m x m cell values."""

    def __init__(self, eta: NDArray[np.complex128], grid: VolumeGrid, k: float):
        m = grid.m
        super().__init__(dtype=np.complex128, shape=(m * m, m * m))
        self.grid = grid
        self.k = k
        self.eta = eta
        self._kernel_hat = fft.fft2(self._padded_kernel(grid, k))

    @staticmethod
    def _padded_kernel(grid: VolumeGrid, k: float) -> NDArray[np.complex128]:
        m, h = grid.m, grid.h
        offsets = np.arange(-(m - 1), m)
        o1, o2 = np.meshgrid(offsets, offsets, indexing="ij")
        r = h * np.hypot(o1, o2)
        values = np.empty(r.shape, dtype=complex)
        off = r > 0.0
        values[off] = green(np.stack([r[off], np.zeros_like(r[off])], axis=-1), (0.0, 0.0), k) * h * h
        values[~off] = singular_cell_integral(h, k)

        padded = np.zeros((2 * m, 2 * m), dtype=complex)
        # Negative offsets wrap around the end of the padded array
        padded[np.mod(o1, 2 * m), np.mod(o2, 2 * m)] = values
        return padded

    def apply_volume_potential(self, u: NDArray[np.complex128]) -> NDArray[np.complex128]:
        """K_h u for cell values of shape (m, m)."""
        m = self.grid.m
        source = np.zeros((2 * m, 2 * m), dtype=complex)
        source[:m, :m] = self.eta * u
        conv = fft.ifft2(self._kernel_hat * fft.fft2(source))
        return self.k * self.k * conv[:m, :m]

    def _matvec(self, x: NDArray) -> NDArray:
        m = self.grid.m
        u = np.asarray(x, dtype=complex).reshape(m, m)
        return (u - self.apply_volume_potential(u)).reshape(np.shape(x))


def _eta_on_grid(contrast: ContrastMap, grid: VolumeGrid) -> NDArray[np.complex128]:
    return np.asarray(contrast_eval(contrast, grid.centers()), dtype=complex)


def assemble_ls_system(contrast: ContrastMap, grid: VolumeGrid, k: float) -> LippmannSchwingerOperator:
    """Build the discrete operator I - K_h.

    Args:
        contrast: The medium.
        grid: Volume grid covering the contrast support.
        k: Wave number.

    Returns:
        LippmannSchwingerOperator usable with scipy's Krylov solvers.

    Raises:
        ConfigError: If the grid does not cover the contrast support.
    """
    if k <= 0:
        raise ConfigError(f"Wave number must be positive, got {k}", fields=["k"])
    if not grid.covers(contrast):
        raise ConfigError(
            f"Solver box (-{grid.half_width}, {grid.half_width})^2 does not cover the contrast "
            f"support {contrast.bounding_box()}",
            fields=["solver_box"],
        )
    if not grid.resolves(k):
        logger.warning(
            "Volume grid under-resolves the wavelength: h=%.4f > lambda/%d=%.4f",
            grid.h,
            POINTS_PER_WAVELENGTH,
            2.0 * math.pi / k / POINTS_PER_WAVELENGTH,
        )
    return LippmannSchwingerOperator(_eta_on_grid(contrast, grid), grid, k)


@dataclass(frozen=True, eq=False)
class ForwardSolution:
    """Total field on the volume grid for one incident direction.

    Attributes:
        k: Wave number.
        direction: Incident direction d.
        grid: The volume grid.
        u: Total field at cell centers, shape (m, m).
        eta: Contrast at cell centers, shape (m, m).
        residual: Relative residual of the discrete equation.
        iterations: GMRES inner iterations.
    """

    k: float
    direction: NDArray[np.float64]
    grid: VolumeGrid
    u: NDArray[np.complex128]
    eta: NDArray[np.complex128]
    residual: float = 0.0
    iterations: int = 0

    @property
    def support_mask(self) -> NDArray[np.bool_]:
        """Cells with nonzero contrast."""
        return self.eta != 0

    @property
    def support_points(self) -> NDArray[np.float64]:
        """Centers of support cells, shape (n_support, 2)."""
        return self.grid.centers()[self.support_mask]

    @property
    def source(self) -> NDArray[np.complex128]:
        """eta * u * h^2 on support cells."""
        h = self.grid.h
        mask = self.support_mask
        return self.eta[mask] * self.u[mask] * h * h

    def scattered_at(self, x: ArrayLike):
        """Scattered field at exterior point(s) x."""
        points = np.atleast_2d(np.asarray(x, dtype=float))
        support = self.support_points
        if len(support) == 0:
            values = np.zeros(len(points), dtype=complex)
        else:
            check_clearance(points, support, self.grid.h)
            kernel = green(points[:, None, :], support[None, :, :], self.k)
            values = self.k * self.k * (kernel @ self.source)
        return values[0] if np.ndim(x) == 1 else values

    def scattered_normal_at(self, x: ArrayLike, nu: ArrayLike):
        """Normal derivative of the scattered field at exterior point(s) x along nu."""
        points = np.atleast_2d(np.asarray(x, dtype=float))
        normals = np.broadcast_to(np.atleast_2d(np.asarray(nu, dtype=float)), points.shape)
        support = self.support_points
        if len(support) == 0:
            values = np.zeros(len(points), dtype=complex)
        else:
            check_clearance(points, support, self.grid.h)
            _, kernel = green_with_normal_derivative(
                points[:, None, :], normals[:, None, :], support[None, :, :], self.k
            )
            values = self.k * self.k * (kernel @ self.source)
        return values[0] if np.ndim(x) == 1 else values

    def farfield_at(self, xhat: ArrayLike):
        """Far-field pattern u_inf(xhat) for direction(s) xhat."""
        directions = np.atleast_2d(np.asarray(xhat, dtype=float))
        support = self.support_points
        if len(support) == 0:
            values = np.zeros(len(directions), dtype=complex)
        else:
            phase = np.exp(-1j * self.k * (directions @ support.T))
            values = self.k * self.k * far_field_constant(self.k) * (phase @ self.source)
        return values[0] if np.ndim(xhat) == 1 else values


def check_clearance(points: NDArray, support: NDArray, h: float) -> None:
    """Raise ProximityError if any point lies within h of a support cell center."""
    diff = points[:, None, :] - support[None, :, :]
    nearest = np.sqrt(np.min(np.sum(diff * diff, axis=-1), axis=1))
    if np.any(nearest < h):
        worst = int(np.argmin(nearest))
        raise ProximityError(
            f"Point {points[worst].tolist()} lies {nearest[worst]:.3g} from the contrast support "
            f"(minimum clearance h={h:.3g})"
        )


def incident_field(grid: VolumeGrid, direction: ArrayLike, k: float) -> NDArray[np.complex128]:
    """Plane wave exp(i k x . d) at the cell centers."""
    d = np.asarray(direction, dtype=float)
    return np.exp(1j * k * (grid.centers() @ d))


def solve_forward(
    contrast: ContrastMap,
    direction: ArrayLike,
    k: float,
    grid: VolumeGrid,
    tolerance: float = DEFAULT_TOLERANCE,
    operator: Optional[LippmannSchwingerOperator] = None,
) -> ForwardSolution:
    """Solve the discrete Lippmann-Schwinger equation for one incident direction.

    Args:
        contrast: The medium.
        direction: Unit incident direction d.
        k: Wave number.
        grid: Volume grid.
        tolerance: Relative GMRES tolerance.
        operator: A prebuilt operator for this medium, grid and k, shared
            across directions.

    Returns:
        ForwardSolution with the attained residual and iteration count.

    Raises:
        ConfigError: If the grid does not cover the support.
        SolverError: If GMRES does not converge within 20 restart cycles of 100.
    """
    if operator is None:
        operator = assemble_ls_system(contrast, grid, k)
    d = np.asarray(direction, dtype=float)
    u_in = incident_field(grid, d, k)

    if not np.any(operator.eta):
        logger.warning("All-zero contrast: total field equals the incident field")
        return ForwardSolution(k=k, direction=d, grid=grid, u=u_in, eta=operator.eta)

    b = u_in.ravel()
    counter = {"iterations": 0}

    def count(_residual_norm):
        counter["iterations"] += 1

    x, info = gmres(
        operator,
        b,
        x0=b.copy(),
        rtol=tolerance,
        atol=0.0,
        restart=GMRES_RESTART,
        maxiter=GMRES_MAX_CYCLES,
        callback=count,
        callback_type="pr_norm",
    )
    residual = float(np.linalg.norm(operator.matvec(x) - b) / np.linalg.norm(b))
    if info != 0:
        raise SolverError(
            f"GMRES did not converge for direction {d.tolist()}",
            residual=residual,
            iterations=counter["iterations"],
        )
    logger.debug(
        "Solved direction (%.4f, %.4f): %d iterations, residual %.2e",
        d[0],
        d[1],
        counter["iterations"],
        residual,
    )
    return ForwardSolution(
        k=k,
        direction=d,
        grid=grid,
        u=x.reshape(grid.m, grid.m),
        eta=operator.eta,
        residual=residual,
        iterations=counter["iterations"],
    )


def solve_all(
    contrast: ContrastMap,
    directions: Sequence[ArrayLike],
    k: float,
    grid: VolumeGrid,
    tolerance: float = DEFAULT_TOLERANCE,
    max_workers: Optional[int] = None,
) -> list[ForwardSolution]:
    """Solve for every incident direction in parallel, sharing one operator.

    Returns:
        Solutions in the order of ``directions``.
    """
    operator = assemble_ls_system(contrast, grid, k)
    workers = worker_count(max_workers)
    logger.info("Solving %d directions on a %dx%d grid with %d workers", len(directions), grid.m, grid.m, workers)

    def solve(d):
        return solve_forward(contrast, d, k, grid, tolerance=tolerance, operator=operator)

    if workers == 1:
        solutions = [solve(d) for d in directions]
    else:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            solutions = list(pool.map(solve, directions))

    if solutions:
        logger.info(
            "Forward batch done: max residual %.2e, max iterations %d",
            max(s.residual for s in solutions),
            max(s.iterations for s in solutions),
        )
    return solutions


def scattered_at(solution: ForwardSolution, x: ArrayLike):
    """Scattered field of ``solution`` at exterior point(s) x."""
    return solution.scattered_at(x)


def scattered_normal_at(solution: ForwardSolution, x: ArrayLike, nu: ArrayLike):
    """Normal derivative of the scattered field of ``solution`` at x along nu."""
    return solution.scattered_normal_at(x, nu)


def farfield_at(solution: ForwardSolution, xhat: ArrayLike):
    """Far-field pattern of ``solution`` in direction(s) xhat."""
    return solution.farfield_at(xhat)
