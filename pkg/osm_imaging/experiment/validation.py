"""Self-checks of the numerical pipeline against the disk series solution.

Each check compares an implemented route with an independent one and
records the measured value against its threshold.
"""

from __future__ import annotations

import logging
import math
import time
from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np

from ..core.geometry import incident_directions
from ..core.models import MeasurementCircle, NoiseSpec
from ..core.shapes import medium_from_name
from ..forward.oracle import disk_series_far_field, disk_series_oracle
from ..forward.solver import VolumeGrid, scattered_at, solve_all
from ..imaging.functionals import extract_far_field, imaging_I2_at, imaging_I2_volume, imaging_I_at
from ..simulator.synthesis import achieved_noise, add_noise, dataset_from_solutions, synthesize_disk_series

logger = logging.getLogger(__name__)

DISK_ETA = 0.5
DISK_RADIUS = 0.4


@dataclass
class CheckResult:
    """Outcome of one validation check."""

    name: str
    value: float
    threshold: str
    passed: bool
    elapsed_seconds: float = 0.0

    def to_dict(self) -> dict:
        """Convert to dictionary."""
        return {
            "name": self.name,
            "value": self.value,
            "threshold": self.threshold,
            "passed": self.passed,
            "elapsed_seconds": round(self.elapsed_seconds, 3),
        }


def _relative_l2(approx: np.ndarray, exact: np.ndarray) -> float:
    return float(np.linalg.norm(approx - exact) / np.linalg.norm(exact))


def check_forward_solver(max_workers: Optional[int] = None) -> CheckResult:
    """Solver scattered field vs the series at 16 receivers on R = 3 (k = 4, m = 96)."""
    k = 4.0
    medium = medium_from_name("disk", contrast=DISK_ETA, disk_radius=DISK_RADIUS)
    receivers, _ = MeasurementCircle(radius=3.0, n_receivers=16).nodes()
    directions = incident_directions(4)
    solutions = solve_all(medium, list(directions), k, VolumeGrid(m=96), max_workers=max_workers)
    approx = np.concatenate([scattered_at(s, receivers) for s in solutions])
    exact = np.concatenate([disk_series_oracle(DISK_ETA, DISK_RADIUS, k, receivers, d) for d in directions])
    error = _relative_l2(approx, exact)
    return CheckResult("forward_solver_vs_series", error, "< 0.02", error < 0.02)


def check_far_field_extraction() -> CheckResult:
    """Far field recovered from exact Cauchy data vs the series far field."""
    k = 8.0
    circle = MeasurementCircle(radius=3.0, n_receivers=64)
    dataset = synthesize_disk_series(DISK_ETA, DISK_RADIUS, k, circle, 16)
    far_field = extract_far_field(dataset)
    exact = np.column_stack(
        [disk_series_far_field(DISK_ETA, DISK_RADIUS, k, far_field.xhat, d) for d in dataset.directions]
    )
    error = _relative_l2(far_field.values, exact)
    return CheckResult("far_field_extraction", error, "< 0.015", error < 0.015)


def check_noise_exactness() -> CheckResult:
    """Achieved relative Frobenius noise equals the requested level."""
    circle = MeasurementCircle(radius=3.0, n_receivers=32)
    dataset = synthesize_disk_series(DISK_ETA, DISK_RADIUS, 8.0, circle, 32)
    worst = 0.0
    for level in (0.3, 0.6, 0.9):
        achieved = achieved_noise(dataset, add_noise(dataset, NoiseSpec(level=level, seed=7)))
        worst = max(worst, *(abs(value - level) for value in achieved.values()))
    return CheckResult("noise_exactness", worst, "< 1e-13", worst < 1e-13)


def check_i2_identity(max_workers: Optional[int] = None) -> CheckResult:
    """Boundary I2 vs the volume-integral form at 20 random points (k = 8)."""
    k = 8.0
    medium = medium_from_name("disk", contrast=DISK_ETA, disk_radius=DISK_RADIUS)
    circle = MeasurementCircle(radius=3.0, n_receivers=96)
    directions = incident_directions(16)
    solutions = solve_all(medium, list(directions), k, VolumeGrid(m=64), max_workers=max_workers)
    dataset = dataset_from_solutions(solutions, circle, (0.0, 2.0 * math.pi))
    points = np.random.default_rng(11).uniform(-1.5, 1.5, size=(20, 2))
    boundary = imaging_I2_at(dataset, points)
    volume = imaging_I2_volume(solutions, points, dataset.direction_weight)
    error = float(np.max(np.abs(boundary - volume) / np.abs(volume)))
    return CheckResult("i2_boundary_vs_volume", error, "< 0.01", error < 0.01)


def check_decay() -> CheckResult:
    """I(z) ratio at distances 10 and 20 from the disk."""
    k = 1.3 * math.pi
    circle = MeasurementCircle(radius=3.0, n_receivers=64)
    dataset = synthesize_disk_series(DISK_ETA, DISK_RADIUS, k, circle, 160)
    points = np.array([[10.0 + DISK_RADIUS, 0.0], [20.0 + DISK_RADIUS, 0.0]])
    near, far = imaging_I_at(dataset, points, xhat_count=160)
    ratio = float(near / far)
    return CheckResult("indicator_decay_ratio", ratio, "in [1.6, 2.6]", 1.6 <= ratio <= 2.6)


CHECKS: dict[str, Callable[..., CheckResult]] = {
    "forward_solver": check_forward_solver,
    "far_field_extraction": check_far_field_extraction,
    "noise_exactness": check_noise_exactness,
    "i2_identity": check_i2_identity,
    "decay": check_decay,
}

_THREADED = ("forward_solver", "i2_identity")


def run_validation(max_workers: Optional[int] = None) -> list[CheckResult]:
    """Run every check and log a one-line verdict for each."""
    results = []
    for name, check in CHECKS.items():
        start = time.perf_counter()
        result = check(max_workers) if name in _THREADED else check()
        result.elapsed_seconds = time.perf_counter() - start
        logger.info("%-24s %-6s value=%.4g (%s)", result.name, "PASS" if result.passed else "FAIL", result.value, result.threshold)
        results.append(result)
    return results
