"""Experiment pipelines: synthesis, noise, imaging and export.

Every pipeline writes into ``config.output_dir``:

    cache/<hash>.osmd          clean dataset, reused across seeds and functionals
    cache/<hash>.json          solver diagnostics of the cached dataset
    <name>_data.osmd           noisy dataset (synthesize only)
    <name>_<functional>.csv    normalized images, one per functional and format
    <name>_report.json         machine-readable run report
"""

from __future__ import annotations

import hashlib
import json
import logging
import time
from dataclasses import dataclass, field
from pathlib import Path
from typing import Optional, Union

import numpy as np

from ..core.models import CauchyDataset, IndicatorImage
from ..core.shapes import ContrastMap, distance_to_support
from ..imaging.functionals import compute_image, normalize, separation_ratio
from ..simulator.dataset_io import load_dataset, save_dataset
from ..simulator.synthesis import SynthesisResult, achieved_noise, add_noise, synthesize_with_solutions
from ..visualization.export import export_image
from .config import ExperimentConfig

logger = logging.getLogger(__name__)

DATASET_SUFFIX = ".osmd"

# Distance from the support beyond which points count as "far" in the separation diagnostic
FAR_DISTANCE = 0.5

STATUS_OK = "ok"
STATUS_DEGENERATE = "degenerate"

# Config keys that determine the clean dataset
_DATASET_KEYS = (
    "medium",
    "contrast",
    "disk_center",
    "disk_radius",
    "k",
    "radius",
    "n_receivers",
    "receiver_aperture",
    "n_directions",
    "direction_aperture",
    "solver_grid",
    "solver_box",
    "solver_tolerance",
)


@dataclass
class FunctionalResult:
    """One evaluated functional.

    Attributes:
        functional: Functional name.
        image: The normalized image, or the raw one when degenerate.
        status: STATUS_OK, or STATUS_DEGENERATE for an all-zero image that was
            neither normalized nor exported.
        files: Written files by format.
        elapsed_seconds: Evaluation time.
        separation: Mean indicator inside the medium over the mean far from it.
        argmax_distance: Distance from the image maximum to the medium support.
    """

    functional: str
    image: IndicatorImage
    status: str = STATUS_OK
    files: dict[str, str] = field(default_factory=dict)
    elapsed_seconds: float = 0.0
    separation: Optional[float] = None
    argmax_distance: Optional[float] = None

    @property
    def is_degenerate(self) -> bool:
        return self.status == STATUS_DEGENERATE

    def to_dict(self) -> dict:
        """Convert to dictionary."""
        return {
            "functional": self.functional,
            "status": self.status,
            "files": dict(self.files),
            "elapsed_seconds": round(self.elapsed_seconds, 3),
            "separation_ratio": _finite_or_none(self.separation),
            "argmax": None if self.is_degenerate else [float(v) for v in self.image.argmax_point],
            "argmax_distance": _finite_or_none(self.argmax_distance),
        }


@dataclass
class RunReport:
    """Everything a run produced, in report form."""

    config: ExperimentConfig
    dataset: Optional[CauchyDataset] = None
    dataset_path: Optional[str] = None
    cache_hit: bool = False
    synthesis: Optional[SynthesisResult] = None
    cached_synthesis: Optional[dict] = None
    achieved: dict = field(default_factory=dict)
    results: list[FunctionalResult] = field(default_factory=list)
    timings: dict = field(default_factory=dict)
    report_path: Optional[str] = None

    def to_dict(self) -> dict:
        """Convert to a JSON-friendly dictionary."""
        return {
            "name": self.config.name,
            "config": self.config.to_dict(),
            "dataset": {
                "path": self.dataset_path,
                "cache_hit": self.cache_hit,
                "summary": self.dataset.summary() if self.dataset is not None else None,
                "synthesis": self.synthesis.to_dict() if self.synthesis is not None else self.cached_synthesis,
            },
            "noise": {
                "requested": self.config.noise_level,
                "seed": self.config.seed,
                "achieved": dict(self.achieved),
            },
            "functionals": [r.to_dict() for r in self.results],
            "timings": {key: round(value, 3) for key, value in self.timings.items()},
        }

    def write(self, path: Union[str, Path]) -> Path:
        """Write the report as JSON."""
        path = Path(path)
        path.parent.mkdir(parents=True, exist_ok=True)
        self.report_path = str(path)
        with open(path, "w") as f:
            json.dump(self.to_dict(), f, indent=2)
            f.write("\n")
        logger.info("Wrote report %s", path)
        return path


def _finite_or_none(value: Optional[float]) -> Optional[float]:
    if value is None or not np.isfinite(value):
        return None
    return float(value)


def dataset_cache_key(config: ExperimentConfig) -> str:
    """Content hash of the config keys that determine the clean dataset."""
    data = config.to_dict()
    subset = {key: data[key] for key in _DATASET_KEYS}
    payload = json.dumps(subset, sort_keys=True)
    return hashlib.sha256(payload.encode("utf-8")).hexdigest()[:20]


def dataset_cache_path(config: ExperimentConfig) -> Path:
    """Location of the cached clean dataset for this config."""
    return Path(config.output_dir) / "cache" / f"{dataset_cache_key(config)}{DATASET_SUFFIX}"


def clean_dataset(config: ExperimentConfig, max_workers: Optional[int] = None) -> RunReport:
    """Load the clean dataset from the cache or synthesize it.

    Geometry is checked before any forward solve.

    Returns:
        A report holding the dataset, its cache path and the solver diagnostics.
    """
    config.validate_geometry()
    report = RunReport(config=config)
    path = dataset_cache_path(config)

    if config.cache and path.exists():
        logger.info("Dataset cache hit: %s", path)
        report.dataset = load_dataset(path)
        report.dataset_path = str(path)
        report.cache_hit = True
        diagnostics = path.with_suffix(".json")
        if diagnostics.exists():
            report.cached_synthesis = json.loads(diagnostics.read_text())
        return report

    logger.info("Dataset cache miss, synthesizing %s", config.name)
    result = synthesize_with_solutions(
        config.build_medium(),
        config.k,
        config.measurement_circle(),
        config.n_directions,
        config.direction_aperture,
        grid=config.volume_grid(),
        tolerance=config.solver_tolerance,
        max_workers=max_workers,
    )
    report.dataset = result.dataset
    report.synthesis = result
    if config.cache:
        save_dataset(result.dataset, path)
        path.with_suffix(".json").write_text(json.dumps(result.to_dict(), indent=2) + "\n")
        report.dataset_path = str(path)
    return report


def _masks(medium: ContrastMap, image: IndicatorImage) -> tuple[np.ndarray, np.ndarray]:
    points = image.grid.points()
    inside = medium.contains(points).reshape(image.grid.shape)
    far = (distance_to_support(medium, points) > FAR_DISTANCE).reshape(image.grid.shape)
    return inside, far


def image_dataset(
    dataset: CauchyDataset,
    config: ExperimentConfig,
    medium: Optional[ContrastMap] = None,
    max_workers: Optional[int] = None,
) -> list[FunctionalResult]:
    """Evaluate, normalize and export every configured functional.

    An all-zero image (zero contrast, for instance) is recorded with status
    ``degenerate`` and is not normalized or exported.

    Args:
        dataset: Data to image (already noisy, if noise is wanted).
        config: Run configuration; supplies functionals, grid and outputs.
        medium: True medium for the separation diagnostics, if known.
        max_workers: Thread cap for the imaging kernels.
    """
    grid = config.sampling_grid()
    output_dir = Path(config.output_dir)
    results = []
    for functional in config.functionals:
        start = time.perf_counter()
        image = compute_image(dataset, grid, functional, config.xhat_count, max_workers)
        if image.is_degenerate:
            logger.warning("%s image is identically zero; skipping normalization and export", functional)
            result = FunctionalResult(functional=functional, image=image, status=STATUS_DEGENERATE)
            result.elapsed_seconds = time.perf_counter() - start
            results.append(result)
            continue
        image = normalize(image)
        result = FunctionalResult(functional=functional, image=image)
        for fmt in config.output_formats:
            path = export_image(image, output_dir / f"{config.name}_{functional}.{fmt}", fmt)
            result.files[fmt] = str(path)
        if medium is not None and not medium.is_zero:
            inside, far = _masks(medium, image)
            result.separation = separation_ratio(image, inside, far)
            result.argmax_distance = float(distance_to_support(medium, image.argmax_point[None, :])[0])
        result.elapsed_seconds = time.perf_counter() - start
        logger.info(
            "%s done in %.2fs (separation %s)",
            functional,
            result.elapsed_seconds,
            "n/a" if result.separation is None else f"{result.separation:.2f}",
        )
        results.append(result)
    return results


def run(config: ExperimentConfig, max_workers: Optional[int] = None) -> RunReport:
    """Full pipeline: clean data, noise, every functional, report.

    Raises:
        ConfigError: On geometry preconditions, before any solve.
        SolverError: If a forward solve fails.
    """
    start = time.perf_counter()
    report = clean_dataset(config, max_workers)
    synthesized = time.perf_counter()

    clean = report.dataset
    noisy = add_noise(clean, config.noise_spec())
    report.achieved = achieved_noise(clean, noisy)
    report.dataset = noisy

    report.results = image_dataset(noisy, config, config.build_medium(), max_workers)
    finished = time.perf_counter()
    report.timings = {
        "dataset_seconds": synthesized - start,
        "imaging_seconds": finished - synthesized,
        "total_seconds": finished - start,
    }
    report.write(Path(config.output_dir) / f"{config.name}_report.json")
    return report


def run_synthesis(config: ExperimentConfig, max_workers: Optional[int] = None) -> RunReport:
    """Data only: write the noisy dataset and a report, no imaging."""
    start = time.perf_counter()
    report = clean_dataset(config, max_workers)
    clean = report.dataset
    noisy = add_noise(clean, config.noise_spec())
    report.achieved = achieved_noise(clean, noisy)
    report.dataset = noisy
    report.dataset_path = str(save_dataset(noisy, Path(config.output_dir) / f"{config.name}_data{DATASET_SUFFIX}"))
    report.timings = {"total_seconds": time.perf_counter() - start}
    report.write(Path(config.output_dir) / f"{config.name}_report.json")
    return report


def run_imaging(
    dataset_path: Union[str, Path],
    config: ExperimentConfig,
    max_workers: Optional[int] = None,
) -> RunReport:
    """Imaging only, on a stored dataset. No noise is added.

    Raises:
        SchemaError: If the dataset file is malformed.
    """
    start = time.perf_counter()
    dataset = load_dataset(dataset_path)
    if dataset.k != config.k:
        logger.warning("Dataset wave number %g differs from config k = %g; using the dataset's", dataset.k, config.k)
    report = RunReport(config=config, dataset=dataset, dataset_path=str(dataset_path))
    report.results = image_dataset(dataset, config, config.build_medium(), max_workers)
    report.timings = {"imaging_seconds": time.perf_counter() - start}
    report.write(Path(config.output_dir) / f"{config.name}_report.json")
    return report
