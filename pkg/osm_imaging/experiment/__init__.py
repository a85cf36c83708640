"""Experiment configuration, presets and pipelines."""

from .config import ExperimentConfig, parse_key_value_text, parse_number
from .presets import preset, preset_names
from .runner import (
    FunctionalResult,
    RunReport,
    clean_dataset,
    dataset_cache_key,
    dataset_cache_path,
    image_dataset,
    run,
    run_imaging,
    run_synthesis,
)
from .validation import CheckResult, run_validation

__all__ = [
    "ExperimentConfig",
    "parse_key_value_text",
    "parse_number",
    "preset",
    "preset_names",
    "FunctionalResult",
    "RunReport",
    "clean_dataset",
    "dataset_cache_key",
    "dataset_cache_path",
    "image_dataset",
    "run",
    "run_imaging",
    "run_synthesis",
    "CheckResult",
    "run_validation",
]
