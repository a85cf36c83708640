"""Dataset synthesis, noise injection and persistence."""

from .synthesis import (
    SynthesisResult,
    synthesize,
    synthesize_with_solutions,
    synthesize_disk_series,
    dataset_from_solutions,
    add_noise,
    achieved_noise,
)
from .dataset_io import save_dataset, load_dataset

__all__ = [
    "SynthesisResult",
    "synthesize",
    "synthesize_with_solutions",
    "synthesize_disk_series",
    "dataset_from_solutions",
    "add_noise",
    "achieved_noise",
    "save_dataset",
    "load_dataset",
]
