"""Image export (CSV and PGM)."""

from .export import export_image, image_to_csv, image_to_pgm, load_image_csv

__all__ = [
    "export_image",
    "image_to_csv",
    "image_to_pgm",
    "load_image_csv",
]
