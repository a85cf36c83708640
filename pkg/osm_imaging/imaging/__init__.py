"""Imaging functionals, far-field extraction and stability constants."""

from .functionals import (
    phi_test,
    extract_far_field,
    imaging_I,
    imaging_I_far,
    imaging_I_at,
    imaging_I_direct,
    imaging_I2,
    imaging_I2_far,
    imaging_I2_at,
    imaging_I2_volume,
    normalize,
    compute_image,
    separation_ratio,
)
from .stability import stability_constant_I, stability_constant_I2, stability_bound

__all__ = [
    "phi_test",
    "extract_far_field",
    "imaging_I",
    "imaging_I_far",
    "imaging_I_at",
    "imaging_I_direct",
    "imaging_I2",
    "imaging_I2_far",
    "imaging_I2_at",
    "imaging_I2_volume",
    "normalize",
    "compute_image",
    "separation_ratio",
    "stability_constant_I",
    "stability_constant_I2",
    "stability_bound",
]
