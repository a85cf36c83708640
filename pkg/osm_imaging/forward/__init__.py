"""Direct scattering: Green's kernels, the volume solver and the disk oracle."""

from .green import green, green_normal_derivative, far_field_green2, im_green
from .solver import (
    VolumeGrid,
    ForwardSolution,
    LippmannSchwingerOperator,
    assemble_ls_system,
    solve_forward,
    solve_all,
    scattered_at,
    scattered_normal_at,
    farfield_at,
)
from .oracle import disk_series_oracle, disk_series_normal_derivative, disk_series_far_field

__all__ = [
    "green",
    "green_normal_derivative",
    "far_field_green2",
    "im_green",
    "VolumeGrid",
    "ForwardSolution",
    "LippmannSchwingerOperator",
    "assemble_ls_system",
    "solve_forward",
    "solve_all",
    "scattered_at",
    "scattered_normal_at",
    "farfield_at",
    "disk_series_oracle",
    "disk_series_normal_derivative",
    "disk_series_far_field",
]
