"""Named configurations reproducing the published reconstruction scenarios.

Preset names combine a scenario with one of the three test media:

    fig1-<medium>        near-field, k = 8, I and I2
    fig1-<medium>-k4     near-field, k = 4, I
    fig1-<medium>-k8     same as fig1-<medium>
    fig2-<medium>        near-field, 60% noise, I
    fig2-<medium>-90     near-field, 90% noise, I and I2
    fig3-<medium>        far-field (R = 100), I, I_far and I2_far
    fig4-<medium>        bottom half aperture, N_x and N_d halved, I and I2

where <medium> is kite, disk_rectangle or square_cavity.
"""

from __future__ import annotations

import math

from ..core.errors import ConfigError
from .config import ExperimentConfig

PRESET_MEDIA = ("kite", "disk_rectangle", "square_cavity")

# N_x = N_d per medium for full-aperture data
DATA_SIZES = {"kite": 64, "disk_rectangle": 64, "square_cavity": 96}

NEAR_FIELD_RADIUS = 3.0
FAR_FIELD_RADIUS = 100.0
BOTTOM_HALF = (math.pi, 2.0 * math.pi)

_SCENARIOS = {
    "fig1": {"functionals": ("I", "I2")},
    "fig1-k4": {"k": 4.0, "functionals": ("I",)},
    "fig1-k8": {"functionals": ("I", "I2")},
    "fig2": {"noise_level": 0.6, "functionals": ("I",)},
    "fig2-90": {"noise_level": 0.9, "functionals": ("I", "I2")},
    "fig3": {"radius": FAR_FIELD_RADIUS, "functionals": ("I", "I_far", "I2_far")},
    "fig4": {
        "receiver_aperture": BOTTOM_HALF,
        "direction_aperture": BOTTOM_HALF,
        "functionals": ("I", "I2"),
    },
}


def _split_name(name: str) -> tuple[str, str]:
    """'fig2-kite-90' -> ('fig2-90', 'kite')."""
    parts = name.split("-")
    figure, rest = parts[0], parts[1:]
    suffix = ""
    if rest and rest[-1] in ("k4", "k8", "90"):
        suffix = "-" + rest.pop()
    return figure + suffix, "-".join(rest)


def preset_names() -> list[str]:
    """All valid preset names."""
    names = []
    for medium in PRESET_MEDIA:
        for scenario in _SCENARIOS:
            figure, _, suffix = scenario.partition("-")
            names.append(f"{figure}-{medium}" + (f"-{suffix}" if suffix else ""))
    return sorted(names)


def preset(name: str) -> ExperimentConfig:
    """Build the configuration for a named scenario.

    Args:
        name: Preset name, e.g. "fig1-kite-k4" or "fig4-square_cavity".

    Returns:
        The experiment configuration.

    Raises:
        ConfigError: If the name is not a known preset.

    Examples:
        >>> preset("fig3-kite").radius
        100.0
        >>> preset("fig4-kite").n_receivers
        32
    """
    scenario, medium = _split_name(name)
    if scenario not in _SCENARIOS or medium not in PRESET_MEDIA:
        raise ConfigError(
            f"Unknown preset '{name}'. Available: {', '.join(preset_names())}",
            fields=["preset"],
        )

    size = DATA_SIZES[medium]
    if scenario == "fig4":
        size //= 2

    data = {
        "name": name,
        "medium": medium,
        "k": 8.0,
        "radius": NEAR_FIELD_RADIUS,
        "n_receivers": size,
        "n_directions": size,
        "noise_level": 0.3,
        "sampling_domain": (-2.0, 2.0, -2.0, 2.0),
        "sampling_points": (96, 96),
        "output_dir": f"output/{name}",
    }
    data.update(_SCENARIOS[scenario])
    return ExperimentConfig.from_dict(data)
