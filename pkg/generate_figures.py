#!/usr/bin/env python3
"""Regenerate the reconstruction scenarios from the named presets.

Each preset writes its images, dataset cache and report under output/<preset>/.
Clean datasets are cached, so re-running with another seed or noise level only
repeats the imaging step.

Usage:
    python generate_figures.py                      # every preset
    python generate_figures.py fig1-kite fig3-kite  # selected presets
    python generate_figures.py fig2                 # every preset starting with "fig2"
"""

import logging
import sys

from osm_imaging.core.errors import OSMError
from osm_imaging.experiment.presets import preset, preset_names
from osm_imaging.experiment.runner import run


def _select(patterns):
    names = preset_names()
    if not patterns:
        return names
    selected = [n for n in names if any(n == p or n.startswith(p + "-") for p in patterns)]
    unknown = [p for p in patterns if not any(n == p or n.startswith(p + "-") for n in names)]
    if unknown:
        print(f"Unknown preset(s): {', '.join(unknown)}")
        print(f"Available: {', '.join(names)}")
        sys.exit(2)
    return selected


def main():
    logging.basicConfig(level=logging.WARNING, format="%(levelname)s %(name)s: %(message)s")
    names = _select(sys.argv[1:])

    print("=" * 60)
    print("OSM Reconstruction Generator")
    print("=" * 60)
    print(f"\nPresets to run: {len(names)}")

    failures = []
    for name in names:
        config = preset(name)
        print(f"\n[{name}] k={config.k:g}, R={config.radius:g}, "
              f"{config.n_receivers}x{config.n_directions} data, noise {config.noise_level:.0%}")
        try:
            report = run(config)
        except OSMError as e:
            print(f"  FAILED: {e}")
            failures.append(name)
            continue

        timings = report.timings
        source = "cache" if report.cache_hit else "solver"
        print(f"  Data from {source} in {timings['dataset_seconds']:.1f}s, "
              f"imaging {timings['imaging_seconds']:.1f}s")
        for result in report.results:
            separation = "n/a" if result.separation is None else f"{result.separation:.2f}"
            print(f"  {result.functional:7s} separation {separation:>6s}  -> {', '.join(result.files.values())}")

    print("\n" + "=" * 60)
    if failures:
        print(f"Done with {len(failures)} failure(s): {', '.join(failures)}")
        print("=" * 60)
        sys.exit(3)
    print("Done! Reports are in output/<preset>/<preset>_report.json")
    print("=" * 60)


if __name__ == "__main__":
    main()
