"""Command-line entry point.

Usage:
    osm-imaging run config/default_config.cfg
    osm-imaging preset fig1-kite --override noise_level=0.6 --override seed=3
    osm-imaging synthesize config/default_config.cfg
    osm-imaging image output/kite/kite_data.osmd config/default_config.cfg
    osm-imaging validate

Exit codes: 0 success, 2 configuration, file-format or I/O error, 3 numerical failure.
The run report is printed to stdout as JSON; progress goes to the log (stderr).
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from typing import Optional, Sequence

from . import __version__
from .core.errors import ConfigError, OSMError, SchemaError
from .experiment.config import ExperimentConfig
from .experiment.presets import preset, preset_names
from .experiment.runner import run, run_imaging, run_synthesis
from .experiment.validation import run_validation

logger = logging.getLogger("osm_imaging")

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_NUMERICAL = 3


def build_parser() -> argparse.ArgumentParser:
    """Argument parser for all subcommands."""
    parser = argparse.ArgumentParser(
        prog="osm-imaging",
        description="Orthogonality-sampling reconstruction of penetrable media from multi-static data",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    verbosity = parser.add_mutually_exclusive_group()
    verbosity.add_argument("-v", "--verbose", action="store_true", help="Debug logging")
    verbosity.add_argument("-q", "--quiet", action="store_true", help="Warnings and errors only")
    parser.add_argument("--threads", type=int, default=None, help="Worker cap (also limited by OSM_THREADS)")

    sub = parser.add_subparsers(dest="command", required=True)

    p_run = sub.add_parser("run", help="Synthesize, add noise, image and export")
    p_run.add_argument("config", help="Config file (key = value text or .json)")
    p_run.add_argument("--override", action="append", default=[], metavar="KEY=VALUE", help="Override a config key")

    p_preset = sub.add_parser("preset", help="Run a named scenario")
    p_preset.add_argument("name", nargs="?", help="Preset name; omit with --list")
    p_preset.add_argument("--override", action="append", default=[], metavar="KEY=VALUE", help="Override a config key")
    p_preset.add_argument("--list", action="store_true", help="List preset names and exit")

    p_synth = sub.add_parser("synthesize", help="Write the (noisy) dataset only")
    p_synth.add_argument("config", help="Config file")
    p_synth.add_argument("--override", action="append", default=[], metavar="KEY=VALUE", help="Override a config key")

    p_image = sub.add_parser("image", help="Image a stored dataset")
    p_image.add_argument("dataset", help="Dataset file (.osmd or .csv)")
    p_image.add_argument("config", help="Config file supplying functionals, grid and outputs")
    p_image.add_argument("--override", action="append", default=[], metavar="KEY=VALUE", help="Override a config key")

    sub.add_parser("validate", help="Check the solver and functionals against the disk series")
    return parser


def _configure_logging(args: argparse.Namespace) -> None:
    level = logging.DEBUG if args.verbose else logging.WARNING if args.quiet else logging.INFO
    logging.basicConfig(level=level, format="%(asctime)s %(levelname)-7s %(name)s: %(message)s")


def _load_config(path: str, overrides: Sequence[str]) -> ExperimentConfig:
    config = ExperimentConfig.from_file(path)
    return config.with_overrides(overrides) if overrides else config


def _dispatch(args: argparse.Namespace) -> int:
    if args.command == "validate":
        results = run_validation(args.threads)
        print(json.dumps({"checks": [r.to_dict() for r in results]}, indent=2))
        return EXIT_OK if all(r.passed for r in results) else EXIT_NUMERICAL

    if args.command == "preset":
        if args.list:
            print("\n".join(preset_names()))
            return EXIT_OK
        if not args.name:
            raise ConfigError("A preset name is required (or use --list)", fields=["preset"])
        config = preset(args.name)
        if args.override:
            config = config.with_overrides(args.override)
        report = run(config, args.threads)
    elif args.command == "run":
        report = run(_load_config(args.config, args.override), args.threads)
    elif args.command == "synthesize":
        report = run_synthesis(_load_config(args.config, args.override), args.threads)
    else:
        report = run_imaging(args.dataset, _load_config(args.config, args.override), args.threads)

    print(json.dumps(report.to_dict(), indent=2))
    return EXIT_OK


def main(argv: Optional[Sequence[str]] = None) -> int:
    """Run the CLI and return the exit code."""
    args = build_parser().parse_args(argv)
    _configure_logging(args)
    try:
        return _dispatch(args)
    except (ConfigError, SchemaError) as e:
        logger.error("%s", e)
        return EXIT_CONFIG
    except OSError as e:
        logger.error("Cannot access %s: %s", e.filename, e.strerror)
        return EXIT_CONFIG
    except OSMError as e:
        logger.error("Numerical failure: %s", e)
        return EXIT_NUMERICAL


if __name__ == "__main__":
    sys.exit(main())
