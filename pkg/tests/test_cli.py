"""Tests for the command-line entry point."""

import json

import pytest

from osm_imaging.cli import EXIT_CONFIG, EXIT_NUMERICAL, EXIT_OK, build_parser, main


def create_test_config_file(tmp_path, extra=""):
    path = tmp_path / "run.cfg"
    path.write_text(
        "name = cli\n"
        "medium = disk\n"
        "disk_radius = 0.3\n"
        "k = 4\n"
        "n_receivers = 32\n"
        "n_directions = 16\n"
        "sampling_points = 15, 15\n"
        "functionals = I\n"
        "solver_grid = 24\n"
        f"output_dir = {tmp_path / 'out'}\n" + extra
    )
    return path


class TestCommands:
    """Tests for successful invocations."""

    def test_run_prints_report(self, tmp_path, capsys):
        path = create_test_config_file(tmp_path)
        assert main(["-q", "--threads", "1", "run", str(path)]) == EXIT_OK
        report = json.loads(capsys.readouterr().out)
        assert report["name"] == "cli"
        assert [f["functional"] for f in report["functionals"]] == ["I"]
        assert (tmp_path / "out" / "cli_I.pgm").exists()

    def test_overrides(self, tmp_path, capsys):
        path = create_test_config_file(tmp_path)
        code = main(["-q", "run", str(path), "--override", "noise_level=0", "--override", "functionals=I2"])
        assert code == EXIT_OK
        report = json.loads(capsys.readouterr().out)
        assert report["noise"]["achieved"] == {"u": 0.0, "du": 0.0}
        assert report["functionals"][0]["functional"] == "I2"

    def test_synthesize_then_image(self, tmp_path, capsys):
        path = create_test_config_file(tmp_path)
        assert main(["-q", "synthesize", str(path)]) == EXIT_OK
        dataset = json.loads(capsys.readouterr().out)["dataset"]["path"]
        assert main(["-q", "image", dataset, str(path)]) == EXIT_OK
        assert (tmp_path / "out" / "cli_I.csv").exists()

    def test_preset_list(self, capsys):
        assert main(["preset", "--list"]) == EXIT_OK
        names = capsys.readouterr().out.split()
        assert "fig1-kite" in names
        assert "fig4-square_cavity" in names


class TestExitCodes:
    """Errors map to exit codes 2 and 3."""

    def test_unknown_preset(self):
        assert main(["-q", "preset", "fig9-kite"]) == EXIT_CONFIG

    def test_missing_preset_name(self):
        assert main(["-q", "preset"]) == EXIT_CONFIG

    def test_missing_config_file(self, tmp_path):
        assert main(["-q", "run", str(tmp_path / "missing.cfg")]) == EXIT_CONFIG

    def test_unknown_key(self, tmp_path):
        path = create_test_config_file(tmp_path, "bogus = 1\n")
        assert main(["-q", "run", str(path)]) == EXIT_CONFIG

    def test_bad_override(self, tmp_path):
        path = create_test_config_file(tmp_path)
        assert main(["-q", "run", str(path), "--override", "k=-4"]) == EXIT_CONFIG

    def test_missing_dataset(self, tmp_path):
        path = create_test_config_file(tmp_path)
        assert main(["-q", "image", str(tmp_path / "missing.osmd"), str(path)]) == EXIT_CONFIG

    def test_malformed_dataset(self, tmp_path):
        path = create_test_config_file(tmp_path)
        broken = tmp_path / "broken.csv"
        broken.write_text("garbage\n")
        assert main(["-q", "image", str(broken), str(path)]) == EXIT_CONFIG

    def test_zero_contrast_without_noise_succeeds(self, tmp_path, capsys):
        path = create_test_config_file(tmp_path, "contrast = 0\nnoise_level = 0\n")
        assert main(["-q", "run", str(path)]) == EXIT_OK
        report = json.loads(capsys.readouterr().out)
        assert report["functionals"][0]["status"] == "degenerate"
        assert (tmp_path / "out" / "cli_report.json").exists()
        assert not (tmp_path / "out" / "cli_I.pgm").exists()

    def test_noise_on_zero_data_is_numerical_failure(self, tmp_path):
        path = create_test_config_file(tmp_path, "contrast = 0\n")
        assert main(["-q", "run", str(path)]) == EXIT_NUMERICAL


class TestParser:
    """Tests for argument parsing."""

    def test_subcommand_required(self):
        with pytest.raises(SystemExit):
            build_parser().parse_args([])

    def test_verbosity_flags_are_exclusive(self):
        with pytest.raises(SystemExit):
            build_parser().parse_args(["-v", "-q", "validate"])

    def test_repeatable_override(self):
        args = build_parser().parse_args(["preset", "fig1-kite", "--override", "k=4", "--override", "seed=2"])
        assert args.override == ["k=4", "seed=2"]
