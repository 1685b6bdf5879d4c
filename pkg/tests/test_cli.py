"""Tests for the command-line interface."""

import json
import sys

import pytest
from click.testing import CliRunner

from gorpoincare import __version__
from gorpoincare.cli import main, run


@pytest.fixture
def runner():
    return CliRunner()


def parse_json(output):
    """The JSON document in ``output``, ignoring log lines around it."""
    lines = output.splitlines()
    start = lines.index("{")
    end = len(lines) - lines[::-1].index("}")
    return json.loads("\n".join(lines[start:end]))


class TestBasics:
    """Tests for help and version output."""

    def test_version(self, runner):
        result = runner.invoke(main, ["--version"])
        assert result.exit_code == 0
        assert __version__ in result.output

    def test_help_lists_commands(self, runner):
        result = runner.invoke(main, ["--help"])
        assert result.exit_code == 0
        for command in ("gen", "hilbert", "betti", "dr", "verify", "maps", "corpus"):
            assert command in result.output


class TestInstanceCommands:
    """Tests for gen, hilbert, betti and dr."""

    def test_gen_json(self, runner):
        result = runner.invoke(main, ["gen", "--e", "2", "--s", "4"])
        assert result.exit_code == 0
        data = parse_json(result.output)
        assert data["algebra"]["hilbert_function"] == [1, 2, 3, 2, 1]
        assert data["dual_generator"].startswith("# e=2 s=4")

    def test_gen_to_file(self, runner, tmp_path):
        path = tmp_path / "f.dual"
        result = runner.invoke(main, ["gen", "--e", "2", "--s", "4", "-f", "csv", "-o", str(path)])
        assert result.exit_code == 0
        assert path.read_text().startswith("# e=2 s=4 p=32003")

    def test_hilbert_of_dual_file(self, runner, fixtures_dir):
        result = runner.invoke(
            main, ["hilbert", "--dual", str(fixtures_dir / "fermat_e2_s4.dual"), "-f", "csv"]
        )
        assert result.exit_code == 0
        assert "degree,h,eps" in result.output
        assert "2,2,3" in result.output

    def test_hilbert_verdict(self, runner, fixtures_dir):
        result = runner.invoke(main, ["hilbert", "--dual", str(fixtures_dir / "fermat_e2_s4.dual")])
        assert parse_json(result.output)["compressed"] is False

    def test_betti_over_q(self, runner):
        result = runner.invoke(
            main, ["betti", "--e", "2", "--s", "4", "--ring", "q", "--module", "r", "--trunc", "2"]
        )
        assert result.exit_code == 0
        data = parse_json(result.output)
        assert data["totals"] == [1, 2, 1]
        assert data["rows"][1] == {"i": 1, "j": 3, "beta": 2}

    def test_betti_truncated_exits_two(self, runner):
        args = ["betti", "--e", "2", "--s", "4", "--trunc", "3", "--degree-cap", "2"]
        result = runner.invoke(main, args)
        assert result.exit_code == 2

    def test_betti_unknown_module(self, runner):
        result = runner.invoke(main, ["betti", "--e", "2", "--s", "4", "--module", "power:x"])
        assert result.exit_code == 3

    @pytest.mark.parametrize("route", ["t1", "t2", "lemma56"])
    def test_dr_routes_agree(self, runner, route):
        result = runner.invoke(main, ["dr", "--e", "2", "--s", "4", "--via", route])
        assert result.exit_code == 0
        data = parse_json(result.output)
        assert data["via"] == route
        assert [row["coefficient"] for row in data["rows"]] == [1, 0, -2, 0, 1]

    def test_dr_closed_form(self, runner):
        result = runner.invoke(main, ["dr", "--e", "3", "--s", "4", "--via", "t2"])
        assert result.exit_code == 0
        data = parse_json(result.output)
        assert [row["coefficient"] for row in data["rows"]] == [1, 0, -7, -7, 0, 1]

    def test_dr_closed_form_odd_socle(self, runner):
        result = runner.invoke(main, ["dr", "--e", "2", "--s", "5", "--via", "t2"])
        assert result.exit_code == 1
        assert "OddSocle" in result.output

    def test_dr_markdown(self, runner):
        args = ["dr", "--e", "2", "--s", "4", "--via", "lemma56", "-f", "markdown"]
        result = runner.invoke(main, args)
        assert result.exit_code == 0
        assert result.output.startswith("# dr")
        assert "| power | coefficient |" in result.output

    def test_measurements_at_socle_degree_three(self, runner):
        """Only the main suite needs --allow-s3."""
        result = runner.invoke(main, ["hilbert", "--e", "2", "--s", "3"])
        assert result.exit_code == 0
        assert parse_json(result.output)["compressed"] is True


class TestVerify:
    """Tests for verify exit codes and formats."""

    def test_passing_run(self, runner):
        args = ["verify", "--e", "2", "--s", "4", "--trunc", "3", "-f", "csv"]
        result = runner.invoke(main, args)
        assert result.exit_code == 0
        assert "suite,name,status,hard,anchor" in result.output
        assert "main,poincare_identity,pass" in result.output

    def test_markdown_summary(self, runner):
        args = ["verify", "--e", "2", "--s", "4", "--trunc", "3", "-f", "markdown", "--timings"]
        result = runner.invoke(main, args)
        assert result.exit_code == 0
        assert "Overall status: **PASS**" in result.output
        assert "### Timings" in result.output

    def test_socle_degree_three_needs_flag(self, runner):
        result = runner.invoke(main, ["verify", "--e", "2", "--s", "3"])
        assert result.exit_code == 3
        assert "--allow-s3" in result.output

    def test_bad_prime(self, runner):
        result = runner.invoke(main, ["verify", "--e", "2", "--s", "4", "--prime", "15"])
        assert result.exit_code == 3

    def test_run_file(self, runner, tmp_path):
        path = tmp_path / "run.yaml"
        path.write_text("e: 2\ns: 4\nsteps: 3\nsuites: [socle]\n")
        result = runner.invoke(main, ["verify", "--config", str(path)])
        assert result.exit_code == 0
        assert parse_json(result.output)["suite"] == "socle"

    def test_usage_error_exit_code(self, monkeypatch):
        monkeypatch.setattr(sys, "argv", ["gorpoincare", "verify", "--suite", "bogus"])
        with pytest.raises(SystemExit) as info:
            run()
        assert info.value.code == 3
