"""Tests for run configuration, defaults and report models."""

import pytest

from gorpoincare.core.config import build_config, default_steps, load_anchors, load_run_file
from gorpoincare.core.errors import BadPrime, ConfigError, SocleDegreeExcluded
from gorpoincare.core.models import CheckRecord, RunConfig, VerificationReport


class TestRunConfig:
    """Tests for RunConfig.validate."""

    def test_valid(self):
        cfg = RunConfig(e=3, s=4).validate()
        assert cfg.prime == 32003
        assert cfg.suites == ["main"]

    @pytest.mark.parametrize(
        "kwargs",
        [
            {"e": 1, "s": 4},
            {"e": 2, "s": 1},
            {"e": 2, "s": 4, "suites": ["bogus"]},
            {"e": 2, "s": 4, "maps": ["psi"]},
            {"e": 2, "s": 4, "steps": 0},
            {"e": 2, "s": 4, "workers": 0},
        ],
    )
    def test_invalid(self, kwargs):
        with pytest.raises(ConfigError):
            RunConfig(**kwargs).validate()

    def test_prime_must_exceed_socle_degree(self):
        with pytest.raises(BadPrime):
            RunConfig(e=2, s=6, prime=5).validate()

    def test_socle_degree_three(self):
        with pytest.raises(SocleDegreeExcluded):
            RunConfig(e=3, s=3).validate()
        assert RunConfig(e=3, s=3, exploration=True).validate().exploration

    def test_socle_degree_three_outside_main(self):
        cfg = RunConfig(e=3, s=3, suites=["golod-powers", "socle"]).validate()
        assert not cfg.exploration
        with pytest.raises(SocleDegreeExcluded):
            cfg.check_socle_degree()


class TestBuildConfig:
    """Tests for merging defaults, run files and overrides."""

    def test_defaults(self):
        cfg = build_config({"e": 2, "s": 4})
        assert cfg.steps == 5
        assert cfg.seed == 0
        assert cfg.max_retries == 32

    def test_default_steps_by_dimension(self):
        assert default_steps(4) == 4
        assert default_steps(7) == 3

    def test_missing_dimensions(self):
        with pytest.raises(ConfigError):
            build_config({"e": 2})

    def test_run_file_then_overrides(self, tmp_path):
        path = tmp_path / "run.yaml"
        path.write_text("e: 3\ns: 4\nseed: 7\nsuites: [main, socle]\n")
        cfg = build_config({"seed": None, "s": 6}, path)
        assert (cfg.e, cfg.s, cfg.seed) == (3, 6, 7)
        assert cfg.suites == ["main", "socle"]

    def test_unknown_field_in_run_file(self, tmp_path):
        path = tmp_path / "run.yaml"
        path.write_text("e: 3\ns: 4\nsteps_per_case: 2\n")
        with pytest.raises(ConfigError, match="steps_per_case"):
            load_run_file(path)

    def test_run_file_must_be_mapping(self, tmp_path):
        path = tmp_path / "run.yaml"
        path.write_text("- 3\n- 4\n")
        with pytest.raises(ConfigError):
            load_run_file(path)

    def test_catalog_has_anchors(self):
        anchors = load_anchors()
        for name in ("poincare_identity", "dr_measured", "golod_power", "corpus_case"):
            assert anchors[name]["anchor"]
        assert anchors["periodicity"]["hard"] is False

    def test_every_anchor_names_its_result(self):
        for name, entry in load_anchors().items():
            assert entry["ref"], name

    def test_golod_bound_is_hard(self):
        assert load_anchors()["golod_bound"]["hard"] is True


class TestReports:
    """Tests for CheckRecord and VerificationReport."""

    def test_unknown_status(self):
        with pytest.raises(ValueError):
            CheckRecord("x", "", "maybe")

    def test_duplicate_check(self):
        report = VerificationReport("main")
        report.add(CheckRecord("x", "", "pass"))
        with pytest.raises(ValueError):
            report.add(CheckRecord("x", "", "fail"))

    def test_status_precedence(self):
        report = VerificationReport("main")
        report.add(CheckRecord("a", "", "pass"))
        report.add(CheckRecord("b", "", "inconclusive"))
        assert (report.status, report.exit_code) == ("inconclusive", 2)
        report.add(CheckRecord("c", "", "fail", hard=False))
        assert report.status == "inconclusive"
        report.add(CheckRecord("d", "", "fail"))
        assert (report.status, report.exit_code) == ("fail", 1)
        assert report.counts() == {"pass": 1, "fail": 2, "inconclusive": 1, "skipped": 0}

    def test_to_dict(self):
        report = VerificationReport("main", instance={"e": 2})
        report.add(CheckRecord("a", "claim", "pass", witness={"v": [1, 2]}, ref="duality"))
        report.timings["a"] = 0.5
        data = report.to_dict()
        assert data["schema"] == 1
        assert data["checks"][0]["witness"] == {"v": [1, 2]}
        assert data["checks"][0]["ref"] == "duality"
        assert "timings" not in data
        assert report.to_dict(include_timings=True)["timings"] == {"a": 0.5}
