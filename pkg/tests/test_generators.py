"""Tests for report rendering and the Markdown summary generator."""

import json

import numpy as np
import pytest

from gorpoincare.core.models import CheckRecord, VerificationReport
from gorpoincare.core.report import (
    dumps_json,
    render_reports,
    render_table,
    reports_to_dict,
    write_output,
)
from gorpoincare.generators.summary import SummaryGenerator


@pytest.fixture
def sample_report():
    """A main-suite report with one check of every status."""
    report = VerificationReport(
        suite="main", instance={"e": 3, "s": 4, "hilbert_function": [1, 3, 6, 3, 1]}
    )
    report.add(
        CheckRecord("poincare_identity", "Po^R_k d_R = (1+z)^e", "pass", ref="main theorem")
    )
    report.add(
        CheckRecord(
            "golod_quotient",
            "Golod homomorphism formula",
            "inconclusive",
            witness={"error": "step 4 may have generators above degree cap"},
        )
    )
    report.add(CheckRecord("periodicity", "2-periodic", "fail", hard=False))
    report.add(CheckRecord("golod_power_2", "R/m^2 is Golod", "skipped"))
    report.timings["poincare_identity"] = 1.25
    return report


class TestJson:
    """Tests for JSON output."""

    def test_numpy_values_are_plain(self):
        text = dumps_json({"b": np.int64(3), "a": np.array([1, 2]), "c": (4, 5)})
        assert json.loads(text) == {"a": [1, 2], "b": 3, "c": [4, 5]}
        assert text.index('"a"') < text.index('"b"')
        assert text.endswith("\n")

    def test_single_report(self, sample_report):
        data = json.loads(render_reports([sample_report], "json"))
        assert data["status"] == "inconclusive"
        assert [c["name"] for c in data["checks"]][0] == "poincare_identity"

    def test_csv_carries_refs(self, sample_report):
        lines = render_reports([sample_report], "csv").splitlines()
        assert lines[0] == "suite,name,status,hard,anchor,ref"
        assert lines[1].endswith(",main theorem")

    def test_several_reports(self, sample_report):
        other = VerificationReport("socle")
        other.add(CheckRecord("socle_quotient_poq", "", "fail"))
        data = reports_to_dict([sample_report, other], include_timings=True)
        assert data["status"] == "fail"
        assert data["reports"][0]["timings"] == {"poincare_identity": 1.25}


class TestTables:
    """Tests for measurement tables."""

    @pytest.fixture
    def rows(self):
        return [{"degree": 0, "h": 1}, {"degree": 1, "h": 3}]

    def test_csv(self, rows):
        text = render_table("hilbert", {"e": 3}, rows, ["degree", "h"], "csv")
        assert text.splitlines() == ["degree,h", "0,1", "1,3"]

    def test_markdown(self, rows):
        text = render_table("hilbert", {"e": 3}, rows, ["degree", "h"], "markdown")
        assert text.startswith("# hilbert")
        assert "- e: 3" in text
        assert "| 1 | 3 |" in text

    def test_markdown_table_layout(self, rows):
        text = render_table("hilbert", {"e": 3, "s": 4}, rows, ["degree", "h"], "markdown")
        assert "- e: 3\n- s: 4\n\n| degree | h |\n|---|---|\n| 0 | 1 |\n| 1 | 3 |\n" in text
        assert text.endswith("| 1 | 3 |\n")

    def test_json_keeps_metadata(self, rows):
        data = json.loads(render_table("hilbert", {"e": 3}, rows, ["degree", "h"], "json"))
        assert data["kind"] == "hilbert"
        assert data["e"] == 3
        assert data["rows"] == rows

    def test_unknown_format(self, rows):
        with pytest.raises(ValueError):
            render_table("hilbert", {}, rows, ["degree", "h"], "xml")

    def test_write_output_creates_directories(self, tmp_path):
        path = write_output("x\n", tmp_path / "nested" / "out.json")
        assert path.read_text() == "x\n"


class TestSummaryGenerator:
    """Tests for the Markdown summary."""

    def test_overall_status(self, sample_report):
        text = SummaryGenerator().generate([sample_report])
        assert "Overall status: **INCONCLUSIVE**" in text
        assert "## Suite `main`: INCONCLUSIVE" in text

    def test_counts_and_checks(self, sample_report):
        text = SummaryGenerator().generate([sample_report])
        assert "1 passed, 1 failed, 1 inconclusive, 1 skipped." in text
        assert "| periodicity | FAIL | no | 2-periodic |" in text
        assert "| poincare_identity | PASS | yes | Po^R_k d_R = (1+z)^e | main theorem |" in text

    def test_instance_vectors(self, sample_report):
        text = SummaryGenerator().generate([sample_report])
        assert "| hilbert_function | (1,3,6,3,1) |" in text

    def test_witnesses_listed(self, sample_report):
        text = SummaryGenerator().generate([sample_report])
        assert "### Witnesses" in text
        assert "- `golod_quotient`: error: step 4 may have generators above degree cap" in text
        assert "- `periodicity`" in text

    def test_timings_optional(self, sample_report):
        assert "### Timings" not in SummaryGenerator().generate([sample_report])
        text = SummaryGenerator().generate([sample_report], include_timings=True)
        assert "- poincare_identity: 1.250 s" in text
