"""Tests for the verification suites and the property corpus."""

import pytest

from gorpoincare.core.errors import (
    GorPoincareError,
    LiftFailure,
    SocleDegreeExcluded,
    TruncationOverflow,
)
from gorpoincare.core.harness import (
    Harness,
    corpus_case,
    corpus_cases,
    periodicity_outcome,
    run_property_corpus,
    run_suites,
)
from gorpoincare.core.models import RunConfig, VerificationReport
from gorpoincare.homology.maps import socle_factorization_for
from gorpoincare.homology.resolution import BettiTable

P = 32003


def config(e, s, **kwargs):
    kwargs.setdefault("steps", 3)
    return RunConfig(e=e, s=s, prime=P, **kwargs).validate()


@pytest.fixture(scope="module")
def harness_24():
    """One harness shared by the (2, 4) suite tests, so measurements are reused."""
    return Harness(config(2, 4, suites=["main", "golod-powers", "socle"]))


class TestRecording:
    """Tests for Harness.record status mapping."""

    @pytest.fixture
    def harness(self):
        return Harness(config(2, 4))

    def test_pass_and_fail(self, harness):
        report = VerificationReport("main")
        harness.record(report, "poincare_identity", lambda: (True, {}))
        harness.record(report, "golod_bound", lambda: (False, {"golod": [1]}))
        assert report.get("poincare_identity").status == "pass"
        assert report.get("golod_bound").status == "fail"
        assert report.get("golod_bound").anchor
        assert report.get("golod_bound").ref
        assert report.get("golod_bound").hard
        assert report.status == "fail"

    def test_truncation_is_inconclusive(self, harness):
        def check():
            raise TruncationOverflow("step 2 may have generators above degree cap")

        report = VerificationReport("main")
        record = harness.record(report, "poincare_identity", check)
        assert record.status == "inconclusive"
        assert "degree cap" in record.witness["error"]
        assert report.exit_code == 2

    def test_algebra_error_is_failure(self, harness):
        def check():
            raise LiftFailure("cannot lift step 1 in degree 3")

        record = harness.record(VerificationReport("maps"), "nu_vanishing", check)
        assert record.status == "fail"
        assert record.witness["error"].startswith("LiftFailure")
        assert issubclass(LiftFailure, GorPoincareError)

    def test_soft_check_does_not_fail_report(self, harness):
        report = VerificationReport("main")
        harness.record(report, "periodicity", lambda: (False, {"window_start": None}))
        assert not report.get("periodicity").hard
        assert report.status == "pass"

    def test_exploration_skips_theorem_checks(self):
        harness = Harness(config(2, 3, exploration=True))
        report = VerificationReport("main")
        harness.record(report, "dr_measured", lambda: (True, {}))
        harness.record(report, "poincare_identity", lambda: (False, {}))
        assert report.get("dr_measured").status == "pass"
        skipped = report.get("poincare_identity")
        assert skipped.status == "skipped"
        assert skipped.witness["would_be"] == "fail"
        assert report.status == "pass"


class TestMainSuite:
    """Tests for the main theorem suite on sampled instances."""

    def test_complete_intersection_instance(self, harness_24):
        report = harness_24.run("main")
        assert report.status == "pass", report.to_dict()
        names = [check.name for check in report.checks]
        assert "complete_intersection" in names
        assert "quadratic_socle" not in names
        assert "dr_closed_form_refuses" not in names
        assert report.get("dr_measured").witness["dr"] == [1, 0, -2, 0, 1]
        assert report.instance["hilbert_function"] == [1, 2, 3, 2, 1]

    def test_change_of_rings_witness(self, harness_24):
        report = harness_24.run("main")
        assert report.get("change_of_rings").witness["measured"] == [1, 1, 0, 0]
        assert report.get("periodicity").witness["terminated"]

    def test_odd_socle_degree(self):
        report = Harness(config(2, 5)).run("main")
        assert report.get("dr_closed_form_refuses").status == "pass"
        assert report.get("dr_measured").status == "pass"
        assert "poqr_closed_form" not in [check.name for check in report.checks]

    def test_quadratic_socle(self):
        report = Harness(config(3, 2)).run("main")
        assert report.get("quadratic_socle").status == "pass"
        assert report.get("dr_measured").witness["dr"] == [1, 0, -5, -5, 0, 1]

    def test_exploration_run(self):
        report = Harness(config(2, 3, exploration=True)).run("main")
        assert report.instance["exploration"]
        refused = report.get("dr_closed_form_refuses")
        assert refused.status == "skipped"
        assert refused.witness["would_be"] == "pass"
        assert report.get("compressed_routes").status == "pass"

    def test_main_suite_refuses_socle_degree_three(self):
        harness = Harness(config(2, 3, suites=["golod-powers"]))
        with pytest.raises(SocleDegreeExcluded):
            harness.run("main")

    @pytest.mark.slow
    def test_e3_s4_instance(self):
        report = Harness(config(3, 4, steps=5)).run("main")
        identity = report.get("poincare_identity")
        assert identity.status == "pass", identity.witness
        assert identity.witness["pork"] == [1, 3, 10, 29, 91, 272]
        assert report.get("dr_measured").witness["dr"] == [1, 0, -7, -7, 0, 1]
        assert report.get("dr_closed_form").status == "pass"
        assert report.get("golod_bound").status == "pass"


class TestPeriodicity:
    """Tests for the observed 2-periodicity verdict over a hypersurface."""

    def test_terminated_resolution(self):
        table = BettiTable({(0, 0): 1, (1, 3): 1}, [True] * 3, 2, 10, terminated=True)
        verdict, witness = periodicity_outcome(table)
        assert verdict is True
        assert witness == {"window_start": 2, "terminated": True}

    def test_window(self):
        entries = {(0, 0): 1, (1, 1): 2, (2, 2): 2, (3, 3): 2, (4, 4): 2}
        verdict, witness = periodicity_outcome(BettiTable(entries, [True] * 5, 4, 10))
        assert verdict is True
        assert witness["window_start"] == 1

    def test_too_few_steps(self):
        table = BettiTable({(0, 0): 1, (1, 1): 3, (2, 2): 7}, [True] * 3, 2, 10)
        verdict, witness = periodicity_outcome(table)
        assert verdict == "inconclusive"
        assert witness["comparisons"] == 1

    def test_growing_prefix_is_inconclusive(self):
        entries = {(0, 0): 1, (1, 1): 3, (2, 2): 10, (3, 3): 29, (4, 4): 91}
        verdict, witness = periodicity_outcome(BettiTable(entries, [True] * 5, 4, 10))
        assert verdict == "inconclusive"
        assert witness["totals"] == [1, 3, 10, 29, 91]

    def test_inconclusive_stays_soft(self):
        harness = Harness(config(2, 4))
        table = BettiTable({(0, 0): 1, (1, 1): 3, (2, 2): 7}, [True] * 3, 2, 10)
        report = VerificationReport("main")
        record = harness.record(report, "periodicity", lambda: periodicity_outcome(table))
        assert record.status == "inconclusive"
        assert report.status == "pass"


class TestOtherSuites:
    """Tests for the Golod power and socle quotient suites."""

    def test_golod_powers(self, harness_24):
        report = harness_24.run("golod-powers")
        assert [check.name for check in report.checks] == [
            "golod_power_2",
            "golod_power_3",
            "golod_power_4",
        ]
        assert report.status == "pass", report.to_dict()

    def test_socle_quotient(self, harness_24):
        report = harness_24.run("socle")
        assert report.status == "pass", report.to_dict()
        assert report.get("socle_quotient_poq").witness["formula"] == [1, 3, 2]

    def test_run_suites_shares_instance(self):
        reports = run_suites(config(2, 4, suites=["main", "socle"]))
        assert [r.suite for r in reports] == ["main", "socle"]
        assert reports[0].instance["seed"] == reports[1].instance["seed"]

    @pytest.mark.slow
    def test_map_checks(self):
        harness = Harness(config(2, 4, maps=["nu", "rho", "socle-inclusion"]))
        report = harness.run("maps")
        assert [check.name for check in report.checks] == [
            "nu_vanishing",
            "rho_vanishing",
            "socle_inclusion",
        ]
        assert report.status == "pass", report.to_dict()

    def test_golod_powers_at_socle_degree_three(self):
        """Suites other than main run at s = 3 without exploration."""
        harness = Harness(config(2, 3, suites=["golod-powers"]))
        report = harness.run("golod-powers")
        assert not report.instance["exploration"]
        assert [check.name for check in report.checks] == ["golod_power_2", "golod_power_3"]
        assert all(check.status != "skipped" for check in report.checks)

    @pytest.mark.slow
    def test_socle_quotient_e3_s4(self):
        report = Harness(config(3, 4)).run("socle")
        assert report.status == "pass", report.to_dict()
        assert report.get("socle_quotient_poq").witness["measured"] == [1, 8, 10, 3]
        assert report.get("socle_quotient_poq").witness["formula"] == [1, 8, 10, 3]


class TestTorMapSuite:
    """Tests for the base change, Golod criterion and socle factorization checks."""

    def test_socle_factorization_odd_socle(self):
        A, h = Harness(config(2, 5)).coordinates()
        result = socle_factorization_for(A)
        assert result.ok, result.to_dict()
        assert (result.t, result.r) == (3, 3)
        assert h.degree == 3

    @pytest.mark.slow
    def test_socle_factorization_e3_s4(self):
        A, _ = Harness(config(3, 4)).coordinates()
        result = socle_factorization_for(A)
        assert result.ok, result.to_dict()
        assert (result.t, result.r) == (3, 2)

    @pytest.mark.slow
    def test_base_change_and_golod_criterion_e3_s4(self):
        maps = ["phi", "golod-criterion", "socle-factorization"]
        report = Harness(config(3, 4, maps=maps)).run("maps")
        assert [check.name for check in report.checks] == [
            "phi_power_zero",
            "phi_r",
            "kernel_series",
            "phi_injective",
            "golod_criterion",
            "socle_factorization",
        ]
        assert report.status == "pass", report.to_dict()
        assert report.get("kernel_series").witness["measured"] == [0, 1, 0, 1]


class TestCorpus:
    """Tests for the randomized property corpus."""

    def test_cases_from_defaults(self):
        cases = corpus_cases(0)
        assert len(cases) == 20
        assert cases[:2] == [(2, 4, 0), (2, 4, 1)]
        assert cases[4] == (2, 5, 1000)

    def test_single_case(self):
        name, ok, witness = corpus_case(2, 4, 0, P, 3)
        assert name == "corpus_e2_s4_seed0"
        assert ok, witness
        assert witness["poqr"] == [1, 2, 1]

    def test_serial_run(self):
        report = run_property_corpus([(2, 4, 0), (2, 5, 3)], prime=P, steps=3)
        assert report.suite == "corpus"
        assert report.counts()["pass"] == 2
        assert report.instance["cases"] == 2
