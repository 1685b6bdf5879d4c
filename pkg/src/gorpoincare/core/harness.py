"""Verification suites: sample an instance, measure, compare with the closed forms."""

from __future__ import annotations

import logging
import multiprocessing as mp
import time
from functools import cached_property
from itertools import starmap
from typing import Any, Callable

from gorpoincare.algebra.apolarity import (
    generic_coordinate_change,
    hypersurface_equation,
    power_ideal,
    socle,
    socle_quotient,
    truncation,
)
from gorpoincare.algebra.compressed import (
    consequences_check,
    is_compressed,
    profile,
    sample_compressed_algebra,
)
from gorpoincare.algebra.polyring import HypersurfaceRing, PolynomialRing
from gorpoincare.core.config import load_anchors, load_defaults
from gorpoincare.core.errors import (
    CoordinateForm,
    GorPoincareError,
    OddSocle,
    TruncationOverflow,
)
from gorpoincare.core.models import MAP_CHECKS, CheckRecord, RunConfig, VerificationReport
from gorpoincare.homology.backends import hypersurface_for
from gorpoincare.homology.koszul import koszul_betti
from gorpoincare.homology.maps import (
    base_change_ranks,
    golod_criterion_check,
    nu_ranks,
    rho_ranks,
    socle_factorization_for,
    socle_inclusion_map_check,
)
from gorpoincare.homology.modules import (
    from_algebra,
    ideal_module,
    residue_field,
)
from gorpoincare.homology.resolution import (
    BettiTable,
    minimal_resolution,
    periodicity_window,
    poincare_truncated,
    resolution_audit,
)
from gorpoincare.series.arithmetic import IntegerPolynomial, TruncatedIntegerSeries
from gorpoincare.series.formulas import (
    change_of_rings_pop,
    complete_intersection_dr,
    dr_even_closed_form,
    dr_from_poqr,
    golod_poincare,
    golod_quotient_formula,
    hypersurface_poincare_k,
    kernel_series,
    poqr_even_closed_form,
    quadratic_socle_dr,
    socle_quotient_golod_poincare,
    socle_quotient_poq,
    socle_quotient_residue_series,
)
from gorpoincare.utils.helpers import derive_seed

logger = logging.getLogger(__name__)

# Checks that only measure; they stay asserted in s = 3 exploration runs.
MEASUREMENT_CHECKS = {
    "compressed_routes",
    "consequences",
    "betti_q_oracle",
    "self_duality",
    "resolution_audit",
    "dr_measured",
}

Outcome = tuple[Any, dict[str, Any]]


def _table_witness(table: BettiTable) -> list[list[int]]:
    return table.to_dict()["entries"]


def _poly(values: list[int]) -> IntegerPolynomial:
    return IntegerPolynomial.from_coeffs(values)


def self_dual(table: BettiTable, e: int, s: int) -> bool:
    return all(table.beta(e - i, e + s - j) == b for (i, j), b in table.entries.items() if b)


def periodicity_outcome(table: BettiTable) -> Outcome:
    """Observed 2-periodicity of a resolution over a hypersurface.

    Inconclusive when fewer than two comparisons fit in the computed steps or
    no window shows up within them.
    """
    if table.terminated:
        # finite projective dimension: zero from the last step on
        return True, {"window_start": table.steps, "terminated": True}
    totals = table.totals()
    comparisons = max(len(totals) - 2, 0)
    if comparisons < 2:
        return "inconclusive", {"window_start": None, "comparisons": comparisons}
    window = periodicity_window(table)
    if window is None:
        return "inconclusive", {"window_start": None, "totals": totals}
    return True, {"window_start": window}


class Harness:
    """Runs the verification suites for one RunConfig.

    Measurements (the sampled instance, resolutions, Poincare series) are
    computed lazily and shared between suites of the same run.
    """

    def __init__(self, config: RunConfig):
        self.config = config
        self.anchors = load_anchors()
        self.exploring = config.s == 3 and config.exploration
        self._measured: dict[str, Any] = {}

    # -- instance and measurements -------------------------------------------------

    @cached_property
    def sampled(self):
        cfg = self.config
        return sample_compressed_algebra(cfg.e, cfg.s, cfg.prime, cfg.seed, cfg.max_retries)

    @property
    def algebra(self):
        return self.sampled.algebra

    @cached_property
    def profile(self):
        return profile(self.config.e, self.config.s)

    @property
    def steps(self) -> int:
        return self.config.steps

    @cached_property
    def q(self) -> PolynomialRing:
        return PolynomialRing(self.config.e, self.config.prime)

    @cached_property
    def hypersurface(self) -> HypersurfaceRing:
        return hypersurface_for(self.algebra)

    @cached_property
    def module_r(self):
        return from_algebra(self.algebra)

    @cached_property
    def residue(self):
        return residue_field(self.config.e, self.config.prime)

    def measure(self, key: str, compute: Callable[[], Any]) -> Any:
        if key not in self._measured:
            start = time.perf_counter()
            self._measured[key] = compute()
            logger.info("measured %s in %.2fs", key, time.perf_counter() - start)
        return self._measured[key]

    def koszul_r(self) -> BettiTable:
        return self.measure("koszul_r", lambda: koszul_betti(self.module_r))

    def poqr(self) -> IntegerPolynomial:
        return _poly(self.koszul_r().totals())

    def resolution_q_r(self):
        return self.measure(
            "resolution_q_r",
            lambda: minimal_resolution(self.q, self.module_r, self.config.e + 1),
        )

    def socle_rank_above_r(self) -> int:
        """a = rank Soc(m^r), the socle of R sitting in degrees >= r."""
        dims = socle(self.algebra).dims()
        return sum(dims[self.profile.r :])

    def dr(self) -> IntegerPolynomial:
        return self.measure(
            "dr_measured",
            lambda: dr_from_poqr(self.poqr(), self.config.e, self.socle_rank_above_r()),
        )

    def pork(self) -> TruncatedIntegerSeries:
        return self.measure(
            "pork",
            lambda: poincare_truncated(
                self.algebra, self.residue, self.steps, self.config.degree_cap
            ),
        )

    def popk(self) -> TruncatedIntegerSeries:
        return self.measure(
            "popk", lambda: poincare_truncated(self.hypersurface, self.residue, self.steps)
        )

    def resolution_p_r(self):
        return self.measure(
            "resolution_p_r",
            lambda: minimal_resolution(self.hypersurface, self.module_r, self.steps),
        )

    def popr(self) -> TruncatedIntegerSeries:
        return self.resolution_p_r().poincare(self.steps)

    def identity(self) -> TruncatedIntegerSeries:
        return IntegerPolynomial.one_plus_z_power(self.config.e).to_series(self.steps)

    # -- recording -----------------------------------------------------------------

    def instance_metadata(self) -> dict[str, Any]:
        cfg = self.config
        return {
            "e": cfg.e,
            "s": cfg.s,
            "p": cfg.prime,
            "seed": self.sampled.seed,
            "base_seed": cfg.seed,
            "retries": self.sampled.retries,
            "steps": self.steps,
            "hilbert_function": list(self.algebra.hilbert_function()),
            "exploration": self.exploring,
        }

    def new_report(self, suite: str) -> VerificationReport:
        logger.info("suite %s: e=%d s=%d", suite, self.config.e, self.config.s)
        return VerificationReport(suite=suite, instance=self.instance_metadata())

    def record(
        self,
        report: VerificationReport,
        name: str,
        check: Callable[[], Outcome],
        catalog_key: str | None = None,
    ) -> CheckRecord:
        """Run one check and add its record; algebra errors become failed records."""
        entry = self.anchors.get(catalog_key or name, {})
        start = time.perf_counter()
        try:
            verdict, witness = check()
            if isinstance(verdict, str):
                status = verdict
            else:
                status = "pass" if verdict else "fail"
        except TruncationOverflow as exc:
            status, witness = "inconclusive", {"error": str(exc)}
            logger.warning("check %s inconclusive: %s", name, exc)
        except GorPoincareError as exc:
            status, witness = "fail", {"error": f"{type(exc).__name__}: {exc}"}
        exploring = self.exploring and report.suite == "main"
        if exploring and status in ("pass", "fail") and name not in MEASUREMENT_CHECKS:
            witness = dict(witness, would_be=status)
            status = "skipped"
        report.timings[name] = round(time.perf_counter() - start, 3)
        if status == "fail":
            logger.warning("check %s failed", name)
        return report.add(
            CheckRecord(
                name=name,
                anchor=entry.get("anchor", ""),
                status=status,
                hard=bool(entry.get("hard", True)),
                witness=witness,
                description=entry.get("description", ""),
                ref=entry.get("ref", ""),
            )
        )

    # -- main theorem --------------------------------------------------------------

    def run_main(self) -> VerificationReport:
        cfg = self.config
        cfg.check_socle_degree()
        e, s = cfg.e, cfg.s
        R = self.algebra
        report = self.new_report("main")

        def routes() -> Outcome:
            verdict = is_compressed(R)
            return verdict.compressed, verdict.to_dict()

        def consequences() -> Outcome:
            result = consequences_check(R)
            return result.ok, result.to_dict()

        def oracle() -> Outcome:
            koszul = self.koszul_r()
            resolved = self.resolution_q_r().betti_table()
            witness = {"koszul": _table_witness(koszul), "resolution": _table_witness(resolved)}
            return koszul.entries == resolved.entries, witness

        def duality() -> Outcome:
            table = self.koszul_r()
            return self_dual(table, R.effective_e, R.s), {"betti": _table_witness(table)}

        def audit() -> Outcome:
            res = self.resolution_q_r()
            return resolution_audit(res, self.module_r), {"terminated": res.terminated}

        def dr_measured() -> Outcome:
            dr = self.dr()
            a = self.socle_rank_above_r()
            ok = dr.coeffs[0] == 1 and (a != 1 or dr.degree == e + 2)
            return ok, {"a": a, "poqr": self.poqr().coeffs, "dr": dr.coeffs}

        self.record(report, "compressed_routes", routes)
        self.record(report, "consequences", consequences)
        self.record(report, "betti_q_oracle", oracle)
        self.record(report, "self_duality", duality)
        self.record(report, "resolution_audit", audit)
        self.record(report, "dr_measured", dr_measured)

        if s % 2 == 0:

            def closed_poqr() -> Outcome:
                expected = poqr_even_closed_form(e, s)
                return expected == self.poqr(), {"closed_form": expected.coeffs}

            def dr_closed() -> Outcome:
                closed = dr_even_closed_form(e, s)
                from_closed = dr_from_poqr(poqr_even_closed_form(e, s), e, 1)
                ok = closed == self.dr() == from_closed
                return ok, {"closed_form": closed.coeffs, "from_closed_poqr": from_closed.coeffs}

            self.record(report, "poqr_closed_form", closed_poqr)
            self.record(report, "dr_closed_form", dr_closed)
        else:

            def refuses() -> Outcome:
                try:
                    dr_even_closed_form(e, s)
                except OddSocle as exc:
                    return True, {"refused": str(exc)}
                return False, {}

            self.record(report, "dr_closed_form_refuses", refuses)

        def identity() -> Outcome:
            pork = self.pork()
            product = pork * self.dr()
            witness = {"pork": pork.coeffs, "product": product.coeffs}
            return product == self.identity(), witness

        def golod_bound() -> Outcome:
            bound = golod_poincare(e, self.poqr(), self.steps)
            return self.pork().dominated_by(bound), {"golod": bound.coeffs}

        self.record(report, "poincare_identity", identity)
        self.record(report, "golod_bound", golod_bound)
        if e == 2:
            self.record(
                report,
                "complete_intersection",
                lambda: (self.dr() == complete_intersection_dr(2), {"dr": self.dr().coeffs}),
            )
        if s == 2:
            self.record(
                report,
                "quadratic_socle",
                lambda: (self.dr() == quadratic_socle_dr(e), {"dr": self.dr().coeffs}),
            )
        self._hypersurface_checks(report)
        if cfg.maps:
            self._map_checks(report, cfg.maps)
        return report

    def _hypersurface_checks(self, report: VerificationReport) -> None:
        e = self.config.e

        def residue() -> Outcome:
            measured = self.popk()
            expected = hypersurface_poincare_k(e, self.steps)
            return measured == expected, {"measured": measured.coeffs}

        def change_of_rings() -> Outcome:
            a = self.socle_rank_above_r()
            expected = change_of_rings_pop(self.poqr(), kernel_series(e, a), self.steps)
            measured = self.popr()
            return measured == expected, {"measured": measured.coeffs, "formula": expected.coeffs}

        def golod_quotient() -> Outcome:
            formula = golod_quotient_formula(self.popk(), self.popr())
            return formula == self.pork(), {"formula": formula.coeffs}

        def periodicity() -> Outcome:
            return periodicity_outcome(self.resolution_p_r().betti_table())

        self.record(report, "hypersurface_residue", residue)
        self.record(report, "change_of_rings", change_of_rings)
        self.record(report, "golod_quotient", golod_quotient)
        self.record(report, "periodicity", periodicity)

    # -- Golod quotients -----------------------------------------------------------

    def run_golod_powers(self) -> VerificationReport:
        report = self.new_report("golod-powers")
        R = self.algebra
        for i in range(2, R.s + 1):

            def check(i: int = i) -> Outcome:
                A = truncation(R, i)
                poq = _poly(koszul_betti(from_algebra(A, f"R/m^{i}")).totals())
                measured = poincare_truncated(A, self.residue, self.steps)
                expected = golod_poincare(self.config.e, poq, self.steps)
                witness = {"i": i, "poq": poq.coeffs, "measured": measured.coeffs}
                return measured == expected, witness

            self.record(report, f"golod_power_{i}", check, catalog_key="golod_power")
        return report

    def run_socle(self) -> VerificationReport:
        report = self.new_report("socle")
        e = self.config.e
        S = socle_quotient(self.algebra)

        def poq_s() -> IntegerPolynomial:
            return self.measure(
                "poq_socle", lambda: _poly(koszul_betti(from_algebra(S, "R/Soc R")).totals())
            )

        def pok_s() -> TruncatedIntegerSeries:
            return self.measure(
                "pok_socle", lambda: poincare_truncated(S, self.residue, self.steps)
            )

        def formula() -> Outcome:
            expected = socle_quotient_poq(self.poqr(), e)
            return poq_s() == expected, {"measured": poq_s().coeffs, "formula": expected.coeffs}

        def golod() -> Outcome:
            expected = golod_poincare(e, poq_s(), self.steps)
            return pok_s() == expected, {"measured": pok_s().coeffs}

        def residue() -> Outcome:
            expected = socle_quotient_golod_poincare(self.poqr(), e, self.steps)
            return expected == self.pork(), {"formula": expected.coeffs}

        def projection() -> Outcome:
            expected = socle_quotient_residue_series(self.pork())
            return expected == pok_s(), {"formula": expected.coeffs}

        self.record(report, "socle_quotient_poq", formula)
        self.record(report, "socle_quotient_golod", golod)
        self.record(report, "socle_quotient_residue", residue)
        self.record(report, "socle_quotient_map", projection)
        return report

    # -- maps on Tor ---------------------------------------------------------------

    def coordinates(self):
        """Algebra in generic coordinates with h = x_1^t + C in I_t, and that h."""

        def compute():
            t = self.profile.t
            for offset in range(self.config.max_retries):
                seed = derive_seed(self.sampled.seed, offset + 1)
                changed = generic_coordinate_change(self.algebra, seed)
                try:
                    return changed, hypersurface_equation(changed, t)
                except CoordinateForm as exc:
                    logger.warning("coordinate seed %d rejected: %s", seed, exc)
            raise CoordinateForm("no coordinate change put h in the form x_1^t + C")

        return self.measure("coordinates", compute)

    def run_maps(self) -> VerificationReport:
        report = self.new_report("maps")
        self._map_checks(report, self.config.maps or list(MAP_CHECKS))
        return report

    def _map_checks(self, report: VerificationReport, selected: list[str]) -> None:
        e = self.config.e
        t, r = self.profile.t, self.profile.r
        seed = self.config.seed

        def changed():
            return self.coordinates()[0]

        def ring_p() -> HypersurfaceRing:
            return self.measure("p_changed", lambda: HypersurfaceRing(self.coordinates()[1]))

        if "nu" in selected:

            def nu() -> Outcome:
                ranks = nu_ranks(self.q, changed(), r, seed)
                ok = ranks.zero_for(range(e)) and ranks.bijective_at(e)
                return ok, ranks.to_dict()

            self.record(report, "nu_vanishing", nu)

        if "phi" in selected:

            def phi_power() -> Outcome:
                module = ideal_module(changed(), power_ideal(changed(), r), f"m^{r}")
                ranks = base_change_ranks(self.q, ring_p(), module, e, "phi(m^r)", seed)
                return ranks.ranks[e] == 0, ranks.to_dict()

            def phi_r() -> Outcome:
                ranks = self.measure(
                    "phi_r",
                    lambda: base_change_ranks(
                        self.q, ring_p(), from_algebra(changed()), e, "phi(R)", seed
                    ),
                )
                kernel = ranks.kernel_dims()
                ok = (
                    kernel.get(1) == 1
                    and all(ranks.injective_at(i) for i in range(2, e))
                    and ranks.ranks[e] == 0
                )
                return ok, dict(ranks.to_dict(), kernel=[kernel[i] for i in sorted(kernel)])

            def kernel_hs() -> Outcome:
                kernel = self.measure(
                    "phi_r",
                    lambda: base_change_ranks(
                        self.q, ring_p(), from_algebra(changed()), e, "phi(R)", seed
                    ),
                ).kernel_dims()
                measured = _poly([kernel[i] for i in sorted(kernel)])
                expected = kernel_series(e, self.socle_rank_above_r())
                return measured == expected, {"measured": measured.coeffs}

            def injective() -> Outcome:
                A = changed()
                quotient = from_algebra(truncation(A, t - 1), f"R/m^{t - 1}")
                small = base_change_ranks(self.q, ring_p(), quotient, e, "phi(R/m^(t-1))", seed)
                ok = all(small.injective_at(i) for i in range(e + 1))
                witness = {"quotient": small.to_dict()}
                for j in range(t - 1, r + 1):
                    power = ideal_module(A, power_ideal(A, j), f"m^{j}")
                    ranks = base_change_ranks(self.q, ring_p(), power, e, f"phi(m^{j})", seed)
                    ok = ok and all(ranks.injective_at(i) for i in range(e))
                    witness[f"m^{j}"] = ranks.to_dict()
                return ok, witness

            self.record(report, "phi_power_zero", phi_power)
            self.record(report, "phi_r", phi_r)
            self.record(report, "kernel_series", kernel_hs)
            self.record(report, "phi_injective", injective)

        if "rho" in selected:

            def rho() -> Outcome:
                over_q = rho_ranks(self.q, changed(), t, e, seed)
                over_p = rho_ranks(ring_p(), changed(), t, e, seed)
                indices = range(1, e + 1)
                ok = over_q.zero_for(indices) and over_p.zero_for(indices)
                return ok, {"q": over_q.to_dict(), "p": over_p.to_dict()}

            self.record(report, "rho_vanishing", rho)

        if "golod-criterion" in selected:

            def criterion() -> Outcome:
                result = golod_criterion_check(changed(), ring_p(), t - 1, e, seed)
                return result.ok, result.to_dict()

            self.record(report, "golod_criterion", criterion)

        if "socle-inclusion" in selected:

            def inclusion() -> Outcome:
                ranks = socle_inclusion_map_check(self.q, changed(), seed)
                ok = ranks.zero_for(range(e)) and ranks.bijective_at(e)
                return ok, ranks.to_dict()

            self.record(report, "socle_inclusion", inclusion)

        if "socle-factorization" in selected:

            def factorization() -> Outcome:
                A, _ = self.coordinates()
                result = socle_factorization_for(A)
                return result.ok, result.to_dict()

            self.record(report, "socle_factorization", factorization)

    def run(self, suite: str) -> VerificationReport:
        runners = {
            "main": self.run_main,
            "golod-powers": self.run_golod_powers,
            "socle": self.run_socle,
            "maps": self.run_maps,
        }
        start = time.perf_counter()
        report = runners[suite]()
        logger.info(
            "suite %s finished: %s in %.1fs", suite, report.status, time.perf_counter() - start
        )
        return report


def run_main_theorem_suite(config: RunConfig) -> VerificationReport:
    return Harness(config).run("main")


def run_golod_powers_suite(config: RunConfig) -> VerificationReport:
    return Harness(config).run("golod-powers")


def run_socle_quotient_suite(config: RunConfig) -> VerificationReport:
    return Harness(config).run("socle")


def run_maps_suite(config: RunConfig) -> VerificationReport:
    return Harness(config).run("maps")


def run_suites(config: RunConfig) -> list[VerificationReport]:
    """Run every suite named in the config on one shared instance."""
    harness = Harness(config)
    return [harness.run(suite) for suite in config.suites]


# -- property corpus ---------------------------------------------------------------


def corpus_cases(base_seed: int = 0) -> list[tuple[int, int, int]]:
    """(e, s, seed) triples from the packaged corpus definition."""
    corpus = load_defaults().get("corpus", {})
    per_case = int(corpus.get("seeds_per_case", 4))
    cases = []
    for index, (e, s) in enumerate(corpus.get("cases", [])):
        for k in range(per_case):
            cases.append((int(e), int(s), derive_seed(base_seed, 1000 * index + k)))
    return cases


def corpus_case(e: int, s: int, seed: int, prime: int, steps: int) -> tuple[str, bool, dict]:
    """Property checks on one sampled instance; runs in a worker process."""
    name = f"corpus_e{e}_s{s}_seed{seed}"
    try:
        sampled = sample_compressed_algebra(e, s, prime, seed)
        R = sampled.algebra
        verdict = is_compressed(R)
        module = from_algebra(R)
        koszul = koszul_betti(module)
        resolved = minimal_resolution(PolynomialRing(e, prime), module, e + 1).betti_table()
        poqr = _poly(koszul.totals())
        pork = poincare_truncated(R, residue_field(e, prime), steps)
        bound = golod_poincare(e, poqr, steps)
    except GorPoincareError as exc:
        return name, False, {"error": f"{type(exc).__name__}: {exc}"}
    checks = {
        "length_bounded": R.length <= profile(e, s).lambda_max,
        "compressed": verdict.compressed,
        "oracle": koszul.entries == resolved.entries,
        "self_dual": self_dual(koszul, e, R.s),
        "golod_bound": pork.dominated_by(bound),
    }
    witness = {
        "seed": sampled.seed,
        "checks": checks,
        "poqr": poqr.coeffs,
        "pork": pork.coeffs,
    }
    return name, all(checks.values()), witness


def run_property_corpus(
    cases: list[tuple[int, int, int]],
    prime: int = 32003,
    steps: int = 4,
    workers: int = 1,
) -> VerificationReport:
    """Run ``corpus_case`` over all cases, in a spawn-context pool when workers > 1."""
    tasks = [(e, s, seed, prime, steps) for e, s, seed in cases]
    if workers == 1:
        results = list(starmap(corpus_case, tasks))
    else:
        context = mp.get_context("spawn")
        with context.Pool(processes=workers) as pool:
            results = pool.starmap(corpus_case, tasks)
    anchors = load_anchors().get("corpus_case", {})
    report = VerificationReport(
        suite="corpus", instance={"p": prime, "steps": steps, "cases": len(cases)}
    )
    for name, ok, witness in results:
        report.add(
            CheckRecord(
                name=name,
                anchor=anchors.get("anchor", ""),
                ref=anchors.get("ref", ""),
                status="pass" if ok else "fail",
                hard=True,
                witness=witness,
            )
        )
    logger.info("corpus finished: %s", report.counts())
    return report
