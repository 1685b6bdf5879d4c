"""Core data models for gorpoincare runs."""

from dataclasses import dataclass, field
from typing import Any

from gorpoincare.core.errors import BadPrime, ConfigError, SocleDegreeExcluded

SUITES = ("main", "golod-powers", "socle", "maps")
MAP_CHECKS = ("nu", "phi", "rho", "golod-criterion", "socle-inclusion", "socle-factorization")
STATUSES = ("pass", "fail", "inconclusive", "skipped")
SCHEMA_VERSION = 1


@dataclass
class RunConfig:
    """Settings of one verification run."""

    e: int
    s: int
    prime: int = 32003
    seed: int = 0
    steps: int | None = None
    degree_cap: int | None = None
    suites: list[str] = field(default_factory=lambda: ["main"])
    maps: list[str] = field(default_factory=list)
    output_format: str = "json"
    exploration: bool = False
    max_retries: int = 32
    workers: int = 1
    timings: bool = False

    def validate(self) -> "RunConfig":
        """Check the configuration and return it.

        Raises:
            ConfigError: for impossible (e, s), unknown suites or bad budgets
            BadPrime: if the prime is unusable or does not exceed s
            SocleDegreeExcluded: for s = 3 in the main suite without the exploration flag
        """
        if self.e < 2:
            raise ConfigError(f"embedding dimension must be at least 2, got {self.e}")
        if self.s < 2:
            raise ConfigError(f"socle degree must be at least 2, got {self.s}")
        from gorpoincare.algebra.linalg import check_modulus

        check_modulus(self.prime)
        if self.prime <= self.s:
            raise BadPrime(f"prime {self.prime} must exceed the socle degree {self.s}")
        unknown = [name for name in self.suites if name not in SUITES]
        if unknown:
            raise ConfigError(f"unknown suites: {', '.join(unknown)}")
        unknown = [name for name in self.maps if name not in MAP_CHECKS]
        if unknown:
            raise ConfigError(f"unknown map checks: {', '.join(unknown)}")
        if self.steps is not None and self.steps < 1:
            raise ConfigError("homological truncation must be positive")
        if self.max_retries < 1 or self.workers < 1:
            raise ConfigError("max_retries and workers must be positive")
        if "main" in self.suites:
            self.check_socle_degree()
        return self

    def check_socle_degree(self) -> None:
        """The main theorem excludes s = 3; exploration measures without asserting."""
        if self.s == 3 and not self.exploration:
            raise SocleDegreeExcluded(
                "socle degree 3 is outside the verified range; pass --allow-s3 to measure only"
            )

    def to_dict(self) -> dict[str, Any]:
        return {
            "e": self.e,
            "s": self.s,
            "prime": self.prime,
            "seed": self.seed,
            "steps": self.steps,
            "degree_cap": self.degree_cap,
            "suites": list(self.suites),
            "exploration": self.exploration,
            "max_retries": self.max_retries,
        }


@dataclass
class CheckRecord:
    """Outcome of one named check."""

    name: str
    anchor: str
    status: str
    hard: bool = True
    witness: dict[str, Any] = field(default_factory=dict)
    description: str = ""
    ref: str = ""

    def __post_init__(self) -> None:
        if self.status not in STATUSES:
            raise ValueError(f"unknown status {self.status!r}")

    def to_dict(self) -> dict[str, Any]:
        return {
            "name": self.name,
            "anchor": self.anchor,
            "ref": self.ref,
            "status": self.status,
            "hard": self.hard,
            "witness": self.witness,
        }


@dataclass
class VerificationReport:
    """All checks of one suite run on one instance."""

    suite: str
    instance: dict[str, Any] = field(default_factory=dict)
    checks: list[CheckRecord] = field(default_factory=list)
    timings: dict[str, float] = field(default_factory=dict)

    def add(self, record: CheckRecord) -> CheckRecord:
        if any(c.name == record.name for c in self.checks):
            raise ValueError(f"check {record.name!r} recorded twice")
        self.checks.append(record)
        return record

    def get(self, name: str) -> CheckRecord | None:
        for record in self.checks:
            if record.name == name:
                return record
        return None

    @property
    def status(self) -> str:
        """fail if a hard check failed, inconclusive if one was inconclusive, else pass."""
        hard = [c.status for c in self.checks if c.hard]
        if "fail" in hard:
            return "fail"
        if "inconclusive" in hard:
            return "inconclusive"
        return "pass"

    @property
    def exit_code(self) -> int:
        return {"pass": 0, "fail": 1, "inconclusive": 2}[self.status]

    def counts(self) -> dict[str, int]:
        out = {status: 0 for status in STATUSES}
        for record in self.checks:
            out[record.status] += 1
        return out

    def to_dict(self, include_timings: bool = False) -> dict[str, Any]:
        data = {
            "schema": SCHEMA_VERSION,
            "suite": self.suite,
            "status": self.status,
            "instance": self.instance,
            "checks": [c.to_dict() for c in self.checks],
        }
        if include_timings:
            data["timings"] = dict(self.timings)
        return data
