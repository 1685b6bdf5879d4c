"""Exception hierarchy for gorpoincare."""


class GorPoincareError(Exception):
    """Base class for every error raised by the package."""


class ConfigError(GorPoincareError):
    """Invalid run configuration or configuration file."""


class BadPrime(ConfigError):
    """The modulus is not a usable odd prime above the socle degree."""


class SocleDegreeExcluded(ConfigError):
    """Socle degree 3 requested without the exploration flag."""


class ZeroGenerator(GorPoincareError):
    """The dual generator is identically zero."""


class UnitIdeal(GorPoincareError):
    """A quotient by an ideal containing 1 was requested."""


class NotGorenstein(GorPoincareError):
    """The algebra has a socle of rank different from 1."""


class RouteDisagreement(GorPoincareError):
    """The equivalent compressedness criteria returned different answers."""


class GenericSamplingFailed(GorPoincareError):
    """No compressed instance was found within the retry budget."""

    def __init__(self, message: str, attempts: list[dict] | None = None):
        super().__init__(message)
        self.attempts = attempts or []


class OddSocle(GorPoincareError):
    """A closed form valid only for even socle degree was requested for odd s."""


class CancellationFailure(GorPoincareError):
    """A negative power survived a Laurent shift that must cancel exactly."""


class TruncationOverflow(GorPoincareError):
    """Resolution generators may exist beyond the computed degree range."""


class LiftFailure(GorPoincareError):
    """A chain map could not be lifted; the target is not a resolution."""


class CoordinateForm(GorPoincareError):
    """The hypersurface equation is not of the form x_1^t + C with C in (x_2..x_e)."""


class IncompatibleModule(GorPoincareError):
    """The module is not annihilated by the defining ideal of the ring."""


class InconsistentSystem(GorPoincareError):
    """A linear system over F_p has no solution."""
