"""Smoke tests - basic sanity checks for the package."""


class TestImports:
    """Test that all main modules can be imported."""

    def test_import_gorpoincare(self):
        """Test basic package import."""
        import gorpoincare

        assert gorpoincare.__version__ == "0.1.0"

    def test_import_core_modules(self):
        from gorpoincare.core import config, harness, models, report

        assert all(m is not None for m in (config, harness, models, report))

    def test_import_algebra(self):
        from gorpoincare.algebra import apolarity, compressed, linalg, polyring

        assert all(m is not None for m in (apolarity, compressed, linalg, polyring))

    def test_import_homology(self):
        from gorpoincare.homology import backends, koszul, maps, modules, resolution

        assert all(m is not None for m in (backends, koszul, maps, modules, resolution))

    def test_import_generators(self):
        from gorpoincare.generators import SummaryGenerator

        assert SummaryGenerator is not None

    def test_packaged_data(self):
        from gorpoincare.core.config import load_defaults

        assert load_defaults()["prime"] == 32003


class TestErrors:
    """Test the error hierarchy."""

    def test_all_errors_share_a_base(self):
        from gorpoincare.core import errors

        for name in ("BadPrime", "OddSocle", "TruncationOverflow", "LiftFailure"):
            assert issubclass(getattr(errors, name), errors.GorPoincareError)

    def test_configuration_errors(self):
        from gorpoincare.core.errors import BadPrime, ConfigError, SocleDegreeExcluded

        assert issubclass(BadPrime, ConfigError)
        assert issubclass(SocleDegreeExcluded, ConfigError)
