"""Shared fixtures: primes, dual generator files and sampled compressed algebras."""

from pathlib import Path

import pytest

from gorpoincare.algebra.compressed import sample_compressed_algebra

PRIME = 32003


@pytest.fixture
def prime():
    """The default characteristic."""
    return PRIME


@pytest.fixture
def fixtures_dir():
    """Return the path to test fixtures."""
    return Path(__file__).parent / "fixtures"


@pytest.fixture(scope="session")
def instance_24():
    """Compressed algebra with e = 2, s = 4: h = (1,2,3,2,1)."""
    return sample_compressed_algebra(2, 4, PRIME, 0)


@pytest.fixture(scope="session")
def instance_25():
    """Compressed algebra with odd socle degree: e = 2, s = 5."""
    return sample_compressed_algebra(2, 5, PRIME, 0)


@pytest.fixture(scope="session")
def instance_34():
    """Compressed algebra with e = 3, s = 4: h = (1,3,6,3,1)."""
    return sample_compressed_algebra(3, 4, PRIME, 0)


@pytest.fixture(scope="session")
def instance_32():
    """Compressed algebra with socle degree 2: h = (1,3,1)."""
    return sample_compressed_algebra(3, 2, PRIME, 0)
