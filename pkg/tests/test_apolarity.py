"""Tests for apolar ideals, graded ideals and coordinate changes."""

import numpy as np
import pytest

from gorpoincare.algebra.apolarity import (
    DualGenerator,
    algebra_to_dict,
    annihilator,
    build_algebra,
    dump_dual_generator,
    generic_coordinate_change,
    ideal_generated,
    ideal_product,
    load_dual_generator,
    power_ideal,
    quotient_algebra,
    sample_dual_generator,
    socle,
    socle_quotient,
    truncation,
    variables_ideal,
)
from gorpoincare.algebra.polyring import DualElement
from gorpoincare.core.errors import BadPrime, UnitIdeal, ZeroGenerator

P = 32003


@pytest.fixture
def fermat(fixtures_dir):
    """R = Q/Ann(X^4 + Y^4)."""
    return build_algebra(load_dual_generator(fixtures_dir / "fermat_e2_s4.dual", P))


class TestApolarIdeal:
    """Tests for build_algebra on explicit dual generators."""

    def test_fermat_hilbert_function(self, fermat):
        assert fermat.hilbert_function() == (1, 2, 2, 2, 1)
        assert fermat.length == 8
        assert fermat.initial_degree() == 2

    def test_quadric(self, fixtures_dir):
        R = build_algebra(load_dual_generator(fixtures_dir / "quadric_e3_s2.dual", P))
        assert R.hilbert_function() == (1, 3, 1)

    def test_monomial_generator_drops_embedding_dimension(self):
        """X^3 only involves one variable, so h_R(1) = 1."""
        F = DualGenerator(DualElement.from_terms(2, 3, {(3, 0): 1}, P))
        R = build_algebra(F)
        assert R.hilbert_function() == (1, 1, 1, 1)
        assert R.e == 2
        assert R.effective_e == 1

    def test_zero_generator(self):
        F = DualGenerator(DualElement(2, 3, np.zeros(4, dtype=np.int64), P))
        with pytest.raises(ZeroGenerator):
            build_algebra(F)

    def test_prime_must_exceed_socle_degree(self):
        with pytest.raises(BadPrime):
            sample_dual_generator(2, 5, 5, 0)

    def test_sampling_is_deterministic(self):
        first = sample_dual_generator(3, 4, P, 11)
        second = sample_dual_generator(3, 4, P, 11)
        assert first.element == second.element


class TestIdeals:
    """Tests for powers, socles, annihilators and quotients."""

    def test_socle_is_top_degree(self, fermat):
        assert socle(fermat).dims() == (0, 0, 0, 0, 1)

    def test_annihilator_of_powers(self, fermat):
        """Gorenstein duality: ann(m^i) = m^(s+1-i)."""
        for i in range(6):
            assert annihilator(fermat, power_ideal(fermat, i)) == power_ideal(fermat, 5 - i)

    def test_generated_by_variables(self, fermat):
        assert variables_ideal(fermat, [0, 1]) == power_ideal(fermat, 1)
        assert ideal_generated(fermat, {}).is_zero()

    def test_product_of_powers(self, fermat):
        m = power_ideal(fermat, 1)
        assert ideal_product(fermat, m, m) == power_ideal(fermat, 2)

    def test_truncation(self, fermat):
        assert truncation(fermat, 3).hilbert_function() == (1, 2, 2)

    def test_socle_quotient(self, fermat):
        quotient = socle_quotient(fermat)
        assert quotient.hilbert_function() == (1, 2, 2, 2)
        assert quotient.s == 3

    def test_unit_ideal_quotient(self, fermat):
        with pytest.raises(UnitIdeal):
            quotient_algebra(fermat, power_ideal(fermat, 0))


class TestCoordinates:
    """Tests for coordinate changes and serialization."""

    def test_change_preserves_hilbert_function(self, instance_34):
        R = instance_34.algebra
        changed = generic_coordinate_change(R, 5)
        assert changed.hilbert_function() == R.hilbert_function()

    def test_change_commutes_with_apolarity(self, instance_24):
        """Transporting the ideal equals taking Ann of the transported generator."""
        changed = generic_coordinate_change(instance_24.algebra, 3)
        rebuilt = build_algebra(changed.generator)
        for d in range(changed.s + 1):
            assert np.array_equal(changed.ideal[d], rebuilt.ideal[d])

    def test_dump_and_load(self, instance_24, tmp_path):
        path = tmp_path / "f.dual"
        text = dump_dual_generator(instance_24.algebra.generator, path, header="e=2 s=4")
        assert text.startswith("# e=2 s=4")
        loaded = load_dual_generator(path, P)
        assert loaded.element == instance_24.algebra.generator.element

    def test_algebra_to_dict(self, fermat):
        data = algebra_to_dict(fermat)
        assert data["hilbert_function"] == [1, 2, 2, 2, 1]
        assert data["basis"]["0"] == [[0, 0]]
        assert len(data["ideal"]["2"]) == 1
