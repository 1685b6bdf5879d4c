"""Closed-form Hilbert and Poincare series for compressed Gorenstein algebras.

Conventions: e is the embedding dimension, s the socle degree, Po^Q_R the
Poincare polynomial of R over the polynomial ring Q (a polynomial of degree
e), and d_R the common denominator of the Poincare series of R-modules.
"""

from __future__ import annotations

from gorpoincare.algebra.compressed import eps
from gorpoincare.core.errors import OddSocle
from gorpoincare.series.arithmetic import IntegerPolynomial, TruncatedIntegerSeries

ONE = IntegerPolynomial.one()
Z1 = IntegerPolynomial.monomial(1)


def _check_even(e: int, s: int) -> None:
    if s % 2:
        raise OddSocle(f"closed form needs even socle degree, got s={s}")
    if s < 2 or e < 2:
        raise ValueError("closed form needs s >= 2 and e >= 2")


def hs_compressed(e: int, s: int) -> IntegerPolynomial:
    """Hilbert series sum eps_i z^i of a compressed algebra."""
    return IntegerPolynomial.from_coeffs(eps(e, s))


def _alternating_core(e: int, s: int) -> IntegerPolynomial:
    """HS(-z)(1+z)^e - 1 - z^(s+e)."""
    hs = hs_compressed(e, s).at_negative()
    return hs * IntegerPolynomial.one_plus_z_power(e) - ONE - IntegerPolynomial.monomial(s + e)


def _negative_z_shift(p: IntegerPolynomial, k: int) -> IntegerPolynomial:
    """(-z)^(-k) p, exact."""
    shifted = p.shift(-k)
    return -shifted if k % 2 else shifted


def poqr_even_closed_form(e: int, s: int) -> IntegerPolynomial:
    """Po^Q_R = 1 + z^e + (-z)^(-s/2) (HS(-z)(1+z)^e - 1 - z^(s+e)).

    Raises:
        OddSocle: for odd s
        CancellationFailure: if a negative power of z survives
    """
    _check_even(e, s)
    return ONE + IntegerPolynomial.monomial(e) + _negative_z_shift(_alternating_core(e, s), s // 2)


def dr_from_poqr(poqr: IntegerPolynomial, e: int, a: int = 1) -> IntegerPolynomial:
    """d_R = 1 - z(Po^Q_R - 1) + a z^(e+1) (1 + z)."""
    if poqr.coeffs[:1] != [1]:
        raise ValueError("Po^Q_R must have constant term 1")
    tail = IntegerPolynomial.monomial(e + 1, a) * (ONE + Z1)
    return ONE - Z1 * (poqr - ONE) + tail


def dr_even_closed_form(e: int, s: int) -> IntegerPolynomial:
    """d_R = 1 + z^(e+2) + (-z)^(-(s-2)/2) (HS(-z)(1+z)^e - 1 - z^(s+e)).

    Raises:
        OddSocle: for odd s
        CancellationFailure: if a negative power of z survives
    """
    _check_even(e, s)
    shifted = _negative_z_shift(_alternating_core(e, s), (s - 2) // 2)
    return ONE + IntegerPolynomial.monomial(e + 2) + shifted


def golod_poincare(e: int, poq: IntegerPolynomial, order: int) -> TruncatedIntegerSeries:
    """Golod bound (1+z)^e / (1 - z(Po^Q_R - 1)) expanded through z^order."""
    denominator = ONE - Z1 * (poq - ONE)
    return IntegerPolynomial.one_plus_z_power(e).to_series(order) / denominator


def golod_quotient_formula(
    popk: TruncatedIntegerSeries, popr: TruncatedIntegerSeries
) -> TruncatedIntegerSeries:
    """Po^R_k = Po^P_k / (1 - z(Po^P_R - 1)) for a Golod map P -> R."""
    if popr.coeffs[0] != 1:
        raise ValueError("Po^P_R must have constant term 1")
    order = min(popk.order, popr.order)
    one = ONE.to_series(order)
    denominator = one - (popr - one) * Z1.to_series(order)
    return popk.truncate(order) / denominator


def change_of_rings_pop(
    poqm: TruncatedIntegerSeries | IntegerPolynomial,
    hs_ker: TruncatedIntegerSeries | IntegerPolynomial,
    order: int,
) -> TruncatedIntegerSeries:
    """Po^P_M = (Po^Q_M - (1+z) HS_Ker) / (1 - z^2) through z^order."""
    numerator = _as_series(poqm, order) - _as_series(hs_ker, order) * (ONE + Z1)
    return numerator / (ONE - IntegerPolynomial.monomial(2))


def socle_quotient_poq(poqr: IntegerPolynomial, e: int) -> IntegerPolynomial:
    """Po^Q_{R/Soc R} = Po^Q_R + z(1+z)^e - z^e(1+z)."""
    if poqr.coeffs[:1] != [1]:
        raise ValueError("Po^Q_R must have constant term 1")
    return (
        poqr
        + Z1 * IntegerPolynomial.one_plus_z_power(e)
        - IntegerPolynomial.monomial(e) * (ONE + Z1)
    )


def series_identity_check(lhs: TruncatedIntegerSeries, rhs: TruncatedIntegerSeries) -> bool:
    """Exact coefficientwise equality through the common truncation order."""
    return lhs == rhs


def hypersurface_poincare_k(e: int, order: int) -> TruncatedIntegerSeries:
    """Residue field over a hypersurface of embedding dimension e: (1+z)^e/(1-z^2)."""
    return IntegerPolynomial.one_plus_z_power(e).to_series(order) / (
        ONE - IntegerPolynomial.monomial(2)
    )


def poincare_k_from_dr(e: int, dr: IntegerPolynomial, order: int) -> TruncatedIntegerSeries:
    """(1+z)^e / d_R(z) expanded through z^order."""
    return IntegerPolynomial.one_plus_z_power(e).to_series(order) / dr


def socle_quotient_golod_poincare(
    poqr: IntegerPolynomial, e: int, order: int
) -> TruncatedIntegerSeries:
    """Po^R_k forced by R/Soc R being Golod: (1+z)^e / (1 - z(Po^Q_R - 1) + z^(e+1)(1+z))."""
    return poincare_k_from_dr(e, dr_from_poqr(poqr, e, 1), order)


def socle_quotient_residue_series(pork: TruncatedIntegerSeries) -> TruncatedIntegerSeries:
    """Po^{R/Soc R}_k = Po^R_k / (1 - z^2 Po^R_k)."""
    one = ONE.to_series(pork.order)
    return pork / (one - pork * IntegerPolynomial.monomial(2))


def residue_series_from_socle_quotient(posk: TruncatedIntegerSeries) -> TruncatedIntegerSeries:
    """Inverse rearrangement: Po^R_k = Po^S_k / (1 + z^2 Po^S_k) for S = R/Soc R."""
    one = ONE.to_series(posk.order)
    return posk / (one + posk * IntegerPolynomial.monomial(2))


def complete_intersection_dr(e: int) -> IntegerPolynomial:
    """(1 - z^2)^e."""
    return (ONE - IntegerPolynomial.monomial(2)) ** e


def quadratic_socle_dr(e: int) -> IntegerPolynomial:
    """d_R for s = 2: HS(-z)(1+z)^e."""
    return hs_compressed(e, 2).at_negative() * IntegerPolynomial.one_plus_z_power(e)


def kernel_series(e: int, a: int = 1) -> IntegerPolynomial:
    """Hilbert series z + a z^e of the kernel of Tor^Q(R,k) -> Tor^P(R,k)."""
    return Z1 + IntegerPolynomial.monomial(e, a)


def _as_series(
    value: TruncatedIntegerSeries | IntegerPolynomial, order: int
) -> TruncatedIntegerSeries:
    if isinstance(value, IntegerPolynomial):
        return value.to_series(order)
    return value.truncate(order)
