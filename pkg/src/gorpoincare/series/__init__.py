"""Exact integer polynomials, truncated series and closed-form Poincare series."""

from gorpoincare.series.arithmetic import IntegerPolynomial, TruncatedIntegerSeries
from gorpoincare.series.formulas import (
    dr_even_closed_form,
    dr_from_poqr,
    golod_poincare,
    poqr_even_closed_form,
)

__all__ = [
    "IntegerPolynomial",
    "TruncatedIntegerSeries",
    "dr_even_closed_form",
    "dr_from_poqr",
    "golod_poincare",
    "poqr_even_closed_form",
]
