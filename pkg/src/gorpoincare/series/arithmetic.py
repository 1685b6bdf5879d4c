"""Exact integer polynomials and truncated power series in one variable z.

Both types wrap elements of the sympy polynomial ring ZZ[z]; truncated
products and inverses go through ``sympy.polys.ring_series``, so every
coefficient is an unbounded integer.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Union

from sympy.polys.domains import ZZ
from sympy.polys.polyerrors import ExactQuotientFailed
from sympy.polys.ring_series import rs_mul, rs_series_inversion, rs_trunc
from sympy.polys.rings import PolyElement, ring

from gorpoincare.core.errors import CancellationFailure

ZZ_Z, Z = ring("z", ZZ)


def _from_coeffs(coeffs: Iterable[int]) -> PolyElement:
    return ZZ_Z.from_dict({(k,): ZZ(int(c)) for k, c in enumerate(coeffs) if c})


def _coeff_list(element: PolyElement, length: int | None = None) -> list[int]:
    terms = {k[0]: int(c) for k, c in element.items()}
    if length is None:
        length = max(terms) + 1 if terms else 0
    return [terms.get(k, 0) for k in range(length)]


@dataclass(frozen=True)
class IntegerPolynomial:
    """A polynomial in z with integer coefficients."""

    element: PolyElement

    @classmethod
    def from_coeffs(cls, coeffs: Iterable[int]) -> "IntegerPolynomial":
        """Build from c_0, c_1, ...; trailing zeros are dropped."""
        return cls(_from_coeffs(coeffs))

    @classmethod
    def monomial(cls, k: int, c: int = 1) -> "IntegerPolynomial":
        return cls(ZZ_Z(c) * Z**k)

    @classmethod
    def one(cls) -> "IntegerPolynomial":
        return cls(ZZ_Z.one)

    @classmethod
    def one_plus_z_power(cls, e: int) -> "IntegerPolynomial":
        """(1 + z)^e."""
        return cls((1 + Z) ** e)

    @property
    def coeffs(self) -> list[int]:
        return _coeff_list(self.element)

    @property
    def degree(self) -> int:
        """Degree, -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    def __add__(self, other: "IntegerPolynomial") -> "IntegerPolynomial":
        return IntegerPolynomial(self.element + other.element)

    def __sub__(self, other: "IntegerPolynomial") -> "IntegerPolynomial":
        return IntegerPolynomial(self.element - other.element)

    def __mul__(self, other: Union["IntegerPolynomial", int]) -> "IntegerPolynomial":
        if isinstance(other, int):
            return IntegerPolynomial(self.element * other)
        return IntegerPolynomial(self.element * other.element)

    __rmul__ = __mul__

    def __neg__(self) -> "IntegerPolynomial":
        return IntegerPolynomial(-self.element)

    def __pow__(self, n: int) -> "IntegerPolynomial":
        return IntegerPolynomial(self.element**n)

    def __call__(self, value: int) -> int:
        return sum(c * value**k for k, c in enumerate(self.coeffs))

    def at_negative(self) -> "IntegerPolynomial":
        """p(-z)."""
        return IntegerPolynomial.from_coeffs(
            c if k % 2 == 0 else -c for k, c in enumerate(self.coeffs)
        )

    def shift(self, k: int) -> "IntegerPolynomial":
        """Multiply by z^k; for k < 0 the low terms must cancel exactly.

        Raises:
            CancellationFailure: if a negative power of z would survive
        """
        if k >= 0:
            return IntegerPolynomial(self.element * Z**k)
        try:
            return IntegerPolynomial(self.element.exquo(Z ** (-k)))
        except ExactQuotientFailed as exc:
            raise CancellationFailure(
                f"{self} is not divisible by z^{-k}"
            ) from exc

    def to_series(self, order: int) -> "TruncatedIntegerSeries":
        return TruncatedIntegerSeries(self.element, order)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, IntegerPolynomial):
            return NotImplemented
        return self.element == other.element

    def __hash__(self) -> int:
        return hash(tuple(self.coeffs))

    def __str__(self) -> str:
        return str(self.element.as_expr()) if self.element else "0"


SeriesLike = Union["TruncatedIntegerSeries", IntegerPolynomial]


@dataclass(frozen=True, eq=False)
class TruncatedIntegerSeries:
    """Power series c_0 + c_1 z + ... known exactly through z^order."""

    element: PolyElement
    order: int

    def __post_init__(self) -> None:
        if self.order < 0:
            raise ValueError("truncation order must be nonnegative")
        object.__setattr__(self, "element", rs_trunc(self.element, Z, self.order + 1))

    @classmethod
    def from_coeffs(
        cls, coeffs: Iterable[int], order: int | None = None
    ) -> "TruncatedIntegerSeries":
        coeffs = list(coeffs)
        if order is None:
            order = len(coeffs) - 1
        return cls(_from_coeffs(coeffs), order)

    @property
    def coeffs(self) -> list[int]:
        return _coeff_list(self.element, self.order + 1)

    @property
    def prec(self) -> int:
        return self.order + 1

    def _other(self, other: SeriesLike) -> tuple[PolyElement, int]:
        if isinstance(other, IntegerPolynomial):
            return other.element, self.order
        return other.element, min(self.order, other.order)

    def __add__(self, other: SeriesLike) -> "TruncatedIntegerSeries":
        element, order = self._other(other)
        return TruncatedIntegerSeries(self.element + element, order)

    def __sub__(self, other: SeriesLike) -> "TruncatedIntegerSeries":
        element, order = self._other(other)
        return TruncatedIntegerSeries(self.element - element, order)

    def __mul__(self, other: SeriesLike) -> "TruncatedIntegerSeries":
        element, order = self._other(other)
        return TruncatedIntegerSeries(rs_mul(self.element, element, Z, order + 1), order)

    def __neg__(self) -> "TruncatedIntegerSeries":
        return TruncatedIntegerSeries(-self.element, self.order)

    def inverse(self) -> "TruncatedIntegerSeries":
        """1/f, defined over the integers when c_0 = 1 or c_0 = -1."""
        c0 = self.coeffs[0]
        if c0 == 1:
            inverted = rs_series_inversion(self.element, Z, self.prec)
            return TruncatedIntegerSeries(inverted, self.order)
        if c0 == -1:
            inverted = rs_series_inversion(-self.element, Z, self.prec)
            return TruncatedIntegerSeries(-inverted, self.order)
        raise ZeroDivisionError(f"constant term {c0} is not a unit of ZZ")

    def __truediv__(self, other: SeriesLike) -> "TruncatedIntegerSeries":
        if isinstance(other, IntegerPolynomial):
            other = other.to_series(self.order)
        return self * other.inverse()

    def truncate(self, order: int) -> "TruncatedIntegerSeries":
        return TruncatedIntegerSeries(self.element, min(order, self.order))

    def dominated_by(self, other: "TruncatedIntegerSeries") -> bool:
        """Coefficientwise self <= other through the common order."""
        order = min(self.order, other.order)
        return all(a <= b for a, b in zip(self.coeffs[: order + 1], other.coeffs[: order + 1]))

    def to_dict(self) -> dict:
        return {"coefficients": self.coeffs, "order": self.order}

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, TruncatedIntegerSeries):
            return NotImplemented
        order = min(self.order, other.order)
        return self.coeffs[: order + 1] == other.coeffs[: order + 1]

    def __str__(self) -> str:
        body = str(self.element.as_expr()) if self.element else "0"
        return f"{body} + O(z^{self.order + 1})"
