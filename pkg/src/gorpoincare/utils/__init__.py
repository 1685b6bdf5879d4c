"""Utility functions for gorpoincare."""

from gorpoincare.utils.helpers import (
    derive_seed,
    format_vector,
    is_prime,
    piece_dimension,
)

__all__ = [
    "derive_seed",
    "format_vector",
    "is_prime",
    "piece_dimension",
]
