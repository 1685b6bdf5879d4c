"""Helper utility functions for gorpoincare."""

from math import comb, isqrt


def is_prime(n: int) -> bool:
    """Check primality by trial division.

    Args:
        n: Integer to test

    Returns:
        True if n is prime
    """
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    for d in range(3, isqrt(n) + 1, 2):
        if n % d == 0:
            return False
    return True


def piece_dimension(e: int, d: int) -> int:
    """Dimension of the degree-d piece of a polynomial ring in e variables.

    Args:
        e: Number of variables
        d: Degree

    Returns:
        binomial(e - 1 + d, e - 1), or 0 for negative d
    """
    if d < 0:
        return 0
    return comb(e - 1 + d, e - 1)


def derive_seed(seed: int, offset: int) -> int:
    """Derive the seed of the offset-th retry from a base seed."""
    return seed + offset


def format_vector(values: list[int] | tuple[int, ...]) -> str:
    """Format an integer vector as ``(a,b,c)``."""
    return "(" + ",".join(str(v) for v in values) + ")"
