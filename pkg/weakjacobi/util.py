"""General helper utilities for weakjacobi."""

from __future__ import annotations

from fractions import Fraction

Rational = int | Fraction


def normalize(value: Rational) -> Rational:
    """
    Return value as an int when it is integral, otherwise as a Fraction.

    Series coefficients are mostly integers and int arithmetic is much
    faster than Fraction arithmetic, so integral values are kept as int.
    """
    if isinstance(value, Fraction) and value.denominator == 1:
        return value.numerator
    return value


def parse_rational(text: str | int) -> Rational:
    """Parse "p/q", "p" or an int into a reduced rational."""
    if isinstance(text, int):
        return text
    return normalize(Fraction(text.strip()))


def format_rational(value: Rational) -> str:
    """Render a rational as "p/q" (or "p" when integral)."""
    value = Fraction(value)
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


def format_scaled(value: int, denominator: int) -> str:
    """Render value/denominator in lowest terms, e.g. 3/24 -> "1/8"."""
    return format_rational(Fraction(value, denominator))


def divisor_sigma(n: int, power: int) -> int:
    """Sum of d**power over the positive divisors d of n."""
    total = 0
    d = 1
    while d * d <= n:
        if n % d == 0:
            total += d**power
            other = n // d
            if other != d:
                total += other**power
        d += 1
    return total


def pentagonal_exponents(limit: int) -> list[tuple[int, int]]:
    """
    Exponents and signs of Euler's product prod(1 - q^n) below limit.

    Returns (exponent, sign) pairs from the generalized pentagonal numbers
    k(3k-1)/2 for k = 0, 1, -1, 2, -2, ... with sign (-1)^k.
    """
    out = [(0, 1)]
    k = 1
    while True:
        sign = -1 if k % 2 else 1
        first = k * (3 * k - 1) // 2
        second = k * (3 * k + 1) // 2
        if first >= limit:
            break
        out.append((first, sign))
        if second < limit:
            out.append((second, sign))
        k += 1
    return out
