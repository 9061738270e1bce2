"""
Laurent polynomials in the elliptic variables.

A slice is the coefficient of a single power of q in a Jacobi series: a
finite map (r2, s2) -> coefficient, where r2, s2 are twice the exponents of
zeta and omega. Rank-one slices simply have s2 = 0 everywhere.
"""

from __future__ import annotations

from fractions import Fraction

from .util import Rational, normalize

Monomial = tuple[int, int]
Slice = dict[Monomial, Rational]


def add_into(target: Slice, source: Slice, factor: Rational = 1) -> None:
    """target += factor * source, dropping cancelled terms."""
    for key, value in source.items():
        total = target.get(key, 0) + factor * value
        if total:
            target[key] = total
        else:
            target.pop(key, None)


def multiply(left: Slice, right: Slice) -> Slice:
    out: Slice = {}
    for (r1, s1), c1 in left.items():
        for (r2, s2), c2 in right.items():
            key = (r1 + r2, s1 + s2)
            out[key] = out.get(key, 0) + c1 * c2
    return {key: normalize(value) for key, value in out.items() if value}


def scale(source: Slice, factor: Rational) -> Slice:
    if not factor:
        return {}
    return {key: normalize(value * factor) for key, value in source.items()}


def shift(source: Slice, r2: int, s2: int) -> Slice:
    return {(r + r2, s + s2): value for (r, s), value in source.items()}


def lowest_corner(source: Slice) -> Monomial:
    """Componentwise minimum of the exponents, i.e. the largest monomial factor."""
    return (min(r for r, _ in source), min(s for _, s in source))


def _grlex(key: Monomial) -> tuple[int, int, int]:
    return (key[0] + key[1], key[0], key[1])


def divide(dividend: Slice, divisor: Slice) -> Slice | None:
    """
    Exact quotient dividend / divisor, or None when a remainder is left.

    Both sides are first shifted by their lowest corner so they become
    genuine polynomials. If the Laurent quotient exists, the shifted
    quotient is a polynomial too, and single-divisor long division in
    graded-lex order finds it with zero remainder.
    """
    if not divisor:
        msg = "division by an empty slice"
        raise ZeroDivisionError(msg)
    if not dividend:
        return {}
    d_r, d_s = lowest_corner(dividend)
    g_r, g_s = lowest_corner(divisor)
    remainder: Slice = shift(dividend, -d_r, -d_s)
    poly = shift(divisor, -g_r, -g_s)
    lead = max(poly, key=_grlex)
    lead_coeff = Fraction(poly[lead])
    quotient: Slice = {}
    while remainder:
        top = max(remainder, key=_grlex)
        step = (top[0] - lead[0], top[1] - lead[1])
        if step[0] < 0 or step[1] < 0:
            return None
        factor = normalize(remainder[top] / lead_coeff)
        quotient[step] = factor
        for (r, s), value in poly.items():
            key = (r + step[0], s + step[1])
            total = remainder.get(key, 0) - factor * value
            if total:
                remainder[key] = total
            else:
                remainder.pop(key, None)
    return shift(quotient, d_r - g_r, d_s - g_s)
