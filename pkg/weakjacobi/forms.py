"""
Named forms and operators.

Everything is built from three primitives: the Euler product (for eta
powers), divisor sums (for Eisenstein series) and the theta series

    theta(tau, z) = q^(1/8) zeta^(1/2) sum_n q^(n(n+1)/2) (-zeta)^n

The derivative of theta used in every log-derivative construction is
theta' = 2 D theta with D = (2 pi i)^-1 d/dz. D theta(tau, 0) = eta^3, so
theta'(tau, 0) = 2 eta^3.

Constructors take the requested precision prec24 and guarantee it: each
one computes its ingredients with enough slack for the valuation shifts
of mul and divide_exact, then truncates.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache, reduce

from . import series as ser
from .const import (
    _LOGGER,
    DIRECTION_W,
    DIRECTION_Z,
    DIRECTION_ZW,
    DIRECTIONS,
    EMBED_SEPARATOR,
    GEN_E2,
    GEN_E4,
    GEN_E6,
    GEN_ETA,
    GEN_PHI_0_1,
    GEN_PHI_0_3HALF,
    GEN_PHI_0_313,
    GEN_PHI_0_323,
    GEN_PHI_0_A2,
    GEN_PHI_M1_2,
    GEN_PHI_M1_HALF,
    GEN_PHI_M2_1,
    GEN_PHI_M2_A2,
    GEN_PHI_M3_A2,
    GEN_THETA,
    GENERATOR_SUBSTITUTIONS,
    SUB_SEPARATOR,
)
from .exceptions import DegenerateIndexError, RankMismatchError, ThetaBlockError, UnknownGeneratorError
from .index import Index, IndexMatrix, RankOneIndex, zero_index
from .series import JacobiSeries
from .util import Rational, divisor_sigma, pentagonal_exponents

CACHE_SIZE = 512

# Theta and its derivatives start at q^(1/8); products of them gain that
# much precision per factor, which is the slack added below.
THETA_VALUATION24 = 3

EISENSTEIN_FACTORS = {2: (-24, 1), 4: (240, 3), 6: (-504, 5)}


@dataclass(frozen=True)
class NamedForm:
    """A catalog form together with the id it was built from."""

    id: str
    series: JacobiSeries

    @property
    def weight(self) -> Rational:
        return self.series.weight

    @property
    def index(self) -> Index:
        return self.series.index

    def to_dict(self) -> dict:
        return {"id": self.id, "weight": str(self.weight), "index": self.index.to_dict()}


def _finish(f: JacobiSeries, prec24: int) -> JacobiSeries:
    return ser.truncate(f, prec24)


def _product(factors: list[JacobiSeries]) -> JacobiSeries:
    return reduce(ser.mul, factors)


# -- modular forms


@lru_cache(maxsize=CACHE_SIZE)
def eta_power(e: int, prec24: int, rank: int = 1) -> JacobiSeries:
    """
    eta^e = q^(e/24) prod(1 - q^n)^e, for any integer e.

    Negative powers invert the Euler product first.
    """
    inner_prec = prec24 - e
    weight = Fraction(e, 2)
    if inner_prec <= 0:
        return ser.zero(rank, prec24, weight)
    limit = -(-inner_prec // 24)
    euler = JacobiSeries(
        {24 * k: {(0, 0): sign} for k, sign in pentagonal_exponents(limit)},
        inner_prec,
        0,
        zero_index(rank),
        rank,
    )
    base = euler if e >= 0 else ser.invert_unit(euler)
    body = ser.power(base, abs(e))
    return ser.with_metadata(_finish(ser.shift(body, e), prec24), weight=weight)


@lru_cache(maxsize=CACHE_SIZE)
def eisenstein(weight: int, prec24: int, rank: int = 1) -> JacobiSeries:
    """E2 = 1 - 24 sum sigma_1(n) q^n, E4 = 1 + 240 sum sigma_3, E6 = 1 - 504 sum sigma_5."""
    if weight not in EISENSTEIN_FACTORS:
        msg = f"unsupported Eisenstein weight {weight}; expected one of 2, 4, 6"
        raise ValueError(msg)
    factor, power = EISENSTEIN_FACTORS[weight]
    slices = {0: {(0, 0): 1}}
    n = 1
    while 24 * n < prec24:
        slices[24 * n] = {(0, 0): factor * divisor_sigma(n, power)}
        n += 1
    return JacobiSeries(slices, prec24, weight, zero_index(rank), rank)


# -- theta


@lru_cache(maxsize=CACHE_SIZE)
def theta(prec24: int) -> JacobiSeries:
    """The odd Jacobi theta function, weight 1/2 and index (1)."""
    terms: dict[tuple[int, int, int], int] = {}
    n = 0
    while THETA_VALUATION24 + 12 * n * (n + 1) < prec24:
        n24 = THETA_VALUATION24 + 12 * n * (n + 1)
        sign = -1 if n % 2 else 1
        terms[(n24, 2 * n + 1, 0)] = sign
        # n and -1-n share the q-power
        terms[(n24, -2 * n - 1, 0)] = -sign
        n += 1
    return JacobiSeries.from_terms(terms, prec24, Fraction(1, 2), RankOneIndex(1), 1)


def theta_product(prec24: int) -> JacobiSeries:
    """
    theta from the triple product

        q^(1/8) zeta^(1/2) prod_{n>=1} (1 - q^n)(1 - q^n zeta)(1 - q^(n-1) zeta^-1)

    Independent of theta(), so the two can check each other.
    """
    inner = prec24 - THETA_VALUATION24
    if inner <= 0:
        return ser.zero(1, prec24, Fraction(1, 2), RankOneIndex(1))
    factors = [JacobiSeries({0: {(0, 0): 1, (-2, 0): -1}}, inner, 0, RankOneIndex(0), 1)]
    n = 1
    while 24 * n < inner:
        factors.append(JacobiSeries({0: {(0, 0): 1}, 24 * n: {(0, 0): -1}}, inner, 0, RankOneIndex(0), 1))
        factors.append(JacobiSeries({0: {(0, 0): 1}, 24 * n: {(2, 0): -1}}, inner, 0, RankOneIndex(0), 1))
        factors.append(JacobiSeries({0: {(0, 0): 1}, 24 * n: {(-2, 0): -1}}, inner, 0, RankOneIndex(0), 1))
        n += 1
    body = ser.shift(_product(factors), THETA_VALUATION24, 1)
    return ser.with_metadata(body, weight=Fraction(1, 2), index=RankOneIndex(1))


@lru_cache(maxsize=CACHE_SIZE)
def theta_derivative(k: int, prec24: int) -> JacobiSeries:
    """(2D)^k theta."""
    if k < 0:
        msg = f"derivative order must be nonnegative, got {k}"
        raise ValueError(msg)
    out = theta(prec24)
    for _ in range(k):
        out = ser.dz(out)
    return ser.scale(out, 2**k)


# -- embeddings and operators


def embed(f: JacobiSeries, direction: str | tuple[int, int]) -> JacobiSeries:
    """
    Lift a rank-one form to rank two along z, w, z+w or a general vector.

    f(tau, l1 z + l2 w) has index m2 * (l1, l2)^t (l1, l2) as a Gram matrix,
    so z gives (a, b, c) = (m2, 0, 0), w gives (0, 0, m2), z+w gives (0, m2, 0).
    """
    if f.rank != 1:
        raise RankMismatchError(f.rank, 1)
    l1, l2 = DIRECTIONS[direction] if isinstance(direction, str) else direction
    m2 = f.index.m2
    index = IndexMatrix.of_gram(l1 * l1 * m2, l1 * l2 * m2, l2 * l2 * m2)
    return ser.relabel(f, lambda r2, _s2: (l1 * r2, l2 * r2), index, 2)


def _check_index(f: JacobiSeries, index: Index) -> Index:
    if isinstance(index, int):
        index = RankOneIndex(index)
    expected = RankOneIndex if f.rank == 1 else IndexMatrix
    if not isinstance(index, expected):
        raise RankMismatchError(f.rank, 1 if isinstance(index, RankOneIndex) else 2)
    if not index.is_positive_definite():
        msg = f"heat operator needs a positive-definite index, got {index}"
        raise DegenerateIndexError(msg)
    return index


def heat(f: JacobiSeries, index: Index | int) -> JacobiSeries:
    """Multiply each coefficient c(n, r) by n - r^t M^-1 r / 2."""
    index = _check_index(f, index)
    slices = {}
    for n24, row in f.iter_slices():
        n = Fraction(n24, 24)
        slices[n24] = {key: value * (n - index.quadratic(*key)) for key, value in row.items()}
    return JacobiSeries(slices, f.prec24, f.weight + 2, f.index, f.rank)


def serre(f: JacobiSeries, k: Rational, rank: int, index: Index | int) -> JacobiSeries:
    """
    S f = H f - (k/12 - rank/24) E2 f.

    Weight and index are passed explicitly; the result is labelled with
    weight k + 2 and the given index whatever f carried.
    """
    if rank != f.rank:
        raise RankMismatchError(f.rank, rank)
    index = _check_index(f, index)
    correction = Fraction(k) / 12 - Fraction(rank, 24)
    e2_f = ser.mul(eisenstein(2, f.prec24, rank), f)
    out = ser.linear_combination([(1, heat(f, index)), (-correction, e2_f)])
    return ser.with_metadata(out, weight=Fraction(k) + 2, index=index)


# -- rank-one generators


@lru_cache(maxsize=CACHE_SIZE)
def phi_m1_half(prec24: int) -> JacobiSeries:
    """phi_{-1,1/2} = theta / eta^3."""
    return _finish(ser.mul(theta(prec24 + THETA_VALUATION24), eta_power(-3, prec24)), prec24)


@lru_cache(maxsize=CACHE_SIZE)
def phi_m2_1(prec24: int) -> JacobiSeries:
    return ser.power(phi_m1_half(prec24), 2)


@lru_cache(maxsize=CACHE_SIZE)
def phi_0_3half(prec24: int) -> JacobiSeries:
    """phi_{0,3/2} = theta(tau, 2z) / theta(tau, z)."""
    base = theta(prec24 + THETA_VALUATION24)
    return _finish(ser.divide_exact(ser.scale_z(base, 2), base), prec24)


@lru_cache(maxsize=CACHE_SIZE)
def phi_m1_2(prec24: int) -> JacobiSeries:
    return ser.mul(phi_m1_half(prec24), phi_0_3half(prec24))


@lru_cache(maxsize=CACHE_SIZE)
def phi_0_1(prec24: int) -> JacobiSeries:
    """phi_{0,1} = -24 S(phi_{-2,1}); the constant makes the q^0 zeta^0 coefficient 10."""
    return ser.scale(serre(phi_m2_1(prec24), -2, 1, RankOneIndex(2)), -24)


# -- theta blocks


def _theta_at(direction: str, prec24: int, derivative: int = 0) -> JacobiSeries:
    return embed(theta_derivative(derivative, prec24) if derivative else theta(prec24), direction)


def _block_numerator(a: int, b: int, c: int, prec24: int, primed: str | None = None) -> JacobiSeries:
    """theta(z)^a theta(z+w)^b theta(w)^c, with one factor replaced by theta' if primed is set."""
    factors = []
    for direction, count in ((DIRECTION_Z, a), (DIRECTION_ZW, b), (DIRECTION_W, c)):
        plain = count
        if direction == primed:
            factors.append(_theta_at(direction, prec24, derivative=1))
            plain -= 1
        if plain:
            factors.append(ser.power(_theta_at(direction, prec24), plain))
    return _product(factors)


@lru_cache(maxsize=CACHE_SIZE)
def theta_block(a: int, b: int, c: int, prec24: int) -> JacobiSeries:
    """theta(z)^a theta(z+w)^b theta(w)^c / eta^(3(a+b+c)); weight -(a+b+c), index (a, b, c)."""
    if min(a, b, c) < 0:
        msg = f"theta block exponents must be nonnegative, got {(a, b, c)}"
        raise ThetaBlockError(msg)
    eps = a + b + c
    if eps == 0:
        return ser.one(2, prec24)
    numerator = _block_numerator(a, b, c, prec24 + THETA_VALUATION24)
    return _finish(ser.mul(numerator, eta_power(-3 * eps, prec24, rank=2)), prec24)


@lru_cache(maxsize=CACHE_SIZE)
def theta_block_plus(a: int, b: int, c: int, prec24: int) -> JacobiSeries:
    """
    The second theta block of minimal weight plus one:

        (theta'(z)/theta(z) + theta'(w)/theta(w) - theta'(z+w)/theta(z+w)) * theta_block(a, b, c)

    computed with the denominators cleared, so no division by theta happens.
    """
    if a < 1 or b < 1 or c < 1:
        msg = f"theta_block_plus needs a, b, c >= 1, got {(a, b, c)}"
        raise ThetaBlockError(msg)
    work = prec24 + THETA_VALUATION24
    numerator = ser.linear_combination(
        [
            (1, _block_numerator(a, b, c, work, primed=DIRECTION_Z)),
            (1, _block_numerator(a, b, c, work, primed=DIRECTION_W)),
            (-1, _block_numerator(a, b, c, work, primed=DIRECTION_ZW)),
        ]
    )
    return _finish(ser.mul(numerator, eta_power(-3 * (a + b + c), prec24, rank=2)), prec24)


def theta_block_min2(a: int, b: int, c: int, prec24: int) -> list[JacobiSeries]:
    """
    Forms spanning the weak forms of weight -(a+b+c)+2 and index (a, b, c).

    For every entry that is at least 2, phi_{0,1} on the matching variable
    times the theta block with that entry lowered by two.
    """
    out = []
    base = phi_0_1(prec24)
    for direction, lowered in (
        (DIRECTION_Z, (a - 2, b, c)),
        (DIRECTION_ZW, (a, b - 2, c)),
        (DIRECTION_W, (a, b, c - 2)),
    ):
        if min(lowered) < 0:
            continue
        out.append(ser.mul(embed(base, direction), theta_block(*lowered, prec24)))
    return out


# -- rank-two generators


@lru_cache(maxsize=CACHE_SIZE)
def Phi_m3_A2(prec24: int) -> JacobiSeries:  # noqa: N802
    """theta(z) theta(w) theta(z+w) / eta^9."""
    return theta_block(1, 1, 1, prec24)


@lru_cache(maxsize=CACHE_SIZE)
def Phi_m2_A2(prec24: int) -> JacobiSeries:  # noqa: N802
    return theta_block_plus(1, 1, 1, prec24)


@lru_cache(maxsize=CACHE_SIZE)
def Phi_0_A2(prec24: int) -> JacobiSeries:  # noqa: N802
    return ser.scale(serre(Phi_m2_A2(prec24), -2, 2, IndexMatrix(1, 1, 1)), -12)


@lru_cache(maxsize=CACHE_SIZE)
def Phi_0_323(prec24: int) -> JacobiSeries:  # noqa: N802
    """(5/2) S(theta(z) theta(w) phi_{0,1}(z+w) / eta^6) at index [[3,2],[2,3]]."""
    work = prec24 + THETA_VALUATION24
    numerator = _product(
        [_theta_at(DIRECTION_Z, work), _theta_at(DIRECTION_W, work), embed(phi_0_1(prec24), DIRECTION_ZW)]
    )
    base = _finish(ser.mul(numerator, eta_power(-6, prec24, rank=2)), prec24)
    return ser.scale(serre(base, -2, 2, IndexMatrix(1, 2, 1)), Fraction(5, 2))


@lru_cache(maxsize=CACHE_SIZE)
def Phi_0_313(prec24: int) -> JacobiSeries:  # noqa: N802
    """(29/2) E4 phi(z) phi(w) Phi_{-2} + 48 S(phi(z) phi(w) Phi_0) at index [[3,1],[1,3]], phi = phi_{-1,1/2}."""
    phi = phi_m1_half(prec24)
    pair = ser.mul(embed(phi, DIRECTION_Z), embed(phi, DIRECTION_W))
    first = _product([eisenstein(4, prec24, rank=2), pair, Phi_m2_A2(prec24)])
    second = serre(ser.mul(pair, Phi_0_A2(prec24)), -2, 2, IndexMatrix(2, 1, 2))
    return ser.linear_combination([(Fraction(29, 2), first), (48, second)])


# -- generator ids

BASE_BUILDERS = {
    GEN_ETA: lambda prec24: eta_power(1, prec24),
    GEN_E2: lambda prec24: eisenstein(2, prec24),
    GEN_E4: lambda prec24: eisenstein(4, prec24),
    GEN_E6: lambda prec24: eisenstein(6, prec24),
    GEN_THETA: theta,
    GEN_PHI_M1_HALF: phi_m1_half,
    GEN_PHI_M2_1: phi_m2_1,
    GEN_PHI_0_1: phi_0_1,
    GEN_PHI_0_3HALF: phi_0_3half,
    GEN_PHI_M1_2: phi_m1_2,
    GEN_PHI_M3_A2: Phi_m3_A2,
    GEN_PHI_M2_A2: Phi_m2_A2,
    GEN_PHI_0_A2: Phi_0_A2,
    GEN_PHI_0_323: Phi_0_323,
    GEN_PHI_0_313: Phi_0_313,
}


def parse_generator_id(gid: str) -> tuple[str, str | None, str | None]:
    """Split "base@direction|subN" into its parts, validating each."""
    rest, _, sub = gid.partition(SUB_SEPARATOR)
    base, _, direction = rest.partition(EMBED_SEPARATOR)
    if base not in BASE_BUILDERS:
        msg = f"unknown generator {gid!r}"
        raise UnknownGeneratorError(msg)
    if direction and direction not in DIRECTIONS:
        msg = f"unknown embedding {direction!r} in {gid!r}"
        raise UnknownGeneratorError(msg)
    if sub and sub not in GENERATOR_SUBSTITUTIONS:
        msg = f"unknown substitution {sub!r} in {gid!r}"
        raise UnknownGeneratorError(msg)
    return base, direction or None, sub or None


@lru_cache(maxsize=CACHE_SIZE)
def named_form(gid: str, prec24: int) -> NamedForm:
    """Build (and memoize) the form with the given generator id."""
    base, direction, sub = parse_generator_id(gid)
    _LOGGER.debug("Building %s to prec24=%s", gid, prec24)
    f = BASE_BUILDERS[base](prec24)
    if direction is not None:
        f = embed(f, direction)
    if sub is not None:
        if f.rank != 2:
            msg = f"{gid!r}: substitutions apply to rank-two forms only"
            raise UnknownGeneratorError(msg)
        f = ser.substitute(f, GENERATOR_SUBSTITUTIONS[sub])
    return NamedForm(gid, f)


def generator_series(gid: str, prec24: int) -> JacobiSeries:
    """named_form as a rank-two series; zero-index modular forms are lifted along z."""
    f = named_form(gid, prec24).series
    if f.rank == 1:
        if not f.index.is_zero:
            msg = f"{gid!r} is a rank-one form of nonzero index; add an @z, @w or @zw suffix"
            raise UnknownGeneratorError(msg)
        f = embed(f, DIRECTION_Z)
    return f


def clear_caches() -> None:
    """Drop every memoized construction."""
    for builder in (
        eta_power,
        eisenstein,
        theta,
        theta_derivative,
        phi_m1_half,
        phi_m2_1,
        phi_0_3half,
        phi_m1_2,
        phi_0_1,
        theta_block,
        theta_block_plus,
        Phi_m3_A2,
        Phi_m2_A2,
        Phi_0_A2,
        Phi_0_323,
        Phi_0_313,
        named_form,
    ):
        builder.cache_clear()
