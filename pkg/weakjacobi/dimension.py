"""
Dimensions and generator weights.

The weak forms of a fixed index M form a free module over C[E4, E6], so

    sum_k dim J_{k,M} t^k = P_M(t) / ((1 - t^4)(1 - t^6))

for a Laurent polynomial P_M whose exponents are the generator weights.
P_M has a closed form in terms of the P_a, Q_a polynomials below, and it
is also the coefficient of q^a r^b s^c in a four-variable rational
function F(q, r, s, t). Both are implemented; they are expected to agree.
"""

from __future__ import annotations

from collections.abc import Iterable
from functools import lru_cache
from itertools import product

from .const import _LOGGER
from .index import IndexMatrix


class LaurentPolyT:
    """Laurent polynomial in t with integer coefficients."""

    __slots__ = ("_coeffs",)

    def __init__(self, coeffs: dict[int, int] | Iterable[tuple[int, int]] | None = None) -> None:
        clean: dict[int, int] = {}
        items = coeffs.items() if isinstance(coeffs, dict) else (coeffs or ())
        for exponent, value in items:
            if not isinstance(value, int):
                msg = f"non-integer coefficient {value!r} at t^{exponent}"
                raise TypeError(msg)
            clean[exponent] = clean.get(exponent, 0) + value
        self._coeffs = {e: v for e, v in sorted(clean.items()) if v}

    @classmethod
    def monomial(cls, exponent: int, coeff: int = 1) -> LaurentPolyT:
        return cls({exponent: coeff})

    @classmethod
    def span(cls, low: int, high: int) -> LaurentPolyT:
        """t^low + t^(low+1) + ... + t^high (empty when low > high)."""
        return cls({e: 1 for e in range(low, high + 1)})

    @property
    def coeffs(self) -> dict[int, int]:
        return dict(self._coeffs)

    def coefficient(self, exponent: int) -> int:
        return self._coeffs.get(exponent, 0)

    def min_exponent(self) -> int | None:
        return next(iter(self._coeffs), None)

    def max_exponent(self) -> int | None:
        return next(reversed(self._coeffs), None) if self._coeffs else None

    def at_one(self) -> int:
        """Value at t = 1."""
        return sum(self._coeffs.values())

    @property
    def is_zero(self) -> bool:
        return not self._coeffs

    def __bool__(self) -> bool:
        return bool(self._coeffs)

    def __add__(self, other: LaurentPolyT) -> LaurentPolyT:
        out = dict(self._coeffs)
        for e, v in other._coeffs.items():
            out[e] = out.get(e, 0) + v
        return LaurentPolyT(out)

    def __sub__(self, other: LaurentPolyT) -> LaurentPolyT:
        return self + (-other)

    def __neg__(self) -> LaurentPolyT:
        return LaurentPolyT({e: -v for e, v in self._coeffs.items()})

    def __mul__(self, other: LaurentPolyT | int) -> LaurentPolyT:
        if isinstance(other, int):
            return LaurentPolyT({e: v * other for e, v in self._coeffs.items()})
        out: dict[int, int] = {}
        for e1, v1 in self._coeffs.items():
            for e2, v2 in other._coeffs.items():
                out[e1 + e2] = out.get(e1 + e2, 0) + v1 * v2
        return LaurentPolyT(out)

    __rmul__ = __mul__

    def __eq__(self, other: object) -> bool:
        if isinstance(other, int):
            other = LaurentPolyT({0: other})
        if not isinstance(other, LaurentPolyT):
            return NotImplemented
        return self._coeffs == other._coeffs

    def __hash__(self) -> int:
        return hash(tuple(self._coeffs.items()))

    def __repr__(self) -> str:
        return f"LaurentPolyT({self._coeffs})"

    def __str__(self) -> str:
        if not self._coeffs:
            return "0"
        pieces = []
        for e, v in self._coeffs.items():
            mono = "1" if e == 0 else ("t" if e == 1 else f"t^{e}")
            body = mono if abs(v) == 1 else (f"{abs(v)}" if e == 0 else f"{abs(v)} {mono}")
            if not pieces:
                pieces.append(f"-{body}" if v < 0 else body)
            else:
                pieces.append(f"{'-' if v < 0 else '+'} {body}")
        return " ".join(pieces)

    def lines(self) -> list[str]:
        """Sorted "t^e: c" lines, as printed by the CLI."""
        return [f"t^{e}: {v}" for e, v in self._coeffs.items()]

    def to_dict(self) -> dict[str, int]:
        return {str(e): v for e, v in self._coeffs.items()}


ZERO = LaurentPolyT()
ONE = LaurentPolyT({0: 1})
T_INV = LaurentPolyT({-1: 1})


def P_poly(a: int) -> LaurentPolyT:  # noqa: N802
    """P_0 = 1, P_1 = t^-1, P_a = t^-a + t^(2-a) + ... + 1 for a >= 2."""
    if a < 0:
        msg = f"P_a is defined for a >= 0, got {a}"
        raise ValueError(msg)
    if a == 0:
        return ONE
    if a == 1:
        return T_INV
    return LaurentPolyT.monomial(-a) + LaurentPolyT.span(2 - a, 0)


def Q_poly(a: int) -> LaurentPolyT:  # noqa: N802
    """Q_-1 = Q_0 = 0, Q_a = t^(1-a) + ... + 1 for a >= 1."""
    if a < -1:
        msg = f"Q_a is defined for a >= -1, got {a}"
        raise ValueError(msg)
    if a <= 0:
        return ZERO
    return LaurentPolyT.span(1 - a, 0)


def _triple(index: IndexMatrix | tuple[int, int, int]) -> tuple[int, int, int]:
    triple = index.triple if isinstance(index, IndexMatrix) else tuple(index)
    if min(triple) < 0:
        msg = f"index entries must be nonnegative, got {triple}"
        raise ValueError(msg)
    return triple


@lru_cache(maxsize=4096)
def _generator_weights(a: int, b: int, c: int) -> LaurentPolyT:
    pa, pb, pc = P_poly(a), P_poly(b), P_poly(c)
    qa, qb, qc = Q_poly(a), Q_poly(b), Q_poly(c)
    qa1, qb1, qc1 = Q_poly(a - 1), Q_poly(b - 1), Q_poly(c - 1)
    out = pa * pb * pc + qa * qb * qc
    out = out + (LaurentPolyT({-1: 2, 0: -1}) * qa1 * qb1 * qc1)
    out = out - T_INV * (qa * qb1 * qc1 + qa1 * qb * qc1 + qa1 * qb1 * qc)
    if a * b * c:
        out = out + LaurentPolyT.monomial(1 - a - b - c)
    return out


def generator_weights(a: int | IndexMatrix, b: int | None = None, c: int | None = None) -> LaurentPolyT:
    """
    t^k1 + ... + t^kn for the weights k_i of free generators at index (a, b, c).

    Accepts either an IndexMatrix or three integers.
    """
    triple = _triple(a if b is None else (a, b, c))
    return _generator_weights(*triple)


def rank_one_numerator(a: int) -> LaurentPolyT:
    """Generator weights of rank-one weak forms of index a/2: 1 for a = 0, else t^-a + t^(2-a) + ... + 1."""
    if a < 0:
        msg = f"rank-one index must be nonnegative, got {a}"
        raise ValueError(msg)
    if a == 0:
        return ONE
    return LaurentPolyT.monomial(-a) + LaurentPolyT.span(2 - a, 0)


def _modular_count(n: int) -> int:
    """Number of (i, j) >= 0 with 4i + 6j = n, i.e. dim M_n for level one."""
    if n < 0 or n % 2:
        return 0
    return sum(1 for j in range(n // 6 + 1) if (n - 6 * j) % 4 == 0)


def coefficient_over_eisenstein(numerator: LaurentPolyT, k: int) -> int:
    """Coefficient of t^k in numerator / ((1 - t^4)(1 - t^6))."""
    return sum(value * _modular_count(k - e) for e, value in numerator.coeffs.items() if e <= k)


def dim_weak(k: int, index: IndexMatrix | tuple[int, int, int]) -> int:
    """Dimension of weak Jacobi forms of weight k and the given index."""
    return coefficient_over_eisenstein(generator_weights(index), k)


def dim_weak_rank_one(k: int, m2: int) -> int:
    """Dimension of rank-one weak forms of weight k and index m2/2."""
    return coefficient_over_eisenstein(rank_one_numerator(m2), k)


def free_module_rank(a: int, b: int, c: int) -> int:
    """Number of free generators; equals the determinant ab + ac + bc when it is positive."""
    return generator_weights(a, b, c).at_one()


def min_weight_dims(a: int, b: int, c: int) -> tuple[int, int, int]:
    """Dimensions at weights k_min, k_min + 1, k_min + 2 with k_min = -(a+b+c)."""
    d1 = 1 if a * b * c else 0
    d2 = sum(1 for value in (a, b, c) if value >= 2)
    return (1, d1, d2)


# -- the four-variable Hilbert series

TriKey = tuple[int, int, int]


class TriSeriesF:
    """
    Truncated power series in q, r, s with LaurentPolyT coefficients.

    Orders above (A, B, C) in the respective variables are dropped.
    """

    def __init__(self, bounds: TriKey, coeffs: dict[TriKey, LaurentPolyT] | None = None) -> None:
        self.bounds = bounds
        self.coeffs: dict[TriKey, LaurentPolyT] = {}
        for key, value in (coeffs or {}).items():
            if self._inside(key) and value:
                self.coeffs[key] = value

    def _inside(self, key: TriKey) -> bool:
        return all(0 <= k <= bound for k, bound in zip(key, self.bounds, strict=True))

    def coefficient(self, a: int, b: int, c: int) -> LaurentPolyT:
        return self.coeffs.get((a, b, c), ZERO)

    def __add__(self, other: TriSeriesF) -> TriSeriesF:
        out = dict(self.coeffs)
        for key, value in other.coeffs.items():
            out[key] = out.get(key, ZERO) + value
        return TriSeriesF(self.bounds, out)

    def __sub__(self, other: TriSeriesF) -> TriSeriesF:
        return self + other.scaled(-1)

    def scaled(self, factor: int | LaurentPolyT) -> TriSeriesF:
        return TriSeriesF(self.bounds, {key: value * factor for key, value in self.coeffs.items()})

    def __mul__(self, other: TriSeriesF) -> TriSeriesF:
        out: dict[TriKey, LaurentPolyT] = {}
        for (i1, j1, k1), v1 in self.coeffs.items():
            for (i2, j2, k2), v2 in other.coeffs.items():
                key = (i1 + i2, j1 + j2, k1 + k2)
                if self._inside(key):
                    out[key] = out.get(key, ZERO) + v1 * v2
        return TriSeriesF(self.bounds, out)

    @classmethod
    def from_terms(cls, bounds: TriKey, terms: dict[TriKey, LaurentPolyT | int]) -> TriSeriesF:
        return cls(bounds, {k: v if isinstance(v, LaurentPolyT) else LaurentPolyT({0: v}) for k, v in terms.items()})

    @classmethod
    def geometric(cls, bounds: TriKey, axis: int, step: LaurentPolyT) -> TriSeriesF:
        """1 / (1 - x * step) where x is the variable on the given axis (0=q, 1=r, 2=s)."""
        out = {}
        term = ONE
        for n in range(bounds[axis] + 1):
            key = [0, 0, 0]
            key[axis] = n
            out[tuple(key)] = term
            term = term * step
        return cls(bounds, out)


def _numerator_terms(bounds: TriKey) -> TriSeriesF:
    """
    (1-q+q^2)(1-r+r^2)(1-s+s^2) - qrs t^-1 (qr + qs + rs - 2qrs) + qrs (1 - qrs).
    """
    out: dict[TriKey, LaurentPolyT] = {}
    cyclic = {0: 1, 1: -1, 2: 1}
    for (i, ci), (j, cj), (k, ck) in product(cyclic.items(), repeat=3):
        out[(i, j, k)] = out.get((i, j, k), ZERO) + LaurentPolyT({0: ci * cj * ck})
    for key, value in (
        ((2, 2, 1), LaurentPolyT({-1: -1})),
        ((2, 1, 2), LaurentPolyT({-1: -1})),
        ((1, 2, 2), LaurentPolyT({-1: -1})),
        ((2, 2, 2), LaurentPolyT({-1: 2})),
        ((1, 1, 1), ONE),
        ((2, 2, 2), -ONE),
    ):
        out[key] = out.get(key, ZERO) + value
    return TriSeriesF(bounds, out)


@lru_cache(maxsize=64)
def expand_F(bounds: TriKey) -> TriSeriesF:  # noqa: N802
    """
    F(q, r, s, t) expanded up to q^A r^B s^C.

    F = qrs t^-2 / prod_x (1 - x t^-1)
        + N(q, r, s, t) / prod_x ((1 - x)(1 - x t^-1))
    with x running over q, r, s and N as in _numerator_terms.
    """
    _LOGGER.debug("Expanding F to orders %s", bounds)
    shifted = [TriSeriesF.geometric(bounds, axis, T_INV) for axis in range(3)]
    plain = [TriSeriesF.geometric(bounds, axis, ONE) for axis in range(3)]
    first = TriSeriesF.from_terms(bounds, {(1, 1, 1): LaurentPolyT({-2: 1})})
    for factor in shifted:
        first = first * factor
    second = _numerator_terms(bounds)
    for factor in plain + shifted:
        second = second * factor
    return first + second


def F_coefficient(a: int, b: int, c: int) -> LaurentPolyT:  # noqa: N802
    """Coefficient of q^a r^b s^c in F."""
    return expand_F((a, b, c)).coefficient(a, b, c)


def hilbert_table(big_a: int, big_b: int, big_c: int) -> dict[TriKey, LaurentPolyT]:
    """All F-coefficients with orders up to (A, B, C), from one expansion."""
    expansion = expand_F((big_a, big_b, big_c))
    return {key: expansion.coefficient(*key) for key in product(range(big_a + 1), range(big_b + 1), range(big_c + 1))}


def rank_one_hilbert_coefficient(a: int) -> LaurentPolyT:
    """q^a coefficient of F(q, 0, 0, t) = (1 + q^3) / ((1 - q t^-1)(1 - q^2))."""
    bounds = (a, 0, 0)
    numerator = TriSeriesF.from_terms(bounds, {(0, 0, 0): 1, (3, 0, 0): 1})
    series = (
        numerator
        * TriSeriesF.geometric(bounds, 0, T_INV)
        * TriSeriesF.from_terms(bounds, {(2 * n, 0, 0): 1 for n in range(a // 2 + 1)})
    )
    return series.coefficient(a, 0, 0)
