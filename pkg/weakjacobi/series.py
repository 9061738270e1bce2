"""
Exact truncated Fourier-Jacobi series.

A JacobiSeries is a finite sum of terms c * q^(n24/24) zeta^(r2/2) omega^(s2/2)
with exact rational coefficients, together with a precision bound prec24:
every coefficient with n24 < prec24 is known exactly, and nothing at or
above the bound is stored. Weight, index and rank ride along as bookkeeping
so that mistakes in a construction show up as metadata mismatches.

Internally the terms are grouped by q-exponent into slices (see laurent.py),
which is the shape every algorithm here wants. Series are never mutated
after construction.
"""

from __future__ import annotations

from collections.abc import Iterator, Mapping
from fractions import Fraction
from typing import TYPE_CHECKING, NamedTuple

from . import laurent
from .const import _LOGGER, NAMED_SUBSTITUTIONS, Q_DENOMINATOR
from .exceptions import (
    MetadataMismatchError,
    NotDivisibleError,
    NotUnimodularError,
    NotUnitLedError,
    PrecisionError,
    RankMismatchError,
)
from .index import Index, IndexMatrix, RankOneIndex, zero_index
from .util import Rational, normalize

if TYPE_CHECKING:
    from .laurent import Slice


class ExponentKey(NamedTuple):
    """(q-exponent * 24, zeta-exponent * 2, omega-exponent * 2)."""

    n24: int
    r2: int
    s2: int


class JacobiSeries:
    """A truncated Fourier-Jacobi expansion with weight/index bookkeeping."""

    __slots__ = ("_slices", "index", "prec24", "rank", "weight")

    def __init__(
        self,
        slices: Mapping[int, Slice],
        prec24: int,
        weight: Rational,
        index: Index,
        rank: int,
    ) -> None:
        if rank not in (1, 2):
            raise MetadataMismatchError("rank", "1 or 2", rank)
        expected = RankOneIndex if rank == 1 else IndexMatrix
        if not isinstance(index, expected):
            raise MetadataMismatchError("index type", expected.__name__, type(index).__name__)
        self.prec24: int = prec24
        self.weight: Rational = normalize(Fraction(weight))
        self.index: Index = index
        self.rank: int = rank
        clean: dict[int, Slice] = {}
        for n24 in sorted(slices):
            if n24 >= prec24:
                break
            row = {key: normalize(value) for key, value in slices[n24].items() if value}
            if not row:
                continue
            if rank == 1 and any(s2 for _, s2 in row):
                raise MetadataMismatchError("rank", 1, "terms with omega exponents")
            clean[n24] = row
        self._slices: dict[int, Slice] = clean

    @classmethod
    def from_terms(
        cls,
        terms: Mapping[tuple[int, int, int], Rational],
        prec24: int,
        weight: Rational,
        index: Index,
        rank: int,
    ) -> JacobiSeries:
        slices: dict[int, Slice] = {}
        for (n24, r2, s2), value in terms.items():
            row = slices.setdefault(n24, {})
            row[(r2, s2)] = row.get((r2, s2), 0) + value
        return cls(slices, prec24, weight, index, rank)

    # -- inspection

    @property
    def is_zero(self) -> bool:
        return not self._slices

    @property
    def valuation24(self) -> int | None:
        """Smallest n24 carrying a nonzero coefficient, None for zero."""
        if not self._slices:
            return None
        return next(iter(self._slices))

    @property
    def q_exponents(self) -> list[int]:
        """The n24 values with a nonzero slice, ascending."""
        return list(self._slices)

    def slice(self, n24: int) -> Slice:
        """Copy of the slice at q^(n24/24). Raises PrecisionError beyond prec24."""
        if n24 >= self.prec24:
            msg = f"q^{n24}/24 is beyond the precision bound {self.prec24}"
            raise PrecisionError(msg)
        return dict(self._slices.get(n24, {}))

    def iter_slices(self) -> Iterator[tuple[int, Slice]]:
        yield from self._slices.items()

    @property
    def terms(self) -> dict[ExponentKey, Fraction]:
        """All stored terms, sorted by (n24, r2, s2)."""
        out = {}
        for n24, row in self._slices.items():
            for (r2, s2), value in sorted(row.items()):
                out[ExponentKey(n24, r2, s2)] = Fraction(value)
        return out

    def __len__(self) -> int:
        return sum(len(row) for row in self._slices.values())

    def same_metadata(self, other: JacobiSeries) -> bool:
        return (self.rank, self.weight, self.index) == (other.rank, other.weight, other.index)

    # -- operators

    def __add__(self, other: JacobiSeries) -> JacobiSeries:
        return add(self, other)

    def __sub__(self, other: JacobiSeries) -> JacobiSeries:
        return add(self, scale(other, -1))

    def __neg__(self) -> JacobiSeries:
        return scale(self, -1)

    def __mul__(self, other: JacobiSeries | Rational) -> JacobiSeries:
        if isinstance(other, JacobiSeries):
            return mul(self, other)
        return scale(self, other)

    def __rmul__(self, other: Rational) -> JacobiSeries:
        return scale(self, other)

    def __pow__(self, exponent: int) -> JacobiSeries:
        return power(self, exponent)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, JacobiSeries):
            return NotImplemented
        return self.prec24 == other.prec24 and self.same_metadata(other) and self._slices == other._slices

    __hash__ = None  # mutable-looking value semantics, never used as a key

    def __repr__(self) -> str:
        return (
            f"JacobiSeries(rank={self.rank}, weight={self.weight}, index={self.index}, "
            f"prec24={self.prec24}, terms={len(self)})"
        )

    def __str__(self) -> str:
        from .series_io import render_text  # series_io imports this module

        return render_text(self)

    def to_dict(self) -> dict:
        from .series_io import to_dict

        return to_dict(self)


# -- constructors


def zero(rank: int, prec24: int, weight: Rational = 0, index: Index | None = None) -> JacobiSeries:
    return JacobiSeries({}, prec24, weight, index if index is not None else zero_index(rank), rank)


def one(rank: int, prec24: int) -> JacobiSeries:
    return monomial(1, 0, 0, 0, rank, prec24)


def monomial(
    coeff: Rational,
    n24: int,
    r2: int,
    s2: int,
    rank: int,
    prec24: int,
    weight: Rational = 0,
    index: Index | None = None,
) -> JacobiSeries:
    """The single term coeff * q^(n24/24) zeta^(r2/2) omega^(s2/2)."""
    index = index if index is not None else zero_index(rank)
    return JacobiSeries({n24: {(r2, s2): coeff}}, prec24, weight, index, rank)


def with_metadata(f: JacobiSeries, weight: Rational | None = None, index: Index | None = None) -> JacobiSeries:
    """Same terms, replaced weight and/or index."""
    return JacobiSeries(
        f._slices,  # noqa: SLF001
        f.prec24,
        f.weight if weight is None else weight,
        f.index if index is None else index,
        f.rank,
    )


def _check_rank(f: JacobiSeries, g: JacobiSeries) -> None:
    if f.rank != g.rank:
        raise RankMismatchError(f.rank, g.rank)


def _check_metadata(f: JacobiSeries, g: JacobiSeries) -> None:
    _check_rank(f, g)
    if f.weight != g.weight:
        raise MetadataMismatchError("weight", f.weight, g.weight)
    if f.index != g.index:
        raise MetadataMismatchError("index", f.index, g.index)


def _effective_valuation(f: JacobiSeries) -> int:
    # Everything below prec24 of a zero series is known to vanish.
    val = f.valuation24
    return f.prec24 if val is None else val


# -- ring operations


def add(f: JacobiSeries, g: JacobiSeries) -> JacobiSeries:
    """Coefficient-wise sum; prec24 is the smaller of the two bounds."""
    _check_metadata(f, g)
    prec = min(f.prec24, g.prec24)
    out: dict[int, Slice] = {}
    for source in (f, g):
        for n24, row in source.iter_slices():
            if n24 >= prec:
                break
            laurent.add_into(out.setdefault(n24, {}), row)
    return JacobiSeries(out, prec, f.weight, f.index, f.rank)


def linear_combination(pairs: list[tuple[Rational, JacobiSeries]]) -> JacobiSeries:
    """sum(c * f) over a nonempty list of (c, f) pairs of equal metadata."""
    first = pairs[0][1]
    prec = min(f.prec24 for _, f in pairs)
    out: dict[int, Slice] = {}
    for factor, f in pairs:
        _check_metadata(first, f)
        if not factor:
            continue
        for n24, row in f.iter_slices():
            if n24 >= prec:
                break
            laurent.add_into(out.setdefault(n24, {}), row, factor)
    return JacobiSeries(out, prec, first.weight, first.index, first.rank)


def mul(f: JacobiSeries, g: JacobiSeries) -> JacobiSeries:
    """
    Convolution product.

    The result is exact below min(f.prec24 + val(g), g.prec24 + val(f)):
    any product involving an unknown coefficient of one factor lands at or
    above that bound.
    """
    _check_rank(f, g)
    prec = min(f.prec24 + _effective_valuation(g), g.prec24 + _effective_valuation(f))
    out: dict[int, Slice] = {}
    g_rows = list(g.iter_slices())
    for n1, row1 in f.iter_slices():
        for n2, row2 in g_rows:
            n24 = n1 + n2
            if n24 >= prec:
                break
            target = out.setdefault(n24, {})
            for (r1, s1), c1 in row1.items():
                for (r2, s2), c2 in row2.items():
                    key = (r1 + r2, s1 + s2)
                    target[key] = target.get(key, 0) + c1 * c2
    return JacobiSeries(out, prec, f.weight + g.weight, f.index + g.index, f.rank)


def scale(f: JacobiSeries, c: Rational) -> JacobiSeries:
    c = normalize(Fraction(c))
    slices = {n24: laurent.scale(row, c) for n24, row in f.iter_slices()}
    return JacobiSeries(slices, f.prec24, f.weight, f.index, f.rank)


def power(f: JacobiSeries, exponent: int) -> JacobiSeries:
    """f**exponent by repeated squaring; f**0 is 1 with zero weight and index."""
    if exponent < 0:
        msg = f"negative exponent {exponent}; use invert_unit"
        raise ValueError(msg)
    result: JacobiSeries | None = None
    base = f
    while exponent:
        if exponent & 1:
            result = base if result is None else mul(result, base)
        exponent >>= 1
        if exponent:
            base = mul(base, base)
    if result is None:
        return one(f.rank, f.prec24)
    return result


def shift(f: JacobiSeries, n24: int, r2: int = 0, s2: int = 0) -> JacobiSeries:
    """Multiply by q^(n24/24) zeta^(r2/2) omega^(s2/2); the bound moves with it."""
    slices = {n + n24: laurent.shift(row, r2, s2) for n, row in f.iter_slices()}
    return JacobiSeries(slices, f.prec24 + n24, f.weight, f.index, f.rank)


def valuation(f: JacobiSeries) -> Fraction | None:
    """Smallest q-exponent with a nonzero coefficient."""
    val = f.valuation24
    return None if val is None else Fraction(val, Q_DENOMINATOR)


def invert_unit(f: JacobiSeries) -> JacobiSeries:
    """
    Inverse of a series whose lowest q-slice is a single monomial.

    The leading monomial c q^n zeta^r omega^s is factored out, leaving a
    series u = 1 + (higher q-powers) which is inverted by the usual
    recursion v_m = -sum_{j>0} u_j v_{m-j}.
    """
    if f.is_zero:
        msg = "cannot invert the zero series"
        raise NotUnitLedError(msg)
    n0 = f.valuation24
    lowest = f._slices[n0]  # noqa: SLF001
    if len(lowest) != 1:
        msg = f"not unit-led: lowest slice at q^{n0}/24 has {len(lowest)} terms"
        raise NotUnitLedError(msg)
    ((r0, s0), c0), = lowest.items()
    c0 = Fraction(c0)
    rel_prec = f.prec24 - n0
    unit = {n - n0: laurent.scale(laurent.shift(row, -r0, -s0), 1 / c0) for n, row in f.iter_slices()}
    offsets = sorted(key for key in unit if key)
    inverse: dict[int, Slice] = {0: {(0, 0): 1}}
    for m in range(1, rel_prec):
        acc: Slice = {}
        for j in offsets:
            if j > m:
                break
            prev = inverse.get(m - j)
            if prev:
                laurent.add_into(acc, laurent.multiply(unit[j], prev), -1)
        if acc:
            inverse[m] = acc
    slices = {m - n0: laurent.scale(laurent.shift(row, -r0, -s0), 1 / c0) for m, row in inverse.items()}
    return JacobiSeries(slices, f.prec24 - 2 * n0, -f.weight, -f.index, f.rank)


def divide_exact(f: JacobiSeries, g: JacobiSeries) -> JacobiSeries:
    """
    Exact quotient h = f / g, computed q-slice by q-slice.

    With v the valuation of g, the slice h_m solves
        g_v * h_m = f_{m+v} - sum_{j>0} g_{v+j} h_{m-j}
    by exact Laurent division. A remainder anywhere raises NotDivisibleError
    naming the q-exponent of f where it appeared.
    """
    _check_rank(f, g)
    if g.is_zero:
        msg = "division by the zero series"
        raise NotDivisibleError(g.prec24, msg)
    v = g.valuation24
    g_lead = g._slices[v]  # noqa: SLF001
    g_rest = [(n - v, row) for n, row in g.iter_slices() if n != v]
    if f.is_zero:
        prec = f.prec24 - v
        quotient: dict[int, Slice] = {}
    else:
        vf = f.valuation24
        h_val = vf - v
        prec = min(f.prec24 - v, g.prec24 + vf - 2 * v)
        quotient = {}
        for m in range(h_val, prec):
            acc = dict(f._slices.get(m + v, {}))  # noqa: SLF001
            for j, row in g_rest:
                if m - j < h_val:
                    break
                prev = quotient.get(m - j)
                if prev:
                    laurent.add_into(acc, laurent.multiply(row, prev), -1)
            if not acc:
                continue
            part = laurent.divide(acc, g_lead)
            if part is None:
                _LOGGER.debug("Exact division failed at q^%s/24", m + v)
                raise NotDivisibleError(m + v)
            quotient[m] = part
    if f.rank == 1 and f.index.m2 < g.index.m2:
        raise MetadataMismatchError("index", f"quotient of {f.index} by {g.index}", "negative rank-one index")
    return JacobiSeries(quotient, prec, f.weight - g.weight, f.index - g.index, f.rank)


# -- differential operators and variable changes


def _map_coefficients(f: JacobiSeries, factor, weight_step: int) -> JacobiSeries:
    slices = {}
    for n24, row in f.iter_slices():
        slices[n24] = {key: value * factor(n24, *key) for key, value in row.items()}
    return JacobiSeries(slices, f.prec24, f.weight + weight_step, f.index, f.rank)


def dz(f: JacobiSeries) -> JacobiSeries:
    """D = (2 pi i)^-1 d/dz: multiply each term by its zeta exponent."""
    return _map_coefficients(f, lambda _n, r2, _s: Fraction(r2, 2), 1)


def dw(f: JacobiSeries) -> JacobiSeries:
    """The omega-analogue of dz."""
    if f.rank != 2:
        raise RankMismatchError(f.rank, 2)
    return _map_coefficients(f, lambda _n, _r, s2: Fraction(s2, 2), 1)


def relabel(f: JacobiSeries, mapper, index: Index, rank: int) -> JacobiSeries:
    """Move every term to mapper(r2, s2), merging collisions, with new index and rank."""
    slices: dict[int, Slice] = {}
    for n24, row in f.iter_slices():
        target: Slice = {}
        for key, value in row.items():
            new_key = mapper(*key)
            target[new_key] = target.get(new_key, 0) + value
        slices[n24] = target
    return JacobiSeries(slices, f.prec24, f.weight, index, rank)


def substitute(f: JacobiSeries, mapping: str | tuple[tuple[int, int], tuple[int, int]]) -> JacobiSeries:
    """
    Change of elliptic variables by a unimodular integer matrix.

    mapping is either a named substitution from const.NAMED_SUBSTITUTIONS
    ("z+w,-w", "w,-z-w", "w,z", ...) or a matrix T acting on exponent
    vectors: (r, s) -> T (r, s). The index becomes T M T^t.
    """
    if f.rank != 2:
        raise RankMismatchError(f.rank, 2)
    matrix = NAMED_SUBSTITUTIONS[mapping] if isinstance(mapping, str) else mapping
    (t00, t01), (t10, t11) = matrix
    if abs(t00 * t11 - t01 * t10) != 1:
        msg = f"substitution matrix {matrix} is not unimodular"
        raise NotUnimodularError(msg)
    return relabel(
        f,
        lambda r2, s2: (t00 * r2 + t01 * s2, t10 * r2 + t11 * s2),
        f.index.transformed(matrix),
        2,
    )


def reflect(f: JacobiSeries) -> JacobiSeries:
    """zeta -> 1/zeta, omega -> 1/omega."""
    return relabel(f, lambda r2, s2: (-r2, -s2), f.index, f.rank)


def scale_z(f: JacobiSeries, n: int) -> JacobiSeries:
    """f(tau, n z) for a rank-one series."""
    if f.rank != 1:
        raise RankMismatchError(f.rank, 1)
    if n < 1:
        msg = f"scale factor must be positive, got {n}"
        raise ValueError(msg)
    return relabel(f, lambda r2, s2: (n * r2, s2), RankOneIndex(n * n * f.index.m2), 1)


def pullback_P(f: JacobiSeries) -> JacobiSeries:  # noqa: N802
    """Restrict to w = -z. The index becomes (A + C - 2B) / 2, i.e. m2 = a + c."""
    if f.rank != 2:
        raise RankMismatchError(f.rank, 2)
    return relabel(f, lambda r2, s2: (r2 - s2, 0), RankOneIndex(f.index.a + f.index.c), 1)


def pullback_Q(f: JacobiSeries) -> JacobiSeries:  # noqa: N802
    """Restrict to w = 0. The index becomes A / 2, i.e. m2 = a + b."""
    if f.rank != 2:
        raise RankMismatchError(f.rank, 2)
    return relabel(f, lambda r2, _s2: (r2, 0), RankOneIndex(f.index.a + f.index.b), 1)


# -- precision helpers


def truncate(f: JacobiSeries, new_prec24: int) -> JacobiSeries:
    """Drop everything at or above new_prec24, which may not exceed f.prec24."""
    if new_prec24 > f.prec24:
        msg = f"cannot raise precision from {f.prec24} to {new_prec24}"
        raise PrecisionError(msg)
    if new_prec24 == f.prec24:
        return f
    return JacobiSeries(f._slices, new_prec24, f.weight, f.index, f.rank)  # noqa: SLF001


def coeff(f: JacobiSeries, key: tuple[int, int, int]) -> Fraction:
    n24, r2, s2 = key
    return Fraction(f.slice(n24).get((r2, s2), 0))


def equals_to_precision(f: JacobiSeries, g: JacobiSeries, prec24: int) -> bool:
    """True when f and g agree on every coefficient below prec24."""
    if prec24 > f.prec24 or prec24 > g.prec24:
        msg = f"comparison bound {prec24} exceeds precisions {f.prec24}, {g.prec24}"
        raise PrecisionError(msg)
    rows_f = {n: row for n, row in f.iter_slices() if n < prec24}
    rows_g = {n: row for n, row in g.iter_slices() if n < prec24}
    return rows_f == rows_g
