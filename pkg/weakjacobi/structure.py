"""
Generators, monomials and span checks.

The catalogs list the generators of the full ring and of its even subring
together with their weight and index, so monomials of a given bidegree can
be enumerated without expanding anything. Expansions are only built when a
rank or a decomposition is asked for, and then memoized per precision.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from fractions import Fraction

from . import series as ser
from .coefficient_matrix import CoefficientMatrix
from .const import (
    _LOGGER,
    _LOGGER_SPAM_LESS,
    DIRECTION_W,
    DIRECTION_Z,
    DIRECTION_ZW,
    EMBED_SEPARATOR,
    GEN_E4,
    GEN_E6,
    GEN_PHI_0_1,
    GEN_PHI_0_3HALF,
    GEN_PHI_0_313,
    GEN_PHI_0_323,
    GEN_PHI_0_A2,
    GEN_PHI_M1_2,
    GEN_PHI_M1_HALF,
    GEN_PHI_M2_1,
    GEN_PHI_M2_A2,
    Q_DENOMINATOR,
    SUB_SEPARATOR,
    SUB_Z_NEG_W,
)
from .dimension import dim_weak
from .exceptions import DimensionMismatchError, MetadataMismatchError
from .forms import Phi_0_A2, Phi_0_313, Phi_m2_A2, Phi_m3_A2, eisenstein, embed, generator_series, named_form
from .index import ZERO_INDEX, IndexMatrix
from .series import ExponentKey, JacobiSeries
from .util import format_rational


@dataclass(frozen=True)
class GeneratorEntry:
    """One generator: its id with the weight and index it carries."""

    gid: str
    weight: int
    index: IndexMatrix

    @property
    def carries_index(self) -> bool:
        return not self.index.is_zero


def _embedded(base: str, weight: int, m2: int) -> list[GeneratorEntry]:
    # z -> (m2, 0, 0), z+w -> (0, m2, 0), w -> (0, 0, m2)
    return [
        GeneratorEntry(f"{base}{EMBED_SEPARATOR}{DIRECTION_Z}", weight, IndexMatrix(m2, 0, 0)),
        GeneratorEntry(f"{base}{EMBED_SEPARATOR}{DIRECTION_W}", weight, IndexMatrix(0, 0, m2)),
        GeneratorEntry(f"{base}{EMBED_SEPARATOR}{DIRECTION_ZW}", weight, IndexMatrix(0, m2, 0)),
    ]


def _odd_lattice(base: str, a: int, b: int, c: int) -> list[GeneratorEntry]:
    # sub1 swaps a and b, sub2 sends (a, b, c) to (c, a, b)
    return [
        GeneratorEntry(base, 0, IndexMatrix(a, b, c)),
        GeneratorEntry(f"{base}{SUB_SEPARATOR}sub1", 0, IndexMatrix(b, a, c)),
        GeneratorEntry(f"{base}{SUB_SEPARATOR}sub2", 0, IndexMatrix(c, a, b)),
    ]


MODULAR_GENERATORS = (
    GeneratorEntry(GEN_E4, 4, ZERO_INDEX),
    GeneratorEntry(GEN_E6, 6, ZERO_INDEX),
)

FULL_CATALOG: tuple[GeneratorEntry, ...] = (
    *MODULAR_GENERATORS,
    *_embedded(GEN_PHI_M1_HALF, -1, 1),
    *_embedded(GEN_PHI_0_1, 0, 2),
    *_embedded(GEN_PHI_0_3HALF, 0, 3),
    GeneratorEntry(GEN_PHI_M2_A2, -2, IndexMatrix(1, 1, 1)),
    GeneratorEntry(GEN_PHI_0_A2, 0, IndexMatrix(1, 1, 1)),
    *_odd_lattice(GEN_PHI_0_323, 1, 2, 1),
    *_odd_lattice(GEN_PHI_0_313, 2, 1, 2),
)

EVEN_CATALOG: tuple[GeneratorEntry, ...] = (
    *MODULAR_GENERATORS,
    *_embedded(GEN_PHI_M2_1, -2, 2),
    *_embedded(GEN_PHI_0_1, 0, 2),
    *_embedded(GEN_PHI_M1_2, -1, 4),
)


def catalog_summary(catalog: tuple[GeneratorEntry, ...] = FULL_CATALOG) -> dict[str, int]:
    """Counts of modular, embedded rank-one and genuinely rank-two generators."""
    embedded = sum(1 for entry in catalog if EMBED_SEPARATOR in entry.gid)
    modular = sum(1 for entry in catalog if not entry.carries_index)
    return {
        "total": len(catalog),
        "modular": modular,
        "rank_one": embedded,
        "rank_two": len(catalog) - modular - embedded,
    }


@dataclass(frozen=True, order=True)
class Monomial:
    """A product of catalog generators, as (gid, exponent) pairs in catalog order."""

    factors: tuple[tuple[str, int], ...]
    weight: int = field(compare=False)
    index: IndexMatrix = field(compare=False)

    @classmethod
    def from_exponents(cls, catalog: tuple[GeneratorEntry, ...], exponents: list[int]) -> Monomial:
        factors = tuple((entry.gid, e) for entry, e in zip(catalog, exponents, strict=True) if e)
        weight = sum(entry.weight * e for entry, e in zip(catalog, exponents, strict=True))
        index = ZERO_INDEX
        for entry, e in zip(catalog, exponents, strict=True):
            if e:
                index = index + entry.index * e
        return cls(factors, weight, index)

    def exponent_vector(self, catalog: tuple[GeneratorEntry, ...]) -> list[int]:
        powers = dict(self.factors)
        return [powers.get(entry.gid, 0) for entry in catalog]

    def __str__(self) -> str:
        if not self.factors:
            return "1"
        return "*".join(gid if e == 1 else f"{gid}^{e}" for gid, e in self.factors)

    def to_dict(self) -> dict:
        return {
            "factors": [{"gid": gid, "exponent": e} for gid, e in self.factors],
            "weight": self.weight,
            "index": self.index.to_dict(),
        }


def enumerate_monomials(
    k: int, index: IndexMatrix, catalog: tuple[GeneratorEntry, ...] = FULL_CATALOG
) -> list[Monomial]:
    """
    Every monomial in the catalog of weight k and index exactly `index`.

    The index constraint is solved first over the generators that carry an
    index (each has a+b+c >= 1, so this is finite); the remaining weight is
    then filled with the zero-index generators of positive weight.
    """
    carriers = [i for i, entry in enumerate(catalog) if entry.carries_index]
    fillers = [i for i, entry in enumerate(catalog) if not entry.carries_index and entry.weight > 0]
    out: list[Monomial] = []
    exponents = [0] * len(catalog)

    def fill_weight(pos: int, gap: int) -> None:
        if pos == len(fillers):
            if gap == 0:
                out.append(Monomial.from_exponents(catalog, exponents))
            return
        slot = fillers[pos]
        step = catalog[slot].weight
        for e in range(gap // step + 1):
            exponents[slot] = e
            fill_weight(pos + 1, gap - e * step)
        exponents[slot] = 0

    def fill_index(pos: int, remaining: tuple[int, int, int], weight: int) -> None:
        if pos == len(carriers):
            if remaining == (0, 0, 0) and k >= weight:
                fill_weight(0, k - weight)
            return
        slot = carriers[pos]
        entry = catalog[slot]
        e = 0
        rest = remaining
        while min(rest) >= 0:
            exponents[slot] = e
            fill_index(pos + 1, rest, weight + e * entry.weight)
            e += 1
            rest = tuple(r - g for r, g in zip(rest, entry.index.triple, strict=True))
        exponents[slot] = 0

    if index.is_standard:
        fill_index(0, index.triple, 0)
    _LOGGER.debug("%s monomials of weight %s and index %s", len(out), k, index)
    return out


class MonomialExpander:
    """Memoized expansions of monomials, keyed by precision and factors."""

    def __init__(self) -> None:
        self._cache: dict[tuple[int, tuple[tuple[str, int], ...]], JacobiSeries] = {}

    def __len__(self) -> int:
        return len(self._cache)

    def _expand(self, factors: tuple[tuple[str, int], ...], prec24: int) -> JacobiSeries:
        key = (prec24, factors)
        cached = self._cache.get(key)
        if cached is not None:
            return cached
        if not factors:
            result = ser.one(2, prec24)
        else:
            gid, e = factors[-1]
            last = ser.power(generator_series(gid, prec24), e)
            result = last if len(factors) == 1 else ser.mul(self._expand(factors[:-1], prec24), last)
            result = ser.truncate(result, prec24)
        self._cache[key] = result
        return result

    def expand(self, monomial: Monomial, prec24: int) -> JacobiSeries:
        result = self._expand(monomial.factors, prec24)
        if result.weight != monomial.weight:
            raise MetadataMismatchError("weight", monomial.weight, result.weight)
        if result.index != monomial.index:
            raise MetadataMismatchError("index", monomial.index, result.index)
        return result

    def clear(self) -> None:
        self._cache.clear()


def _expansions(
    monomials: list[Monomial | JacobiSeries], prec24: int, expander: MonomialExpander | None
) -> list[JacobiSeries]:
    expander = expander or MonomialExpander()
    return [m if isinstance(m, JacobiSeries) else expander.expand(m, prec24) for m in monomials]


def _label(item: Monomial | JacobiSeries, position: int) -> str:
    return str(item) if isinstance(item, Monomial) else f"#{position}"


def _check_shared(expansions: list[JacobiSeries]) -> None:
    first = expansions[0]
    for f in expansions[1:]:
        if f.rank != first.rank:
            raise MetadataMismatchError("rank", first.rank, f.rank)
        if f.weight != first.weight:
            raise MetadataMismatchError("weight", first.weight, f.weight)
        if f.index != first.index:
            raise MetadataMismatchError("index", first.index, f.index)


def span_rank(
    monomials: list[Monomial | JacobiSeries], prec24: int, expander: MonomialExpander | None = None
) -> int:
    """Rank over Q of the expansions truncated at prec24."""
    if not monomials:
        return 0
    expansions = _expansions(monomials, prec24, expander)
    _check_shared(expansions)
    return CoefficientMatrix(expansions, prec24).rank()


@dataclass
class DecompositionResult:
    """Coefficients of a target on a list of monomials, or the first key that cannot be matched."""

    success: bool
    prec24: int
    coefficients: list[Fraction] | None = None
    labels: list[str] = field(default_factory=list)
    first_unmatched_key: ExponentKey | None = None

    def to_dict(self) -> dict:
        out: dict = {"success": self.success, "prec24": self.prec24}
        if self.success:
            out["coefficients"] = [
                {"monomial": label, "coeff": f"{value.numerator}/{value.denominator}"}
                for label, value in zip(self.labels, self.coefficients, strict=True)
            ]
        else:
            key = self.first_unmatched_key
            out["first_unmatched_key"] = None if key is None else {"n24": key.n24, "r2": key.r2, "s2": key.s2}
        return out

    def __str__(self) -> str:
        if self.success:
            return "\n".join(
                f"{format_rational(value)} * {label}"
                for label, value in zip(self.labels, self.coefficients, strict=True)
            )
        key = self.first_unmatched_key
        return f"inconsistent at q^{key.n24}/{Q_DENOMINATOR} z^{key.r2}/2 w^{key.s2}/2"


def decompose(
    target: JacobiSeries,
    monomials: list[Monomial | JacobiSeries],
    prec24: int,
    expander: MonomialExpander | None = None,
) -> DecompositionResult:
    """
    Solve target = sum x_i m_i on every coefficient below prec24.

    Monomials may be catalog monomials or explicit series (e.g. rank-one
    forms when the target is a pullback). An inconsistent system is not an
    error: the result reports the first key, in (n24, r2, s2) order, whose
    equation cannot be satisfied.
    """
    labels = [_label(m, i) for i, m in enumerate(monomials)]
    if not monomials:
        truncated = ser.truncate(target, prec24)
        if truncated.is_zero:
            return DecompositionResult(True, prec24, [], labels)
        return DecompositionResult(False, prec24, first_unmatched_key=next(iter(truncated.terms)))
    expansions = _expansions(monomials, prec24, expander)
    _check_shared([target, *expansions])
    solved = CoefficientMatrix(expansions, prec24, extra=[target]).solve(target)
    if solved.solution is None:
        _LOGGER.debug("Decomposition failed at %s", solved.first_unmatched_key)
        return DecompositionResult(False, prec24, labels=labels, first_unmatched_key=solved.first_unmatched_key)
    return DecompositionResult(True, prec24, solved.solution, labels)


def recombine(
    coefficients: list[Fraction],
    monomials: list[Monomial | JacobiSeries],
    prec24: int,
    expander: MonomialExpander | None = None,
) -> JacobiSeries:
    """sum c_i m_i, truncated at prec24."""
    expansions = _expansions(monomials, prec24, expander)
    if not expansions:
        raise ValueError("recombine needs at least one monomial")
    combined = ser.linear_combination(list(zip(coefficients, expansions, strict=True)))
    return ser.truncate(combined, prec24)


# -- dimension checks


@dataclass
class DimensionReport:
    """Span rank of the catalog monomials against the Hilbert-series dimension."""

    k: int
    index: IndexMatrix
    rank: int
    dim: int
    prec24: int
    stable: bool = True
    monomial_count: int = 0

    @property
    def equal(self) -> bool:
        return self.rank == self.dim

    def to_dict(self) -> dict:
        return {
            "k": self.k,
            "index": self.index.to_dict(),
            "rank": self.rank,
            "dim": self.dim,
            "prec24": self.prec24,
            "stable": self.stable,
            "equal": self.equal,
            "monomial_count": self.monomial_count,
        }

    def __str__(self) -> str:
        flag = "" if self.stable else " (unstable)"
        return f"k={self.k} M={self.index}: rank {self.rank} dim {self.dim}{flag}"


def verify_dimension(
    k: int,
    index: IndexMatrix,
    prec24: int,
    catalog: tuple[GeneratorEntry, ...] = FULL_CATALOG,
    expander: MonomialExpander | None = None,
    reverify_orders: int = 1,
) -> DimensionReport:
    """
    Compare span rank and dimension at (k, index).

    The rank is recomputed with reverify_orders more q-orders; a change is
    logged and reported as unstable. A rank above the dimension raises
    DimensionMismatchError, since the monomials lie in the space.
    """
    expander = expander or MonomialExpander()
    monomials = enumerate_monomials(k, index, catalog)
    rank = span_rank(monomials, prec24, expander)
    dim = dim_weak(k, index)
    later = rank
    if reverify_orders > 0 and monomials:
        later = span_rank(monomials, prec24 + Q_DENOMINATOR * reverify_orders, expander)
        if later != rank:
            _LOGGER_SPAM_LESS.unstable_rank(k, index, rank, later, reverify_orders)
    if max(rank, later) > dim:
        msg = f"span rank {max(rank, later)} exceeds dimension {dim} at k={k}, M={index}"
        raise DimensionMismatchError(msg)
    stable = later == rank
    return DimensionReport(k, index, rank, dim, prec24, stable, len(monomials))


def grid_points(max_sum: int, window: int, even: bool = False) -> list[tuple[int, IndexMatrix]]:
    """(k, M) with a+b+c <= max_sum and k_min(M) <= k <= k_min(M) + window; even keeps a, b, c, k even."""
    points = []
    for total in range(max_sum + 1):
        for a in range(total + 1):
            for b in range(total - a + 1):
                index = IndexMatrix(a, b, total - a - b)
                if even and any(value % 2 for value in index.triple):
                    continue
                k_min = index.min_weight()
                for k in range(k_min, k_min + window + 1):
                    if even and k % 2:
                        continue
                    points.append((k, index))
    return points


def verify_grid(
    max_sum: int, window: int, prec24: int, even: bool = False, reverify_orders: int = 1
) -> list[DimensionReport]:
    """verify_dimension over grid_points, sharing one expander."""
    catalog = EVEN_CATALOG if even else FULL_CATALOG
    expander = MonomialExpander()
    reports = []
    for k, index in grid_points(max_sum, window, even):
        report = verify_dimension(k, index, prec24, catalog, expander, reverify_orders)
        if not report.equal:
            _LOGGER_SPAM_LESS.log(logging.INFO, "short", k, index, "Span short of dimension: %s", report)
        reports.append(report)
    _LOGGER.debug("Grid done: %s points, %s cached expansions", len(reports), len(expander))
    held = _LOGGER_SPAM_LESS.held_back()
    if held:
        _LOGGER.info("Grid messages held back: %s", held)
    return reports


# -- relations between generators


def _form(gid: str, prec24: int) -> JacobiSeries:
    return named_form(gid, prec24).series


def relation_split_diagonal(prec24: int) -> DecompositionResult:
    """phi_{-1,1/2}(z) phi_{0,3/2}(w) phi_{-1,1/2}(z+w) over Phi_{-2} phi_{0,1}(w) and Phi_0 phi_{-2,1}(w)."""
    target = ser.mul(
        ser.mul(_form(f"{GEN_PHI_M1_HALF}@z", prec24), _form(f"{GEN_PHI_0_3HALF}@w", prec24)),
        _form(f"{GEN_PHI_M1_HALF}@zw", prec24),
    )
    basis = [
        ser.mul(Phi_m2_A2(prec24), _form(f"{GEN_PHI_0_1}@w", prec24)),
        ser.mul(Phi_0_A2(prec24), _form(f"{GEN_PHI_M2_1}@w", prec24)),
    ]
    return decompose(target, basis, prec24)


def relation_twisted_theta(prec24: int) -> DecompositionResult:
    """
    phi_{-1,1/2}(2z+w) phi_{0,3/2}(w) over the three forms

        phi_{-1,1/2}(z) Phi_313(z+w, -w), phi_{-1,1/2}(z+w) Phi_313, E4 Phi_{-3} Phi_{-2}
    """
    target = ser.mul(
        embed(_form(GEN_PHI_M1_HALF, prec24), (2, 1)),
        _form(f"{GEN_PHI_0_3HALF}@w", prec24),
    )
    basis = [
        ser.mul(_form(f"{GEN_PHI_M1_HALF}@z", prec24), _form(f"{GEN_PHI_0_313}|sub1", prec24)),
        ser.mul(_form(f"{GEN_PHI_M1_HALF}@zw", prec24), Phi_0_313(prec24)),
        ser.mul(ser.mul(eisenstein(4, prec24, rank=2), Phi_m3_A2(prec24)), Phi_m2_A2(prec24)),
    ]
    return decompose(target, basis, prec24)


def relation_pullback_factor(prec24: int) -> bool:
    """P(phi_{0,1}(z+w) Phi_0) = 12 P(Phi_0), since phi_{0,1}(0) = 12."""
    product = ser.mul(_form(f"{GEN_PHI_0_1}@zw", prec24), Phi_0_A2(prec24))
    expected = ser.scale(ser.pullback_P(Phi_0_A2(prec24)), 12)
    return ser.equals_to_precision(ser.pullback_P(product), expected, prec24)


def relation_odd_image(prec24: int) -> Fraction | None:
    """
    The constant c with Q(Phi_323(z+w, -w) phi_{-1,1/2}(z)) = c phi_{-1,2}.

    None when the image is not a multiple of phi_{-1,2}.
    """
    product = ser.mul(_form(f"{GEN_PHI_0_323}|sub1", prec24), _form(f"{GEN_PHI_M1_HALF}@z", prec24))
    result = decompose(ser.pullback_Q(product), [_form(GEN_PHI_M1_2, prec24)], prec24)
    return result.coefficients[0] if result.success else None


def phi_identity(prec24: int) -> DecompositionResult:
    """phi_{-1,1/2}(z+w) phi_{-1,1/2}(z-w) over phi_{-2,1}(z) phi_{0,1}(w) and phi_{0,1}(z) phi_{-2,1}(w)."""
    along_sum = _form(f"{GEN_PHI_M1_HALF}@zw", prec24)
    target = ser.mul(along_sum, ser.substitute(along_sum, SUB_Z_NEG_W))
    monomials = [
        Monomial(((f"{GEN_PHI_M2_1}@z", 1), (f"{GEN_PHI_0_1}@w", 1)), -2, IndexMatrix(2, 0, 2)),
        Monomial(((f"{GEN_PHI_0_1}@z", 1), (f"{GEN_PHI_M2_1}@w", 1)), -2, IndexMatrix(2, 0, 2)),
    ]
    return decompose(target, monomials, prec24)
