"""
Index matrices of rank-two lattices.

An index is stored as the triple (a, b, c) and stands for the Gram matrix

    [[a + b, b],
     [b, c + b]]

The anharmonic group acts on indices by permuting (a, b, c), which is why
the triple rather than the Gram matrix is the canonical encoding. Products
and substitutions of forms can produce intermediate triples with negative
entries (e.g. f(z - w) has b < 0); those are representable but are not
"standard" and are rejected where a genuine lattice index is required.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import permutations

from .const import _LOGGER, NAMED_SUBSTITUTIONS
from .exceptions import DegenerateIndexError, IndexReductionError, MetadataMismatchError

Permutation = tuple[int, int, int]


@dataclass(frozen=True, order=True)
class IndexMatrix:
    """Rank-two index in (a, b, c) coordinates."""

    a: int
    b: int
    c: int

    @classmethod
    def of_gram(cls, big_a: int, big_b: int, big_c: int) -> IndexMatrix:
        """Encode any symmetric Gram matrix, without the nonnegativity check."""
        return cls(big_a - big_b, big_b, big_c - big_b)

    @property
    def gram(self) -> tuple[tuple[int, int], tuple[int, int]]:
        return ((self.a + self.b, self.b), (self.b, self.c + self.b))

    @property
    def triple(self) -> tuple[int, int, int]:
        return (self.a, self.b, self.c)

    @property
    def is_standard(self) -> bool:
        """True when a, b, c are all nonnegative."""
        return min(self.triple) >= 0

    @property
    def is_zero(self) -> bool:
        return self.triple == (0, 0, 0)

    @property
    def total(self) -> int:
        return self.a + self.b + self.c

    def det(self) -> int:
        return self.a * self.b + self.a * self.c + self.b * self.c

    def is_positive_definite(self) -> bool:
        return self.a + self.b > 0 and self.det() > 0

    def min_weight(self) -> int:
        return -self.total

    def permuted(self, perm: Permutation) -> IndexMatrix:
        """Entry i of the result is entry perm[i] of self."""
        values = self.triple
        return IndexMatrix(values[perm[0]], values[perm[1]], values[perm[2]])

    def transformed(self, matrix) -> IndexMatrix:
        """The index T M T^t for an integer 2x2 matrix T."""
        (t00, t01), (t10, t11) = matrix
        (m00, m01), (_, m11) = self.gram
        big_a = t00 * t00 * m00 + 2 * t00 * t01 * m01 + t01 * t01 * m11
        big_b = t00 * t10 * m00 + (t00 * t11 + t01 * t10) * m01 + t01 * t11 * m11
        big_c = t10 * t10 * m00 + 2 * t10 * t11 * m01 + t11 * t11 * m11
        return IndexMatrix.of_gram(big_a, big_b, big_c)

    def quadratic(self, r2: int, s2: int) -> Fraction:
        """
        The value rho^t M^-1 rho / 2 for the exponent vector rho = (r2/2, s2/2).

        Raises DegenerateIndexError when M is singular.
        """
        det = self.det()
        if det == 0:
            raise DegenerateIndexError(f"index {self} is degenerate (det 0)")
        (m00, m01), (_, m11) = self.gram
        return Fraction(m11 * r2 * r2 - 2 * m01 * r2 * s2 + m00 * s2 * s2, 8 * det)

    def __add__(self, other: IndexMatrix) -> IndexMatrix:
        if not isinstance(other, IndexMatrix):
            raise MetadataMismatchError("index type", type(self).__name__, type(other).__name__)
        return IndexMatrix(self.a + other.a, self.b + other.b, self.c + other.c)

    def __sub__(self, other: IndexMatrix) -> IndexMatrix:
        if not isinstance(other, IndexMatrix):
            raise MetadataMismatchError("index type", type(self).__name__, type(other).__name__)
        return IndexMatrix(self.a - other.a, self.b - other.b, self.c - other.c)

    def __mul__(self, factor: int) -> IndexMatrix:
        return IndexMatrix(self.a * factor, self.b * factor, self.c * factor)

    def __neg__(self) -> IndexMatrix:
        return IndexMatrix(-self.a, -self.b, -self.c)

    def __str__(self) -> str:
        return f"({self.a},{self.b},{self.c})"

    def to_dict(self) -> dict[str, int]:
        return {"a": self.a, "b": self.b, "c": self.c}


@dataclass(frozen=True, order=True)
class RankOneIndex:
    """Rank-one index m stored as m2 = 2m."""

    m2: int

    def __post_init__(self) -> None:
        if self.m2 < 0:
            raise MetadataMismatchError("index", "m2 >= 0", self.m2)

    @property
    def m(self) -> Fraction:
        return Fraction(self.m2, 2)

    @property
    def is_zero(self) -> bool:
        return self.m2 == 0

    def is_positive_definite(self) -> bool:
        return self.m2 > 0

    def quadratic(self, r2: int, s2: int = 0) -> Fraction:
        """r^2 / (2 * m2) for r = r2/2, i.e. the 1x1 Gram matrix (m2)."""
        if self.m2 == 0:
            raise DegenerateIndexError("rank-one index 0 is degenerate")
        return Fraction(r2 * r2, 8 * self.m2)

    def __add__(self, other: RankOneIndex) -> RankOneIndex:
        if not isinstance(other, RankOneIndex):
            raise MetadataMismatchError("index type", type(self).__name__, type(other).__name__)
        return RankOneIndex(self.m2 + other.m2)

    def __sub__(self, other: RankOneIndex) -> RankOneIndex:
        if not isinstance(other, RankOneIndex):
            raise MetadataMismatchError("index type", type(self).__name__, type(other).__name__)
        return RankOneIndex(self.m2 - other.m2)

    def __mul__(self, factor: int) -> RankOneIndex:
        return RankOneIndex(self.m2 * factor)

    def __neg__(self) -> RankOneIndex:
        return RankOneIndex(-self.m2)

    def __str__(self) -> str:
        return f"({self.m2})"

    def to_dict(self) -> dict[str, int]:
        return {"m2": self.m2}


Index = IndexMatrix | RankOneIndex

ZERO_INDEX = IndexMatrix(0, 0, 0)
ZERO_RANK_ONE_INDEX = RankOneIndex(0)


def zero_index(rank: int) -> Index:
    return ZERO_RANK_ONE_INDEX if rank == 1 else ZERO_INDEX


def from_gram(big_a: int, big_b: int, big_c: int) -> IndexMatrix:
    """
    Convert the Gram matrix [[A, B], [B, C]] to (a, b, c) = (A - B, B, C - B).

    The Gram matrix has to be in a shape where all three entries come out
    nonnegative; otherwise reduce it first through the anharmonic action
    (or by a change of basis of the lattice).
    """
    index = IndexMatrix.of_gram(big_a, big_b, big_c)
    if not index.is_standard:
        msg = (
            f"Gram matrix [[{big_a},{big_b}],[{big_b},{big_c}]] gives (a,b,c)={index.triple} with a negative "
            "entry; reduce it so that A >= B >= 0 and C >= B first"
        )
        raise IndexReductionError(msg)
    return index


def anharmonic_orbit(index: IndexMatrix) -> set[IndexMatrix]:
    """All permutations of (a, b, c)."""
    return {index.permuted(perm) for perm in permutations(range(3))}


def reduce(index: IndexMatrix) -> tuple[IndexMatrix, Permutation]:
    """
    Return the orbit member with b <= a <= c and the permutation giving it.

    Among equal values the permutation is chosen lexicographically smallest,
    so the result is deterministic.
    """
    best: tuple[tuple[int, int, int], Permutation] | None = None
    for perm in permutations(range(3)):
        candidate = index.permuted(perm)
        if not candidate.b <= candidate.a <= candidate.c:
            continue
        key = (candidate.b, candidate.a, candidate.c)
        if best is None or (key, perm) < best:
            best = (key, perm)
    # The sorted arrangement always satisfies the ordering.
    assert best is not None
    (b, a, c), perm = best
    reduced = IndexMatrix(a, b, c)
    _LOGGER.debug("Reduced index %s to %s via %s", index, reduced, perm)
    return reduced, perm


def substitution_permutation(name: str) -> Permutation:
    """
    The permutation of (a, b, c) induced by a named substitution.

    (z+w, -w) swaps a and b, (w, z) swaps a and c, (w, -z-w) sends (a, b, c)
    to (b, c, a) and (z+w, -z) sends it to (c, a, b).
    """
    probe = IndexMatrix(1, 10, 100).transformed(NAMED_SUBSTITUTIONS[name])
    lookup = {1: 0, 10: 1, 100: 2}
    return tuple(lookup[value] for value in probe.triple)


def parse_index(text: str) -> IndexMatrix:
    """Parse "a,b,c" or "gram:A,B,C"."""
    text = text.strip()
    if text.startswith("gram:"):
        big_a, big_b, big_c = (int(part) for part in text[5:].split(","))
        return from_gram(big_a, big_b, big_c)
    a, b, c = (int(part) for part in text.split(","))
    index = IndexMatrix(a, b, c)
    if not index.is_standard:
        raise IndexReductionError(f"index entries must be nonnegative, got {index.triple}")
    return index
