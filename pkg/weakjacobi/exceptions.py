"""Exceptions raised by weakjacobi."""

from __future__ import annotations


class JacobiError(Exception):
    """Base class for every failure the toolkit reports."""


class MetadataMismatchError(JacobiError, ValueError):
    """Two series disagree on weight, index or rank where they must agree."""

    def __init__(self, field: str, left, right) -> None:
        super().__init__(f"{field} mismatch: {left} != {right}")
        self.field = field
        self.left = left
        self.right = right


class RankMismatchError(MetadataMismatchError):
    """Series with a different number of elliptic variables were combined."""

    def __init__(self, left: int, right: int) -> None:
        super().__init__("rank", left, right)


class PrecisionError(JacobiError, ValueError):
    """A coefficient or comparison was requested beyond the exactness bound."""


class NotUnitLedError(JacobiError, ArithmeticError):
    """The lowest q-slice of a series is not a single monomial."""


class NotDivisibleError(JacobiError, ArithmeticError):
    """Exact division left a remainder."""

    def __init__(self, n24: int, message: str | None = None) -> None:
        super().__init__(message or f"not divisible: remainder at q^{n24}/24")
        self.n24 = n24


class DegenerateIndexError(JacobiError, ValueError):
    """An operator needed a positive-definite index matrix."""


class IndexReductionError(JacobiError, ValueError):
    """A Gram matrix does not give nonnegative (a, b, c) without reduction."""


class NotUnimodularError(JacobiError, ValueError):
    """A substitution matrix does not have determinant +-1."""


class UnknownGeneratorError(JacobiError, KeyError):
    """A generator id could not be parsed."""


class DimensionMismatchError(JacobiError, AssertionError):
    """A span rank exceeded the dimension predicted by the Hilbert series."""


class ThetaBlockError(JacobiError, ValueError):
    """A theta-block construction was asked for exponents it does not support."""
