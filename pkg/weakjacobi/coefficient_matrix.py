"""
Exact linear algebra on truncated expansions.

Rows of a CoefficientMatrix are series, columns are the exponent keys that
occur below a shared precision. Elimination is fraction-free: rational rows
are scaled to integer rows and reduced with integer combinations
p * v - v[c] * row, dividing out the content after each step so entries
stay small. Entries live in numpy object arrays of Python ints.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import reduce

import numpy as np

from .const import _LOGGER
from .exceptions import PrecisionError
from .series import ExponentKey, JacobiSeries


def _lcm_of_denominators(values) -> int:
    return reduce(math.lcm, (Fraction(v).denominator for v in values), 1)


def _to_integers(values) -> np.ndarray:
    """Scale a rational vector by the lcm of its denominators."""
    scale = _lcm_of_denominators(values)
    return np.array([int(Fraction(v) * scale) for v in values], dtype=object)


def _primitive(vector: np.ndarray) -> np.ndarray:
    content = reduce(math.gcd, (int(v) for v in vector), 0)
    if content > 1:
        return vector // content
    return vector


class EchelonBasis:
    """
    Integer row space kept in reduced echelon form.

    Each pivot row has zeros in every other pivot column. Only the first
    `width` columns are pivot candidates; later columns (a right-hand side)
    are carried along.
    """

    def __init__(self, width: int) -> None:
        self.width = width
        self.pivots: dict[int, np.ndarray] = {}

    @property
    def rank(self) -> int:
        return len(self.pivots)

    def reduce(self, vector: np.ndarray) -> np.ndarray:
        for col, pivot in self.pivots.items():
            if vector[col]:
                vector = _primitive(pivot[col] * vector - vector[col] * pivot)
        return vector

    def insert(self, vector: np.ndarray) -> tuple[bool, np.ndarray]:
        """
        Add a row. Returns (new pivot created, the reduced row).

        When no pivot is created the reduced row is zero in the first
        `width` columns; a nonzero tail then means an inconsistent equation.
        """
        vector = self.reduce(vector)
        candidates = np.flatnonzero(vector[: self.width])
        if not len(candidates):
            return False, vector
        col = int(candidates[0])
        for other, pivot in list(self.pivots.items()):
            if pivot[col]:
                self.pivots[other] = _primitive(vector[col] * pivot - pivot[col] * vector)
        self.pivots[col] = vector
        return True, vector


@dataclass
class SolveResult:
    """Outcome of CoefficientMatrix.solve."""

    solution: list[Fraction] | None
    first_unmatched_key: ExponentKey | None = None


class CoefficientMatrix:
    """Exact matrix of series coefficients below prec24."""

    def __init__(self, rows: list[JacobiSeries], prec24: int, extra: list[JacobiSeries] | None = None) -> None:
        """
        Build the matrix of rows.

        Columns are every key below prec24 where any row (or any of the
        optional extra series, such as a decomposition target) is nonzero.
        """
        self.prec24 = prec24
        for f in [*rows, *(extra or [])]:
            if f.prec24 < prec24:
                msg = f"series known to prec24={f.prec24}, matrix needs {prec24}"
                raise PrecisionError(msg)
        keys: set[ExponentKey] = set()
        for f in [*rows, *(extra or [])]:
            keys.update(key for key in f.terms if key.n24 < prec24)
        self.columns: list[ExponentKey] = sorted(keys)
        self._position = {key: i for i, key in enumerate(self.columns)}
        self.entries = np.zeros((len(rows), len(self.columns)), dtype=object)
        for i, f in enumerate(rows):
            self.entries[i, :] = self.vector(f)

    @property
    def shape(self) -> tuple[int, int]:
        return self.entries.shape

    def vector(self, f: JacobiSeries) -> np.ndarray:
        """Coefficients of f on this matrix's columns (keys outside the columns must vanish)."""
        out = np.zeros(len(self.columns), dtype=object)
        for key, value in f.terms.items():
            if key.n24 >= self.prec24:
                break
            out[self._position[key]] = value
        return out

    def rank(self) -> int:
        """Row rank over the rationals."""
        rows = [_to_integers(row) for row in self.entries]
        # Densest rows first: they make the sparser later rows collapse sooner.
        rows.sort(key=lambda row: -len(np.flatnonzero(row)))
        basis = EchelonBasis(len(self.columns))
        for row in rows:
            basis.insert(row)
        _LOGGER.debug("Rank %s for a %sx%s coefficient matrix", basis.rank, *self.shape)
        return basis.rank

    def solve(self, target: JacobiSeries) -> SolveResult:
        """
        Find x with sum_i x_i row_i = target on every column.

        Equations are processed in key order, so on failure the reported key
        is the first coefficient that cannot be matched given all earlier ones.
        """
        count = self.entries.shape[0]
        rhs = self.vector(target)
        basis = EchelonBasis(count)
        for j, key in enumerate(self.columns):
            equation = _to_integers([*self.entries[:, j], rhs[j]])
            created, reduced = basis.insert(equation)
            if not created and reduced[count]:
                _LOGGER.debug("Inconsistent equation at %s", key)
                return SolveResult(None, key)
        solution = [Fraction(0)] * count
        for col, pivot in basis.pivots.items():
            solution[col] = Fraction(int(pivot[count]), int(pivot[col]))
        return SolveResult(solution)
