"""
Exact weak Jacobi forms of rank-two lattice index.

The package builds truncated Fourier-Jacobi expansions with exact rational
coefficients, computes dimensions from the Hilbert series, and checks the
structure of the ring by span ranks and linear solves.
"""

from __future__ import annotations

from .const import VERSION
from .dimension import dim_weak, generator_weights
from .forms import generator_series, named_form
from .index import IndexMatrix, RankOneIndex
from .series import ExponentKey, JacobiSeries
from .structure import decompose, enumerate_monomials, span_rank, verify_dimension

__version__ = VERSION

__all__ = [
    "ExponentKey",
    "IndexMatrix",
    "JacobiSeries",
    "RankOneIndex",
    "decompose",
    "dim_weak",
    "enumerate_monomials",
    "generator_series",
    "generator_weights",
    "named_form",
    "span_rank",
    "verify_dimension",
]
