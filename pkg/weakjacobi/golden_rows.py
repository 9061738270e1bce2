"""
Reference Fourier rows of the named generators.

Each entry maps (generator id, n24) to the expected slice at that q-power,
keyed by doubled exponents (r2, s2). These are the published expansions
the constructions in forms.py must reproduce exactly.
"""

from __future__ import annotations

from fractions import Fraction

from .const import (
    GEN_PHI_0_1,
    GEN_PHI_0_3HALF,
    GEN_PHI_0_313,
    GEN_PHI_0_323,
    GEN_PHI_0_A2,
    GEN_PHI_M1_HALF,
    GEN_PHI_M2_A2,
    GEN_PHI_M3_A2,
)

HALF = Fraction(1, 2)

GOLDEN_ROWS: dict[tuple[str, int], dict[tuple[int, int], Fraction | int]] = {
    (GEN_PHI_M1_HALF, 0): {(-1, 0): -1, (1, 0): 1},
    (GEN_PHI_M1_HALF, 24): {(-3, 0): 1, (-1, 0): -3, (1, 0): 3, (3, 0): -1},
    (GEN_PHI_0_1, 0): {(-2, 0): 1, (0, 0): 10, (2, 0): 1},
    (GEN_PHI_0_1, 24): {(-4, 0): 10, (-2, 0): -64, (0, 0): 108, (2, 0): -64, (4, 0): 10},
    (GEN_PHI_0_3HALF, 0): {(-1, 0): 1, (1, 0): 1},
    (GEN_PHI_0_3HALF, 24): {(-5, 0): -1, (-1, 0): 1, (1, 0): 1, (5, 0): -1},
    (GEN_PHI_M3_A2, 0): {(-2, -2): -1, (-2, 0): 1, (0, -2): 1, (2, 0): -1, (0, 2): -1, (2, 2): 1},
    (GEN_PHI_M2_A2, 0): {(-2, -2): 1, (-2, 0): 1, (0, -2): 1, (0, 0): -6, (2, 0): 1, (0, 2): 1, (2, 2): 1},
    (GEN_PHI_0_A2, 0): {(-2, -2): 1, (-2, 0): 1, (0, -2): 1, (0, 0): 18, (2, 0): 1, (0, 2): 1, (2, 2): 1},
    (GEN_PHI_0_323, 0): {
        (-3, -3): -HALF,
        (-3, -1): HALF,
        (-1, -3): HALF,
        (-1, -1): Fraction(11, 2),
        (1, 1): Fraction(11, 2),
        (1, 3): HALF,
        (3, 1): HALF,
        (3, 3): -HALF,
    },
    (GEN_PHI_0_313, 0): {
        (-3, -3): -HALF,
        (-3, 1): HALF,
        (-1, -1): Fraction(103, 2),
        (-1, 1): 20,
        (-1, 3): HALF,
        (1, -3): HALF,
        (1, -1): 20,
        (1, 1): Fraction(103, 2),
        (3, -1): HALF,
        (3, 3): -HALF,
    },
}
