"""Constants for the weakjacobi toolkit."""

# Base package constants
from __future__ import annotations

import logging
from typing import Final

from .log_spam_less import JacobiLogSpamLess

NAME = "weakjacobi"
DOMAIN = "weakjacobi"
# The version in the repository stays at 0.0.0; release tooling stamps
# the real number into built distributions.
VERSION = "0.0.0"

# Exponent grid. Every series in the package lives on q^(1/24) and
# zeta^(1/2), omega^(1/2); exponents are stored multiplied by these.
Q_DENOMINATOR: Final = 24  # eta contributes q^(1/24), theta q^(3/24)
ELLIPTIC_DENOMINATOR: Final = 2  # theta contributes zeta^(1/2)

LOGSPAM_INTERVAL = 30
# Grid verification can emit the same warning for hundreds of (k, M)
# points. Keyed warnings are held back for this many seconds.

# Environment variable consulted for the default precision (in q-orders).
ENV_PRECISION: Final = "WEAKJACOBI_PRECISION"

# Named substitutions of the elliptic variables. The matrix T acts on the
# doubled exponent vector (r2, s2) as a column; the index transforms as T M T^t.
SUB_ZW_NEG_W: Final = "z+w,-w"
SUB_W_NEG_ZW: Final = "w,-z-w"
SUB_SWAP: Final = "w,z"
SUB_ZW_NEG_Z: Final = "z+w,-z"
SUB_Z_NEG_W: Final = "z,-w"
NAMED_SUBSTITUTIONS: Final = {
    SUB_ZW_NEG_W: ((1, 0), (1, -1)),
    SUB_W_NEG_ZW: ((0, -1), (1, -1)),
    SUB_SWAP: ((0, 1), (1, 0)),
    SUB_ZW_NEG_Z: ((1, -1), (1, 0)),
    SUB_Z_NEG_W: ((1, 0), (0, -1)),
}

# Embedding directions for rank-one forms.
DIRECTION_Z: Final = "z"
DIRECTION_W: Final = "w"
DIRECTION_ZW: Final = "zw"
DIRECTIONS: Final = {
    DIRECTION_Z: (1, 0),
    DIRECTION_W: (0, 1),
    DIRECTION_ZW: (1, 1),
}

# Generator ids understood by forms.named_form
GEN_ETA: Final = "eta"
GEN_E2: Final = "E2"
GEN_E4: Final = "E4"
GEN_E6: Final = "E6"
GEN_THETA: Final = "theta"
GEN_PHI_M1_HALF: Final = "phi_-1_1/2"
GEN_PHI_M2_1: Final = "phi_-2_1"
GEN_PHI_0_1: Final = "phi_0_1"
GEN_PHI_0_3HALF: Final = "phi_0_3/2"
GEN_PHI_M1_2: Final = "phi_-1_2"
GEN_PHI_M3_A2: Final = "Phi_-3_A2"
GEN_PHI_M2_A2: Final = "Phi_-2_A2"
GEN_PHI_0_A2: Final = "Phi_0_A2"
GEN_PHI_0_323: Final = "Phi_0_323"
GEN_PHI_0_313: Final = "Phi_0_313"

EMBED_SEPARATOR: Final = "@"
SUB_SEPARATOR: Final = "|"
# "|sub1" is f(z+w, -w), "|sub2" is f(z+w, -z)
GENERATOR_SUBSTITUTIONS: Final = {
    "sub1": SUB_ZW_NEG_W,
    "sub2": SUB_ZW_NEG_Z,
}

FORMAT_TEXT: Final = "text"
FORMAT_JSON: Final = "json"
FORMATS: Final = [FORMAT_TEXT, FORMAT_JSON]

# Configuration keys, defaults and their docs.
DOCS = {}

CONF_PRECISION, DEFAULT_PRECISION = "precision", 6
DOCS[CONF_PRECISION] = f"Number of q-orders computed exactly (q^N). {ENV_PRECISION} overrides the default"

CONF_FORMAT, DEFAULT_FORMAT = "format", FORMAT_TEXT
DOCS[CONF_FORMAT] = "Output format, either text or json"

CONF_GRID_SUM, DEFAULT_GRID_SUM = "grid_sum", 4
DOCS[CONF_GRID_SUM] = "Largest a+b+c visited by the structure grid"

CONF_WEIGHT_WINDOW, DEFAULT_WEIGHT_WINDOW = "weight_window", 8
DOCS[CONF_WEIGHT_WINDOW] = "Weights from the minimal weight up to minimal weight plus this window are checked"

CONF_REVERIFY_ORDERS, DEFAULT_REVERIFY_ORDERS = "reverify_orders", 1
DOCS[CONF_REVERIFY_ORDERS] = "Extra q-orders used to re-check that span ranks are stable"

CONF_MAX_CONSTRUCTIBLE, DEFAULT_MAX_CONSTRUCTIBLE = "identity_precision", 10
DOCS[CONF_MAX_CONSTRUCTIBLE] = "q-order through which the identity suites (pullbacks, kernels) are checked"

CONF_EVEN, DEFAULT_EVEN = "even", False
DOCS[CONF_EVEN] = "Restrict to the even-subring generators"

_LOGGER: logging.Logger = logging.getLogger(__package__)
_LOGGER_SPAM_LESS = JacobiLogSpamLess(_LOGGER, LOGSPAM_INTERVAL)

STARTUP_MESSAGE = f"""
-------------------------------------------------------------------
{NAME}
Version: {VERSION}
Exact weak Jacobi forms of rank-two lattice index.
-------------------------------------------------------------------
"""
