"""JSON and text forms of a JacobiSeries."""

from __future__ import annotations

import json
from fractions import Fraction
from pathlib import Path

import voluptuous as vol

from .const import _LOGGER, ELLIPTIC_DENOMINATOR, Q_DENOMINATOR
from .index import IndexMatrix, RankOneIndex
from .series import JacobiSeries
from .util import format_rational, format_scaled, parse_rational

TERM_SCHEMA = vol.Schema(
    {
        vol.Required("n24"): int,
        vol.Required("r2"): int,
        vol.Required("s2"): int,
        vol.Required("coeff"): vol.All(str, parse_rational),
    }
)

SERIES_SCHEMA = vol.Schema(
    {
        vol.Required("weight"): vol.All(vol.Any(int, str), parse_rational),
        vol.Required("index"): vol.Any(
            {vol.Required("a"): int, vol.Required("b"): int, vol.Required("c"): int},
            {vol.Required("m2"): vol.All(int, vol.Range(min=0))},
        ),
        vol.Required("rank"): vol.In([1, 2]),
        vol.Required("prec24"): int,
        vol.Required("terms"): [TERM_SCHEMA],
    }
)


def _coeff_string(value) -> str:
    value = Fraction(value)
    return f"{value.numerator}/{value.denominator}"


def to_dict(f: JacobiSeries) -> dict:
    """Serialisable dict, terms sorted by (n24, r2, s2)."""
    weight = Fraction(f.weight)
    return {
        "weight": weight.numerator if weight.denominator == 1 else format_rational(weight),
        "index": f.index.to_dict(),
        "rank": f.rank,
        "prec24": f.prec24,
        "terms": [
            {"n24": key.n24, "r2": key.r2, "s2": key.s2, "coeff": _coeff_string(value)}
            for key, value in f.terms.items()
        ],
    }


def from_dict(data: dict) -> JacobiSeries:
    """Inverse of to_dict. Raises vol.Invalid on malformed input."""
    data = SERIES_SCHEMA(data)
    raw_index = data["index"]
    if "m2" in raw_index:
        index = RankOneIndex(raw_index["m2"])
    else:
        index = IndexMatrix(raw_index["a"], raw_index["b"], raw_index["c"])
    terms = {(term["n24"], term["r2"], term["s2"]): term["coeff"] for term in data["terms"]}
    return JacobiSeries.from_terms(terms, data["prec24"], data["weight"], index, data["rank"])


def dumps(f: JacobiSeries) -> str:
    return json.dumps(to_dict(f), sort_keys=True)


def loads(text: str) -> JacobiSeries:
    return from_dict(json.loads(text))


def load_path(path: str | Path) -> JacobiSeries:
    _LOGGER.debug("Reading series from %s", path)
    return loads(Path(path).read_text(encoding="utf-8"))


def _power(name: str, scaled: int, denominator: int) -> str:
    if scaled == denominator:
        return name
    return f"{name}^{format_scaled(scaled, denominator)}"


def _monomial(r2: int, s2: int) -> str:
    parts = []
    if r2:
        parts.append(_power("z", r2, ELLIPTIC_DENOMINATOR))
    if s2:
        parts.append(_power("w", s2, ELLIPTIC_DENOMINATOR))
    return " ".join(parts)


def _row_order(key: tuple[int, int]) -> tuple[int, int, int]:
    r2, s2 = key
    return (r2 + s2, abs(s2), -r2 if r2 + s2 > 0 else r2)


def render_row(row: dict[tuple[int, int], object]) -> str:
    """
    One q-slice in Laurent form, e.g. "z^-1 w^-1 + z^-1 + w^-1 - 6 + z + w + z w".

    Terms are ordered by total degree, then by the size of the omega power.
    """
    pieces: list[str] = []
    for key in sorted(row, key=_row_order):
        value = Fraction(row[key])
        mono = _monomial(*key)
        magnitude = abs(value)
        if not mono:
            body = format_rational(magnitude)
        elif magnitude == 1:
            body = mono
        else:
            body = f"{format_rational(magnitude)} {mono}"
        if not pieces:
            pieces.append(f"-{body}" if value < 0 else body)
        else:
            pieces.append(f"{'-' if value < 0 else '+'} {body}")
    return " ".join(pieces) if pieces else "0"


def render_text(f: JacobiSeries) -> str:
    """
    Multi-line rendering, one q-power per line:

        (z^-1 + 10 + z) q^0
        + (10 z^-2 - 64 z^-1 + 108 - 64 z + 10 z^2) q^1
        + O(q^2)
    """
    lines = []
    for n24, row in f.iter_slices():
        prefix = "+ " if lines else ""
        lines.append(f"{prefix}({render_row(row)}) {_power('q', n24, Q_DENOMINATOR) if n24 else 'q^0'}")
    tail = f"O({_power('q', f.prec24, Q_DENOMINATOR) if f.prec24 else 'q^0'})"
    lines.append(f"+ {tail}" if lines else f"0 + {tail}")
    return "\n".join(lines)
