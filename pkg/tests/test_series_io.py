"""Tests for the JSON and text forms of a series."""

from __future__ import annotations

import json
from fractions import Fraction

import pytest
import voluptuous as vol

from weakjacobi import series_io
from weakjacobi.forms import Phi_0_323, Phi_m2_A2, phi_0_1, theta
from weakjacobi.index import IndexMatrix, RankOneIndex

from .const import PHI_M2_A2_FIRST_LINE, SHORT_PREC24


def test_json_round_trip_keeps_fractions():
    f = Phi_0_323(SHORT_PREC24)
    back = series_io.loads(series_io.dumps(f))
    assert back == f
    assert back.index == IndexMatrix(1, 2, 1)


def test_to_dict_layout():
    data = series_io.to_dict(phi_0_1(SHORT_PREC24))
    assert data["weight"] == 0
    assert data["index"] == {"m2": 2}
    assert data["rank"] == 1
    assert data["prec24"] == SHORT_PREC24
    assert data["terms"][:3] == [
        {"n24": 0, "r2": -2, "s2": 0, "coeff": "1/1"},
        {"n24": 0, "r2": 0, "s2": 0, "coeff": "10/1"},
        {"n24": 0, "r2": 2, "s2": 0, "coeff": "1/1"},
    ]


def test_half_integral_weight_is_a_string():
    assert series_io.to_dict(theta(SHORT_PREC24))["weight"] == "1/2"
    assert series_io.loads(series_io.dumps(theta(SHORT_PREC24))).weight == Fraction(1, 2)


def test_dumps_is_deterministic():
    first = series_io.dumps(Phi_m2_A2(SHORT_PREC24))
    assert first == series_io.dumps(Phi_m2_A2(SHORT_PREC24))
    assert list(json.loads(first)) == sorted(json.loads(first))


def test_from_dict_rejects_missing_fields():
    with pytest.raises(vol.Invalid):
        series_io.from_dict({"weight": 0})


def test_from_dict_rejects_bad_rank():
    data = series_io.to_dict(phi_0_1(SHORT_PREC24))
    data["rank"] = 3
    with pytest.raises(vol.Invalid):
        series_io.from_dict(data)


def test_load_path(tmp_path):
    path = tmp_path / "phi.json"
    path.write_text(series_io.dumps(phi_0_1(SHORT_PREC24)), encoding="utf-8")
    f = series_io.load_path(path)
    assert f.index == RankOneIndex(2)
    assert f == phi_0_1(SHORT_PREC24)


def test_render_row():
    assert series_io.render_row({(-2, 0): 1, (0, 0): 10, (2, 0): 1}) == "z^-1 + 10 + z"
    assert series_io.render_row({(1, 0): 1, (-1, 0): -1}) == "-z^-1/2 + z^1/2"
    assert series_io.render_row({}) == "0"


def test_render_text():
    lines = series_io.render_text(Phi_m2_A2(SHORT_PREC24)).splitlines()
    assert lines[0] == PHI_M2_A2_FIRST_LINE
    assert lines[1].startswith("+ (")
    assert lines[1].endswith(") q")
    assert lines[-1] == "+ O(q^2)"
