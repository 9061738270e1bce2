"""Tests for option handling."""

from __future__ import annotations

import pytest
import voluptuous as vol

from weakjacobi.config import build_options, index_triple, prec24
from weakjacobi.const import (
    CONF_EVEN,
    CONF_FORMAT,
    CONF_MAX_CONSTRUCTIBLE,
    CONF_PRECISION,
    DEFAULT_PRECISION,
    ENV_PRECISION,
)
from weakjacobi.index import IndexMatrix

from .const import MOCK_OPTIONS


def test_defaults():
    options = build_options(environ={})
    assert options[CONF_PRECISION] == DEFAULT_PRECISION
    assert options[CONF_FORMAT] == "text"
    assert options[CONF_EVEN] is False


def test_mock_options_pass_validation(options):
    assert options == MOCK_OPTIONS


def test_environment_sets_default_precision():
    assert build_options(environ={ENV_PRECISION: "2"})[CONF_PRECISION] == 2


def test_environment_read_from_os(monkeypatch):
    monkeypatch.setenv(ENV_PRECISION, "4")
    assert build_options()[CONF_PRECISION] == 4


def test_override_beats_environment():
    options = build_options({CONF_PRECISION: 5, CONF_FORMAT: None}, environ={ENV_PRECISION: "2"})
    assert options[CONF_PRECISION] == 5
    assert options[CONF_FORMAT] == "text"


@pytest.mark.parametrize(
    "overrides",
    [
        {CONF_PRECISION: 0},
        {CONF_PRECISION: "many"},
        {CONF_FORMAT: "yaml"},
        {CONF_MAX_CONSTRUCTIBLE: -1},
    ],
)
def test_invalid_options(overrides):
    with pytest.raises(vol.Invalid):
        build_options(overrides, environ={})


def test_invalid_environment():
    with pytest.raises(vol.Invalid):
        build_options(environ={ENV_PRECISION: "0"})


def test_prec24(options):
    assert prec24(options) == 72
    assert prec24(options, CONF_MAX_CONSTRUCTIBLE) == 96


def test_index_triple():
    assert index_triple("1,2,1") == IndexMatrix(1, 2, 1)
    assert index_triple("gram:4,1,4") == IndexMatrix(3, 1, 3)
    assert index_triple(IndexMatrix(0, 0, 2)) == IndexMatrix(0, 0, 2)


@pytest.mark.parametrize("value", ["1,-1,0", "1,2", "x", IndexMatrix(1, -1, 1)])
def test_index_triple_invalid(value):
    with pytest.raises(vol.Invalid):
        index_triple(value)
