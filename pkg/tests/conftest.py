"""Global fixtures for weakjacobi tests."""

from __future__ import annotations

import logging

import pytest

from weakjacobi.config import build_options
from weakjacobi.const import _LOGGER, _LOGGER_SPAM_LESS

from .const import MOCK_OPTIONS, PREC24


@pytest.fixture(autouse=True)
def reset_logging():
    """The CLI installs its own handler; put the package logger back for caplog."""
    _LOGGER_SPAM_LESS.reset()
    yield
    _LOGGER.handlers.clear()
    _LOGGER.propagate = True
    _LOGGER.setLevel(logging.NOTSET)


@pytest.fixture
def options():
    """Options as the CLI would build them, without reading the environment."""
    return build_options(MOCK_OPTIONS, environ={})


@pytest.fixture
def prec24():
    return PREC24
