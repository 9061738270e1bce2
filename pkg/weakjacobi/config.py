"""Options for the command line and the verification runner."""

from __future__ import annotations

import os
from collections.abc import Mapping

import voluptuous as vol

from .const import (
    _LOGGER,
    CONF_EVEN,
    CONF_FORMAT,
    CONF_GRID_SUM,
    CONF_MAX_CONSTRUCTIBLE,
    CONF_PRECISION,
    CONF_REVERIFY_ORDERS,
    CONF_WEIGHT_WINDOW,
    DEFAULT_EVEN,
    DEFAULT_FORMAT,
    DEFAULT_GRID_SUM,
    DEFAULT_MAX_CONSTRUCTIBLE,
    DEFAULT_PRECISION,
    DEFAULT_REVERIFY_ORDERS,
    DEFAULT_WEIGHT_WINDOW,
    ENV_PRECISION,
    FORMATS,
    Q_DENOMINATOR,
)
from .exceptions import IndexReductionError
from .index import IndexMatrix, parse_index


def index_triple(value) -> IndexMatrix:
    """Voluptuous validator for "a,b,c" and "gram:A,B,C"."""
    if isinstance(value, IndexMatrix):
        if not value.is_standard:
            raise vol.Invalid(f"index entries must be nonnegative, got {value.triple}")
        return value
    try:
        return parse_index(str(value))
    except (ValueError, IndexReductionError) as err:
        raise vol.Invalid(f"invalid index {value!r}: {err}") from err


OPTIONS_SCHEMA = vol.Schema(
    {
        vol.Required(CONF_PRECISION): vol.All(vol.Coerce(int), vol.Range(min=1)),
        vol.Required(CONF_FORMAT): vol.In(FORMATS),
        vol.Required(CONF_GRID_SUM): vol.All(vol.Coerce(int), vol.Range(min=0)),
        vol.Required(CONF_WEIGHT_WINDOW): vol.All(vol.Coerce(int), vol.Range(min=0)),
        vol.Required(CONF_REVERIFY_ORDERS): vol.All(vol.Coerce(int), vol.Range(min=0)),
        vol.Required(CONF_MAX_CONSTRUCTIBLE): vol.All(vol.Coerce(int), vol.Range(min=1)),
        vol.Required(CONF_EVEN): vol.Boolean(),
    }
)


def build_options(overrides: Mapping | None = None, environ: Mapping[str, str] | None = None) -> dict:
    """
    Defaults, then the environment, then explicit overrides.

    Overrides that are None (flags not given on the command line) are
    ignored. Raises vol.Invalid on a bad value.
    """
    options = {}
    options[CONF_PRECISION] = DEFAULT_PRECISION
    options[CONF_FORMAT] = DEFAULT_FORMAT
    options[CONF_GRID_SUM] = DEFAULT_GRID_SUM
    options[CONF_WEIGHT_WINDOW] = DEFAULT_WEIGHT_WINDOW
    options[CONF_REVERIFY_ORDERS] = DEFAULT_REVERIFY_ORDERS
    options[CONF_MAX_CONSTRUCTIBLE] = DEFAULT_MAX_CONSTRUCTIBLE
    options[CONF_EVEN] = DEFAULT_EVEN

    environ = os.environ if environ is None else environ
    if environ.get(ENV_PRECISION):
        _LOGGER.debug("Default precision from %s=%s", ENV_PRECISION, environ[ENV_PRECISION])
        options[CONF_PRECISION] = environ[ENV_PRECISION]

    for key, val in (overrides or {}).items():
        if key in options and val is not None:
            options[key] = val

    return OPTIONS_SCHEMA(options)


def prec24(options: Mapping, key: str = CONF_PRECISION) -> int:
    """A q-order option expressed as an n24 bound."""
    return options[key] * Q_DENOMINATOR
