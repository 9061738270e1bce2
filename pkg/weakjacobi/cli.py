"""Command line front end: expand, dim, weights, hilbert, span, decompose, verify."""

from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path

import colorlog
import voluptuous as vol

from . import series_io
from .config import build_options, index_triple, prec24
from .const import (
    _LOGGER,
    CONF_EVEN,
    CONF_FORMAT,
    CONF_GRID_SUM,
    CONF_MAX_CONSTRUCTIBLE,
    CONF_PRECISION,
    CONF_REVERIFY_ORDERS,
    CONF_WEIGHT_WINDOW,
    DOCS,
    FORMAT_JSON,
    FORMATS,
    NAME,
    STARTUP_MESSAGE,
)
from .coordinator import VerificationCoordinator
from .dimension import dim_weak, generator_weights, hilbert_table
from .exceptions import JacobiError
from .forms import generator_series, named_form
from .structure import EVEN_CATALOG, FULL_CATALOG, MonomialExpander, decompose, enumerate_monomials, span_rank

LOG_FORMAT = "%(log_color)s%(levelname)-8s%(reset)s %(name)s: %(message)s"


def setup_logging(verbosity: int) -> None:
    """WARNING by default, INFO with -v, DEBUG with -vv."""
    handler = colorlog.StreamHandler(sys.stderr)
    handler.setFormatter(colorlog.ColoredFormatter(LOG_FORMAT))
    level = logging.WARNING
    if verbosity == 1:
        level = logging.INFO
    elif verbosity > 1:
        level = logging.DEBUG
    _LOGGER.handlers.clear()
    _LOGGER.addHandler(handler)
    _LOGGER.setLevel(level)
    _LOGGER.propagate = False


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog=NAME, description="Exact weak Jacobi forms of rank-two lattice index.")
    parser.add_argument("-v", "--verbose", action="count", default=0, help="-v for info, -vv for debug logging")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(command: argparse.ArgumentParser) -> None:
        command.add_argument("--prec", type=int, dest=CONF_PRECISION, help=DOCS[CONF_PRECISION])
        command.add_argument("--format", choices=FORMATS, dest=CONF_FORMAT, help=DOCS[CONF_FORMAT])

    expand = sub.add_parser("expand", help="print the expansion of a named form or a JSON series file")
    source = expand.add_mutually_exclusive_group(required=True)
    source.add_argument("--form", help="generator id, e.g. Phi_-2_A2 or phi_0_1@zw or Phi_0_313|sub1")
    source.add_argument("--input", help="path to a series in the JSON format")
    common(expand)

    dim = sub.add_parser("dim", help="dimension of weak Jacobi forms of weight k and index M")
    dim.add_argument("-k", type=int, required=True, dest="weight")
    dim.add_argument("-i", "--index", required=True)
    common(dim)

    weights = sub.add_parser("weights", help="weights of the free generators at index M")
    weights.add_argument("-i", "--index", required=True)
    common(weights)

    hilbert = sub.add_parser("hilbert", help="table of Hilbert-series coefficients")
    hilbert.add_argument("-a", type=int, required=True)
    hilbert.add_argument("-b", type=int, required=True)
    hilbert.add_argument("-c", type=int, required=True)
    common(hilbert)

    span = sub.add_parser("span", help="span rank of generator monomials against the dimension")
    span.add_argument("-k", type=int, required=True, dest="weight")
    span.add_argument("-i", "--index", required=True)
    span.add_argument("--even", action="store_true", default=None, dest=CONF_EVEN, help=DOCS[CONF_EVEN])
    common(span)

    dec = sub.add_parser("decompose", help="write a form as a polynomial in the generators")
    dec.add_argument("--target", required=True, help="JSON series file or generator id")
    dec.add_argument("-k", type=int, required=True, dest="weight")
    dec.add_argument("-i", "--index", required=True)
    dec.add_argument("--even", action="store_true", default=None, dest=CONF_EVEN, help=DOCS[CONF_EVEN])
    common(dec)

    verify = sub.add_parser("verify", help="run the verification suites")
    verify.add_argument("--grid", type=int, dest=CONF_GRID_SUM, help=DOCS[CONF_GRID_SUM])
    verify.add_argument("--window", type=int, dest=CONF_WEIGHT_WINDOW, help=DOCS[CONF_WEIGHT_WINDOW])
    verify.add_argument("--reverify", type=int, dest=CONF_REVERIFY_ORDERS, help=DOCS[CONF_REVERIFY_ORDERS])
    verify.add_argument(
        "--identity-prec", type=int, dest=CONF_MAX_CONSTRUCTIBLE, help=DOCS[CONF_MAX_CONSTRUCTIBLE]
    )
    verify.add_argument("--even", action="store_true", default=None, dest=CONF_EVEN, help=DOCS[CONF_EVEN])
    verify.add_argument("--suite", action="append", help="run only this suite (repeatable)")
    common(verify)
    return parser


def _emit(options: dict, payload, text: str) -> None:
    if options[CONF_FORMAT] == FORMAT_JSON:
        print(json.dumps(payload, sort_keys=True))
    else:
        print(text)


def _load_target(target: str, prec: int):
    path = Path(target)
    if target.endswith(".json") or path.is_file():
        return series_io.load_path(path)
    return generator_series(target, prec)


def cmd_expand(args: argparse.Namespace, options: dict) -> int:
    if args.input:
        f = series_io.load_path(args.input)
    else:
        f = named_form(args.form, prec24(options)).series
    _emit(options, series_io.to_dict(f), series_io.render_text(f))
    return 0


def cmd_dim(args: argparse.Namespace, options: dict) -> int:
    index = index_triple(args.index)
    dim = dim_weak(args.weight, index)
    _emit(options, {"k": args.weight, "index": index.to_dict(), "dim": dim}, str(dim))
    return 0


def cmd_weights(args: argparse.Namespace, options: dict) -> int:
    index = index_triple(args.index)
    weights = generator_weights(index)
    _emit(options, {"index": index.to_dict(), "weights": weights.to_dict()}, "\n".join(weights.lines()))
    return 0


def cmd_hilbert(args: argparse.Namespace, options: dict) -> int:
    for bound in (args.a, args.b, args.c):
        if bound < 0:
            raise vol.Invalid(f"orders must be nonnegative, got {bound}")
    table = hilbert_table(args.a, args.b, args.c)
    payload = {f"{a},{b},{c}": poly.to_dict() for (a, b, c), poly in table.items()}
    text = "\n".join(f"({a},{b},{c}): {poly}" for (a, b, c), poly in table.items())
    _emit(options, payload, text)
    return 0


def cmd_span(args: argparse.Namespace, options: dict) -> int:
    index = index_triple(args.index)
    catalog = EVEN_CATALOG if options[CONF_EVEN] else FULL_CATALOG
    monomials = enumerate_monomials(args.weight, index, catalog)
    rank = span_rank(monomials, prec24(options))
    dim = dim_weak(args.weight, index)
    payload = {
        "k": args.weight,
        "index": index.to_dict(),
        "rank": rank,
        "dim": dim,
        "monomials": [str(m) for m in monomials],
        "prec24": prec24(options),
    }
    _emit(options, payload, f"rank: {rank}\ndim: {dim}\nmonomials: {len(monomials)}")
    return 0 if rank == dim else 1


def cmd_decompose(args: argparse.Namespace, options: dict) -> int:
    index = index_triple(args.index)
    prec = prec24(options)
    target = _load_target(args.target, prec)
    catalog = EVEN_CATALOG if options[CONF_EVEN] else FULL_CATALOG
    monomials = enumerate_monomials(args.weight, index, catalog)
    result = decompose(target, monomials, min(prec, target.prec24), MonomialExpander())
    _emit(options, result.to_dict(), str(result))
    return 0 if result.success else 1


def cmd_verify(args: argparse.Namespace, options: dict) -> int:
    results = VerificationCoordinator(options).run(args.suite)
    _emit(options, [result.to_dict() for result in results], "\n".join(str(result) for result in results))
    return 0 if all(result.passed for result in results) else 1


COMMANDS = {
    "expand": cmd_expand,
    "dim": cmd_dim,
    "weights": cmd_weights,
    "hilbert": cmd_hilbert,
    "span": cmd_span,
    "decompose": cmd_decompose,
    "verify": cmd_verify,
}

OPTION_KEYS = (
    CONF_PRECISION,
    CONF_FORMAT,
    CONF_GRID_SUM,
    CONF_WEIGHT_WINDOW,
    CONF_REVERIFY_ORDERS,
    CONF_MAX_CONSTRUCTIBLE,
    CONF_EVEN,
)


def run(argv: list[str] | None = None) -> int:
    """Parse argv, run the command and return the exit code."""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as err:
        return int(err.code or 0)
    setup_logging(args.verbose)
    _LOGGER.debug(STARTUP_MESSAGE)
    try:
        options = build_options({key: getattr(args, key, None) for key in OPTION_KEYS})
        return COMMANDS[args.command](args, options)
    except vol.Invalid as err:
        parser.print_usage(sys.stderr)
        print(f"{NAME}: error: {err}", file=sys.stderr)
        return 2
    except JacobiError as err:
        _LOGGER.error("%s failed: %s", args.command, err)
        print(f"error: {type(err).__name__}: {err}")
        return 1


def main() -> None:
    sys.exit(run())
