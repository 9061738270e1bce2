"""Tests for the command line front end."""

from __future__ import annotations

import json

from weakjacobi import series as ser
from weakjacobi import series_io
from weakjacobi.cli import build_parser, run
from weakjacobi.const import ENV_PRECISION
from weakjacobi.forms import Phi_m2_A2

from .const import PHI_M2_A2_FIRST_LINE, PREC24


def test_dim(capsys):
    assert run(["dim", "-k", "-3", "-i", "1,1,1"]) == 0
    assert capsys.readouterr().out.strip() == "1"


def test_dim_json(capsys):
    assert run(["dim", "-k", "4", "-i", "1,1,1", "--format", "json"]) == 0
    payload = json.loads(capsys.readouterr().out)
    assert payload["dim"] == 2
    assert payload["k"] == 4


def test_weights(capsys):
    assert run(["weights", "-i", "0,0,0"]) == 0
    assert capsys.readouterr().out.strip() == "t^0: 1"


def test_hilbert(capsys):
    assert run(["hilbert", "-a", "1", "-b", "1", "-c", "1"]) == 0
    assert "(1,1,1): t^-3 + t^-2 + 1" in capsys.readouterr().out.splitlines()


def test_hilbert_negative_order(capsys):
    assert run(["hilbert", "-a", "-1", "-b", "0", "-c", "0"]) == 2
    assert "orders must be nonnegative" in capsys.readouterr().err


def test_expand_form(capsys):
    assert run(["expand", "--form", "Phi_-2_A2", "--prec", "2"]) == 0
    lines = capsys.readouterr().out.strip().splitlines()
    assert lines[0] == PHI_M2_A2_FIRST_LINE
    assert lines[-1] == "+ O(q^2)"


def test_expand_precision_from_environment(monkeypatch, capsys):
    monkeypatch.setenv(ENV_PRECISION, "1")
    assert run(["expand", "--form", "Phi_-2_A2"]) == 0
    assert capsys.readouterr().out.strip().splitlines()[-1] == "+ O(q^1)"


def test_expand_json_round_trip(tmp_path, capsys):
    assert run(["expand", "--form", "phi_0_1@zw", "--prec", "2", "--format", "json"]) == 0
    path = tmp_path / "phi.json"
    path.write_text(capsys.readouterr().out)
    assert run(["expand", "--input", str(path), "--format", "json"]) == 0
    assert series_io.loads(capsys.readouterr().out) == series_io.load_path(path)


def test_missing_arguments(capsys):
    assert run(["dim", "-k", "0"]) == 2
    assert run([]) == 2
    capsys.readouterr()


def test_bad_index(capsys):
    assert run(["dim", "-k", "0", "-i", "1,-1,0"]) == 2
    assert "invalid index" in capsys.readouterr().err


def test_bad_precision(capsys):
    assert run(["expand", "--form", "theta", "--prec", "0"]) == 2
    capsys.readouterr()


def test_unknown_form(capsys):
    assert run(["expand", "--form", "Phi_9_A2", "--prec", "1"]) == 1
    assert "UnknownGeneratorError" in capsys.readouterr().out


def test_span(capsys):
    assert run(["span", "-k", "4", "-i", "1,1,1", "--prec", "3"]) == 0
    out = capsys.readouterr().out
    assert "rank: 2" in out
    assert "dim: 2" in out


def test_decompose_named_target(capsys):
    assert run(["decompose", "--target", "Phi_-3_A2", "-k", "-3", "-i", "1,1,1", "--prec", "3"]) == 0
    assert capsys.readouterr().out.startswith("1 * ")


def test_decompose_failure(tmp_path, capsys):
    path = tmp_path / "target.json"
    path.write_text(series_io.dumps(ser.with_metadata(Phi_m2_A2(PREC24), weight=0)))
    assert run(["decompose", "--target", str(path), "-k", "0", "-i", "1,1,1", "--prec", "3"]) == 1
    assert "inconsistent at" in capsys.readouterr().out


def test_decompose_wrong_bidegree(capsys):
    assert run(["decompose", "--target", "Phi_-3_A2", "-k", "0", "-i", "1,1,1", "--prec", "2"]) == 1
    assert "MetadataMismatchError" in capsys.readouterr().out


def test_verify_selected_suites(capsys):
    argv = ["verify", "--suite", "catalog", "--suite", "rank_one_hilbert", "--prec", "2"]
    assert run(argv) == 0
    out = capsys.readouterr().out.splitlines()
    assert out[0].startswith("PASS catalog: 19 generators")
    assert out[1].startswith("PASS rank_one_hilbert")


def test_verify_unknown_suite(capsys):
    assert run(["verify", "--suite", "nonsense", "--format", "json"]) == 1
    assert json.loads(capsys.readouterr().out) == [
        {"name": "nonsense", "passed": False, "detail": "unknown suite"}
    ]


def test_parser_lists_every_command():
    parser = build_parser()
    args = parser.parse_args(["verify", "--grid", "3", "--even"])
    assert args.grid_sum == 3
    assert args.even is True
    assert parser.parse_args(["span", "-k", "0", "-i", "1,1,1"]).even is None
