"""Tests for the named forms and the operators that build them."""

from __future__ import annotations

from fractions import Fraction

import pytest

from weakjacobi import series as ser
from weakjacobi.exceptions import DegenerateIndexError, RankMismatchError, ThetaBlockError, UnknownGeneratorError
from weakjacobi.forms import (
    Phi_0_313,
    Phi_0_323,
    Phi_0_A2,
    Phi_m2_A2,
    Phi_m3_A2,
    eisenstein,
    embed,
    eta_power,
    generator_series,
    heat,
    named_form,
    parse_generator_id,
    phi_0_1,
    phi_0_3half,
    phi_m1_2,
    phi_m1_half,
    phi_m2_1,
    serre,
    theta,
    theta_block,
    theta_block_min2,
    theta_block_plus,
    theta_derivative,
    theta_product,
)
from weakjacobi.golden_rows import GOLDEN_ROWS
from weakjacobi.index import IndexMatrix, RankOneIndex

from .const import LONG_PREC24, PREC24, SHORT_PREC24


def _at_origin(f):
    """f(tau, 0) for a rank-one series."""
    return ser.pullback_Q(embed(f, "w"))


@pytest.mark.parametrize(("key", "expected"), list(GOLDEN_ROWS.items()), ids=lambda v: str(v))
def test_golden_rows(key, expected):
    gid, n24 = key
    f = named_form(gid, n24 + 24).series
    assert f.slice(n24) == {k: Fraction(v) for k, v in expected.items()}


def test_eta_pentagonal():
    assert eta_power(1, LONG_PREC24).q_exponents == [1, 25, 49]
    assert eta_power(1, LONG_PREC24).slice(49) == {(0, 0): -1}


def test_eta_cubed_jacobi_identity():
    f = eta_power(3, LONG_PREC24)
    assert {n: row[(0, 0)] for n, row in f.iter_slices()} == {3: 1, 27: -3, 75: 5}
    assert f.weight == Fraction(3, 2)


def test_eta_power_zero_and_negative():
    assert list(eta_power(0, PREC24).iter_slices()) == [(0, {(0, 0): 1})]
    assert eta_power(-3, PREC24).valuation24 == -3


def test_eisenstein_prefixes():
    e2, e4, e6 = (eisenstein(k, LONG_PREC24) for k in (2, 4, 6))
    assert [e2.slice(24 * n)[(0, 0)] for n in range(4)] == [1, -24, -72, -96]
    assert [e4.slice(24 * n)[(0, 0)] for n in range(3)] == [1, 240, 2160]
    assert [e6.slice(24 * n)[(0, 0)] for n in range(3)] == [1, -504, -16632]


def test_eisenstein_unsupported_weight():
    with pytest.raises(ValueError):
        eisenstein(8, PREC24)


def test_discriminant():
    e4, e6 = eisenstein(4, LONG_PREC24), eisenstein(6, LONG_PREC24)
    difference = ser.linear_combination([(1, ser.power(e4, 3)), (-1, ser.power(e6, 2))])
    assert ser.equals_to_precision(difference, ser.scale(eta_power(24, LONG_PREC24), 1728), LONG_PREC24)


def test_theta_sum_matches_triple_product():
    assert ser.equals_to_precision(theta(LONG_PREC24), theta_product(LONG_PREC24), LONG_PREC24)


def test_theta_is_odd():
    f = theta(PREC24)
    assert ser.reflect(f) == ser.scale(f, -1)
    assert f.slice(3) == {(1, 0): 1, (-1, 0): -1}


def test_theta_derivatives():
    assert theta_derivative(0, PREC24) == theta(PREC24)
    second = theta_derivative(2, PREC24)
    assert second.slice(3) == {(1, 0): 1, (-1, 0): -1}
    assert second.weight == Fraction(5, 2)
    with pytest.raises(ValueError):
        theta_derivative(-1, PREC24)


def test_theta_derivative_at_origin():
    # with the doubled normalization theta' = 2 D theta, and D theta(tau, 0) = eta^3
    first = _at_origin(theta_derivative(1, LONG_PREC24))
    assert ser.equals_to_precision(first, ser.scale(eta_power(3, LONG_PREC24), 2), LONG_PREC24)


def test_heat_kills_theta():
    assert heat(theta(PREC24), 1).is_zero
    assert serre(theta(PREC24), Fraction(1, 2), 1, 1).is_zero


def test_heat_row():
    f = heat(phi_m2_1(PREC24), 2)
    assert f.slice(0) == {(2, 0): Fraction(-1, 4), (-2, 0): Fraction(-1, 4)}
    assert f.weight == 0


def test_serre_row():
    f = serre(phi_m2_1(PREC24), -2, 1, RankOneIndex(2))
    assert f.slice(0) == {(2, 0): Fraction(-1, 24), (0, 0): Fraction(-5, 12), (-2, 0): Fraction(-1, 24)}
    assert f.weight == 0


def test_heat_degenerate_index():
    with pytest.raises(DegenerateIndexError):
        heat(embed(phi_0_1(PREC24), "zw"), IndexMatrix(0, 2, 0))


def test_serre_rank_mismatch():
    with pytest.raises(RankMismatchError):
        serre(phi_m2_1(PREC24), -2, 2, IndexMatrix(1, 1, 1))


def test_rank_one_generators():
    assert phi_0_1(PREC24).index == RankOneIndex(2)
    assert phi_0_3half(PREC24).index == RankOneIndex(3)
    f = phi_m1_2(PREC24)
    assert (f.weight, f.index) == (-1, RankOneIndex(4))
    assert f.slice(0) == {(2, 0): 1, (-2, 0): -1}
    assert ser.power(phi_m1_half(PREC24), 2) == phi_m2_1(PREC24)


def test_phi_0_1_at_origin():
    assert _at_origin(phi_0_1(PREC24)).slice(0) == {(0, 0): 12}
    assert _at_origin(phi_0_1(PREC24)).q_exponents == [0]


def test_embed_indices():
    f = phi_0_1(SHORT_PREC24)
    assert embed(f, "z").index == IndexMatrix(2, 0, 0)
    assert embed(f, "w").index == IndexMatrix(0, 0, 2)
    assert embed(f, "zw").index == IndexMatrix(0, 2, 0)
    assert embed(phi_m1_half(SHORT_PREC24), (2, 1)).index == IndexMatrix(2, 2, -1)
    assert embed(f, "zw").slice(0) == {(-2, -2): 1, (0, 0): 10, (2, 2): 1}


def test_embed_needs_rank_one():
    with pytest.raises(RankMismatchError):
        embed(Phi_m2_A2(SHORT_PREC24), "z")


def test_phi_m3_is_a_product_of_phis():
    phi = phi_m1_half(PREC24)
    product = ser.mul(ser.mul(embed(phi, "z"), embed(phi, "w")), embed(phi, "zw"))
    assert ser.equals_to_precision(theta_block(1, 1, 1, PREC24), product, PREC24)
    assert Phi_m3_A2(PREC24).weight == -3


def test_theta_block_on_one_axis():
    assert ser.equals_to_precision(theta_block(2, 0, 0, PREC24), embed(phi_m2_1(PREC24), "z"), PREC24)
    assert theta_block(0, 0, 0, PREC24) == ser.one(2, PREC24)


@pytest.mark.parametrize("exponents", [(1, 2, 1), (2, 1, 2), (3, 0, 1)])
def test_theta_block_is_weak(exponents):
    block = theta_block(*exponents, SHORT_PREC24)
    assert block.valuation24 >= 0
    assert block.weight == -sum(exponents)
    assert block.index.triple == exponents


def test_theta_block_rejects_negative():
    with pytest.raises(ThetaBlockError):
        theta_block(-1, 0, 0, PREC24)


def test_theta_block_plus():
    f = theta_block_plus(1, 1, 1, PREC24)
    assert f == Phi_m2_A2(PREC24)
    assert (f.weight, f.index) == (-2, IndexMatrix(1, 1, 1))
    with pytest.raises(ThetaBlockError):
        theta_block_plus(0, 1, 1, PREC24)


def test_theta_block_min2_sizes():
    assert len(theta_block_min2(1, 2, 1, SHORT_PREC24)) == 1
    assert len(theta_block_min2(2, 0, 3, SHORT_PREC24)) == 2
    assert theta_block_min2(1, 1, 1, SHORT_PREC24) == []
    for f in theta_block_min2(2, 0, 3, SHORT_PREC24):
        assert (f.weight, f.index) == (-3, IndexMatrix(2, 0, 3))


def test_rank_two_metadata():
    assert (Phi_0_A2(SHORT_PREC24).weight, Phi_0_A2(SHORT_PREC24).index) == (0, IndexMatrix(1, 1, 1))
    assert Phi_0_323(SHORT_PREC24).index == IndexMatrix(1, 2, 1)
    assert Phi_0_313(SHORT_PREC24).index == IndexMatrix(2, 1, 2)


def _pullback_checks(prec24):
    phi01, phi03 = phi_0_1(prec24), phi_0_3half(prec24)
    phi_323, phi_313 = Phi_0_323(prec24), Phi_0_313(prec24)
    return [
        (ser.pullback_P(phi_323), phi01),
        (ser.pullback_Q(phi_323), ser.scale(phi03, 6)),
        (ser.pullback_P(phi_313), ser.power(phi01, 2)),
        (ser.pullback_Q(phi_313), ser.scale(phi03, 72)),
    ]


def test_pullbacks_of_odd_lattice_forms():
    for left, right in _pullback_checks(PREC24):
        assert ser.equals_to_precision(left, right, PREC24)


@pytest.mark.slow
def test_pullbacks_of_odd_lattice_forms_deep():
    prec24 = 10 * 24
    for left, right in _pullback_checks(prec24):
        assert ser.equals_to_precision(left, right, prec24)


def test_parse_generator_id():
    assert parse_generator_id("phi_0_1@zw") == ("phi_0_1", "zw", None)
    assert parse_generator_id("Phi_0_313|sub1") == ("Phi_0_313", None, "sub1")
    assert parse_generator_id("E4") == ("E4", None, None)


@pytest.mark.parametrize("gid", ["phi_9_9", "phi_0_1@x", "Phi_0_313|sub9"])
def test_parse_generator_id_errors(gid):
    with pytest.raises(UnknownGeneratorError):
        parse_generator_id(gid)


def test_named_form_substitutions():
    assert named_form("Phi_0_313|sub1", SHORT_PREC24).index == IndexMatrix(1, 2, 2)
    assert named_form("Phi_0_313|sub2", SHORT_PREC24).index == IndexMatrix(2, 2, 1)
    assert named_form("Phi_0_323|sub1", SHORT_PREC24).index == IndexMatrix(2, 1, 1)
    with pytest.raises(UnknownGeneratorError):
        named_form("phi_0_1|sub1", SHORT_PREC24)


def test_generator_series_lifts_modular_forms():
    f = generator_series("E4", SHORT_PREC24)
    assert f.rank == 2
    assert f.index == IndexMatrix(0, 0, 0)
    with pytest.raises(UnknownGeneratorError):
        generator_series("phi_0_1", SHORT_PREC24)
