"""Tests for catalogs, monomials, spans and decompositions."""

from __future__ import annotations

import logging
from fractions import Fraction

import pytest

from weakjacobi import series as ser
from weakjacobi import structure
from weakjacobi.const import _LOGGER_SPAM_LESS, GEN_E4, GEN_PHI_0_A2
from weakjacobi.exceptions import DimensionMismatchError, MetadataMismatchError
from weakjacobi.forms import Phi_0_313, Phi_0_A2, Phi_m2_A2, Phi_m3_A2, generator_series, phi_0_1, phi_m2_1
from weakjacobi.index import ZERO_INDEX, IndexMatrix
from weakjacobi.series import ExponentKey
from weakjacobi.structure import (
    EVEN_CATALOG,
    FULL_CATALOG,
    Monomial,
    MonomialExpander,
    catalog_summary,
    decompose,
    enumerate_monomials,
    grid_points,
    phi_identity,
    recombine,
    relation_odd_image,
    relation_pullback_factor,
    relation_split_diagonal,
    relation_twisted_theta,
    span_rank,
    verify_dimension,
    verify_grid,
)

from .const import LONG_PREC24, PREC24, SHORT_PREC24

A2 = IndexMatrix(1, 1, 1)
PHI_CUBED = "phi_-1_1/2@z*phi_-1_1/2@w*phi_-1_1/2@zw"


def test_catalog_summary():
    assert catalog_summary(FULL_CATALOG) == {"total": 19, "modular": 2, "rank_one": 9, "rank_two": 8}
    assert catalog_summary(EVEN_CATALOG) == {"total": 11, "modular": 2, "rank_one": 9, "rank_two": 0}


def test_rank_two_catalog_entries():
    rank_two = [entry.gid for entry in FULL_CATALOG if entry.gid.startswith("Phi_")]
    assert rank_two == [
        "Phi_-2_A2",
        "Phi_0_A2",
        "Phi_0_323",
        "Phi_0_323|sub1",
        "Phi_0_323|sub2",
        "Phi_0_313",
        "Phi_0_313|sub1",
        "Phi_0_313|sub2",
    ]


@pytest.mark.parametrize("catalog", [FULL_CATALOG, EVEN_CATALOG], ids=["full", "even"])
def test_catalog_metadata_matches_expansions(catalog):
    for entry in catalog:
        f = generator_series(entry.gid, SHORT_PREC24)
        assert (f.weight, f.index) == (entry.weight, entry.index), entry.gid
        assert f.valuation24 >= 0, entry.gid


def test_enumerate_examples():
    assert [str(m) for m in enumerate_monomials(0, A2)] == [GEN_PHI_0_A2]
    assert [str(m) for m in enumerate_monomials(-3, A2)] == [PHI_CUBED]
    assert enumerate_monomials(-5, IndexMatrix(0, 0, 1)) == []
    assert enumerate_monomials(0, IndexMatrix(2, -1, 2)) == []


def test_enumerate_fills_weight_with_eisenstein():
    labels = sorted(str(m) for m in enumerate_monomials(4, A2))
    assert labels == ["E4*Phi_0_A2", "E6*Phi_-2_A2"]
    assert [str(m) for m in enumerate_monomials(8, ZERO_INDEX)] == ["E4^2"]
    assert [str(m) for m in enumerate_monomials(0, ZERO_INDEX)] == ["1"]


def test_enumerated_monomials_carry_their_bidegree():
    for k in range(-4, 3):
        for m in enumerate_monomials(k, IndexMatrix(2, 1, 1)):
            assert m.weight == k
            assert m.index == IndexMatrix(2, 1, 1)


def test_monomial_exponent_vector():
    vector = [0] * len(FULL_CATALOG)
    vector[0] = 2
    vector[-1] = 1
    m = Monomial.from_exponents(FULL_CATALOG, vector)
    assert m.exponent_vector(FULL_CATALOG) == vector
    assert str(m) == f"{GEN_E4}^2*{FULL_CATALOG[-1].gid}"
    assert m.to_dict()["weight"] == 8


def test_expander_caches_prefixes():
    expander = MonomialExpander()
    (m,) = enumerate_monomials(-3, A2)
    first = expander.expand(m, SHORT_PREC24)
    assert len(expander) == 3
    assert expander.expand(m, SHORT_PREC24) is first
    assert ser.equals_to_precision(first, Phi_m3_A2(SHORT_PREC24), SHORT_PREC24)
    expander.clear()
    assert len(expander) == 0


def test_expander_checks_metadata():
    wrong = Monomial(((GEN_E4, 1),), 6, ZERO_INDEX)
    with pytest.raises(MetadataMismatchError):
        MonomialExpander().expand(wrong, SHORT_PREC24)


def test_span_rank_examples():
    (single,) = enumerate_monomials(0, A2)
    assert span_rank([single], LONG_PREC24) == 1
    assert span_rank([single, single], LONG_PREC24) == 1
    assert span_rank(enumerate_monomials(-2, A2), PREC24) == 1
    assert span_rank([], PREC24) == 0


def test_span_rank_requires_shared_metadata():
    with pytest.raises(MetadataMismatchError):
        span_rank([Phi_0_A2(PREC24), Phi_m2_A2(PREC24)], PREC24)


def test_phi_identity():
    result = phi_identity(PREC24)
    assert result.success
    assert result.coefficients == [Fraction(1, 12), Fraction(-1, 12)]
    assert result.to_dict()["coefficients"] == [
        {"monomial": "phi_-2_1@z*phi_0_1@w", "coeff": "1/12"},
        {"monomial": "phi_0_1@z*phi_-2_1@w", "coeff": "-1/12"},
    ]


def test_decompose_phi_cubed():
    result = decompose(Phi_m3_A2(PREC24), enumerate_monomials(-3, A2), PREC24)
    assert result.coefficients == [1]
    assert str(result) == f"1 * {PHI_CUBED}"


def test_decompose_pullback_over_rank_one_series():
    target = ser.pullback_P(Phi_0_313(PREC24))
    result = decompose(target, [ser.power(phi_0_1(PREC24), 2)], PREC24)
    assert result.success
    assert result.coefficients == [1]
    assert result.labels == ["#0"]


def test_decompose_failure_reports_key():
    result = decompose(phi_0_1(PREC24), [ser.with_metadata(phi_m2_1(PREC24), weight=0)], PREC24)
    assert not result.success
    assert result.first_unmatched_key == ExponentKey(0, 0, 0)
    assert str(result) == "inconsistent at q^0/24 z^0/2 w^0/2"
    assert result.to_dict()["first_unmatched_key"] == {"n24": 0, "r2": 0, "s2": 0}


def test_decompose_without_monomials():
    assert decompose(ser.zero(2, PREC24), [], PREC24).success
    result = decompose(Phi_0_A2(PREC24), [], PREC24)
    assert not result.success
    assert result.first_unmatched_key.n24 == 0


def test_decompose_metadata_mismatch():
    with pytest.raises(MetadataMismatchError):
        decompose(Phi_0_A2(PREC24), enumerate_monomials(-2, A2), PREC24)


def test_decompose_then_recombine():
    e4, e6 = generator_series("E4", PREC24), generator_series("E6", PREC24)
    target = ser.linear_combination([(1, ser.mul(e4, Phi_0_A2(PREC24))), (3, ser.mul(e6, Phi_m2_A2(PREC24)))])
    monomials = enumerate_monomials(4, A2)
    expander = MonomialExpander()
    result = decompose(target, monomials, PREC24, expander)
    assert dict(zip(result.labels, result.coefficients, strict=True)) == {"E4*Phi_0_A2": 1, "E6*Phi_-2_A2": 3}
    rebuilt = recombine(result.coefficients, monomials, PREC24, expander)
    assert ser.equals_to_precision(rebuilt, target, PREC24)


def test_recombine_needs_monomials():
    with pytest.raises(ValueError):
        recombine([], [], PREC24)


@pytest.mark.parametrize(("k", "rank"), [(0, 1), (-3, 1), (-1, 0), (4, 2)])
def test_verify_dimension_a2(k, rank):
    report = verify_dimension(k, A2, PREC24)
    assert (report.rank, report.dim) == (rank, rank)
    assert report.equal
    assert report.stable
    assert report.to_dict()["equal"] is True


def test_verify_dimension_rank_above_dimension(monkeypatch):
    monkeypatch.setattr(structure, "dim_weak", lambda k, index: 0)
    with pytest.raises(DimensionMismatchError):
        verify_dimension(0, A2, SHORT_PREC24)


def test_verify_dimension_flags_unstable_rank(monkeypatch, caplog):
    monkeypatch.setattr(structure, "dim_weak", lambda k, index: 5)
    monkeypatch.setattr(structure, "span_rank", lambda monomials, prec24, expander=None: 1 + (prec24 > SHORT_PREC24))
    with caplog.at_level(logging.WARNING):
        report = verify_dimension(0, A2, SHORT_PREC24)
        verify_dimension(0, A2, SHORT_PREC24)
    assert report.rank == 1
    assert not report.stable
    assert "(unstable)" in str(report)
    # the second warning for the same index is held back
    assert len([r for r in caplog.records if "moved from 1 to 2" in r.getMessage()]) == 1
    assert _LOGGER_SPAM_LESS.held_back() == {"unstable": 1}


def test_grid_points():
    points = grid_points(1, 2)
    assert len(points) == 12
    assert (0, IndexMatrix(0, 0, 0)) in points
    assert (-1, IndexMatrix(1, 0, 0)) in points
    even = grid_points(2, 4, even=True)
    assert len(even) == 12
    assert all(k % 2 == 0 and all(v % 2 == 0 for v in index.triple) for k, index in even)


def test_small_grid():
    reports = verify_grid(2, 4, PREC24)
    assert reports
    assert all(report.equal and report.stable for report in reports)


def test_small_even_grid():
    reports = verify_grid(2, 4, PREC24, even=True)
    assert len(reports) == 12
    assert all(report.equal for report in reports)


@pytest.mark.slow
def test_structure_grid():
    reports = verify_grid(4, 8, 6 * 24)
    assert all(report.equal and report.stable for report in reports)


def test_split_diagonal_relation():
    result = relation_split_diagonal(PREC24)
    assert result.success
    assert all(result.coefficients)


def test_twisted_theta_relation():
    assert relation_twisted_theta(PREC24).success


def test_pullback_factor_relation():
    assert relation_pullback_factor(PREC24)


def test_odd_image_relation():
    assert relation_odd_image(PREC24)
