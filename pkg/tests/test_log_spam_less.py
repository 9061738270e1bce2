"""Tests for the grid-keyed rate-limited logger."""

from __future__ import annotations

import logging

import pytest

from weakjacobi import log_spam_less
from weakjacobi.index import IndexMatrix
from weakjacobi.log_spam_less import JacobiLogSpamLess

A2 = IndexMatrix(1, 1, 1)
LOGGER_NAME = "weakjacobi.test_spam"


@pytest.fixture
def clock(monkeypatch):
    now = [100.0]
    monkeypatch.setattr(log_spam_less.time, "monotonic", lambda: now[0])
    return now


def _messages(caplog):
    return [record.getMessage() for record in caplog.records]


def test_weights_at_one_index_are_held_back(clock, caplog):
    spamless = JacobiLogSpamLess(logging.getLogger(LOGGER_NAME), 30)
    with caplog.at_level(logging.DEBUG, logger=LOGGER_NAME):
        assert spamless.unstable_rank(-2, A2, 1, 2, 1)
        assert not spamless.unstable_rank(0, A2, 1, 2, 1)
        assert not spamless.unstable_rank(2, A2, 1, 2, 1)
        assert spamless.held_back() == {"unstable": 2}
        clock[0] += 31
        assert spamless.unstable_rank(4, A2, 2, 3, 1)
    assert _messages(caplog) == [
        "Span rank at k=-2 M=(1,1,1) moved from 1 to 2 with 1 more q-orders",
        "Span rank at k=4 M=(1,1,1) moved from 2 to 3 with 1 more q-orders (also at k=0, 2, held back)",
    ]
    assert spamless.held_back() == {}


def test_kinds_and_indices_are_separate(clock, caplog):
    spamless = JacobiLogSpamLess(logging.getLogger(LOGGER_NAME), 30)
    with caplog.at_level(logging.INFO, logger=LOGGER_NAME):
        spamless.log(logging.INFO, "short", 0, A2, "short at %s", A2)
        spamless.log(logging.INFO, "short", 0, IndexMatrix(2, 1, 2), "short at %s", "(2, 1, 2)")
        spamless.unstable_rank(0, A2, 1, 2, 1)
    assert len(caplog.records) == 3
    assert caplog.records[2].levelno == logging.WARNING


def test_reset_forgets_keys(caplog):
    spamless = JacobiLogSpamLess(logging.getLogger(LOGGER_NAME), 30)
    with caplog.at_level(logging.INFO, logger=LOGGER_NAME):
        spamless.log(logging.INFO, "short", 0, A2, "one")
        assert not spamless.log(logging.INFO, "short", 1, A2, "dropped")
        spamless.reset()
        spamless.log(logging.INFO, "short", 2, A2, "two")
    assert _messages(caplog) == ["one", "two"]
    assert spamless.held_back() == {}
