"""Rate-limited logging for warnings raised inside grid loops."""

from __future__ import annotations

import logging
import time
from typing import TYPE_CHECKING

if TYPE_CHECKING:
    from .index import IndexMatrix

GridKey = tuple[str, "IndexMatrix"]


class JacobiLogSpamLess:
    """
    Hold back repeated grid messages, one per (kind, index) per interval.

    A grid run visits every weight of an index in a row, and a bad index
    tends to misbehave at all of them. The first message of a kind at an
    index is emitted; later ones at the same index within spam_interval
    seconds are swallowed and their weights remembered. The next message
    that gets through lists those weights.
    """

    _logger: logging.Logger
    _interval: float

    def __init__(self, logger: logging.Logger, spam_interval: float) -> None:
        self._logger = logger
        self._interval = spam_interval
        self._stamps: dict[GridKey, float] = {}
        self._held: dict[GridKey, list[int]] = {}

    def log(self, level: int, kind: str, k: int, index: IndexMatrix, msg: str, *args) -> bool:
        """Emit msg unless (kind, index) was logged recently. Returns whether it was emitted."""
        key = (kind, index)
        now = time.monotonic()
        stamp = self._stamps.get(key)
        if stamp is not None and stamp >= now - self._interval:
            self._held.setdefault(key, []).append(k)
            return False
        self._stamps[key] = now
        held = self._held.pop(key, [])
        if held:
            msg = f"{msg} (also at k={', '.join(str(weight) for weight in held)}, held back)"
        self._logger.log(level, msg, *args)
        return True

    def unstable_rank(self, k: int, index: IndexMatrix, rank: int, later: int, orders: int) -> bool:
        return self.log(
            logging.WARNING,
            "unstable",
            k,
            index,
            "Span rank at k=%s M=%s moved from %s to %s with %s more q-orders",
            k,
            index,
            rank,
            later,
            orders,
        )

    def held_back(self) -> dict[str, int]:
        """Number of swallowed messages per kind, since they were last flushed."""
        counts: dict[str, int] = {}
        for (kind, _), weights in self._held.items():
            counts[kind] = counts.get(kind, 0) + len(weights)
        return counts

    def reset(self) -> None:
        """Forget every key, so the next message of each kind is emitted."""
        self._stamps.clear()
        self._held.clear()
