"""Capacity-bounded cache ordered by per-entry hit counters.

Entries are kept sorted from most-hit to least-hit, so a top-down linear
scan finds popular keys in one or two probes. A successful lookup
increments the matched entry's counter and lets the entry bubble up past
neighbours with strictly smaller counters; it never overtakes an entry
with an equal counter, which keeps equal-counter runs in the order the
counts were earned. New entries always start with one hit at the bottom
of the list, and when the cache is full the bottom entry is evicted to
make room. Every probe is counted so callers can account for search
cost.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Optional, Tuple

from .errors import ConfigError, DuplicateKeyError, ValidationError

_BARCODE_RE = re.compile(r"^[0-9]{14}$")


def validate_barcode(barcode: str) -> str:
    """Return the barcode unchanged if it is exactly 14 decimal digits.

    Raises ValidationError otherwise; a malformed key is never treated
    as a plain miss.
    """
    if not isinstance(barcode, str) or _BARCODE_RE.match(barcode) is None:
        raise ValidationError(
            f"malformed barcode key {barcode!r}: expected exactly 14 decimal digits"
        )
    return barcode


@dataclass
class CacheEntry:
    """One cached routing decision.

    ``hits`` is at least 1 for any resident entry (an entry exists only
    after one successful resolution). ``seq`` is a monotone stamp
    refreshed whenever ``hits`` changes; within a group of equal
    counters the older stamp sits higher, which makes the order total
    and deterministic.
    """

    barcode: str
    payload: object
    hits: int
    seq: int


@dataclass(frozen=True)
class LookupResult:
    hit: bool
    payload: Optional[object]
    comparisons: int


@dataclass(frozen=True)
class HitSnapshot:
    """Read-only copy of the (barcode, hits) rows in cache order."""

    rows: Tuple[Tuple[str, int], ...]
    taken_at: float


class HitOrderedCache:
    """Fixed-capacity store sorted by descending hit counter.

    Not safe for concurrent mutation: confine each instance to the one
    simulated robot (and thread) that owns it.
    """

    def __init__(self, capacity: int):
        if not isinstance(capacity, int) or isinstance(capacity, bool) or capacity < 1:
            raise ConfigError(f"cache capacity must be a positive integer, got {capacity!r}")
        self.capacity = capacity
        self._entries: list[CacheEntry] = []
        self._next_seq = 0

    def __len__(self) -> int:
        return len(self._entries)

    @property
    def entries(self) -> Tuple[CacheEntry, ...]:
        """Current entries, most hits first. Treat as read-only."""
        return tuple(self._entries)

    def lookup(self, barcode: str) -> LookupResult:
        """Scan top-down for ``barcode``, counting one comparison per probe.

        On a hit the entry's counter is incremented and the entry moves
        up past strictly smaller counters; the result reports the probe
        count before the move (position + 1). On a miss the whole list
        has been scanned and the cache is left unchanged.
        """
        validate_barcode(barcode)
        entries = self._entries
        for pos, entry in enumerate(entries):
            if entry.barcode == barcode:
                entry.hits += 1
                entry.seq = self._bump_seq()
                self._promote(pos)
                return LookupResult(hit=True, payload=entry.payload, comparisons=pos + 1)
        return LookupResult(hit=False, payload=None, comparisons=len(entries))

    def insert(self, barcode: str, payload: object) -> Optional[str]:
        """Add a fresh entry with one hit at the bottom of the list.

        Callers look up first, so inserting a barcode that is already
        resident raises DuplicateKeyError. If the cache is full the
        bottom entry is removed first and its barcode returned;
        otherwise returns None.
        """
        validate_barcode(barcode)
        if any(entry.barcode == barcode for entry in self._entries):
            raise DuplicateKeyError(f"barcode {barcode} already cached; look up before inserting")
        evicted = None
        if len(self._entries) == self.capacity:
            evicted = self._entries.pop().barcode
        self._entries.append(CacheEntry(barcode, payload, hits=1, seq=self._bump_seq()))
        return evicted

    def snapshot(self, now: float) -> HitSnapshot:
        """Copy the current (barcode, hits) rows without touching the cache."""
        return HitSnapshot(
            rows=tuple((entry.barcode, entry.hits) for entry in self._entries),
            taken_at=now,
        )

    def _bump_seq(self) -> int:
        seq = self._next_seq
        self._next_seq += 1
        return seq

    def _promote(self, pos: int) -> None:
        # Bubble past strictly smaller counters only; overtaking an equal
        # counter would reorder entries whose counts tie.
        entries = self._entries
        entry = entries[pos]
        dest = pos
        while dest > 0 and entries[dest - 1].hits < entry.hits:
            dest -= 1
        if dest != pos:
            del entries[pos]
            entries.insert(dest, entry)
