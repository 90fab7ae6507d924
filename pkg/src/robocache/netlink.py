"""Satellite hop and station contention model.

Loss and locks are two independent processes. Loss happens on the link:
each lost copy of a message is resent after a fixed timeout, without an
attempt limit, so every request is eventually answered. Locks happen at
the station while a request is serviced and stall only that request.

All draws come from the single seeded generator handed to the link at
construction, one loss run plus one lock draw per transmit, so a run's
outcome sequence is a pure function of (config, seed, call order).
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from .errors import ConfigError


@dataclass(frozen=True)
class LinkConfig:
    one_way_latency_ms: float
    loss_probability: float
    lock_probability: float
    lock_stall_ms: float
    retransmit_timeout_ms: float

    def __post_init__(self) -> None:
        problems = []
        if not self.one_way_latency_ms > 0:
            problems.append("one_way_latency_ms must be > 0")
        if not 0.0 <= self.loss_probability < 1.0:
            problems.append("loss_probability must lie in [0, 1)")
        if not 0.0 <= self.lock_probability < 1.0:
            problems.append("lock_probability must lie in [0, 1)")
        if self.lock_stall_ms < 0:
            problems.append("lock_stall_ms must be >= 0")
        if self.retransmit_timeout_ms < 2 * self.one_way_latency_ms:
            problems.append("retransmit_timeout_ms must be >= 2 * one_way_latency_ms")
        if problems:
            raise ConfigError("invalid link config: " + "; ".join(problems))


@dataclass
class LinkStats:
    messages_sent: int = 0
    messages_lost: int = 0
    retransmissions: int = 0
    lock_events: int = 0
    total_stall_time_ms: float = 0.0

    @property
    def messages_delivered(self) -> int:
        return self.messages_sent - self.messages_lost


@dataclass(frozen=True)
class TransmitOutcome:
    delivered_at: float
    losses: int
    lock_stall_applied: float


class SatelliteLink:
    """One request/response channel; owned by a single simulation run."""

    def __init__(self, config: LinkConfig, rng: random.Random):
        self.config = config
        self._rng = rng
        self.stats = LinkStats()

    def transmit(self, now: float) -> TransmitOutcome:
        """Send one request at ``now`` and report when its response lands.

        The round trip completes after any retransmissions and after any
        lock stall at the station:

            delivered_at = now + losses * retransmit_timeout
                               + 2 * one_way_latency + lock_stall
        """
        cfg = self.config
        losses = 0
        while self._rng.random() < cfg.loss_probability:
            losses += 1
        stall = 0.0
        if self._rng.random() < cfg.lock_probability:
            stall = cfg.lock_stall_ms
            self.stats.lock_events += 1
        self.stats.messages_sent += 1 + losses
        self.stats.messages_lost += losses
        self.stats.retransmissions += losses
        self.stats.total_stall_time_ms += stall
        delivered_at = (
            now
            + losses * cfg.retransmit_timeout_ms
            + 2 * cfg.one_way_latency_ms
            + stall
        )
        return TransmitOutcome(delivered_at=delivered_at, losses=losses, lock_stall_applied=stall)
