"""Trace-driven engine comparing station-only and cache-first scanning.

Each scan is processed in trace order and two time aggregates are kept:

* decision latency, per scan: simulated time from the scan's issue to
  its routing decision, including cache probes, the satellite round
  trip with any retransmissions, station service and lock stalls.
  In-flight scans overlap freely on this axis; one scan's round trip
  never delays another's.

* the processing clock: compute work the fleet and station actually
  perform, scan after scan (probe time, station service, lock stalls).
  Link transit is waiting, not work, so it never advances this clock.
  The clock starts at the first issue time, only moves forward, and its
  final reading minus the start is the run's total processing time.

A hit costs only its cache probes on both axes. A miss pays the round
trip on the latency axis and the station work on the processing axis,
which is why a warm cache compresses total processing less sharply than
it compresses decision latency.

Runs are deterministic: all randomness flows from the run seed through
the link.
"""

from __future__ import annotations

import hashlib
import json
import random
import time
from dataclasses import dataclass, field
from enum import Enum
from typing import Dict, List, Optional, Tuple

from .cache import HitOrderedCache, HitSnapshot
from .errors import MissingRecordError, SimulationError, ValidationError
from .knowledge_base import DecisionPayload, KnowledgeBase
from .netlink import LinkStats, SatelliteLink
from .workload import ScanEvent


class MethodKind(str, Enum):
    BASELINE = "baseline"
    CACHED = "cached"


@dataclass
class RobotState:
    robot_id: int
    cache: Optional[HitOrderedCache]
    decisions_made: int = 0
    routing_log: List[Tuple[str, DecisionPayload, float]] = field(default_factory=list)

    def record_decision(self, barcode: str, payload: DecisionPayload, decided_at: float) -> None:
        self.routing_log.append((barcode, payload, decided_at))
        self.decisions_made += 1


@dataclass
class RunCounters:
    scans: int = 0
    cache_hits: int = 0
    cache_misses: int = 0
    cache_comparisons: int = 0
    db_comparisons: int = 0
    station_messages: int = 0
    per_scan_latencies: List[float] = field(default_factory=list)
    link_stats: LinkStats = field(default_factory=LinkStats)
    first_issued_at: float = 0.0
    final_clock: float = 0.0
    max_decided_at: float = 0.0
    # Host seconds, informational only; excluded from digests and report
    # files so identical runs stay byte-identical.
    wall_clock_of_run: float = 0.0

    @property
    def total_processing_ms(self) -> float:
        return self.final_clock - self.first_issued_at


@dataclass
class RunResult:
    method: MethodKind
    counters: RunCounters
    robots: Dict[int, RobotState]
    snapshots: List[HitSnapshot]
    digest: Optional[str] = None


def run(method, trace: List[ScanEvent], kb: KnowledgeBase, sim_config) -> RunResult:
    """Replay ``trace`` under one method and return counters and snapshots.

    ``sim_config`` supplies the link config, the run seed, cache
    capacity and the per-probe costs (see config.SimConfig). Every trace
    barcode must resolve in ``kb``; a missing record is a data error,
    not a modeled outcome.
    """
    method = MethodKind(method)
    if not trace:
        raise ValidationError("trace is empty; nothing to simulate")
    started = time.perf_counter()

    link = SatelliteLink(sim_config.link, random.Random(sim_config.seed))
    counters = RunCounters(link_stats=link.stats)
    robots: Dict[int, RobotState] = {}

    cache_probe_ms = sim_config.cache_probe_time_ms
    db_probe_ms = sim_config.db_probe_time_ms
    cached = method is MethodKind.CACHED

    first_issued = trace[0].issued_at
    counters.first_issued_at = first_issued
    clock = first_issued
    max_decided = first_issued

    for event in trace:
        robot = robots.get(event.robot_id)
        if robot is None:
            cache = HitOrderedCache(sim_config.cache_capacity) if cached else None
            robot = robots.setdefault(event.robot_id, RobotState(event.robot_id, cache))
        issued = event.issued_at
        counters.scans += 1

        if cached:
            found = robot.cache.lookup(event.barcode)
            probe_ms = found.comparisons * cache_probe_ms
            counters.cache_comparisons += found.comparisons
            if found.hit:
                counters.cache_hits += 1
                payload = found.payload
                decided_at = issued + probe_ms
                work_ms = probe_ms
            else:
                counters.cache_misses += 1
                counters.station_messages += 1
                outcome = link.transmit(issued + probe_ms)
                resolved = kb.resolve(event.barcode)
                counters.db_comparisons += resolved.db_comparisons
                if not resolved.found:
                    raise MissingRecordError(event.barcode)
                payload = resolved.payload
                service_ms = resolved.db_comparisons * db_probe_ms
                decided_at = outcome.delivered_at + service_ms
                work_ms = probe_ms + service_ms + outcome.lock_stall_applied
                robot.cache.insert(event.barcode, payload)
        else:
            counters.station_messages += 1
            outcome = link.transmit(issued)
            resolved = kb.resolve(event.barcode)
            counters.db_comparisons += resolved.db_comparisons
            if not resolved.found:
                raise MissingRecordError(event.barcode)
            payload = resolved.payload
            service_ms = resolved.db_comparisons * db_probe_ms
            decided_at = outcome.delivered_at + service_ms
            work_ms = service_ms + outcome.lock_stall_applied

        robot.record_decision(event.barcode, payload, decided_at)
        counters.per_scan_latencies.append(decided_at - issued)
        clock += work_ms
        if decided_at > max_decided:
            max_decided = decided_at

    counters.final_clock = clock
    counters.max_decided_at = max_decided
    counters.wall_clock_of_run = (time.perf_counter() - started) * 1000.0

    snapshots: List[HitSnapshot] = []
    if cached:
        for robot_id in sorted(robots):
            snapshots.append(robots[robot_id].cache.snapshot(now=clock))
    return RunResult(method=method, counters=counters, robots=robots, snapshots=snapshots)


def result_digest(result: RunResult) -> str:
    """SHA-256 over the full counter stream of a run.

    Covers every counter, every per-scan latency and the final cache
    snapshots; deliberately excludes host wall-clock time.
    """
    c = result.counters
    payload = {
        "method": result.method.value,
        "scans": c.scans,
        "cache_hits": c.cache_hits,
        "cache_misses": c.cache_misses,
        "cache_comparisons": c.cache_comparisons,
        "db_comparisons": c.db_comparisons,
        "station_messages": c.station_messages,
        "first_issued_at": c.first_issued_at,
        "final_clock": c.final_clock,
        "max_decided_at": c.max_decided_at,
        "per_scan_latencies": c.per_scan_latencies,
        "link": {
            "messages_sent": c.link_stats.messages_sent,
            "messages_lost": c.link_stats.messages_lost,
            "retransmissions": c.link_stats.retransmissions,
            "lock_events": c.link_stats.lock_events,
            "total_stall_time_ms": c.link_stats.total_stall_time_ms,
        },
        "snapshots": [list(snap.rows) for snap in result.snapshots],
    }
    blob = json.dumps(payload, sort_keys=True, separators=(",", ":")).encode("utf-8")
    return hashlib.sha256(blob).hexdigest()


def replay_deterministic(method, trace, kb, sim_config) -> RunResult:
    """Run twice with identical inputs and assert the digests agree.

    Returns the first result with its digest attached. A mismatch means
    hidden state leaked into the run and is reported as an error.
    """
    first = run(method, trace, kb, sim_config)
    second = run(method, trace, kb, sim_config)
    first.digest = result_digest(first)
    if result_digest(second) != first.digest:
        raise SimulationError("replay diverged: identical inputs produced different counter streams")
    return first
