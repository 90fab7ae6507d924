"""Synthetic scan traces with controlled popularity skew.

generate() draws barcode popularity from a Zipf law over a fixed key
universe (exponent 0 degenerates to uniform), spaces arrivals with
exponential gaps and deals events round robin across robots. A trace is
a pure function of its config, including the seed; the draw order (one
block of key draws, then one block of gap draws) is part of that
contract and pinned by a golden trace in the test suite.

Trace CSV format: one header line ``robot_id,barcode,issued_at_ms``
followed by one line per event, UTF-8, "\n" newlines. Timestamps are
written with repr so export and import round-trip exactly.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import isfinite
from typing import Iterable, List, TextIO

import numpy as np

from .cache import validate_barcode
from .errors import ConfigError, TraceFormatError, ValidationError

TRACE_HEADER = "robot_id,barcode,issued_at_ms"

# rank 0 maps to "10000000000000"; every rank below 9e13 stays 14 digits
_RANK_BASE = 10_000_000_000_000
_MAX_UNIQUE = 9 * 10**13


@dataclass(frozen=True)
class ScanEvent:
    robot_id: int
    barcode: str
    issued_at: float


@dataclass(frozen=True)
class WorkloadConfig:
    total_scans: int
    unique_barcodes: int
    skew: float
    robots: int
    inter_arrival_ms: float
    seed: int

    def __post_init__(self) -> None:
        bad = []
        if self.total_scans < 1:
            bad.append("total_scans (must be >= 1)")
        if not 1 <= self.unique_barcodes <= _MAX_UNIQUE:
            bad.append(f"unique_barcodes (must lie in [1, {_MAX_UNIQUE}])")
        if self.skew < 0:
            bad.append("skew (must be >= 0)")
        if self.robots < 1:
            bad.append("robots (must be >= 1)")
        if not self.inter_arrival_ms > 0:
            bad.append("inter_arrival_ms (must be > 0)")
        if not 0 <= self.seed < 2**64:
            bad.append("seed (must be a 64-bit unsigned integer)")
        if bad:
            raise ConfigError("invalid workload config: " + ", ".join(bad))


def barcode_for_rank(rank: int) -> str:
    """Deterministic 14-digit key for a popularity rank (0 = hottest)."""
    if not 0 <= rank < _MAX_UNIQUE:
        raise ValidationError(f"rank {rank} outside the key universe")
    return str(_RANK_BASE + rank)


def zipf_probabilities(unique_barcodes: int, skew: float) -> np.ndarray:
    """Probability of each rank, 1-based ranks weighted rank**-skew."""
    ranks = np.arange(1, unique_barcodes + 1, dtype=np.float64)
    weights = ranks ** -float(skew)
    return weights / weights.sum()


def generate(config: WorkloadConfig) -> List[ScanEvent]:
    """Materialise the whole trace for ``config``."""
    rng = np.random.default_rng(config.seed)
    cumulative = np.cumsum(zipf_probabilities(config.unique_barcodes, config.skew))
    cumulative[-1] = 1.0
    key_draws = rng.random(config.total_scans)
    ranks = np.searchsorted(cumulative, key_draws, side="right")
    gaps = rng.exponential(config.inter_arrival_ms, config.total_scans)
    times = np.cumsum(gaps)
    robots = config.robots
    return [
        ScanEvent(robot_id=i % robots, barcode=barcode_for_rank(int(rank)), issued_at=float(t))
        for i, (rank, t) in enumerate(zip(ranks, times))
    ]


def save_trace(events: Iterable[ScanEvent], stream: TextIO) -> None:
    stream.write(TRACE_HEADER + "\n")
    for event in events:
        stream.write(f"{event.robot_id},{event.barcode},{event.issued_at!r}\n")


def load_trace(stream: Iterable[str]) -> List[ScanEvent]:
    """Parse a trace CSV, enforcing field shape and non-decreasing time.

    A zero-byte source yields an empty trace; any content must start
    with the standard header line.
    """
    events: List[ScanEvent] = []
    previous_time = None
    for line_no, raw in enumerate(stream, start=1):
        line = raw[:-1] if raw.endswith("\n") else raw
        if line_no == 1:
            if line != TRACE_HEADER:
                raise TraceFormatError(line_no, f"expected header {TRACE_HEADER!r}, got {line!r}")
            continue
        parts = line.split(",")
        if len(parts) != 3:
            raise TraceFormatError(line_no, f"expected 3 comma-separated fields, got {len(parts)}")
        robot_field, barcode, time_field = parts
        try:
            robot_id = int(robot_field)
        except ValueError:
            raise TraceFormatError(line_no, f"robot_id {robot_field!r} is not an integer") from None
        if robot_id < 0:
            raise TraceFormatError(line_no, f"robot_id {robot_id} is negative")
        try:
            validate_barcode(barcode)
        except ValidationError as exc:
            raise TraceFormatError(line_no, str(exc)) from None
        try:
            issued_at = float(time_field)
        except ValueError:
            raise TraceFormatError(line_no, f"issued_at_ms {time_field!r} is not a number") from None
        if not isfinite(issued_at) or issued_at < 0:
            raise TraceFormatError(line_no, f"issued_at_ms {time_field} is not a finite non-negative time")
        if previous_time is not None and issued_at < previous_time:
            raise TraceFormatError(line_no, f"issued_at_ms decreased ({issued_at!r} after {previous_time!r})")
        previous_time = issued_at
        events.append(ScanEvent(robot_id=robot_id, barcode=barcode, issued_at=issued_at))
    return events


def write_trace(events: Iterable[ScanEvent], path: str) -> None:
    with open(path, "w", encoding="utf-8", newline="") as fh:
        save_trace(events, fh)


def read_trace(path: str) -> List[ScanEvent]:
    with open(path, "r", encoding="utf-8", newline="") as fh:
        return load_trace(fh)
