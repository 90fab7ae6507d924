"""Hit-ordered scan cache and trace-driven satellite-link simulator.

A fleet of mobile robots scans barcodes and needs a routing decision for
each scan. The baseline method asks the remote station for every scan;
the cached method gives each robot a small local cache ordered by hit
counters so popular barcodes resolve without touching the link. This
package provides the cache itself, the knowledge base it fronts, the
link and workload models, the deterministic simulator, and the
four-row performance report comparing the two methods.
"""

from .cache import CacheEntry, HitOrderedCache, HitSnapshot, LookupResult, validate_barcode
from .config import SimConfig, load_config
from .errors import (
    ConfigError,
    DuplicateKeyError,
    IngestError,
    MissingRecordError,
    SimulationError,
    TraceFormatError,
    ValidationError,
)
from .knowledge_base import (
    BarcodeRecord,
    DecisionPayload,
    KnowledgeBase,
    ResolveResult,
    index_probe_cost,
    ingest,
    load_kb,
    save_kb,
)
from .metrics import (
    AlertPolicy,
    AlertResult,
    ComparisonTable,
    MetricsReport,
    check_alert,
    compare,
    summarize,
)
from .netlink import LinkConfig, LinkStats, SatelliteLink, TransmitOutcome
from .simulator import (
    MethodKind,
    RobotState,
    RunCounters,
    RunResult,
    replay_deterministic,
    result_digest,
    run,
)
from .workload import (
    ScanEvent,
    WorkloadConfig,
    barcode_for_rank,
    generate,
    load_trace,
    read_trace,
    save_trace,
    write_trace,
    zipf_probabilities,
)

__version__ = "0.1.0"

__all__ = [
    "AlertPolicy",
    "AlertResult",
    "BarcodeRecord",
    "CacheEntry",
    "ComparisonTable",
    "ConfigError",
    "DecisionPayload",
    "DuplicateKeyError",
    "HitOrderedCache",
    "HitSnapshot",
    "IngestError",
    "KnowledgeBase",
    "LinkConfig",
    "LinkStats",
    "LookupResult",
    "MethodKind",
    "MetricsReport",
    "MissingRecordError",
    "ResolveResult",
    "RobotState",
    "RunCounters",
    "RunResult",
    "SatelliteLink",
    "ScanEvent",
    "SimConfig",
    "SimulationError",
    "TraceFormatError",
    "TransmitOutcome",
    "ValidationError",
    "WorkloadConfig",
    "barcode_for_rank",
    "check_alert",
    "compare",
    "generate",
    "index_probe_cost",
    "ingest",
    "load_config",
    "load_kb",
    "load_trace",
    "read_trace",
    "replay_deterministic",
    "result_digest",
    "run",
    "save_kb",
    "save_trace",
    "summarize",
    "validate_barcode",
    "write_trace",
    "zipf_probabilities",
]
