"""Shared builders for simulator-level tests."""

from __future__ import annotations

from robocache.config import SimConfig
from robocache.knowledge_base import BarcodeRecord, KnowledgeBase
from robocache.netlink import LinkConfig
from robocache.workload import WorkloadConfig


def make_sim_config(**overrides) -> SimConfig:
    workload = overrides.pop(
        "workload",
        WorkloadConfig(
            total_scans=10,
            unique_barcodes=5,
            skew=1.0,
            robots=1,
            inter_arrival_ms=5.0,
            seed=overrides.get("seed", 1),
        ),
    )
    link = overrides.pop(
        "link",
        LinkConfig(
            one_way_latency_ms=250.0,
            loss_probability=0.0,
            lock_probability=0.0,
            lock_stall_ms=40.0,
            retransmit_timeout_ms=600.0,
        ),
    )
    values = dict(
        workload=workload,
        link=link,
        cache_capacity=2,
        cache_probe_time_ms=0.01,
        db_probe_time_ms=10.0,
        kb_path="unused.dat",
        trace_path="unused.csv",
        alert_threshold_minutes=20.0,
        seed=1,
        output_dir="out",
    )
    values.update(overrides)
    return SimConfig(**values)


def make_kb(barcodes) -> KnowledgeBase:
    kb = KnowledgeBase()
    for index, barcode in enumerate(barcodes):
        kb.add(
            BarcodeRecord.build(
                barcode=barcode,
                shipper_number=f"SHIP{index:05d}",
                service_type="GRND",
                destination_terminal=f"T{barcode[0:4]}00D",
                delivery_exceptions="FRAGILE" if index % 3 == 0 else "",
            )
        )
    return kb
