"""Scalability measurement: run times, speedup s(k), efficiency e(k).

Speedup of a run with k worker threads is t_1/t_k against the same engine at
one thread; efficiency divides that by k. The harness refuses to report
timings unless every run returned the same frequent set, because timing a
wrong answer means nothing.
"""

from __future__ import annotations

import datetime as _dt
import json
import time
from dataclasses import dataclass, field
from pathlib import Path
from typing import Callable, Sequence

from .database import BitDatabase
from .engine import MiningResult, mine_parallel
from .errors import CorrectnessFailure
from .params import MiningParams, default_interval

__all__ = ["ScalingRow", "ScalingReport", "run_scaling", "default_interval"]

CSV_HEADER = "threads,time_s,speedup,efficiency"


@dataclass(frozen=True)
class ScalingRow:
    threads: int
    time_s: float
    speedup: float
    efficiency: float


@dataclass
class ScalingReport:
    rows: list[ScalingRow]
    metadata: dict = field(default_factory=dict)

    def to_csv(self) -> str:
        lines = [CSV_HEADER]
        for r in self.rows:
            lines.append(f"{r.threads},{r.time_s!r},{r.speedup!r},{r.efficiency!r}")
        return "\n".join(lines) + "\n"

    def write_csv(self, path: str | Path) -> None:
        Path(path).write_text(self.to_csv(), encoding="utf-8")

    def write_metadata(self, path: str | Path) -> None:
        Path(path).write_text(
            json.dumps(self.metadata, indent=2, sort_keys=True) + "\n",
            encoding="utf-8",
        )


def run_scaling(
    db: BitDatabase,
    minsup: float,
    interval: int | None,
    thread_counts: Sequence[int],
    repetitions: int = 3,
    dataset: str = "unknown",
    mine: Callable[[BitDatabase, MiningParams], MiningResult] = mine_parallel,
) -> ScalingReport:
    """Time the parallel engine across thread counts.

    Each thread count runs ``repetitions`` times and keeps the minimum wall
    time (least OS noise). The frequent sets of all runs must agree exactly,
    otherwise :class:`CorrectnessFailure` is raised and nothing is reported.
    ``thread_counts`` must include 1, the baseline that defines speedup.
    """
    thread_counts = list(thread_counts)
    if 1 not in thread_counts:
        raise ValueError("thread_counts must include 1 (the speedup baseline)")
    if repetitions < 1:
        raise ValueError(f"repetitions must be >= 1, got {repetitions}")
    if interval is None:
        interval = default_interval(db.n)

    reference: MiningResult | None = None
    best: dict[int, float] = {}
    for k in thread_counts:
        params = MiningParams.create(db.n, minsup, interval, threads=k)
        for _ in range(repetitions):
            t0 = time.perf_counter()
            result = mine(db, params)
            elapsed = time.perf_counter() - t0
            if reference is None:
                reference = result
            elif result.frequent != reference.frequent:
                raise CorrectnessFailure(
                    f"run with {k} threads disagrees with the reference frequent set "
                    f"({len(result.frequent)} vs {len(reference.frequent)} itemsets)"
                )
            best[k] = min(best.get(k, float("inf")), elapsed)

    t1 = best[1]
    rows = [
        ScalingRow(
            threads=k,
            time_s=best[k],
            speedup=t1 / best[k],
            efficiency=t1 / best[k] / k,
        )
        for k in thread_counts
    ]
    metadata = {
        "dataset": dataset,
        "n": db.n,
        "m": db.m,
        "minsup": minsup,
        "M": interval,
        "repetitions": repetitions,
        "timestamp": _dt.datetime.now(_dt.timezone.utc).isoformat(),
    }
    return ScalingReport(rows=rows, metadata=metadata)
