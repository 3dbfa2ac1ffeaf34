"""Mining parameters and the thresholds derived from them."""

from __future__ import annotations

import math
from dataclasses import dataclass


def default_interval(n: int) -> int:
    """Default stop interval: half the database, the configuration that keeps
    per-stop overhead lowest. Degenerates to a single chunk for n < 2."""
    if n < 2:
        return n
    return (n + 1) // 2


def absolute_support(minsup: float, n: int) -> int:
    """Convert a fractional support threshold into a transaction count."""
    return math.ceil(minsup * n)


@dataclass(frozen=True)
class MiningParams:
    """Validated knobs for one mining run.

    ``min_support_count`` and ``intervals_per_pass`` are derived, not free:
    an itemset is frequent when its exact count reaches ``min_support_count``,
    and it is fully counted after ``intervals_per_pass`` chunk visits.
    """

    minsup: float
    interval: int
    threads: int
    n: int
    min_support_count: int
    intervals_per_pass: int

    @classmethod
    def create(
        cls,
        n: int,
        minsup: float,
        interval: int | None = None,
        threads: int = 1,
    ) -> "MiningParams":
        if n < 1:
            raise ValueError("database must hold at least one transaction")
        if not 0.0 < minsup <= 1.0:
            raise ValueError(f"minsup must lie in (0, 1], got {minsup}")
        if interval is None:
            interval = default_interval(n)
        if not 1 <= interval <= n:
            raise ValueError(f"interval must lie in [1, {n}], got {interval}")
        if threads < 1:
            raise ValueError(f"threads must be >= 1, got {threads}")
        count = absolute_support(minsup, n)
        per_pass = -(-n // interval)
        return cls(
            minsup=minsup,
            interval=interval,
            threads=threads,
            n=n,
            min_support_count=count,
            intervals_per_pass=per_pass,
        )

    def chunk_bounds(self, stop: int) -> tuple[int, int]:
        """Inclusive [first, last] transaction range of chunk ``stop`` (1-based).

        Chunks are disjoint and cover the database; the final chunk may be
        shorter when the interval does not divide n.
        """
        first = (stop - 1) * self.interval
        last = min(stop * self.interval, self.n) - 1
        return first, last
