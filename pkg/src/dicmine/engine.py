"""Serial and parallel dynamic-itemset-counting engines.

Both engines share the same stop-boundary phases (count, prune, generate,
finalize) and differ only in how the support count is executed: the serial
engine walks plain Python ints as an obviously-correct reference, the
parallel engine runs a vectorized kernel and fans the work out over a thread
pool. Their outputs are identical by contract, which the test suite checks
against an independent brute-force oracle.
"""

from __future__ import annotations

import threading
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import NamedTuple, Sequence

import numpy as np

from .bitops import immediate_subsets
from .database import BitDatabase
from .itemsets import CountedItemset, ItemsetCatalog, Shape, TransitionAudit
from .params import MiningParams

# Rows per kernel tile; sized so the AND/EQ temporaries stay cache-resident.
_TILE = 1 << 18


class _ScratchBuffers(threading.local):
    """Per-thread reusable kernel buffers (scratch only, overwritten freely)."""

    def get(self) -> tuple[np.ndarray, np.ndarray]:
        if not hasattr(self, "conj"):
            self.conj = np.empty(_TILE, dtype=np.uint64)
            self.hits = np.empty(_TILE, dtype=bool)
        return self.conj, self.hits


_scratch = _ScratchBuffers()


def _count_block(arr: np.ndarray, first: int, last: int, mask: int) -> int:
    """Containment count of ``mask`` over ``arr[first..last]`` (inclusive)."""
    m = np.uint64(mask)
    conj, hits = _scratch.get()
    total = 0
    pos = first
    while pos <= last:
        end = min(pos + _TILE, last + 1)
        view = arr[pos:end]
        c = conj[: end - pos]
        h = hits[: end - pos]
        np.bitwise_and(view, m, out=c)
        np.equal(c, m, out=h)
        total += int(np.count_nonzero(h))
        pos = end
    return total


def _count_block_python(seq: Sequence[int], first: int, last: int, mask: int) -> int:
    """Reference double-loop body over plain ints."""
    total = 0
    for t in seq[first : last + 1]:
        if (t & mask) == mask:
            total += 1
    return total


class FrequentItemset(NamedTuple):
    mask: int
    size: int
    support: int


@dataclass
class MiningStats:
    """Run statistics; informational only, never part of result equality."""

    db_passes: float = 0.0
    peak_dashed: int = 0
    candidates_generated: int = 0
    candidates_pruned: int = 0
    interval_counts: int = 0
    wall_time_s: float = 0.0


@dataclass(frozen=True)
class MiningResult:
    """Frequent itemsets in canonical (size, mask) order plus run stats."""

    frequent: tuple[FrequentItemset, ...]
    stats: MiningStats

    def as_dict(self) -> dict[int, int]:
        """mask -> support mapping of the frequent itemsets."""
        return {f.mask: f.support for f in self.frequent}


# ---------------------------------------------------------------------------
# Stop-boundary phases
# ---------------------------------------------------------------------------


def first_pass(
    catalog: ItemsetCatalog,
    db: BitDatabase,
    params: MiningParams,
    *,
    kernel: str = "numpy",
    pool: ThreadPoolExecutor | None = None,
    threads: int = 1,
    audit: TransitionAudit | None = None,
    stats: MiningStats | None = None,
) -> list[int]:
    """One full scan counting every 1-itemset, then seed the 2-candidates.

    Frequent 1-itemsets finalize directly to solid boxes (they are already
    fully counted), infrequent ones to solid circles. Pairwise joins of the
    frequent items enter the dashed vector as the initial candidates, which
    keeps every superset of an infrequent item out of the run for good.

    Returns the masks of the frequent 1-itemsets.
    """
    singles = [CountedItemset.fresh(1 << i) for i in range(db.m)]
    for it in singles:
        if audit is not None:
            audit.record(it.mask, None, Shape.DASHED_CIRCLE)
        catalog.register(it)

    n = db.n
    if kernel == "python":
        counts = [0] * db.m
        for t in db.as_int_list():
            while t:
                low = t & -t
                counts[low.bit_length() - 1] += 1
                t ^= low
        for it, c in zip(singles, counts):
            it.support = c
    else:
        arr = db.masks

        def run(items: list[CountedItemset]) -> None:
            for it in items:
                it.support = _count_block(arr, 0, n - 1, it.mask)

        if pool is not None and threads > 1 and len(singles) > 1:
            step = -(-len(singles) // threads)
            chunks = [singles[i : i + step] for i in range(0, len(singles), step)]
            for f in [pool.submit(run, chunk) for chunk in chunks]:
                f.result()
        else:
            run(singles)

    for it in singles:
        it.intervals_counted = params.intervals_per_pass
        if it.support >= params.min_support_count:
            catalog.transition(it, Shape.DASHED_BOX, audit)
            catalog.transition(it, Shape.SOLID_BOX, audit)
        else:
            catalog.transition(it, Shape.SOLID_CIRCLE, audit)
        catalog.solid.append(it)

    level1 = [it.mask for it in singles if it.shape is Shape.SOLID_BOX]
    for i in range(len(level1)):
        for j in range(i + 1, len(level1)):
            catalog.add_candidate(level1[i] | level1[j], audit)

    if stats is not None:
        stats.candidates_generated += len(catalog.dashed)
        stats.peak_dashed = max(stats.peak_dashed, len(catalog.dashed))
    return level1


def count_support_interval(
    catalog: ItemsetCatalog,
    db: BitDatabase,
    first: int,
    last: int,
    threads: int = 1,
    *,
    pool: ThreadPoolExecutor | None = None,
    kernel: str = "numpy",
) -> None:
    """Count every dashed itemset over the chunk ``[first, last]``.

    Each itemset's interval counter advances by one and its support grows by
    the number of chunk transactions containing it. Supports are exact
    integer counts, so the outcome is bit-identical to the serial double
    loop no matter how many threads execute it.
    """
    if not 0 <= first <= last < db.n:
        raise ValueError(f"chunk [{first}, {last}] outside database of {db.n} rows")
    dashed = catalog.dashed
    if not dashed:
        return

    if kernel == "python":
        seq = db.as_int_list()
        for it in dashed:
            it.support += _count_block_python(seq, first, last, it.mask)
            it.intervals_counted += 1
        return

    arr = db.masks
    if threads <= 1:
        for it in dashed:
            it.support += _count_block(arr, first, last, it.mask)
            it.intervals_counted += 1
        return

    own_pool = pool is None
    if own_pool:
        pool = ThreadPoolExecutor(max_workers=threads)
    try:
        if len(dashed) >= threads:
            _count_partitioned_by_itemset(dashed, arr, first, last, threads, pool)
        else:
            _count_partitioned_by_transactions(dashed, arr, first, last, threads, pool)
    finally:
        if own_pool:
            pool.shutdown()


def _count_partitioned_by_itemset(
    dashed: list[CountedItemset],
    arr: np.ndarray,
    first: int,
    last: int,
    threads: int,
    pool: ThreadPoolExecutor,
) -> None:
    # Each worker owns a disjoint slice of itemsets over the whole chunk, so
    # no two threads ever touch the same record.
    step = -(-len(dashed) // threads)
    slices = [dashed[i : i + step] for i in range(0, len(dashed), step)]

    def run(items: list[CountedItemset]) -> None:
        for it in items:
            it.support += _count_block(arr, first, last, it.mask)
            it.intervals_counted += 1

    for f in [pool.submit(run, s) for s in slices]:
        f.result()


def _count_partitioned_by_transactions(
    dashed: list[CountedItemset],
    arr: np.ndarray,
    first: int,
    last: int,
    threads: int,
    pool: ThreadPoolExecutor,
) -> None:
    # Fewer itemsets than workers: each itemset gets a group of workers that
    # scan disjoint transaction ranges; the partial counts combine by plain
    # integer addition, applied by the caller thread only.
    group = -(-threads // len(dashed))
    span = last - first + 1
    edges = [first + (span * s) // group for s in range(group + 1)]
    segments = [(edges[s], edges[s + 1] - 1) for s in range(group) if edges[s] <= edges[s + 1] - 1]

    pending = [
        (it, [pool.submit(_count_block, arr, a, b, it.mask) for a, b in segments])
        for it in dashed
    ]
    for it, futures in pending:
        it.support += sum(f.result() for f in futures)
        it.intervals_counted += 1


def prune(
    catalog: ItemsetCatalog,
    params: MiningParams,
    *,
    bound_enabled: bool = True,
    audit: TransitionAudit | None = None,
    stats: MiningStats | None = None,
) -> list[CountedItemset]:
    """Stop-boundary maintenance of the dashed circles.

    Circles whose count reached the threshold become dashed boxes. When the
    bound is enabled, a circle whose highest possible final support cannot
    reach the threshold is discarded together with every circle superset
    (a-priori principle), and the discarded entries are erased.

    Returns the itemsets promoted to boxes at this boundary.
    """
    dashed = catalog.dashed
    need = params.min_support_count
    promoted: list[CountedItemset] = []
    for it in dashed:
        if it.shape is not Shape.DASHED_CIRCLE:
            continue
        if it.support >= need:
            catalog.transition(it, Shape.DASHED_BOX, audit)
            promoted.append(it)
        elif bound_enabled and it.intervals_counted < params.intervals_per_pass:
            # Remaining chunks hold at most ``interval`` transactions each;
            # the ragged tail chunk only makes this an over-estimate, so the
            # bound can never discard a viable itemset. Fully counted circles
            # are not "clearly infrequent" but confirmed ones: they belong to
            # check_full_pass, which files them as solid circles.
            remaining = params.intervals_per_pass - it.intervals_counted
            ceiling = it.support + params.interval * remaining
            if ceiling < need:
                catalog.transition(it, Shape.NIL, audit)
                if stats is not None:
                    stats.candidates_pruned += 1
                for other in dashed:
                    if other.shape is Shape.DASHED_CIRCLE and (it.mask & other.mask) == it.mask:
                        catalog.transition(other, Shape.NIL, audit)
                        if stats is not None:
                            stats.candidates_pruned += 1
    catalog.compact_dashed()
    return promoted


def make_candidates(
    catalog: ItemsetCatalog,
    params: MiningParams,
    *,
    frontier: list[CountedItemset] | None = None,
    level1: list[int] | None = None,
    audit: TransitionAudit | None = None,
    stats: MiningStats | None = None,
) -> int:
    """Insert new (k+1)-candidates joined from box itemsets and frequent items.

    A join is admitted when the union is genuinely one item larger, its mask
    has never been created before, and every immediate subset is currently a
    box. ``frontier``, when given, restricts the outer loop to itemsets that
    became boxes at this boundary; any candidate that first became admissible
    now has one of those as an immediate subset, so nothing is lost.

    Returns the number of candidates inserted.
    """
    if level1 is None:
        level1 = sorted(
            it.mask for it in catalog.known.values() if it.size == 1 and it.shape.is_box
        )
    if frontier is None:
        sources = [it for it in list(catalog.dashed) + catalog.solid if it.shape.is_box]
    else:
        sources = frontier

    known = catalog.known
    inserted = 0
    for src in sources:
        if not src.shape.is_box:
            continue
        base = src.mask
        for one in level1:
            cand = base | one
            if cand == base or cand in known:
                continue
            admissible = True
            for sub in immediate_subsets(cand):
                rec = known.get(sub)
                if rec is None or not rec.shape.is_box:
                    admissible = False
                    break
            if admissible:
                catalog.add_candidate(cand, audit)
                inserted += 1
    if stats is not None:
        stats.candidates_generated += inserted
    return inserted


def check_full_pass(
    catalog: ItemsetCatalog,
    params: MiningParams,
    *,
    audit: TransitionAudit | None = None,
    stats: MiningStats | None = None,
) -> int:
    """Finalize dashed itemsets that have now been counted over every chunk."""
    finalized = 0
    for it in catalog.dashed:
        if it.shape.is_dashed and it.intervals_counted == params.intervals_per_pass:
            if it.support >= params.min_support_count:
                catalog.transition(it, Shape.SOLID_BOX, audit)
            else:
                catalog.transition(it, Shape.SOLID_CIRCLE, audit)
            catalog.solid.append(it)
            finalized += 1
    catalog.compact_dashed()
    return finalized


# ---------------------------------------------------------------------------
# Engines
# ---------------------------------------------------------------------------


def _run(
    db: BitDatabase,
    params: MiningParams,
    *,
    kernel: str,
    threads: int,
    prune_bound: bool,
    audit: TransitionAudit | None,
) -> MiningResult:
    if params.n != db.n:
        raise ValueError(f"params were built for n={params.n}, database has n={db.n}")

    t0 = time.perf_counter()
    stats = MiningStats()
    catalog = ItemsetCatalog()
    pool = ThreadPoolExecutor(max_workers=threads) if threads > 1 else None
    scanned = 0
    try:
        level1 = first_pass(
            catalog, db, params,
            kernel=kernel, pool=pool, threads=threads, audit=audit, stats=stats,
        )
        scanned += db.n

        stop = 0
        while catalog.dashed:
            stop += 1
            if stop > params.intervals_per_pass:
                stop = 1  # rewind: wrap back to the first chunk
            first, last = params.chunk_bounds(stop)
            stats.interval_counts += len(catalog.dashed)
            count_support_interval(
                catalog, db, first, last, threads, pool=pool, kernel=kernel
            )
            scanned += last - first + 1
            promoted = prune(
                catalog, params, bound_enabled=prune_bound, audit=audit, stats=stats
            )
            make_candidates(
                catalog, params, frontier=promoted, level1=level1,
                audit=audit, stats=stats,
            )
            stats.peak_dashed = max(stats.peak_dashed, len(catalog.dashed))
            check_full_pass(catalog, params, audit=audit, stats=stats)
    finally:
        if pool is not None:
            pool.shutdown()

    frequent = tuple(
        sorted(
            (
                FrequentItemset(it.mask, it.size, it.support)
                for it in catalog.solid
                if it.shape is Shape.SOLID_BOX
            ),
            key=lambda f: (f.size, f.mask),
        )
    )
    stats.db_passes = scanned / db.n
    stats.wall_time_s = time.perf_counter() - t0
    return MiningResult(frequent=frequent, stats=stats)


def mine_serial(
    db: BitDatabase,
    params: MiningParams,
    *,
    prune_bound: bool = True,
    audit: TransitionAudit | None = None,
) -> MiningResult:
    """Reference engine: single-threaded counting over plain Python ints.

    Ignores ``params.threads``. Meant for verification and small inputs, not
    throughput.
    """
    return _run(
        db, params, kernel="python", threads=1, prune_bound=prune_bound, audit=audit
    )


def mine_parallel(
    db: BitDatabase,
    params: MiningParams,
    *,
    prune_bound: bool = True,
    audit: TransitionAudit | None = None,
) -> MiningResult:
    """Data-parallel engine; output is identical to ``mine_serial``.

    Within every stop the dashed itemsets are counted fork-join style: when
    there are at least as many itemsets as workers, each worker owns a
    disjoint slice of itemsets; otherwise each itemset's transaction range is
    split across a group of workers whose partial counts are summed. With
    ``params.threads == 1`` everything runs inline on the calling thread.
    """
    return _run(
        db, params,
        kernel="numpy", threads=params.threads, prune_bound=prune_bound, audit=audit,
    )
