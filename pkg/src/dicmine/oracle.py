"""Brute-force frequent-itemset reference.

Exists to be obviously correct: enumerate every candidate mask over the items
that actually occur and count containment by a linear scan of the database.
No shared logic with the mining engines beyond the bit primitives.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .bitops import cardinality
from .database import BitDatabase
from .errors import UniverseTooLarge

#: Enumeration is 2^m; past 20 items it stops being a practical oracle.
MAX_ORACLE_ITEMS = 20


@dataclass(frozen=True)
class OracleResult:
    """Frequent (mask, support) pairs in canonical (size, mask) order."""

    frequent: tuple[tuple[int, int], ...]

    def as_dict(self) -> dict[int, int]:
        return dict(self.frequent)


def containment_counts(db: BitDatabase) -> dict[int, int]:
    """Exact support count of every nonempty mask over the occurring items.

    Masks built only from bits present in the database; anything else has
    count zero and can never be frequent.
    """
    if db.m > MAX_ORACLE_ITEMS:
        raise UniverseTooLarge(
            f"brute-force enumeration supports at most {MAX_ORACLE_ITEMS} items, "
            f"database declares {db.m}"
        )
    arr = db.masks
    universe = db.union_mask()
    counts: dict[int, int] = {}
    sub = universe
    while sub:
        marker = np.uint64(sub)
        counts[sub] = int(np.count_nonzero((arr & marker) == marker))
        sub = (sub - 1) & universe
    return counts


def bruteforce_frequent(
    db: BitDatabase,
    minsup: float,
    counts: dict[int, int] | None = None,
) -> OracleResult:
    """All itemsets whose containment count reaches ceil(minsup * n).

    ``counts`` may carry a precomputed table from :func:`containment_counts`
    so several thresholds can be applied to one database cheaply.
    """
    if not 0.0 < minsup <= 1.0:
        raise ValueError(f"minsup must lie in (0, 1], got {minsup}")
    if counts is None:
        counts = containment_counts(db)
    need = math.ceil(minsup * db.n)
    kept = [(mask, c) for mask, c in counts.items() if c >= need]
    kept.sort(key=lambda mc: (cardinality(mc[0]), mc[0]))
    return OracleResult(frequent=tuple(kept))
