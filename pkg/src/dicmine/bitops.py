"""Bit-packed itemset primitives.

Transactions and itemsets are encoded as one 64-bit word: bit ``p`` is set
exactly when item ``p`` is present. The whole engine rests on the identity
``itemset AND transaction == itemset`` being a subset test, so everything
here stays a plain function over integers.
"""

from __future__ import annotations

from typing import Iterable, Iterator

import numpy as np

from .errors import ItemOutOfRange

#: Number of items one machine word can hold. Fixed: masks are single words.
MAX_ITEMS = 64

#: Mask with all 64 item bits set.
FULL_UNIVERSE = (1 << MAX_ITEMS) - 1


def encode_transaction(items: Iterable[int]) -> int:
    """Encode a sequence of item ids as a 64-bit mask.

    Duplicate ids collapse into one bit; order does not matter.

    Raises:
        ItemOutOfRange: if any id is negative or >= 64.
    """
    mask = 0
    for item in items:
        if not 0 <= item < MAX_ITEMS:
            raise ItemOutOfRange(item)
        mask |= 1 << item
    return mask


def contains(itemset: int, transaction: int) -> bool:
    """True when every item of ``itemset`` occurs in ``transaction``."""
    return (itemset & transaction) == itemset


def join(a: int, b: int) -> int:
    """Union of two itemsets (bitwise OR)."""
    return a | b


def cardinality(mask: int) -> int:
    """Number of items in the itemset (population count)."""
    return bin(mask).count("1")


def items_of(mask: int) -> Iterator[int]:
    """Yield the item ids of a mask in ascending order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def immediate_subsets(mask: int) -> Iterator[int]:
    """Yield every mask obtained by removing exactly one item."""
    rest = mask
    while rest:
        low = rest & -rest
        yield mask ^ low
        rest ^= low


def popcounts(masks: np.ndarray) -> np.ndarray:
    """Per-element population count of a uint64 array."""
    return np.bitwise_count(masks)
