"""In-memory bit representation of a transactional database."""

from __future__ import annotations

from typing import Iterable, Iterator, Sequence

import numpy as np

from .bitops import MAX_ITEMS
from .errors import EmptyDatabase, ItemOutOfRange


class BitDatabase:
    """An immutable array of transaction masks.

    One ``uint64`` per transaction, bit ``p`` set when item ``p`` occurs.
    The array is read-only after construction so any number of workers can
    scan it concurrently.
    """

    __slots__ = ("_masks", "_m", "_ints")

    def __init__(self, masks: Sequence[int] | np.ndarray, m: int | None = None):
        if isinstance(masks, np.ndarray):
            arr = np.array(masks, dtype=np.uint64)
        else:
            arr = np.fromiter((int(v) for v in masks), dtype=np.uint64)
        if arr.ndim != 1:
            raise ValueError("masks must be a one-dimensional sequence")
        if arr.size == 0:
            raise EmptyDatabase("database holds zero transactions")
        arr.setflags(write=False)

        used_bits = int(arr.max()).bit_length()
        if m is None:
            m = max(used_bits, 1)
        elif not 1 <= m <= MAX_ITEMS:
            raise ValueError(f"item universe size must be in [1, {MAX_ITEMS}], got {m}")
        elif used_bits > m:
            raise ItemOutOfRange(used_bits - 1)

        self._masks = arr
        self._m = m
        self._ints: list[int] | None = None

    @property
    def masks(self) -> np.ndarray:
        """The read-only uint64 mask array."""
        return self._masks

    @property
    def n(self) -> int:
        """Number of transactions."""
        return int(self._masks.size)

    @property
    def m(self) -> int:
        """Item universe size (<= 64)."""
        return self._m

    def as_int_list(self) -> list[int]:
        """Masks as plain Python ints, cached. Used by the serial engine."""
        if self._ints is None:
            self._ints = [int(v) for v in self._masks]
        return self._ints

    def union_mask(self) -> int:
        """OR of all transaction masks: the items that actually occur."""
        return int(np.bitwise_or.reduce(self._masks))

    def __len__(self) -> int:
        return self.n

    def __getitem__(self, j: int) -> int:
        return int(self._masks[j])

    def __iter__(self) -> Iterator[int]:
        return iter(self.as_int_list())

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, BitDatabase):
            return NotImplemented
        return self._m == other._m and np.array_equal(self._masks, other._masks)

    def __repr__(self) -> str:
        return f"BitDatabase(n={self.n}, m={self._m})"


def database_from_transactions(transactions: Iterable[Iterable[int]]) -> BitDatabase:
    """Build a BitDatabase from id lists, deduplicating items per transaction."""
    from .bitops import encode_transaction

    return BitDatabase([encode_transaction(t) for t in transactions])
