"""Input coercion and environment helpers shared by the estimator and CLI."""

from __future__ import annotations

import os
from typing import Any, Iterable

import numpy as np

from .bitops import MAX_ITEMS, encode_transaction
from .database import BitDatabase


def as_bit_database(X: Any) -> BitDatabase:
    """Coerce estimator input into a :class:`BitDatabase`.

    Accepted forms:
      - a BitDatabase (returned as-is),
      - a 2D binary incidence array of shape (n_transactions, n_items),
      - an iterable of item-id collections (ragged lists are fine).
    """
    if isinstance(X, BitDatabase):
        return X

    if isinstance(X, np.ndarray) or (
        hasattr(X, "__len__") and len(X) and isinstance(X[0], np.ndarray)
    ):
        X = np.asarray(X)

    if isinstance(X, np.ndarray):
        if X.ndim != 2:
            raise ValueError(
                f"expected a 2D incidence array, got shape {X.shape}"
            )
        n_items = X.shape[1]
        if n_items > MAX_ITEMS:
            raise ValueError(
                f"incidence array has {n_items} item columns; at most {MAX_ITEMS} supported"
            )
        dense = X.astype(bool)
        if X.dtype != bool and not np.array_equal(X, dense.astype(X.dtype)):
            raise ValueError("incidence array must contain only 0/1 values")
        weights = np.uint64(1) << np.arange(n_items, dtype=np.uint64)
        masks = (dense.astype(np.uint64) * weights).sum(axis=1, dtype=np.uint64)
        return BitDatabase(masks, m=max(n_items, 1))

    if isinstance(X, (str, bytes)):
        raise TypeError("strings are not a transaction collection")

    try:
        rows: Iterable = iter(X)
    except TypeError:
        raise TypeError(
            f"cannot interpret {type(X).__name__} as transactions"
        ) from None
    return BitDatabase([encode_transaction(row) for row in rows])


def resolve_thread_count(threads: int | None) -> int:
    """Turn an optional thread request into a concrete worker count."""
    if threads is None:
        return os.cpu_count() or 1
    if threads < 1:
        raise ValueError(f"threads must be >= 1, got {threads}")
    return threads


def physical_core_count() -> int:
    """Physical cores from /proc/cpuinfo, falling back to the logical count."""
    try:
        cores: set[tuple[str, str]] = set()
        phys = core = ""
        with open("/proc/cpuinfo", "r", encoding="utf-8") as fh:
            for line in fh:
                if line.startswith("physical id"):
                    phys = line.split(":", 1)[1].strip()
                elif line.startswith("core id"):
                    core = line.split(":", 1)[1].strip()
                    cores.add((phys, core))
        if cores:
            return len(cores)
    except OSError:
        pass
    return os.cpu_count() or 1
