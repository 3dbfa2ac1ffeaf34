"""Shared test helpers: catalog builders and a tiny independent oracle."""

from __future__ import annotations

import itertools
import math
import random

import pytest

from dicmine import BitDatabase, CountedItemset, ItemsetCatalog, Shape


def naive_frequent(masks: list[int], minsup: float) -> dict[int, int]:
    """Pure-Python frequent itemsets by direct subset enumeration.

    Deliberately reimplements everything (popcount, subsets, counting) so it
    can vouch for the numpy oracle. Only usable for tiny universes.
    """
    n = len(masks)
    need = math.ceil(minsup * n)
    items = sorted({i for mk in masks for i in range(64) if (mk >> i) & 1})
    out: dict[int, int] = {}
    for r in range(1, len(items) + 1):
        for combo in itertools.combinations(items, r):
            sub = 0
            for i in combo:
                sub |= 1 << i
            count = sum(1 for mk in masks if (mk & sub) == sub)
            if count >= need:
                out[sub] = count
    return out


def random_masks(rng: random.Random, n: int, m: int, density: float) -> list[int]:
    return [
        sum(1 << i for i in range(m) if rng.random() < density) for _ in range(n)
    ]


def make_catalog(
    dashed: list[CountedItemset] = (),
    solid: list[CountedItemset] = (),
) -> ItemsetCatalog:
    cat = ItemsetCatalog()
    for it in dashed:
        cat.dashed.append(it)
        cat.known[it.mask] = it
    for it in solid:
        cat.solid.append(it)
        cat.known[it.mask] = it
    return cat


def record(
    mask: int,
    shape: Shape,
    support: int = 0,
    intervals: int = 0,
) -> CountedItemset:
    it = CountedItemset.fresh(mask)
    it.shape = shape
    it.support = support
    it.intervals_counted = intervals
    return it


@pytest.fixture
def tiny_db() -> BitDatabase:
    # the worked three-transaction database: {0}, {0,1}, {0,1} read backwards
    return BitDatabase([0x3, 0x3, 0x1])
