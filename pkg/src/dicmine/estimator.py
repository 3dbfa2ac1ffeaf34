"""Scikit-learn style front end for the mining engines."""

from __future__ import annotations

import numpy as np
from sklearn.base import BaseEstimator, TransformerMixin
from sklearn.exceptions import NotFittedError

from ._validation import as_bit_database, resolve_thread_count
from .engine import mine_parallel, mine_serial
from .itemsets import TransitionAudit
from .params import MiningParams


class DicMiner(BaseEstimator, TransformerMixin):
    """Frequent-itemset miner with a fit/transform interface.

    ``fit`` mines all itemsets whose support fraction reaches ``minsup``;
    ``transform`` then maps transactions onto a boolean containment matrix
    with one column per discovered itemset, usable as pattern features in any
    scikit-learn pipeline.

    Parameters
    ----------
    minsup : float in (0, 1], default 0.1
        Minimum support fraction for an itemset to count as frequent.
    interval : int or None, default None
        Transactions scanned between stops. None picks half the database,
        the low-overhead default.
    threads : int or None, default None
        Worker threads for the parallel engine. None uses all logical cores.
    engine : {"parallel", "serial"}, default "parallel"
        "serial" runs the plain reference engine (slow, for verification).
    prune_bound : bool, default True
        Discard itemsets whose best reachable support is provably below the
        threshold. Disabling only affects work done, never the result.

    Attributes
    ----------
    itemset_masks_ : np.ndarray of uint64
        Frequent itemsets as bit masks, canonical (size, mask) order.
    supports_ : np.ndarray of int64
        Exact containment counts, aligned with ``itemset_masks_``.
    itemsets_ : list of tuple of int
        The same itemsets as sorted item-id tuples.
    n_items_ : int
        Size of the item universe seen during fit.
    stats_ : MiningStats
        Run statistics of the fit.
    """

    def __init__(
        self,
        minsup: float = 0.1,
        interval: int | None = None,
        threads: int | None = None,
        engine: str = "parallel",
        prune_bound: bool = True,
    ):
        self.minsup = minsup
        self.interval = interval
        self.threads = threads
        self.engine = engine
        self.prune_bound = prune_bound

    def fit(self, X, y=None, audit: TransitionAudit | None = None):
        """Mine the frequent itemsets of ``X``."""
        if self.engine not in ("parallel", "serial"):
            raise ValueError(f"engine must be 'parallel' or 'serial', got {self.engine!r}")
        db = as_bit_database(X)
        params = MiningParams.create(
            db.n,
            self.minsup,
            interval=self.interval,
            threads=resolve_thread_count(self.threads),
        )
        runner = mine_serial if self.engine == "serial" else mine_parallel
        result = runner(db, params, prune_bound=self.prune_bound, audit=audit)

        from .bitops import items_of

        self.result_ = result
        self.stats_ = result.stats
        self.n_items_ = db.m
        self.itemset_masks_ = np.array([f.mask for f in result.frequent], dtype=np.uint64)
        self.supports_ = np.array([f.support for f in result.frequent], dtype=np.int64)
        self.itemsets_ = [tuple(items_of(f.mask)) for f in result.frequent]
        return self

    def transform(self, X) -> np.ndarray:
        """Boolean matrix: entry (j, p) says pattern p occurs in transaction j."""
        if not hasattr(self, "itemset_masks_"):
            raise NotFittedError("DicMiner must be fitted before calling transform")
        db = as_bit_database(X)
        rows = db.masks
        out = np.empty((db.n, self.itemset_masks_.size), dtype=bool)
        for p, mask in enumerate(self.itemset_masks_):
            np.equal(rows & mask, mask, out=out[:, p])
        return out

    def get_feature_names_out(self, input_features=None) -> np.ndarray:
        if not hasattr(self, "itemsets_"):
            raise NotFittedError("DicMiner must be fitted first")
        return np.array(
            ["itemset_" + "_".join(map(str, items)) for items in self.itemsets_],
            dtype=object,
        )
