"""End-to-end engine behavior: worked examples, oracle equality, invariants."""

import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from dicmine import (
    LEGAL_TRANSITIONS,
    BitDatabase,
    MiningParams,
    TransitionAudit,
    bruteforce_frequent,
    cardinality,
    containment_counts,
    mine_parallel,
    mine_serial,
)
from conftest import naive_frequent, random_masks


def frequent_pairs(result):
    return tuple((f.mask, f.support) for f in result.frequent)


class TestWorkedExamples:
    def test_serial_three_transactions(self, tiny_db):
        params = MiningParams.create(3, 0.5, interval=2)
        result = mine_serial(tiny_db, params)
        assert frequent_pairs(result) == ((0x1, 3), (0x2, 2), (0x3, 2))

    def test_serial_single_transaction(self):
        db = BitDatabase([0x1])
        result = mine_serial(db, MiningParams.create(1, 1.0))
        assert frequent_pairs(result) == ((0x1, 1),)

    def test_overlarge_minsup_rejected_at_params(self):
        with pytest.raises(ValueError):
            MiningParams.create(3, 1.5)

    def test_parallel_matches_serial_on_example(self, tiny_db):
        ps = MiningParams.create(3, 0.5, interval=2)
        pp = MiningParams.create(3, 0.5, interval=2, threads=4)
        assert frequent_pairs(mine_parallel(tiny_db, pp)) == frequent_pairs(
            mine_serial(tiny_db, ps)
        )

    def test_parallel_single_thread_degenerates(self, tiny_db):
        pp = MiningParams.create(3, 0.5, interval=2, threads=1)
        assert frequent_pairs(mine_parallel(tiny_db, pp)) == (
            (0x1, 3),
            (0x2, 2),
            (0x3, 2),
        )

    def test_nested_mode_with_few_candidates(self):
        # two items only: the dashed vector holds a single pair, far fewer
        # than the eight requested workers, so the transaction range splits
        masks = [0x3, 0x3, 0x1, 0x2, 0x3, 0x3, 0x2, 0x3]
        db = BitDatabase(masks)
        want = frequent_pairs(mine_serial(db, MiningParams.create(8, 0.25, interval=3)))
        got = frequent_pairs(
            mine_parallel(db, MiningParams.create(8, 0.25, interval=3, threads=8))
        )
        assert got == want

    def test_result_ordering_is_size_then_mask(self):
        db = BitDatabase([0x7, 0x7, 0x7, 0x6])
        result = mine_serial(db, MiningParams.create(4, 0.5))
        keys = [(f.size, f.mask) for f in result.frequent]
        assert keys == sorted(keys)

    def test_params_database_mismatch_rejected(self, tiny_db):
        with pytest.raises(ValueError):
            mine_serial(tiny_db, MiningParams.create(7, 0.5))


class TestOracleEquivalence:
    @pytest.mark.parametrize("seed", range(6))
    def test_engines_match_naive_enumeration(self, seed):
        rng = random.Random(seed)
        masks = random_masks(rng, rng.randint(1, 60), rng.randint(1, 7), rng.uniform(0.1, 0.7))
        db = BitDatabase(masks)
        for minsup in (0.05, 0.25, 0.5, 1.0):
            want = naive_frequent(masks, minsup)
            params = MiningParams.create(db.n, minsup, interval=max(1, db.n // 3))
            assert dict(frequent_pairs(mine_serial(db, params))) == want
            pp = MiningParams.create(db.n, minsup, interval=max(1, db.n // 3), threads=3)
            assert dict(frequent_pairs(mine_parallel(db, pp))) == want

    @given(
        masks=st.lists(st.integers(0, 2**8 - 1), min_size=1, max_size=48),
        minsup=st.sampled_from([0.05, 0.1, 0.25, 0.5, 1.0]),
        interval_frac=st.floats(0.05, 1.0),
        threads=st.sampled_from([1, 2, 4, 8]),
    )
    @settings(max_examples=40, deadline=None)
    def test_engines_match_oracle(self, masks, minsup, interval_frac, threads):
        db = BitDatabase(masks, m=8)
        interval = max(1, min(db.n, int(db.n * interval_frac)))
        want = bruteforce_frequent(db, minsup).as_dict()
        ps = MiningParams.create(db.n, minsup, interval=interval)
        pp = MiningParams.create(db.n, minsup, interval=interval, threads=threads)
        assert dict(frequent_pairs(mine_serial(db, ps))) == want
        assert dict(frequent_pairs(mine_parallel(db, pp))) == want


class TestInvariants:
    def dbs(self, count=8, seed=99):
        rng = random.Random(seed)
        out = []
        for _ in range(count):
            n = rng.randint(4, 120)
            m = rng.randint(2, 10)
            out.append(BitDatabase(random_masks(rng, n, m, rng.uniform(0.15, 0.6)), m=m))
        return out

    def test_interval_invariance(self):
        for db in self.dbs():
            n = db.n
            baseline = None
            for interval in {1, min(2, n), (n + 1) // 2, n}:
                params = MiningParams.create(n, 0.25, interval=interval)
                got = frequent_pairs(mine_serial(db, params))
                if baseline is None:
                    baseline = got
                else:
                    assert got == baseline, f"interval={interval} changed the result"

    def test_thread_invariance(self):
        for db in self.dbs(count=5, seed=307):
            baseline = None
            for threads in (1, 2, 4, 8):
                params = MiningParams.create(db.n, 0.2, threads=threads)
                got = frequent_pairs(mine_parallel(db, params))
                if baseline is None:
                    baseline = got
                else:
                    assert got == baseline

    def test_downward_closure_of_output(self):
        for db in self.dbs(count=6, seed=41):
            result = mine_serial(db, MiningParams.create(db.n, 0.2))
            table = dict(frequent_pairs(result))
            for mask, support in table.items():
                sub = (mask - 1) & mask
                while sub:
                    assert sub in table
                    assert table[sub] >= support
                    sub = (sub - 1) & mask

    def test_support_exactness(self):
        for db in self.dbs(count=6, seed=77):
            masks = list(db)
            result = mine_serial(db, MiningParams.create(db.n, 0.3))
            for f in result.frequent:
                brute = sum(1 for t in masks if (t & f.mask) == f.mask)
                assert f.support == brute
                assert cardinality(f.mask) == f.size

    def test_prune_bound_never_changes_results(self):
        for db in self.dbs(count=6, seed=1234):
            # a small interval makes the bound actually fire
            interval = max(1, db.n // 8)
            params = MiningParams.create(db.n, 0.4, interval=interval)
            on = mine_serial(db, params, prune_bound=True)
            off = mine_serial(db, params, prune_bound=False)
            assert frequent_pairs(on) == frequent_pairs(off)
            assert on.stats.candidates_generated <= off.stats.candidates_generated
            assert on.stats.interval_counts <= off.stats.interval_counts

    def test_lifecycle_transitions_are_legal(self):
        for db in self.dbs(count=6, seed=5150):
            for runner, threads in ((mine_serial, 1), (mine_parallel, 4)):
                audit = TransitionAudit()
                params = MiningParams.create(
                    db.n, 0.25, interval=max(1, db.n // 4), threads=threads
                )
                runner(db, params, audit=audit)
                assert audit.illegal() == []
                seen = {(old, new) for _, old, new in audit.transitions}
                assert seen <= LEGAL_TRANSITIONS

    def test_stats_are_engine_independent(self, tiny_db):
        ps = MiningParams.create(3, 0.5, interval=1)
        pp = MiningParams.create(3, 0.5, interval=1, threads=4)
        a = mine_serial(tiny_db, ps).stats
        b = mine_parallel(tiny_db, pp).stats
        assert (a.candidates_generated, a.candidates_pruned, a.peak_dashed) == (
            b.candidates_generated,
            b.candidates_pruned,
            b.peak_dashed,
        )
        assert a.db_passes == b.db_passes

    def test_solid_circles_are_retained_not_reported(self):
        db = BitDatabase([0x3, 0x1, 0x1, 0x1])
        params = MiningParams.create(4, 0.5, interval=2)
        result = mine_serial(db, params)
        # {1} is frequent? support of 0x2 is 1 < 2, so item 1 is a solid circle
        assert 0x2 not in dict(frequent_pairs(result))

    def test_oracle_counts_reusable_across_thresholds(self):
        db = BitDatabase([0x3, 0x3, 0x1])
        counts = containment_counts(db)
        for minsup in (0.1, 0.5, 1.0):
            a = bruteforce_frequent(db, minsup, counts)
            b = bruteforce_frequent(db, minsup)
            assert a == b
