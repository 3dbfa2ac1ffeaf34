import numpy as np
import pytest

from dicmine import (
    BitDatabase,
    DatasetSpec,
    EmptyDatabase,
    FormatError,
    ItemOutOfRange,
    ParseError,
    SpecError,
    generate_synthetic,
    item_frequencies,
    load_bitdb,
    load_transactions,
    load_transactions_with_report,
    save_bitdb,
    save_transactions,
    sniff_format,
)
from dicmine.bitops import popcounts
from dicmine.datasets import MAGIC


# ---------------------------------------------------------------------------
# Text format
# ---------------------------------------------------------------------------


def write(tmp_path, text, name="data.txt"):
    p = tmp_path / name
    p.write_text(text, encoding="utf-8")
    return p


def test_load_basic(tmp_path):
    db = load_transactions(write(tmp_path, "0 2\n1\n"))
    assert list(db) == [0x5, 0x2]


def test_load_reports_dedup(tmp_path):
    db, report = load_transactions_with_report(write(tmp_path, "0 0 0\n"))
    assert list(db) == [0x1]
    assert report.deduplicated == 2
    assert report.transactions == 1


def test_load_rejects_out_of_universe(tmp_path):
    with pytest.raises(ItemOutOfRange) as exc:
        load_transactions(write(tmp_path, "0 99\n"))
    assert exc.value.line == 1
    assert exc.value.item == 99


def test_load_rejects_garbage_tokens(tmp_path):
    with pytest.raises(ParseError) as exc:
        load_transactions(write(tmp_path, "0 1\n2 x 3\n"))
    assert exc.value.line == 2
    assert exc.value.token == "x"


def test_load_skips_comments_and_blanks(tmp_path):
    db = load_transactions(write(tmp_path, "# header\n\n0 1\n\n# tail\n2\n"))
    assert list(db) == [0x3, 0x4]


def test_load_tolerates_crlf_and_stray_spaces(tmp_path):
    p = tmp_path / "crlf.txt"
    p.write_bytes(b"0 1\r\n 2  3 \r\n")
    assert list(load_transactions(p)) == [0x3, 0xC]


def test_load_empty_file_rejected(tmp_path):
    with pytest.raises(EmptyDatabase):
        load_transactions(write(tmp_path, "# nothing\n\n"))


def test_text_round_trip(tmp_path):
    db = BitDatabase([0x5, 0x2, 0x8000000000000001])
    p = tmp_path / "t.txt"
    save_transactions(db, p)
    again = load_transactions(p)
    assert np.array_equal(again.masks, db.masks)
    # second write is byte-identical: the text form is canonical
    p2 = tmp_path / "t2.txt"
    save_transactions(again, p2)
    assert p.read_bytes() == p2.read_bytes()


# ---------------------------------------------------------------------------
# Binary cache
# ---------------------------------------------------------------------------


def test_binary_round_trip(tmp_path):
    db = BitDatabase([0x0, 0x5, 0xFFFFFFFFFFFFFFFF], m=64)
    p = tmp_path / "db.bin"
    save_bitdb(db, p)
    assert load_bitdb(p) == db


def test_binary_preserves_declared_universe(tmp_path):
    db = BitDatabase([0x1], m=37)
    p = tmp_path / "db.bin"
    save_bitdb(db, p)
    assert load_bitdb(p).m == 37


def test_truncated_file_rejected(tmp_path):
    db = BitDatabase([1, 2, 3])
    p = tmp_path / "db.bin"
    save_bitdb(db, p)
    blob = p.read_bytes()
    p.write_bytes(blob[:-5])
    with pytest.raises(FormatError):
        load_bitdb(p)
    p.write_bytes(blob + b"\x00")
    with pytest.raises(FormatError):
        load_bitdb(p)


def test_wrong_magic_rejected(tmp_path):
    p = tmp_path / "db.bin"
    p.write_bytes(b"NOTADB01" + bytes(20))
    with pytest.raises(FormatError):
        load_bitdb(p)


def test_wrong_version_rejected(tmp_path):
    db = BitDatabase([1])
    p = tmp_path / "db.bin"
    save_bitdb(db, p)
    blob = bytearray(p.read_bytes())
    blob[len(MAGIC)] = 9
    p.write_bytes(bytes(blob))
    with pytest.raises(FormatError):
        load_bitdb(p)


def test_header_too_short(tmp_path):
    p = tmp_path / "db.bin"
    p.write_bytes(b"DICB")
    with pytest.raises(FormatError):
        load_bitdb(p)


def test_sniffing(tmp_path):
    db = BitDatabase([1, 2])
    disguised = tmp_path / "cache.txt"  # binary content, text extension
    save_bitdb(db, disguised)
    assert sniff_format(disguised) == "binary"
    assert sniff_format(tmp_path / "whatever.bin") == "binary"
    assert sniff_format(write(tmp_path, "0 1\n")) == "text"


# ---------------------------------------------------------------------------
# Synthetic generation
# ---------------------------------------------------------------------------


def test_generation_is_deterministic():
    spec = DatasetSpec(n=1000, m=64, avg_len=40, seed=42)
    a = generate_synthetic(spec)
    b = generate_synthetic(spec)
    assert a == b
    assert np.array_equal(a.masks, b.masks)


def test_different_seeds_differ():
    a = generate_synthetic(DatasetSpec(n=200, m=32, avg_len=10, seed=1))
    b = generate_synthetic(DatasetSpec(n=200, m=32, avg_len=10, seed=2))
    assert not np.array_equal(a.masks, b.masks)


def test_mean_length_hits_target():
    db = generate_synthetic(DatasetSpec(n=10_000, m=64, avg_len=40, seed=7))
    mean_len = float(popcounts(db.masks).mean())
    assert 38 <= mean_len <= 42


def test_mean_length_on_short_transactions():
    db = generate_synthetic(DatasetSpec(n=10_000, m=64, avg_len=15, seed=3))
    mean_len = float(popcounts(db.masks).mean())
    assert 14.25 <= mean_len <= 15.75


def test_lengths_stay_inside_universe():
    db = generate_synthetic(DatasetSpec(n=500, m=8, avg_len=7.5, seed=11))
    lens = popcounts(db.masks)
    assert lens.min() >= 1
    assert lens.max() <= 8


def test_default_skew_gives_multi_level_lattice():
    # a frequent 4-itemset must exist at the canonical 0.1 threshold
    db = generate_synthetic(DatasetSpec(n=20_000, m=64, avg_len=15, seed=42))
    freqs = item_frequencies(db)
    top4 = np.argsort(-freqs)[:4]
    mask = np.uint64(0)
    for i in top4:
        mask |= np.uint64(1) << np.uint64(int(i))
    joint = int(np.count_nonzero((db.masks & mask) == mask))
    assert joint >= 0.1 * db.n


def test_skewed_item_frequencies_decay():
    db = generate_synthetic(DatasetSpec(n=20_000, m=64, avg_len=15, seed=9))
    freqs = item_frequencies(db)
    assert freqs[0] > freqs[20] > freqs[50]


@pytest.mark.parametrize(
    "kwargs",
    [
        dict(n=0, m=64, avg_len=10, seed=1),
        dict(n=10, m=0, avg_len=1, seed=1),
        dict(n=10, m=65, avg_len=1, seed=1),
        dict(n=10, m=64, avg_len=0, seed=1),
        dict(n=10, m=8, avg_len=9, seed=1),
        dict(n=10, m=8, avg_len=4, seed=1, skew=0.0),
        dict(n=10, m=8, avg_len=4, seed=1, skew=1.5),
    ],
)
def test_invalid_specs_rejected(kwargs):
    with pytest.raises(SpecError):
        generate_synthetic(DatasetSpec(**kwargs))


def test_degenerate_single_item_universe():
    db = generate_synthetic(DatasetSpec(n=50, m=1, avg_len=1, seed=5))
    assert list(db) == [1] * 50


def test_full_length_transactions():
    db = generate_synthetic(DatasetSpec(n=20, m=6, avg_len=6, seed=5))
    assert all(mask == 0x3F for mask in db)
