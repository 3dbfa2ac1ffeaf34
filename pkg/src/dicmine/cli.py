"""Command-line front end: mine, generate, verify, bench."""

from __future__ import annotations

import argparse
import os
import sys
from pathlib import Path

import numpy as np

from ._validation import resolve_thread_count
from .bitops import items_of, popcounts
from .database import BitDatabase
from .datasets import (
    DEFAULT_SKEW,
    DatasetSpec,
    generate_synthetic,
    item_frequencies,
    load_bitdb,
    load_transactions_with_report,
    save_bitdb,
    save_transactions,
    sniff_format,
)
from .engine import MiningResult, mine_parallel, mine_serial
from .errors import DicmineError
from .oracle import bruteforce_frequent
from .benchmark import run_scaling
from .params import MiningParams

PROG = "dicmine"


class _Parser(argparse.ArgumentParser):
    # Single-line, greppable usage failures.
    def error(self, message):  # noqa: D102 - argparse override
        self.exit(2, f"{PROG}: error[usage]: {message}\n")


def _threads_from(args) -> int:
    if args.threads is not None:
        return resolve_thread_count(args.threads)
    env = os.environ.get("DICMINE_THREADS")
    if env:
        return resolve_thread_count(int(env))
    return resolve_thread_count(None)


def _load_database(args) -> BitDatabase:
    fmt = args.format or sniff_format(args.input)
    if fmt == "bin":
        fmt = "binary"
    if fmt == "binary":
        return load_bitdb(args.input)
    db, report = load_transactions_with_report(args.input)
    if report.deduplicated:
        print(
            f"# dropped {report.deduplicated} duplicate item occurrences",
            file=sys.stderr,
        )
    return db


def _format_result(result: MiningResult) -> str:
    lines = []
    for f in result.frequent:
        ids = " ".join(str(i) for i in items_of(f.mask))
        lines.append(f"{ids} ({f.support})")
    return "\n".join(lines) + ("\n" if lines else "")


# ---------------------------------------------------------------------------
# Subcommands
# ---------------------------------------------------------------------------


def cmd_mine(args) -> int:
    db = _load_database(args)
    params = MiningParams.create(
        db.n, args.minsup, interval=args.interval, threads=_threads_from(args)
    )
    runner = mine_serial if args.engine == "serial" else mine_parallel
    result = runner(db, params)

    text = _format_result(result)
    if args.output:
        Path(args.output).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)

    s = result.stats
    print(
        f"# n={db.n} m={db.m} minsup={params.minsup} interval={params.interval} "
        f"threads={params.threads} engine={args.engine} frequent={len(result.frequent)} "
        f"passes={s.db_passes:.2f} peak_dashed={s.peak_dashed} "
        f"candidates={s.candidates_generated} pruned={s.candidates_pruned} "
        f"time={s.wall_time_s:.3f}s",
        file=sys.stderr,
    )
    return 0


def cmd_generate(args) -> int:
    spec = DatasetSpec(
        n=args.n, m=args.m, avg_len=args.avg_len, seed=args.seed, skew=args.skew
    )
    db = generate_synthetic(spec)
    if args.format == "bin":
        save_bitdb(db, args.output)
    else:
        save_transactions(db, args.output)

    lengths = popcounts(db.masks)
    freqs = item_frequencies(db)
    above = int(np.count_nonzero(freqs >= 0.1))
    print(
        f"# wrote {db.n} transactions to {args.output} ({args.format}); "
        f"mean length {float(lengths.mean()):.3f}, "
        f"item frequency max {freqs.max():.3f} / median {np.median(freqs):.3f}, "
        f"{above}/{db.m} items at support >= 0.1",
        file=sys.stderr,
    )
    return 0


def cmd_verify(args) -> int:
    db = _load_database(args)
    threads = _threads_from(args)
    oracle = bruteforce_frequent(db, args.minsup).as_dict()

    serial_params = MiningParams.create(db.n, args.minsup, interval=args.interval)
    parallel_params = MiningParams.create(
        db.n, args.minsup, interval=args.interval, threads=threads
    )
    engines = {
        "serial": mine_serial(db, serial_params).as_dict(),
        "parallel": mine_parallel(db, parallel_params).as_dict(),
    }

    for name, got in engines.items():
        divergence = _first_divergence(oracle, got)
        if divergence is not None:
            print(f"{PROG}: error[verify-mismatch]: {name} engine: {divergence}")
            return 1
    print(
        f"verify: OK ({len(oracle)} frequent itemsets; oracle, serial and "
        f"parallel agree exactly; n={db.n}, m={db.m}, minsup={args.minsup})"
    )
    return 0


def _first_divergence(oracle: dict[int, int], got: dict[int, int]) -> str | None:
    for mask in sorted(set(oracle) | set(got), key=lambda q: (bin(q).count("1"), q)):
        items = " ".join(str(i) for i in items_of(mask))
        if mask not in got:
            return f"missing itemset {{{items}}} (oracle support {oracle[mask]})"
        if mask not in oracle:
            return f"spurious itemset {{{items}}} (reported support {got[mask]})"
        if oracle[mask] != got[mask]:
            return (
                f"support mismatch on {{{items}}}: oracle {oracle[mask]}, "
                f"engine {got[mask]}"
            )
    return None


def cmd_bench(args) -> int:
    db = _load_database(args)
    thread_counts = [int(tok) for tok in args.threads_list.split(",") if tok]
    report = run_scaling(
        db,
        args.minsup,
        args.interval,
        thread_counts,
        repetitions=args.reps,
        dataset=str(args.input),
    )
    out = Path(args.output)
    report.write_csv(out)
    report.write_metadata(out.with_suffix(".json"))
    for row in report.rows:
        print(
            f"threads={row.threads} time={row.time_s:.4f}s "
            f"speedup={row.speedup:.3f} efficiency={row.efficiency:.3f}",
            file=sys.stderr,
        )
    print(f"# report: {out} (+ {out.with_suffix('.json')})", file=sys.stderr)
    return 0


# ---------------------------------------------------------------------------
# Parser
# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog=PROG, description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p, with_engine=False):
        p.add_argument("--input", required=True, help="transaction file (text or binary)")
        p.add_argument("--minsup", type=float, default=0.1, help="support fraction in (0, 1]")
        p.add_argument(
            "--interval",
            type=int,
            default=None,
            help="transactions per stop (default: half the database)",
        )
        p.add_argument("--threads", type=int, default=None,
                       help="worker threads (default: $DICMINE_THREADS or all cores)")
        p.add_argument("--format", choices=["text", "bin"], default=None,
                       help="input format (default: sniff magic bytes, then extension)")
        if with_engine:
            p.add_argument("--engine", choices=["serial", "parallel"], default="parallel")

    p_mine = sub.add_parser("mine", help="mine frequent itemsets")
    add_common(p_mine, with_engine=True)
    p_mine.add_argument("--output", default=None, help="result file (default: stdout)")
    p_mine.set_defaults(func=cmd_mine)

    p_gen = sub.add_parser("generate", help="write a seeded synthetic dataset")
    p_gen.add_argument("--n", type=int, required=True, help="transaction count")
    p_gen.add_argument("--m", type=int, default=64, help="item universe size (<= 64)")
    p_gen.add_argument("--avg-len", dest="avg_len", type=float, required=True,
                       help="target mean transaction length")
    p_gen.add_argument("--seed", type=int, default=0)
    p_gen.add_argument("--skew", type=float, default=DEFAULT_SKEW,
                       help="geometric item-weight decay in (0, 1]")
    p_gen.add_argument("--format", choices=["text", "bin"], default="text")
    p_gen.add_argument("--output", required=True)
    p_gen.set_defaults(func=cmd_generate)

    p_verify = sub.add_parser(
        "verify", help="cross-check oracle, serial and parallel engines"
    )
    add_common(p_verify)
    p_verify.set_defaults(func=cmd_verify)

    p_bench = sub.add_parser("bench", help="measure speedup and efficiency")
    add_common(p_bench)
    p_bench.add_argument("--threads-list", dest="threads_list", required=True,
                         help="comma-separated thread counts; must include 1")
    p_bench.add_argument("--reps", type=int, default=3, help="repetitions per thread count")
    p_bench.add_argument("--output", default="scaling.csv", help="CSV report path")
    p_bench.set_defaults(func=cmd_bench)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ValueError as exc:
        print(f"{PROG}: error[usage]: {exc}", file=sys.stderr)
        return 2
    except DicmineError as exc:
        print(f"{PROG}: error[{exc.code}]: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"{PROG}: error[io]: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    raise SystemExit(main())
