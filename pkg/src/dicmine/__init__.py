"""dicmine: frequent itemset mining with dynamic itemset counting.

Transactions and itemsets live in single 64-bit words; support counting is
one bitwise AND plus a compare per transaction. The package provides a
serial reference engine, a thread-parallel engine with identical output, a
brute-force oracle, dataset tooling, a scaling benchmark harness, and a
scikit-learn style estimator wrapper.
"""

from .bitops import (
    MAX_ITEMS,
    cardinality,
    contains,
    encode_transaction,
    immediate_subsets,
    items_of,
    join,
)
from .database import BitDatabase, database_from_transactions
from .datasets import (
    DatasetSpec,
    LoadReport,
    generate_synthetic,
    item_frequencies,
    load_bitdb,
    load_transactions,
    load_transactions_with_report,
    save_bitdb,
    save_transactions,
    sniff_format,
)
from .engine import (
    FrequentItemset,
    MiningResult,
    MiningStats,
    check_full_pass,
    count_support_interval,
    first_pass,
    make_candidates,
    mine_parallel,
    mine_serial,
    prune,
)
from .errors import (
    CorrectnessFailure,
    DicmineError,
    EmptyDatabase,
    FormatError,
    ItemOutOfRange,
    ParseError,
    SpecError,
    UniverseTooLarge,
)
from .estimator import DicMiner
from .itemsets import (
    LEGAL_TRANSITIONS,
    CountedItemset,
    ItemsetCatalog,
    Shape,
    TransitionAudit,
)
from .oracle import OracleResult, bruteforce_frequent, containment_counts
from .params import MiningParams, absolute_support, default_interval
from .benchmark import ScalingReport, ScalingRow, run_scaling

__version__ = "0.1.0"

__all__ = [
    "MAX_ITEMS",
    "BitDatabase",
    "CorrectnessFailure",
    "CountedItemset",
    "DatasetSpec",
    "DicMiner",
    "DicmineError",
    "EmptyDatabase",
    "FormatError",
    "FrequentItemset",
    "ItemOutOfRange",
    "ItemsetCatalog",
    "LEGAL_TRANSITIONS",
    "LoadReport",
    "MiningParams",
    "MiningResult",
    "MiningStats",
    "OracleResult",
    "ParseError",
    "ScalingReport",
    "ScalingRow",
    "Shape",
    "SpecError",
    "TransitionAudit",
    "UniverseTooLarge",
    "absolute_support",
    "bruteforce_frequent",
    "cardinality",
    "check_full_pass",
    "containment_counts",
    "contains",
    "count_support_interval",
    "database_from_transactions",
    "default_interval",
    "encode_transaction",
    "first_pass",
    "generate_synthetic",
    "immediate_subsets",
    "item_frequencies",
    "items_of",
    "join",
    "load_bitdb",
    "load_transactions",
    "load_transactions_with_report",
    "make_candidates",
    "mine_parallel",
    "mine_serial",
    "prune",
    "run_scaling",
    "save_bitdb",
    "save_transactions",
    "sniff_format",
]
