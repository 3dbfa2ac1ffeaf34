"""Exception types shared across the package.

Every error carries a short machine-greppable ``code`` that the CLI puts in
front of its single-line error messages.
"""

from __future__ import annotations


class DicmineError(Exception):
    """Base class for all dicmine errors."""

    code = "error"


class ItemOutOfRange(DicmineError):
    """An item id falls outside the 64-item universe."""

    code = "item-out-of-range"

    def __init__(self, item: int, line: int | None = None, source: str | None = None):
        self.item = item
        self.line = line
        self.source = source
        where = ""
        if source is not None:
            where += f" in {source}"
        if line is not None:
            where += f" at line {line}"
        super().__init__(f"item id {item} outside supported universe [0, 64){where}")


class ParseError(DicmineError):
    """A transaction file contains a token that is not an integer."""

    code = "parse"

    def __init__(self, token: str, line: int, source: str | None = None):
        self.token = token
        self.line = line
        self.source = source
        where = f" in {source}" if source is not None else ""
        super().__init__(f"non-integer token {token!r}{where} at line {line}")


class EmptyDatabase(DicmineError):
    """The transaction database has no transactions."""

    code = "empty-database"


class FormatError(DicmineError):
    """A binary database file is corrupt or has the wrong magic/version."""

    code = "format"


class SpecError(DicmineError):
    """A synthetic dataset specification is invalid."""

    code = "dataset-spec"


class UniverseTooLarge(DicmineError):
    """The item universe is too large for exhaustive verification."""

    code = "universe-too-large"


class CorrectnessFailure(DicmineError):
    """Benchmark runs returned different frequent sets; timings are void."""

    code = "correctness"
