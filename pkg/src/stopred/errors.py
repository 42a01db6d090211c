"""Exception hierarchy shared by every module."""

from __future__ import annotations

import os

DEFAULT_SET_BUDGET = 10**9
SPAN_BUDGET_BITS = 28


class StopredError(Exception):
    """Base class for all library errors."""


class PreconditionError(StopredError, ValueError):
    """A documented precondition of an operation is violated."""


class BudgetExceeded(StopredError):
    """An enumeration would exceed its configured work budget."""


class ParseError(StopredError, ValueError):
    """Malformed matrix text. Carries 1-based line/column of the offending token."""

    def __init__(self, message: str, line: int | None = None, column: int | None = None):
        self.line = line
        self.column = column
        where = ""
        if line is not None:
            where = f"line {line}" + (f", column {column}" if column is not None else "") + ": "
        super().__init__(where + message)


class ConstructionError(StopredError):
    """A built-in code failed its own consistency checks."""


def set_test_budget() -> int:
    """Budget for (i-set, row) tests; ``STOPRED_BUDGET`` overrides the default."""
    raw = os.environ.get("STOPRED_BUDGET")
    if raw is None or raw.strip() == "":
        return DEFAULT_SET_BUDGET
    try:
        value = int(float(raw))
    except ValueError as exc:
        raise PreconditionError(f"STOPRED_BUDGET must be a number, got {raw!r}") from exc
    if value <= 0:
        raise PreconditionError("STOPRED_BUDGET must be positive")
    return value
