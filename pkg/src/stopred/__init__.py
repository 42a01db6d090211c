"""Stopping redundancy bounds and redundant parity-check matrix construction."""

from .errors import BudgetExceeded, ParseError, PreconditionError, StopredError
from .gf2 import BitMatrix
from .codes import LinearCode, extended_qr48, golay24

__all__ = [
    "BitMatrix",
    "BudgetExceeded",
    "LinearCode",
    "ParseError",
    "PreconditionError",
    "StopredError",
    "extended_qr48",
    "golay24",
]

__version__ = "0.1.0"
