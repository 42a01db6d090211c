"""Bit-packed linear algebra over GF(2).

A row vector of length ``n`` is a plain Python ``int``: column ``j`` (1-based,
as printed) lives in bit ``j - 1``.  Python ints are arbitrary-width word
sequences, so there is no upper limit on ``n``; the numpy helpers below split a
row into 64-bit words when vectorised work is needed.

Span enumeration follows the binary reflected Gray code: counter ``c`` maps to
the XOR of the basis rows selected by the bits of ``c ^ (c >> 1)``.  Two
consecutive counters differ by exactly one basis row, and any counter interval
can be materialised independently, which is what lets census work be split
across workers with identical results.
"""

from __future__ import annotations

from collections.abc import Iterable, Iterator, Sequence
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .errors import SPAN_BUDGET_BITS, BudgetExceeded, PreconditionError

BitVector = int

WORD_BITS = 64
_WORD_MASK = (1 << WORD_BITS) - 1


def weight(v: BitVector) -> int:
    return v.bit_count()


def vector(bits: Iterable[int]) -> BitVector:
    """Pack a 0/1 sequence (column 1 first) into a row."""
    v = 0
    for j, b in enumerate(bits):
        if b not in (0, 1):
            raise PreconditionError(f"entry {j + 1} is {b!r}, expected 0 or 1")
        if b:
            v |= 1 << j
    return v


def support(v: BitVector) -> list[int]:
    """1-based column indices where ``v`` has a one."""
    out = []
    j = 0
    while v:
        if v & 1:
            out.append(j + 1)
        v >>= 1
        j += 1
    return out


def from_support(columns: Iterable[int]) -> BitVector:
    v = 0
    for c in columns:
        v |= 1 << (c - 1)
    return v


def bits(v: BitVector, n: int) -> list[int]:
    return [(v >> j) & 1 for j in range(n)]


def n_words(n: int) -> int:
    return max(1, -(-n // WORD_BITS))


def to_words(rows: Sequence[BitVector], n: int) -> np.ndarray:
    """Rows as a ``(len(rows), n_words(n))`` uint64 array, least significant word first."""
    w = n_words(n)
    out = np.zeros((len(rows), w), dtype=np.uint64)
    for i, v in enumerate(rows):
        for k in range(w):
            out[i, k] = (v >> (WORD_BITS * k)) & _WORD_MASK
    return out


def from_words(arr: np.ndarray) -> list[BitVector]:
    """Inverse of :func:`to_words`."""
    arr = np.asarray(arr, dtype=np.uint64)
    if arr.shape[1] == 1:
        return [int(x) for x in arr[:, 0]]
    out = []
    for row in arr:
        v = 0
        for k, word in enumerate(row):
            v |= int(word) << (WORD_BITS * k)
        out.append(v)
    return out


def popcount_words(arr: np.ndarray) -> np.ndarray:
    """Per-row Hamming weight of a ``(N, W)`` word array."""
    counts = np.bitwise_count(arr)
    if counts.shape[1] == 1:
        return counts[:, 0].astype(np.int64)
    return counts.sum(axis=1, dtype=np.int64)


@dataclass(frozen=True)
class BitMatrix:
    """Immutable binary matrix; rows may outnumber columns."""

    rows: tuple[BitVector, ...]
    n: int

    def __post_init__(self) -> None:
        if self.n < 1:
            raise PreconditionError("a matrix needs at least one column")
        object.__setattr__(self, "rows", tuple(int(r) for r in self.rows))
        limit = 1 << self.n
        for i, r in enumerate(self.rows):
            if r < 0 or r >= limit:
                raise PreconditionError(f"row {i + 1} has bits beyond column {self.n}")

    @classmethod
    def from_lists(cls, rows: Iterable[Sequence[int]], n: int | None = None) -> BitMatrix:
        rows = [list(r) for r in rows]
        if n is None:
            if not rows:
                raise PreconditionError("column count required for an empty matrix")
            n = len(rows[0])
        for i, r in enumerate(rows):
            if len(r) != n:
                raise PreconditionError(f"row {i + 1} has {len(r)} entries, expected {n}")
        return cls(tuple(vector(r) for r in rows), n)

    @classmethod
    def from_strings(cls, lines: Iterable[str]) -> BitMatrix:
        return cls.from_lists([[int(ch) for ch in line if ch in "01"] for line in lines])

    @classmethod
    def identity(cls, n: int) -> BitMatrix:
        return cls(tuple(1 << j for j in range(n)), n)

    @classmethod
    def zeros(cls, m: int, n: int) -> BitMatrix:
        return cls((0,) * m, n)

    def __len__(self) -> int:
        return len(self.rows)

    def __iter__(self) -> Iterator[BitVector]:
        return iter(self.rows)

    def __getitem__(self, idx):
        if isinstance(idx, slice):
            return BitMatrix(self.rows[idx], self.n)
        return self.rows[idx]

    @property
    def shape(self) -> tuple[int, int]:
        return len(self.rows), self.n

    def entry(self, i: int, j: int) -> int:
        """Entry at 1-based row ``i`` and column ``j``."""
        return (self.rows[i - 1] >> (j - 1)) & 1

    def weights(self) -> list[int]:
        return [r.bit_count() for r in self.rows]

    def column(self, j: int) -> BitVector:
        """Column ``j`` (1-based) packed with row 1 in bit 0."""
        c = 0
        for i, r in enumerate(self.rows):
            if (r >> (j - 1)) & 1:
                c |= 1 << i
        return c

    def with_rows(self, extra: Iterable[BitVector]) -> BitMatrix:
        return BitMatrix(self.rows + tuple(extra), self.n)

    def to_array(self) -> np.ndarray:
        out = np.zeros((len(self.rows), self.n), dtype=np.uint8)
        for i, r in enumerate(self.rows):
            out[i] = bits(r, self.n)
        return out

    def words(self) -> np.ndarray:
        return to_words(self.rows, self.n)

    def to_strings(self) -> list[str]:
        return ["".join("1" if (r >> j) & 1 else "0" for j in range(self.n)) for r in self.rows]

    def __str__(self) -> str:
        return "\n".join(self.to_strings())


def _lowest_bit(v: int) -> int:
    return (v & -v).bit_length() - 1


def rref(M: BitMatrix) -> tuple[BitMatrix, list[int]]:
    """Reduced row echelon form and 1-based pivot columns.

    The result keeps the shape of ``M``; zero rows sink to the bottom.
    """
    rows = list(M.rows)
    pivots: list[int] = []
    top = 0
    for col in range(M.n):
        bit = 1 << col
        found = next((i for i in range(top, len(rows)) if rows[i] & bit), None)
        if found is None:
            continue
        rows[top], rows[found] = rows[found], rows[top]
        p = rows[top]
        for i in range(len(rows)):
            if i != top and rows[i] & bit:
                rows[i] ^= p
        pivots.append(col + 1)
        top += 1
        if top == len(rows):
            break
    return BitMatrix(tuple(rows), M.n), pivots


def rank(M: BitMatrix | Sequence[BitVector]) -> int:
    """Dimension of the row space."""
    basis: dict[int, int] = {}
    for v in M:
        while v:
            lead = v.bit_length() - 1
            b = basis.get(lead)
            if b is None:
                basis[lead] = v
                break
            v ^= b
    return len(basis)


class SpanReducer:
    """Incremental XOR basis; answers "is ``v`` already in the span?"."""

    def __init__(self, rows: Iterable[BitVector] = ()):
        self._basis: dict[int, int] = {}
        for v in rows:
            self.add(v)

    def __len__(self) -> int:
        return len(self._basis)

    def reduce(self, v: BitVector) -> BitVector:
        while v:
            b = self._basis.get(v.bit_length() - 1)
            if b is None:
                return v
            v ^= b
        return 0

    def contains(self, v: BitVector) -> bool:
        return self.reduce(v) == 0

    def add(self, v: BitVector) -> bool:
        """Insert ``v``; returns True when the rank grew."""
        v = self.reduce(v)
        if not v:
            return False
        self._basis[v.bit_length() - 1] = v
        return True


def independent_rows(M: BitMatrix) -> BitMatrix:
    """The nonzero rows of ``rref(M)``: a basis of the row space."""
    R, piv = rref(M)
    return BitMatrix(R.rows[: len(piv)], M.n)


def nullspace_basis(M: BitMatrix) -> BitMatrix:
    """Basis of ``{x : M x^T = 0}``, one vector per free column."""
    R, piv = rref(M)
    pivot_rows = list(zip(piv, R.rows))
    pivset = set(piv)
    out = []
    for f in range(1, M.n + 1):
        if f in pivset:
            continue
        v = 1 << (f - 1)
        for p, row in pivot_rows:
            if (row >> (f - 1)) & 1:
                v |= 1 << (p - 1)
        out.append(v)
    return BitMatrix(tuple(out), M.n)


def row_space_equal(A: BitMatrix, B: BitMatrix) -> bool:
    if A.n != B.n:
        return False
    ra, rb = SpanReducer(A), SpanReducer(B)
    return len(ra) == len(rb) and all(rb.contains(v) for v in A) and all(ra.contains(v) for v in B)


def orthogonal(u: BitVector, v: BitVector) -> bool:
    return (u & v).bit_count() % 2 == 0


def _check_span_budget(basis: BitMatrix) -> None:
    if len(basis) > SPAN_BUDGET_BITS:
        raise BudgetExceeded(
            f"span of {len(basis)} rows has 2^{len(basis)} elements; limit is 2^{SPAN_BUDGET_BITS}"
        )


def enumerate_span(basis: BitMatrix) -> Iterator[BitVector]:
    """Yield all ``2^len(basis)`` span elements in Gray-code order, zero first."""
    _check_span_budget(basis)
    rows = basis.rows
    v = 0
    yield v
    for c in range(1, 1 << len(rows)):
        v ^= rows[_lowest_bit(c)]
        yield v


def _xor_table(rows: Sequence[BitVector], n: int) -> np.ndarray:
    table = np.zeros((1, n_words(n)), dtype=np.uint64)
    for w in to_words(rows, n):
        table = np.concatenate([table, table ^ w])
    return table


class SpanTables:
    """Precomputed halves for random access into the Gray-ordered span."""

    def __init__(self, basis: BitMatrix):
        _check_span_budget(basis)
        self.r = len(basis)
        self.n = basis.n
        self.low_bits = min(self.r, (self.r + 1) // 2)
        self.low = _xor_table(basis.rows[: self.low_bits], basis.n)
        self.high = _xor_table(basis.rows[self.low_bits :], basis.n)

    @property
    def size(self) -> int:
        return 1 << self.r

    def words(self, start: int, stop: int) -> np.ndarray:
        """Span elements for counters ``start <= c < stop`` as a word array."""
        c = np.arange(start, stop, dtype=np.uint64)
        g = c ^ (c >> np.uint64(1))
        lo = (g & np.uint64((1 << self.low_bits) - 1)).astype(np.intp)
        hi = (g >> np.uint64(self.low_bits)).astype(np.intp)
        return self.low[lo] ^ self.high[hi]

    def element(self, counter: int) -> BitVector:
        return from_words(self.words(counter, counter + 1))[0]


def span_words(basis: BitMatrix, start: int = 0, stop: int | None = None) -> np.ndarray:
    tables = SpanTables(basis)
    return tables.words(start, tables.size if stop is None else stop)


def _chunks(start: int, stop: int, size: int) -> list[tuple[int, int]]:
    return [(a, min(a + size, stop)) for a in range(start, stop, size)]


class Census(NamedTuple):
    d_min: int
    count: int
    words: list[BitVector]


def min_weight_census(
    basis: BitMatrix,
    limit: int = 1 << 16,
    workers: int = 1,
    chunk: int = 1 << 20,
) -> Census:
    """Minimum nonzero weight of the span, its exact multiplicity, and up to
    ``limit`` witnesses in enumeration order."""
    if len(basis) == 0 or rank(basis) == 0:
        raise PreconditionError("span has no nonzero element")
    if rank(basis) != len(basis):
        raise PreconditionError("basis rows are linearly dependent")
    tables = SpanTables(basis)

    def scan(bounds: tuple[int, int]):
        a, b = bounds
        arr = tables.words(a, b)
        wt = popcount_words(arr)
        if a == 0:
            wt[0] = basis.n + 1
        m = int(wt.min())
        hit = np.flatnonzero(wt == m)
        return m, len(hit), arr[hit[:limit]]

    parts = _chunks(0, tables.size, chunk)
    if workers > 1 and len(parts) > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(scan, parts))
    else:
        results = [scan(p) for p in parts]

    d_min = min(m for m, _, _ in results)
    count = 0
    words: list[BitVector] = []
    for m, k, arr in results:
        if m != d_min:
            continue
        count += k
        if len(words) < limit:
            words.extend(from_words(arr)[: limit - len(words)])
    return Census(d_min, count, words)


def weight_distribution(basis: BitMatrix, chunk: int = 1 << 20) -> list[int]:
    """Number of span elements of each weight ``0..n``."""
    tables = SpanTables(basis)
    hist = np.zeros(basis.n + 1, dtype=np.int64)
    for a, b in _chunks(0, tables.size, chunk):
        hist += np.bincount(popcount_words(tables.words(a, b)), minlength=basis.n + 1)
    return [int(x) for x in hist]
