"""Coverage of i-sets by parity-check rows, stopping sets and stopping distance.

A row covers an i-set when exactly one of the set's columns carries a one.
An i-set no row covers is a stopping set.

i-sets are enumerated in colexicographic order (sorted by their bitmask read
as an integer).  The colex rank of ``{s_1 < ... < s_i}`` (0-based) is
``sum C(s_j, j)``; chunks are emitted in rank order, so partial counts from
any partition of the rank range add up to the same totals.
"""

from __future__ import annotations

from collections.abc import Iterable, Iterator, Sequence
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from functools import lru_cache
from math import comb
from typing import NamedTuple

import numpy as np

from . import gf2
from .errors import BudgetExceeded, PreconditionError, set_test_budget
from .gf2 import BitMatrix, BitVector

DEFAULT_CHUNK = 1 << 18


# ------------------------------------------------------------ combinadics


def colex_rank(iset: Sequence[int]) -> int:
    """Colex rank of a set of 1-based column indices."""
    return sum(comb(s - 1, j + 1) for j, s in enumerate(sorted(iset)))


def colex_unrank(rank: int, i: int) -> list[int]:
    """Inverse of :func:`colex_rank` for i-sets."""
    out = []
    for j in range(i, 0, -1):
        s = j - 1
        while comb(s + 1, j) <= rank:
            s += 1
        rank -= comb(s, j)
        out.append(s + 1)
    return sorted(out)


def iter_isets(n: int, i: int) -> Iterator[tuple[int, ...]]:
    """All i-subsets of ``[1, n]`` in colex order (Gosper's successor on bitmasks)."""
    if i == 0:
        yield ()
        return
    if i > n:
        return
    x = (1 << i) - 1
    top = 1 << n
    while x < top:
        yield tuple(gf2.support(x))
        low = x & -x
        ripple = x + low
        x = ripple | (((x ^ ripple) >> 2) // low)


def _bit_word(n: int, pos: int) -> np.ndarray:
    w = np.zeros(gf2.n_words(n), dtype=np.uint64)
    w[pos // gf2.WORD_BITS] = np.uint64(1) << np.uint64(pos % gf2.WORD_BITS)
    return w


@lru_cache(maxsize=512)
def _colex_block(m: int, k: int, n: int) -> np.ndarray:
    """All k-subsets of bit positions ``0..m-1`` as masks, colex order."""
    w = gf2.n_words(n)
    if k == 0:
        out = np.zeros((1, w), dtype=np.uint64)
    elif k > m:
        out = np.zeros((0, w), dtype=np.uint64)
    else:
        out = np.concatenate([_colex_block(m - 1, k, n), _colex_block(m - 1, k - 1, n) | _bit_word(n, m - 1)])
    out.setflags(write=False)
    return out


def iset_chunks(n: int, i: int, chunk: int = DEFAULT_CHUNK) -> Iterator[np.ndarray]:
    """Masks of all i-subsets of ``[n]`` as word arrays, in colex order, at most
    ``chunk`` rows per array (except when a single indivisible block is larger)."""

    def walk(prefix: np.ndarray, m: int, k: int):
        if comb(m, k) <= chunk or k == 0:
            block = _colex_block(m, k, n)
            if len(block):
                yield block | prefix
            return
        for top in range(k - 1, m):
            yield from walk(prefix | _bit_word(n, top), top, k - 1)

    if not 0 <= i <= n:
        return
    yield from walk(np.zeros(gf2.n_words(n), dtype=np.uint64), n, i)


# ------------------------------------------------------------- coverage


def covers(h: BitVector, iset: Iterable[int]) -> bool:
    """True iff exactly one column of ``iset`` (1-based) is a one in ``h``."""
    return (h & gf2.from_support(iset)).bit_count() == 1


def is_stopping_set(M: BitMatrix, iset: Iterable[int]) -> bool:
    mask = gf2.from_support(iset)
    if not mask:
        raise PreconditionError("stopping sets are nonempty")
    return not any((row & mask).bit_count() == 1 for row in M)


def count_covering(rows: Iterable[BitVector], iset: Iterable[int]) -> int:
    mask = gf2.from_support(iset)
    return sum(1 for row in rows if (row & mask).bit_count() == 1)


def uncovered_mask(masks: np.ndarray, row_words: np.ndarray) -> np.ndarray:
    """Boolean vector: which masks the single row does *not* cover."""
    return gf2.popcount_words(masks & row_words) != 1


def _survivors(masks: np.ndarray, rows: np.ndarray) -> tuple[np.ndarray, int]:
    """Filter out masks covered by any row; returns survivors and (set, row) tests done."""
    tests = 0
    alive = masks
    for row in rows:
        if not len(alive):
            break
        tests += len(alive)
        alive = alive[uncovered_mask(alive, row)]
    return alive, tests


def _map_chunks(fn, chunks: Iterable, workers: int) -> list:
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            return list(pool.map(fn, chunks))
    return [fn(c) for c in chunks]


@dataclass(frozen=True)
class CoverageProfile:
    """Uncovered i-set counts ``u_i`` for ``i_lo <= i <= i_hi``.

    ``exact`` marks enumerated counts; analytic upper bounds carry ``False``.
    """

    i_lo: int
    i_hi: int
    u: tuple[int, ...]
    source_rows: BitMatrix | None = None
    exact: bool = True

    def __post_init__(self) -> None:
        if len(self.u) != max(0, self.i_hi - self.i_lo + 1):
            raise PreconditionError("profile length does not match its i range")
        if any(v < 0 for v in self.u):
            raise PreconditionError("uncovered counts are nonnegative")

    def __getitem__(self, i: int) -> int:
        if not self.i_lo <= i <= self.i_hi:
            raise KeyError(i)
        return self.u[i - self.i_lo]

    def items(self) -> list[tuple[int, int]]:
        return list(zip(range(self.i_lo, self.i_hi + 1), self.u))

    def as_dict(self) -> dict[int, int]:
        return dict(self.items())


def _budget_check(work: int, budget: int | None, what: str) -> int:
    budget = set_test_budget() if budget is None else budget
    if work > budget:
        raise BudgetExceeded(f"{what} needs up to {work:,} set-row tests; budget is {budget:,}")
    return budget


def uncovered_counts(
    M: BitMatrix,
    i_lo: int,
    i_hi: int,
    *,
    workers: int = 1,
    budget: int | None = None,
    chunk: int = DEFAULT_CHUNK,
) -> CoverageProfile:
    """Exact number of i-sets no row of ``M`` covers, for each ``i_lo <= i <= i_hi``."""
    n = M.n
    if i_lo < 1 or i_hi > n:
        raise PreconditionError(f"i range [{i_lo}, {i_hi}] must lie inside [1, {n}]")
    worst = sum(comb(n, i) for i in range(i_lo, i_hi + 1)) * max(1, len(M))
    _budget_check(worst, budget, "uncovered_counts")
    rows = M.words()

    def count(masks: np.ndarray) -> int:
        return len(_survivors(masks, rows)[0])

    u = []
    for i in range(i_lo, i_hi + 1):
        u.append(sum(_map_chunks(count, iset_chunks(n, i, chunk), workers)))
    return CoverageProfile(i_lo, i_hi, tuple(u), M, exact=True)


def first_covering_row(M: BitMatrix, i: int, chunk: int = DEFAULT_CHUNK) -> np.ndarray:
    """Histogram over i-sets of the 1-based index of the first covering row
    (slot 0 = never covered).  Prefix sums give ``u_i`` for every row prefix."""
    rows = M.words()
    hist = np.zeros(len(M) + 1, dtype=np.int64)
    for masks in iset_chunks(M.n, i, chunk):
        first = np.zeros(len(masks), dtype=np.int64)
        for idx, row in enumerate(rows, start=1):
            hit = (first == 0) & ~uncovered_mask(masks, row)
            first[hit] = idx
        hist += np.bincount(first, minlength=len(M) + 1)
    return hist


class StoppingDistance(NamedTuple):
    value: int
    kind: str  # "exact" or "at_least"
    witness: tuple[int, ...] | None = None

    def __str__(self) -> str:
        return str(self.value) if self.kind == "exact" else f"≥{self.value}"


def find_stopping_set(
    M: BitMatrix,
    size: int,
    *,
    workers: int = 1,
    chunk: int = DEFAULT_CHUNK,
) -> tuple[int, ...] | None:
    """Colex-first stopping set of the given size, or None."""
    rows = M.words()

    def probe(masks: np.ndarray):
        alive, _ = _survivors(masks, rows)
        return gf2.from_words(alive[:1])[0] if len(alive) else None

    if workers > 1:
        for hit in _map_chunks(probe, iset_chunks(M.n, size, chunk), workers):
            if hit is not None:
                return tuple(gf2.support(hit))
        return None
    for masks in iset_chunks(M.n, size, chunk):
        hit = probe(masks)
        if hit is not None:
            return tuple(gf2.support(hit))
    return None


def stopping_distance(
    M: BitMatrix,
    limit: int,
    *,
    workers: int = 1,
    budget: int | None = None,
    chunk: int = DEFAULT_CHUNK,
) -> StoppingDistance:
    """Smallest stopping-set size of ``M`` if it is at most ``limit``.

    Sizes 1 and 2 are searched like any other.  If no stopping set of size
    ``<= limit`` exists the result is ``(limit + 1, "at_least")``.
    """
    if limit < 1:
        raise PreconditionError("limit must be at least 1")
    top = min(limit, M.n)
    worst = sum(comb(M.n, s) for s in range(1, top + 1)) * max(1, len(M))
    _budget_check(worst, budget, "stopping_distance")
    for s in range(1, top + 1):
        witness = find_stopping_set(M, s, workers=workers, chunk=chunk)
        if witness is not None:
            return StoppingDistance(s, "exact", witness)
    return StoppingDistance(limit + 1, "at_least")
