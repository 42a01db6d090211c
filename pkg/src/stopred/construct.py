"""Build redundant parity-check matrices with a guaranteed stopping distance.

Two builders share the same bookkeeping: a word array of every i-set still
uncovered, plus an incremental span basis for the rank.

* :func:`greedy_extend` adds dual codewords greedily, either in enumeration
  order (``lexicographic``) or by largest number of newly covered i-sets
  (``max_coverage``), then completes the rank.
* :func:`randomized_extend` draws ``t`` distinct random dual codewords and
  then derandomises the remaining steps: each added row minimises the
  potential ``delta = uncovered i-sets + rank deficiency``.

Candidates are nonzero dual codewords indexed by their Gray-code span counter;
every tie goes to the smaller index.  Candidate scores only ever decrease as
rows are added, so the best-candidate search is lazy: stale scores are upper
bounds and are refreshed only when they reach the top of the heap.
"""

from __future__ import annotations

import heapq
import logging
import random
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb

import numpy as np

from . import gf2
from .bounds import distance_condition
from .codes import LinearCode
from .cover import StoppingDistance, iset_chunks, stopping_distance, uncovered_mask
from .errors import BudgetExceeded, PreconditionError
from .gf2 import BitMatrix, SpanReducer, SpanTables

log = logging.getLogger(__name__)

MAX_TRACKED_SETS = 50_000_000
FULL_POOL_BITS = 16
SAMPLE_POOL = 1 << 14
STRATEGIES = ("lexicographic", "max_coverage")


@dataclass(frozen=True)
class StoppingReport:
    rows: int
    rank: int
    stopping_distance: StoppingDistance
    all_rows_in_dual: bool
    target_l: int
    r: int
    strategy: str = "verify"
    seed: int | None = None
    delta_after_step1: int | None = None
    delta_trace: tuple[int, ...] = field(default=(), repr=False)

    @property
    def passed(self) -> bool:
        return (
            self.rank == self.r
            and self.all_rows_in_dual
            and self.stopping_distance.value >= self.target_l
        )


def verify(M: BitMatrix, code: LinearCode, l: int, *, workers: int = 1, budget: int | None = None) -> StoppingReport:
    """Recheck a candidate matrix from scratch: rank, dual membership and
    absence of stopping sets smaller than ``l``."""
    in_dual = M.n == code.n and all(code.contains_dual(v) for v in M)
    if l > 1 and len(M):
        sd = stopping_distance(M, l - 1, workers=workers, budget=budget)
    elif len(M):
        sd = StoppingDistance(1, "at_least")
    else:
        sd = StoppingDistance(1, "exact", (1,))
    return StoppingReport(len(M), gf2.rank(M), sd, in_dual, l, code.r)


class _Uncovered:
    """Word array of i-sets that no chosen row covers yet."""

    def __init__(self, n: int, sizes: range):
        total = sum(comb(n, i) for i in sizes)
        if total > MAX_TRACKED_SETS:
            raise BudgetExceeded(f"tracking {total:,} i-sets exceeds the limit of {MAX_TRACKED_SETS:,}")
        parts = [c for i in sizes for c in iset_chunks(n, i)]
        w = gf2.n_words(n)
        self.masks = np.concatenate(parts) if parts else np.zeros((0, w), dtype=np.uint64)
        self.n = n

    def __len__(self) -> int:
        return len(self.masks)

    def gain(self, row_words: np.ndarray) -> int:
        if not len(self.masks):
            return 0
        return int(len(self.masks) - np.count_nonzero(uncovered_mask(self.masks, row_words)))

    def gains(self, cand_words: np.ndarray, block: int = 16) -> np.ndarray:
        out = np.zeros(len(cand_words), dtype=np.int64)
        if not len(self.masks):
            return out
        for a in range(0, len(cand_words), block):
            c = cand_words[a : a + block]
            hits = np.bitwise_count(self.masks[None, :, :] & c[:, None, :]).sum(axis=2) == 1
            out[a : a + block] = hits.sum(axis=1)
        return out

    def cover(self, row_words: np.ndarray) -> int:
        keep = uncovered_mask(self.masks, row_words)
        removed = len(self.masks) - int(np.count_nonzero(keep))
        self.masks = self.masks[keep]
        return removed


class _Pool:
    """Nonzero dual codewords available as rows, in tie-break order."""

    def __init__(self, code: LinearCode, seed: int | None):
        r = code.r
        if r > 28:
            raise BudgetExceeded("dual code too large to enumerate (r > 28)")
        self.tables = SpanTables(code.H)
        if r <= FULL_POOL_BITS:
            self.index = np.arange(1, 1 << r, dtype=np.int64)
            self.words = self.tables.words(1, 1 << r)
            self.restricted = False
        else:
            # documented approximation: min-weight words plus a seeded sample
            census = code.dual_census()
            rng = random.Random(0 if seed is None else seed)
            sample = sorted(rng.sample(range(1, 1 << r), SAMPLE_POOL))
            extra = gf2.from_words(np.concatenate([self.tables.words(c, c + 1) for c in sample]))
            vecs = list(dict.fromkeys(census.words + extra))
            self.index = np.arange(len(vecs), dtype=np.int64)
            self.words = gf2.to_words(vecs, code.n)
            self.restricted = True
            log.info("candidate pool restricted to %d words", len(vecs))
        self.ints = gf2.from_words(self.words)

    def __len__(self) -> int:
        return len(self.ints)


def _closed_form_gains(pool: _Pool, n: int, sizes: range) -> np.ndarray:
    """Coverage of a weight-w row over *all* i-sets is ``w C(n-w, i-1)``."""
    table = [sum(w * comb(n - w, i - 1) for i in sizes) for w in range(n + 1)]
    weights = gf2.popcount_words(pool.words)
    return np.array([table[w] for w in weights], dtype=np.int64)


def _lazy_pick(heap: list, score_fn, stamp: int) -> tuple[int, int]:
    """Pop the candidate with maximal current score (ties: smallest position)."""
    while heap:
        neg, pos, seen = heapq.heappop(heap)
        if seen == stamp:
            return pos, -neg
        heapq.heappush(heap, (-score_fn(pos), pos, stamp))
    raise PreconditionError("candidate pool exhausted")


def _complete_rank(rows: list[int], basis: SpanReducer, pool: _Pool, r: int) -> list[int]:
    added = []
    for v in pool.ints:
        if len(basis) == r:
            break
        if basis.add(v):
            rows.append(v)
            added.append(v)
    if len(basis) != r:
        raise PreconditionError("candidate pool does not span the dual code")
    return added


def _trivial(code: LinearCode, l: int) -> bool:
    return l <= 3 or code.min_distance() <= 3


def greedy_extend(
    code: LinearCode,
    l: int,
    strategy: str = "max_coverage",
    seed: int | None = None,
    *,
    workers: int = 1,
) -> tuple[BitMatrix, StoppingReport]:
    """Greedy parity-check matrix with stopping distance at least ``l``."""
    if strategy not in STRATEGIES:
        raise PreconditionError(f"strategy must be one of {STRATEGIES}")
    if _trivial(code, l):
        M = gf2.independent_rows(code.H)
        return M, _report(M, code, l, strategy, seed, workers=workers)
    d = code.min_distance()
    if not 4 <= l <= d:
        raise PreconditionError(f"need 4 <= l <= d = {d}")
    sizes = range(1, l)
    pool = _Pool(code, seed)
    unc = _Uncovered(code.n, sizes)
    rows: list[int] = []
    basis = SpanReducer()

    def take(pos: int) -> None:
        rows.append(pool.ints[pos])
        basis.add(pool.ints[pos])
        unc.cover(pool.words[pos])

    if strategy == "lexicographic":
        for pos in range(len(pool)):
            if not len(unc):
                break
            if unc.gain(pool.words[pos]):
                take(pos)
    else:
        score = lambda pos: unc.gain(pool.words[pos])
        heap = [(-int(g), pos, 0) for pos, g in enumerate(_closed_form_gains(pool, code.n, sizes))]
        heapq.heapify(heap)
        stamp = 0
        while len(unc):
            stamp += 1
            pos, g = _lazy_pick(heap, score, stamp)
            if g == 0:
                break
            take(pos)
    if len(unc):
        raise PreconditionError(f"{len(unc)} i-sets cannot be covered by the candidate pool")
    _complete_rank(rows, basis, pool, code.r)
    M = BitMatrix(tuple(rows), code.n)
    return M, _report(M, code, l, strategy, seed, workers=workers)


def _report(M, code, l, strategy, seed, *, workers=1, **extra) -> StoppingReport:
    rep = verify(M, code, l, workers=workers)
    return StoppingReport(**{**rep.__dict__, "strategy": strategy, "seed": seed, **extra})


def randomized_extend(
    code: LinearCode,
    l: int,
    t: int,
    seed: int,
    *,
    workers: int = 1,
    check_descent: bool = True,
) -> tuple[BitMatrix, StoppingReport]:
    """Random start of ``t`` distinct dual rows, then conditional-expectation steps.

    Step 1 draws span counters from ``1 .. 2^r - 1`` without replacement with
    ``random.Random(seed).sample`` (Mersenne Twister), so output is
    reproducible across platforms.  Step 2 repeatedly adds the unused row
    that minimises ``delta`` until ``delta = 0``.  When
    ``(r-1)(l-1) <= 2^(l-1)`` each step is checked against the guaranteed
    shrink factor ``1 - (l-1) 2^(r-l+1) / (2^r - m)``, ``m`` the new row count.
    """
    r = code.r
    if _trivial(code, l):
        M = gf2.independent_rows(code.H)
        return M, _report(M, code, l, "randomized", seed, workers=workers)
    d = code.min_distance()
    if not 4 <= l <= d:
        raise PreconditionError(f"need 4 <= l <= d = {d}")
    if not r <= t < 2**r - 1:
        raise PreconditionError(f"t must satisfy r <= t < 2^r - 1 (r = {r})")
    if r > FULL_POOL_BITS:
        raise BudgetExceeded(f"randomized construction enumerates the full dual; r = {r} > {FULL_POOL_BITS}")
    pool = _Pool(code, seed)
    sizes = range(3, l)
    unc = _Uncovered(code.n, sizes)
    basis = SpanReducer()
    rows: list[int] = []
    used = np.zeros(len(pool), dtype=bool)

    for counter in sorted(random.Random(seed).sample(range(1, 2**r), t)):
        pos = counter - 1
        used[pos] = True
        rows.append(pool.ints[pos])
        basis.add(pool.ints[pos])
        unc.cover(pool.words[pos])

    delta = len(unc) + (r - len(basis))
    delta_step1 = delta
    trace = [delta]
    check = check_descent and r >= 3 and distance_condition(r, l)
    q = Fraction(l - 1) * Fraction(2) ** (r - l + 1)

    def decrease(pos: int) -> int:
        return unc.gain(pool.words[pos]) + (0 if basis.contains(pool.ints[pos]) else 1)

    if delta:
        free = np.flatnonzero(~used)
        gains = unc.gains(pool.words[free])
        heap = []
        for pos, g in zip(free.tolist(), gains.tolist()):
            heap.append((-(g + (0 if basis.contains(pool.ints[pos]) else 1)), pos, 0))
        heapq.heapify(heap)
        stamp = 0
        while delta:
            stamp += 1
            pos, dec = _lazy_pick(heap, decrease, stamp)
            rows.append(pool.ints[pos])
            basis.add(pool.ints[pos])
            unc.cover(pool.words[pos])
            new = len(unc) + (r - len(basis))
            if check:
                guaranteed = delta * (1 - q / (2**r - len(rows)))
                if new > max(guaranteed, 0):
                    raise AssertionError(
                        f"descent step to {len(rows)} rows: delta {delta} -> {new} exceeds guarantee {guaranteed}"
                    )
            delta = new
            trace.append(delta)

    M = BitMatrix(tuple(rows), code.n)
    rep = _report(
        M, code, l, "randomized", seed, workers=workers,
        delta_after_step1=delta_step1, delta_trace=tuple(trace),
    )
    return M, rep
