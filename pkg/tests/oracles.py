"""Slow, obviously-correct reference computations used only by the tests.

None of these touch the package's numpy paths, Gray-code tables or the
incremental bound scanner.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations, product
from math import factorial, prod


def binom_product(n: int, k: int) -> int:
    if k < 0 or k > n:
        return 0
    return prod(range(n - k + 1, n + 1)) // factorial(k)


def all_combinations_span(rows: list[int]) -> set[int]:
    out = set()
    for coeffs in product((0, 1), repeat=len(rows)):
        v = 0
        for c, r in zip(coeffs, rows):
            if c:
                v ^= r
        out.add(v)
    return out


def rank_by_span_size(rows: list[int]) -> int:
    return len(all_combinations_span(rows)).bit_length() - 1


def mask(iset) -> int:
    return sum(1 << (j - 1) for j in iset)


def covers(h: int, iset) -> bool:
    return bin(h & mask(iset)).count("1") == 1


def covered_count(rows: list[int], n: int, i: int) -> int:
    return sum(1 for S in combinations(range(1, n + 1), i) if any(covers(h, S) for h in rows))


def uncovered_count(rows: list[int], n: int, i: int) -> int:
    return sum(1 for S in combinations(range(1, n + 1), i) if not any(covers(h, S) for h in rows))


def brute_stopping_distance(rows: list[int], n: int, limit: int) -> int | None:
    for s in range(1, limit + 1):
        for S in combinations(range(1, n + 1), s):
            if not any(covers(h, S) for h in rows):
                return s
    return None


def weight_histogram(rows: list[int], n: int) -> list[int]:
    hist = [0] * (n + 1)
    for v in all_combinations_span(rows):
        hist[bin(v).count("1")] += 1
    return hist


def survival_probability(r: int, tau: int, i: int, t: int) -> Fraction:
    """Chance that t rows drawn without repetition from the 2^r - 1 - tau unused
    nonzero dual words miss all i 2^(r-i) words covering a given i-set."""
    pool = 2**r - tau - 1
    bad = i * 2 ** (r - i)
    return Fraction(binom_product(pool - bad, t), binom_product(pool, t))


def D_t_reference(u: dict[int, int], r: int, tau: int, t: int, rank_term: bool = True) -> Fraction:
    total = sum((u_i * survival_probability(r, tau, i, t) for i, u_i in u.items()), Fraction(0))
    if rank_term:
        s = t - r
        total += Fraction(1, 2**s) * (1 + Fraction(2, 3) / (2 ** (s + 1) - 1))
    return total


def kappa_reference(x: int, r: int, target: int, tau: int, t: int) -> int:
    """Apply P_1, P_2, ... with Fraction arithmetic until the value reaches 0."""
    k = 0
    while x > 0:
        k += 1
        factor = 1 - Fraction((target - 1) * 2 ** (r - target + 1), 2**r - (tau + t + k))
        x = max(0, (x * factor).__floor__())
    return k


def pair_with_overlap(n: int, w: int, delta: int) -> tuple[int, int]:
    """Two weight-w vectors sharing exactly delta ones (columns 1.. first)."""
    a = (1 << w) - 1
    b = ((1 << delta) - 1) | (((1 << (w - delta)) - 1) << w)
    assert 2 * w - delta <= n
    return a, b
