"""Upper bounds on the stopping redundancy and its hierarchy.

Everything is exact.  Probabilities of an i-set surviving ``t`` random dual
rows are products of ratios ``(2^r - j - i 2^(r-i)) / (2^r - j)``; the scan
keeps one shared denominator and one numerator per ``i`` as plain integers,
so flooring ``D_t`` is a single integer division.  The only rounding anywhere
is that floor and the floors inside the row-by-row descent that yields
``kappa``.

Two kinds of target appear: the full minimum distance ``d`` (stopping
redundancy) and a hierarchy level ``l`` (stopping distance at least ``l``).
The engine does not care which; it needs the size of the largest i-set class
that must be covered, ``target - 1``.
"""

from __future__ import annotations

import enum
from collections.abc import Iterable
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb

import mpmath

from .codes import LinearCode
from .cover import CoverageProfile, uncovered_counts
from .errors import PreconditionError
from . import gf2


def binom(n: int, k: int) -> int:
    """``C(n, k)``; zero when ``k > n``, ``k < 0`` or ``n < 0``."""
    if k < 0 or n < 0 or k > n:
        return 0
    return comb(n, k)


def partial_binom_sum(r: int, m: int) -> int:
    """``sum_{i=1}^{m} C(r, i)``; the baseline bounds of the comparison tables."""
    if m < 0:
        raise PreconditionError("m must be nonnegative")
    return sum(binom(r, i) for i in range(1, m + 1))


def distance_condition(r: int, target: int) -> bool:
    """``(r-1)(target-1) <= 2^(target-1)``: when the uniform-decrease argument holds."""
    return (r - 1) * (target - 1) <= 2 ** (target - 1)


# ---------------------------------------------------------------- lemma


def _mpf_fraction(x) -> Fraction:
    man, exp = mpmath.mpf(x).man_exp
    return Fraction(int(man)) * Fraction(2) ** int(exp)


def _two_power_interval(exponent: Fraction, prec: int = 256) -> tuple[Fraction, Fraction]:
    """Rational enclosure of ``2**exponent``."""
    if exponent.denominator == 1:
        v = Fraction(2) ** int(exponent)
        return v, v
    with mpmath.workprec(prec):
        e = mpmath.iv.mpf(exponent.numerator) / exponent.denominator
        iv = mpmath.iv.power(mpmath.iv.mpf(2), e)
        return _mpf_fraction(iv.a), _mpf_fraction(iv.b)


def lemma1_holds(r: int, d: int, b, x) -> bool:
    """Check ``b - (2^r - 2^(r-b))/(2^r - x) <= b (1 - (d-1) 2^(r-d+1)/(2^r - x))``.

    ``b`` and ``x`` may be ints, Fractions or decimal strings.  For
    non-integral ``b`` the power is enclosed in an interval and the left side
    is evaluated at its worst end, so ``True`` is never optimistic.
    """
    b = Fraction(b)
    x = Fraction(x)
    if r < 3:
        raise PreconditionError("r must be at least 3")
    if not 1 <= b <= r - 2:
        raise PreconditionError("b must satisfy 1 <= b <= r - 2")
    if not distance_condition(r, d):
        raise PreconditionError("(r-1)(d-1) > 2^(d-1)")
    N = Fraction(2**r)
    if x >= N:
        raise PreconditionError("x must be below 2^r")
    _, hi = _two_power_interval(r - b)
    lhs = b - (N - hi) / (N - x)
    rhs = b * (1 - (d - 1) * Fraction(2) ** (r - d + 1) / (N - x))
    return lhs <= rhs


# ------------------------------------------------------- analytic u_i


def u_single(n: int, dual_distance: int, i: int) -> int:
    """i-sets left uncovered by one dual codeword of minimum weight."""
    if not 1 <= dual_distance <= n:
        raise PreconditionError("need 1 <= d_perp <= n")
    return binom(n, i) - dual_distance * binom(n - dual_distance, i - 1)


def pair_overlap_terms(n: int, dual_distance: int, i: int) -> list[int]:
    """Doubly counted i-sets for two weight-``d_perp`` words sharing ``delta`` ones,
    for ``delta = 0 .. d_perp // 2``."""
    w = dual_distance
    out = []
    for delta in range(w // 2 + 1):
        rest = n - 2 * w + delta
        out.append(delta * binom(rest, i - 1) + (delta - w) ** 2 * binom(rest, i - 2))
    return out


def mass_covered_pair(n: int, dual_distance: int, i: int) -> int:
    """Guaranteed number of i-sets covered by two distinct minimum-weight dual words."""
    w = dual_distance
    if not 1 <= w <= n or 2 * w > n + w // 2:
        raise PreconditionError("two weight-d_perp words do not fit in length n")
    return 2 * w * binom(n - w, i - 1) - max(pair_overlap_terms(n, w, i))


def u_pair(n: int, dual_distance: int, i: int) -> int:
    return binom(n, i) - mass_covered_pair(n, dual_distance, i)


def analytic_profile(n: int, dual_distance: int | None, i_lo: int, i_hi: int, rows: int) -> CoverageProfile:
    """Counts guaranteed after ``rows`` in {0, 1, 2} minimum-weight dual rows."""
    fn = {0: lambda i: binom(n, i), 1: lambda i: u_single(n, dual_distance, i), 2: lambda i: u_pair(n, dual_distance, i)}
    if rows not in fn:
        raise PreconditionError("analytic counts exist for 0, 1 or 2 fixed rows")
    return CoverageProfile(i_lo, i_hi, tuple(fn[rows](i) for i in range(i_lo, i_hi + 1)), None, exact=False)


# --------------------------------------------------------------- engine


class Variant(str, enum.Enum):
    THM2 = "thm2"
    RANK_COMPLETION = "thm3_rank_completion"
    CONDITIONAL = "thm3_conditional"
    BASELINE = "baseline"


@dataclass(frozen=True)
class BoundQuery:
    """Inputs of one bound evaluation.

    ``u`` must cover ``i = 3 .. target-1``.  ``rank_term`` adds the expected
    rank deficiency of ``t`` random rows to ``D_t``; without it the matrix is
    completed to full rank afterwards with ``r - target + 1`` extra rows.
    """

    n: int
    r: int
    target: int
    tau: int
    u: CoverageProfile
    rank_term: bool = True
    dual_distance: int | None = None

    def __post_init__(self) -> None:
        if self.r < 2:
            raise PreconditionError("r = n - k must be at least 2")
        if self.target < 4:
            raise PreconditionError("target distance must be at least 4")
        if self.tau < 0 or self.tau >= 2**self.r - 1:
            raise PreconditionError("tau must satisfy 0 <= tau < 2^r - 1")
        if (self.u.i_lo, self.u.i_hi) != (3, self.target - 1):
            raise PreconditionError(f"u must cover i = 3..{self.target - 1}, got {self.u.i_lo}..{self.u.i_hi}")


@dataclass(frozen=True)
class BoundResult:
    total: int
    t_star: int
    kappa: int
    variant: Variant
    tau: int = 0
    completion: int = 0
    trace: tuple[tuple[int, int, int], ...] = ()
    notes: tuple[str, ...] = field(default=(), compare=False)

    def __int__(self) -> int:
        return self.total


def covering_words(r: int, i: int) -> int:
    """Nonzero dual codewords covering a fixed i-set (orthogonal-array count)."""
    if i > r:
        raise PreconditionError(f"i-sets of size {i} exceed the dual dimension r = {r}")
    return i << (r - i)


def rank_deficiency_bound(r: int, t: int) -> Fraction:
    """Expected-rank-deficiency bound for ``t >= r`` random rows."""
    s = t - r
    if s < 0:
        raise PreconditionError("t must be at least r")
    return Fraction(1, 2**s) * (1 + Fraction(2, 3) / (2 ** (s + 1) - 1))


def engine_Dt(query: BoundQuery, t: int) -> Fraction:
    """``D_t``: expected uncovered i-sets plus expected rank deficiency after
    ``t`` random rows on top of the ``tau`` fixed ones."""
    N = 2**query.r
    if t < query.r and query.rank_term:
        raise PreconditionError("t must be at least r")
    if query.tau + t >= N:
        raise PreconditionError("tau + t must stay below 2^r")
    total = Fraction(0)
    for i, u in query.u.items():
        q = covering_words(query.r, i)
        p = Fraction(1)
        for j in range(query.tau + 1, query.tau + t + 1):
            f = N - j - q
            if f <= 0:
                p = Fraction(0)
                break
            p *= Fraction(f, N - j)
        total += u * p
    if query.rank_term:
        total += rank_deficiency_bound(query.r, t)
    return total


def engine_kappa(D_floor: int, r: int, target: int, tau: int, t: int) -> int:
    """Rows needed to drive ``floor(D_t)`` to zero, one guaranteed-good row at a time.

    Row ``tau + t + j`` shrinks the potential by at least the factor
    ``1 - (target-1) 2^(r-target+1) / (2^r - (tau+t+j))``, floored each step.
    """
    if D_floor < 0:
        raise PreconditionError("D_floor must be nonnegative")
    N = 2**r
    shift = r - target + 1
    q = (target - 1) << shift if shift >= 0 else Fraction(target - 1, 2**-shift)
    x = D_floor
    k = 0
    while x > 0:
        k += 1
        m = tau + t + k
        if m >= N:
            raise PreconditionError(f"row budget exhausted: tau + t + k reached 2^r - 1 = {N - 1}")
        num = (N - m) - q
        if num <= 0:
            return k
        x = int(x * num // (N - m))
    return k


class _Scanner:
    """Incremental ``floor(D_t)`` for ``t = t0, t0+1, ...``."""

    def __init__(self, query: BoundQuery, t0: int):
        self.q = query
        self.N = 2**query.r
        self.terms = [(u, covering_words(query.r, i)) for i, u in query.u.items() if u]
        self.nums = [1] * len(self.terms)
        self.den = 1
        self.t = 0
        while self.t < t0:
            self._step()

    def _step(self) -> None:
        self.t += 1
        j = self.q.tau + self.t
        if j >= self.N:
            raise PreconditionError("tau + t must stay below 2^r")
        base = self.N - j
        for idx, (_, cw) in enumerate(self.terms):
            if self.nums[idx]:
                f = base - cw
                self.nums[idx] = self.nums[idx] * f if f > 0 else 0
        self.den *= base

    def advance(self) -> None:
        self._step()

    def floor_D(self) -> int:
        acc = sum(u * num for (u, _), num in zip(self.terms, self.nums))
        if not self.q.rank_term:
            return acc // self.den
        s = self.t - self.q.r
        c = 3 * (2 ** (s + 1) - 1)
        # rank term = (c + 2) / (c * 2^s)
        rd = c << s
        return (acc * rd + (c + 2) * self.den) // (self.den * rd)


def _scan(query: BoundQuery, variant: Variant) -> BoundResult:
    r, target, tau = query.r, query.target, query.tau
    N = 2**r
    t = r
    if tau + t >= N:
        raise PreconditionError("tau + r must stay below 2^r")
    scanner = _Scanner(query, t)
    best = None
    trace = []
    while True:
        fl = scanner.floor_D()
        k = engine_kappa(fl, r, target, tau, t)
        trace.append((t, fl, k))
        if best is None or t + k < best[0] + best[1]:
            best = (t, k)
        if t + 1 >= best[0] + best[1] or tau + t + 1 >= N:
            break
        t += 1
        scanner.advance()
    completion = 0 if query.rank_term else r - target + 1
    total = tau + best[0] + best[1] + completion
    return BoundResult(total, best[0], best[1], variant, tau, completion, tuple(trace))


def bound_thm2(query: BoundQuery) -> BoundResult:
    """``tau + min_{t >= r} (t + kappa_t)`` for the full stopping redundancy."""
    if not query.rank_term:
        raise PreconditionError("the stopping-redundancy bound always includes the rank term")
    if not distance_condition(query.r, query.target):
        raise PreconditionError(
            f"(r-1)(d-1) = {(query.r - 1) * (query.target - 1)} > 2^(d-1) = {2 ** (query.target - 1)}"
        )
    return _scan(query, Variant.THM2)


def _code_params(code: LinearCode) -> tuple[int, int, int]:
    return code.n, code.r, code.min_distance()


def bound_stopping_redundancy(code: LinearCode, method: str) -> BoundResult:
    """Stopping-redundancy bound with 0, 1 or 2 analytically counted fixed rows.

    ``method`` is ``tau0`` (no fixed rows), ``cor1`` (one minimum-weight dual
    row) or ``cor2`` (two of them).
    """
    n, r, d = _code_params(code)
    tau = {"tau0": 0, "cor1": 1, "cor2": 2}.get(method)
    if tau is None:
        raise PreconditionError(f"unknown method {method!r}")
    dp = code.dual_min_distance() if tau else None
    if tau == 2 and code.dual_distance is None and code.dual_census().count < 2:
        raise PreconditionError("need at least two minimum-weight dual codewords")
    u = analytic_profile(n, dp, 3, d - 1, tau)
    return bound_thm2(BoundQuery(n, r, d, tau, u, True, dp))


def _hierarchy(n: int, r: int, l: int, tau: int, u: CoverageProfile) -> BoundResult:
    """Best of the rank-completion and the conditional variants at level ``l``."""
    notes = []
    candidates = [_scan(BoundQuery(n, r, l, tau, u, rank_term=False), Variant.RANK_COMPLETION)]
    if distance_condition(r, l):
        candidates.append(_scan(BoundQuery(n, r, l, tau, u, rank_term=True), Variant.CONDITIONAL))
    else:
        notes.append(
            f"l={l}: (r-1)(l-1) = {(r - 1) * (l - 1)} > 2^(l-1) = {2 ** (l - 1)}: "
            "conditional variant unavailable, using rank-completion variant"
        )
    best = min(candidates, key=lambda res: (res.total, res.variant != Variant.CONDITIONAL))
    return BoundResult(**{**best.__dict__, "notes": tuple(notes)})


def bound_thm3(
    n: int,
    r: int,
    dual_distance: int,
    l: int,
    u_override: CoverageProfile | None = None,
    tau: int = 2,
    d: int | None = None,
) -> BoundResult:
    """Bound on the ``l``-th stopping redundancy after ``tau`` fixed rows.

    Default ``u`` is the two-minimum-weight-rows guarantee.  The
    rank-completion variant always applies; the conditional one only when
    ``(r-1)(l-1) <= 2^(l-1)``.  The smaller total is returned.
    """
    if l < 4 or (d is not None and l > d):
        raise PreconditionError("need 4 <= l <= d")
    if u_override is None:
        if tau != 2:
            raise PreconditionError("analytic counts assume tau = 2; pass u_override for other tau")
        u = analytic_profile(n, dual_distance, 3, l - 1, 2)
    else:
        u = u_override
    return _hierarchy(n, r, l, tau, u)


def bound_hierarchy(code: LinearCode, l: int) -> BoundResult:
    n, r, d = _code_params(code)
    if code.dual_distance is None and code.dual_census().count < 2:
        raise PreconditionError("need at least two minimum-weight dual codewords")
    return bound_thm3(n, r, code.dual_min_distance(), l, d=d)


def bound_hybrid(code: LinearCode, tau: int, l: int, *, workers: int = 1, budget: int | None = None) -> BoundResult:
    """Fix the first ``tau`` rows of ``code.H``, count uncovered i-sets exactly,
    then apply the hierarchy bound with that ``tau``."""
    n, r, d = _code_params(code)
    if not 1 <= tau <= r:
        raise PreconditionError(f"tau must lie in 1..{r}")
    if not 4 <= l <= d:
        raise PreconditionError(f"l must lie in 4..{d}")
    fixed = code.H[:tau]
    if gf2.rank(fixed) != tau:
        raise PreconditionError("the fixed rows must be linearly independent")
    u = uncovered_counts(fixed, 3, l - 1, workers=workers, budget=budget)
    return _hierarchy(n, r, l, tau, u)


def hybrid_grid(
    code: LinearCode,
    taus: Iterable[int],
    levels: Iterable[int],
    *,
    workers: int = 1,
    budget: int | None = None,
) -> dict[tuple[int, int], BoundResult]:
    """Hybrid bounds for every ``(tau, l)``; counts each fixed-row prefix once."""
    taus, levels = list(taus), list(levels)
    out = {}
    top = max(levels)
    for tau in taus:
        if not 1 <= tau <= code.r:
            raise PreconditionError(f"tau must lie in 1..{code.r}")
        full = uncovered_counts(code.H[:tau], 3, top - 1, workers=workers, budget=budget)
        for l in levels:
            u = CoverageProfile(3, l - 1, full.u[: l - 3], full.source_rows, True)
            out[tau, l] = _hierarchy(code.n, code.r, l, tau, u)
    return out


def baseline_stopping_redundancy(r: int, d: int) -> BoundResult:
    """``sum_{i=1}^{d-2} C(r, i)`` as a BoundResult."""
    v = partial_binom_sum(r, d - 2)
    return BoundResult(v, 0, 0, Variant.BASELINE)
