import random
from fractions import Fraction
from math import comb

import pytest
from hypothesis import given, settings, strategies as st

from stopred import bounds as B
from stopred.cover import CoverageProfile
from stopred.errors import PreconditionError

from oracles import D_t_reference, binom_product, covered_count, kappa_reference, pair_with_overlap

SV_BASELINES = {  # partial sums printed in the comparison tables
    (12, 6): 2509,
    (24, 10): 4540385,
    (12, 2): 78, (12, 3): 298, (12, 4): 793, (12, 5): 1585,
    (24, 2): 300, (24, 3): 2324, (24, 4): 12950, (24, 5): 55454,
    (24, 6): 190050, (24, 7): 536154, (24, 8): 1271625, (24, 9): 2579129,
}


@pytest.mark.parametrize("n, k", [(24, 3), (48, 11), (10, 0), (5, 7), (36, 2)])
def test_binom_matches_product(n, k):
    assert B.binom(n, k) == binom_product(n, k)


def test_binom_values():
    assert B.binom(24, 3) == 2024
    assert B.binom(48, 11) == 22595200368
    assert B.binom(7, 0) == 1


@pytest.mark.parametrize("args, value", sorted(SV_BASELINES.items()))
def test_partial_binom_sum_baselines(args, value):
    assert B.partial_binom_sum(*args) == value


@pytest.mark.parametrize(
    "r, d, b, x", [(12, 8, 1, 100), (12, 8, 10, 0), (3, 4, 1, 7), (12, 8, "2.5", 4000), (24, 12, Fraction(7, 3), -5)]
)
def test_lemma1_examples(r, d, b, x):
    assert B.lemma1_holds(r, d, b, x)


@pytest.mark.parametrize(
    "r, d, b, x", [(2, 4, 1, 0), (12, 8, 11, 0), (12, 4, 1, 0), (12, 8, 1, 4096), (12, 8, "0.5", 0)]
)
def test_lemma1_preconditions(r, d, b, x):
    with pytest.raises(PreconditionError):
        B.lemma1_holds(r, d, b, x)


@st.composite
def lemma_points(draw):
    r = draw(st.integers(3, 24))
    d = draw(st.integers(1, 40).filter(lambda d: (r - 1) * (d - 1) <= 2 ** (d - 1)))
    num = draw(st.integers(0, 1000))
    b = 1 + Fraction(num * (r - 3), 1000)
    x = draw(st.integers(-(2**r), 2**r - 1))
    return r, d, b, x


@settings(max_examples=300)
@given(lemma_points())
def test_lemma1_property(point):
    assert B.lemma1_holds(*point)


# analytic counts -----------------------------------------------------------


def test_u_single_values():
    assert B.u_single(24, 8, 3) == 1064
    assert B.u_single(48, 12, 3) == 9736
    assert B.u_single(10, 10, 4) == comb(10, 4)


@pytest.mark.parametrize("n, w, i", [(24, 8, 3), (24, 8, 5), (48, 12, 3), (12, 4, 4)])
def test_u_single_brute_force(n, w, i):
    row = (1 << w) - 1
    assert B.u_single(n, w, i) == comb(n, i) - covered_count([row], n, i)


def test_mass_covered_pair_values():
    assert B.mass_covered_pair(24, 8, 3) == 1408
    assert max(B.pair_overlap_terms(24, 8, 3)) == B.pair_overlap_terms(24, 8, 3)[0] == 512
    assert B.mass_covered_pair(48, 12, 3) == 11430


@pytest.mark.parametrize("n, w, i", [(24, 8, 3), (24, 8, 4), (48, 12, 3), (14, 4, 3), (12, 5, 4)])
def test_mass_covered_pair_is_worst_overlap(n, w, i):
    per_delta = [
        covered_count(list(pair_with_overlap(n, w, delta)), n, i)
        for delta in range(w // 2 + 1)
        if 2 * w - delta <= n
    ]
    assert B.mass_covered_pair(n, w, i) == min(per_delta)
    assert B.mass_covered_pair(n, w, i) <= 2 * w * comb(n - w, i - 1)


# engine --------------------------------------------------------------------


def _profile(values, lo=3):
    return CoverageProfile(lo, lo + len(values) - 1, tuple(values), None, exact=False)


def test_Dt_rank_term_only():
    q = B.BoundQuery(24, 12, 8, 0, _profile([0] * 5))
    assert B.engine_Dt(q, 12) == Fraction(5, 3)


def test_Dt_vanishing_factor():
    # i = 3, r = 4: 3 * 2 = 6 covering words out of 2^4 - (tau+1) = 6 -> certain coverage
    q = B.BoundQuery(10, 4, 4, 9, _profile([5]), rank_term=False)
    assert B.engine_Dt(q, 1) == 0


@pytest.mark.parametrize("tau, t", [(0, 12), (1, 20), (2, 57), (5, 13)])
def test_Dt_matches_hypergeometric_reference(tau, t):
    u = {i: B.binom(24, i) - i for i in range(3, 8)}
    q = B.BoundQuery(24, 12, 8, tau, _profile(list(u.values())))
    assert B.engine_Dt(q, t) == D_t_reference(u, 12, tau, t)


def test_scanner_floor_matches_Dt():
    u = _profile([B.u_pair(24, 8, i) for i in range(3, 8)])
    for rank_term in (True, False):
        q = B.BoundQuery(24, 12, 8, 2, u, rank_term=rank_term)
        scanner = B._Scanner(q, 12)
        for t in range(12, 80):
            assert scanner.floor_D() == B.engine_Dt(q, t).__floor__()
            scanner.advance()


def test_kappa_edges():
    assert B.engine_kappa(0, 12, 8, 2, 50) == 0
    assert B.engine_kappa(1, 12, 8, 2, 50) == 1


@settings(max_examples=200)
@given(st.integers(0, 5000), st.integers(12, 200), st.integers(0, 3), st.integers(4, 8))
def test_kappa_matches_reference(x, t, tau, target):
    assert B.engine_kappa(x, 12, target, tau, t) == kappa_reference(x, 12, target, tau, t)


@settings(max_examples=200)
@given(st.integers(0, 10**6), st.integers(0, 10**6), st.integers(24, 400))
def test_kappa_monotone(a, b, t):
    lo, hi = sorted((a, b))
    assert B.engine_kappa(lo, 24, 12, 2, t) <= B.engine_kappa(hi, 24, 12, 2, t)


def test_kappa_row_budget_exhausted():
    with pytest.raises(PreconditionError):
        B.engine_kappa(5, 4, 4, 0, 15)


# bounds --------------------------------------------------------------------


@pytest.mark.parametrize("method, value", [("tau0", 182), ("cor1", 180), ("cor2", 177)])
def test_golay_stopping_redundancy(golay, method, value):
    res = B.bound_stopping_redundancy(golay, method)
    assert res.total == value
    assert res.total == res.tau + res.t_star + res.kappa
    assert res.t_star >= 12 and res.variant is B.Variant.THM2
    best = min(t + k for t, _, k in res.trace)
    assert res.total == res.tau + best


def test_thm2_precondition():
    q = B.BoundQuery(24, 12, 5, 0, _profile([1, 1]))
    with pytest.raises(PreconditionError):
        B.bound_thm2(q)


def test_query_invariants():
    with pytest.raises(PreconditionError):
        B.BoundQuery(24, 12, 8, 0, _profile([1, 1]))
    with pytest.raises(PreconditionError):
        B.BoundQuery(24, 12, 3, 0, _profile([]))


@pytest.mark.parametrize("l, value", [(4, 25), (5, 36), (6, 59), (7, 103), (8, 177)])
def test_golay_hierarchy(golay, l, value):
    res = B.bound_hierarchy(golay, l)
    assert res.total == value
    assert res.total == res.tau + res.t_star + res.kappa + res.completion
    expected_variant = B.Variant.CONDITIONAL if l == 8 else B.Variant.RANK_COMPLETION
    assert res.variant is expected_variant
    assert bool(res.notes) == (l < 8)


def test_qr_hierarchy_ends():
    assert B.bound_thm3(48, 24, 12, 4).total == 47
    assert B.bound_thm3(48, 24, 12, 12).total == 3515


def test_hierarchy_at_full_distance_equals_cor2(golay):
    assert B.bound_hierarchy(golay, 8).total == B.bound_stopping_redundancy(golay, "cor2").total


@pytest.mark.parametrize("tau, l, value", [(1, 8, 180), (5, 6, 56), (12, 4, 33), (7, 6, 55), (12, 8, 168)])
def test_hybrid_examples(golay, tau, l, value):
    assert B.bound_hybrid(golay, tau, l).total == value


def test_hybrid_dominates_analytic(golay):
    assert B.bound_hybrid(golay, 2, 8).total <= B.bound_hierarchy(golay, 8).total


def test_hybrid_preconditions(golay):
    with pytest.raises(PreconditionError):
        B.bound_hybrid(golay, 0, 6)
    with pytest.raises(PreconditionError):
        B.bound_hybrid(golay, 3, 9)


def test_hybrid_grid_matches_single_calls(golay):
    grid = B.hybrid_grid(golay, [3, 9], [5, 7])
    for (tau, l), res in grid.items():
        assert res.total == B.bound_hybrid(golay, tau, l).total


def test_exact_profile_never_exceeds_analytic(golay):
    exact = B.bound_hybrid(golay, 2, 8)
    from stopred.cover import uncovered_counts

    prof = uncovered_counts(golay.H[:2], 3, 7)
    assert all(prof[i] <= B.u_pair(24, 8, i) for i in range(3, 8))
    assert exact.total <= 177
