import io
import math
from itertools import combinations

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from museumkit.analytics import MwuError, mann_whitney_u, read_comparison_csv
from museumkit.analytics.mannwhitney import midranks

# 20-vs-20 integer dataset constructed so the rank sums land exactly on
# 537.50 / 282.50 (one cross-group tie at the value 29)
GROUP_1 = list(range(17, 37))
GROUP_2 = list(range(1, 17)) + [29, 37, 38, 39]

group_values = st.lists(st.integers(min_value=-50, max_value=50), min_size=1, max_size=12)


def brute_force_sigma(pooled: list[float], n1: int, n2: int) -> float:
    """Tie-corrected sigma via the population variance of midranks."""
    ranks = midranks(np.asarray(pooled, dtype=float))
    n = len(pooled)
    s2 = float(np.sum((ranks - ranks.mean()) ** 2)) / (n - 1)
    return math.sqrt(n1 * n2 * s2 / n)


def brute_force_exact_p(g1: list[float], g2: list[float]) -> float:
    pooled = list(g1) + list(g2)
    ranks = midranks(np.asarray(pooled, dtype=float))
    n1 = len(g1)
    r1 = ranks[:n1].sum()
    total = lo = hi = 0
    for subset in combinations(range(len(pooled)), n1):
        s = ranks[list(subset)].sum()
        total += 1
        lo += s <= r1 + 1e-9
        hi += s >= r1 - 1e-9
    return min(2.0 * min(lo, hi) / total, 1.0)


def test_hand_ranked_example():
    r = mann_whitney_u([1, 3], [2, 4])
    assert r.rank_sum_1 == 4.0
    assert r.rank_sum_2 == 6.0
    assert r.U == 1.0
    assert r.W == 4.0


def test_complete_separation_exact_p():
    r = mann_whitney_u([1, 2, 3], [4, 5, 6])
    assert r.U == 0.0
    assert r.exact_method == "FullEnumeration"
    assert r.p_exact == pytest.approx(0.1)  # 2/20 labelings


def test_frozen_anchor_dataset():
    r = mann_whitney_u(GROUP_1, GROUP_2)
    assert r.rank_sum_1 == pytest.approx(537.5)
    assert r.rank_sum_2 == pytest.approx(282.5)
    assert r.rank_sum_1 + r.rank_sum_2 == pytest.approx(40 * 41 / 2)
    rendered = r.rendered()
    assert rendered["U"] == 72.5
    assert rendered["W"] == 282.5
    assert rendered["mean_rank_1"] == 26.88
    assert rendered["mean_rank_2"] == 14.13
    assert r.Z == pytest.approx(
        (r.U - 20 * 20 / 2) / brute_force_sigma(GROUP_1 + GROUP_2, 20, 20), abs=1e-9)


def test_empty_group_rejected():
    with pytest.raises(MwuError):
        mann_whitney_u([], [1.0])
    with pytest.raises(MwuError):
        mann_whitney_u([2.0] * 3, [2.0] * 3)  # fully tied, degenerate


def test_exact_never_option():
    r = mann_whitney_u([1, 2], [3, 4], exact="never")
    assert r.p_exact is None
    assert r.exact_method == "None"


def test_monte_carlo_path_reproducible():
    g1 = list(range(12))
    g2 = [x + 0.5 for x in range(12)]
    a = mann_whitney_u(g1, g2, seed=7, mc_draws=5000)
    b = mann_whitney_u(g1, g2, seed=7, mc_draws=5000)
    assert a.exact_method == "MonteCarlo"
    assert a.p_exact == b.p_exact
    assert a.mc_seed == 7


@settings(max_examples=100, deadline=None)
@given(group_values, group_values)
def test_symmetry_and_rank_conservation(g1, g2):
    a = mann_whitney_u(g1, g2, exact="never") if len(set(g1 + g2)) > 1 else None
    if a is None:
        return
    b = mann_whitney_u(g2, g1, exact="never")
    n = len(g1) + len(g2)
    assert a.rank_sum_1 + a.rank_sum_2 == pytest.approx(n * (n + 1) / 2)
    assert a.U == b.U
    assert a.W == b.W
    assert abs(a.Z) == pytest.approx(abs(b.Z), abs=1e-12)
    assert a.p_asymptotic == pytest.approx(b.p_asymptotic, abs=1e-12)


@settings(max_examples=100, deadline=None)
@given(group_values, group_values, st.integers(min_value=-1000, max_value=1000))
def test_shift_invariance(g1, g2, shift):
    if len(set(g1 + g2)) <= 1:
        return
    a = mann_whitney_u(g1, g2, exact="never")
    b = mann_whitney_u([x + shift for x in g1], [x + shift for x in g2], exact="never")
    assert a.to_dict() == b.to_dict()


@settings(max_examples=30, deadline=None)
@given(
    st.integers(min_value=0, max_value=10 ** 6),
    st.integers(min_value=2, max_value=8),
    st.integers(min_value=2, max_value=8),
)
def test_exact_matches_brute_force_enumeration(seed, n1, n2):
    rng = np.random.default_rng(seed)
    pooled = rng.permutation(n1 + n2).astype(float)  # tie-free
    g1, g2 = list(pooled[:n1]), list(pooled[n1:])
    r = mann_whitney_u(g1, g2)
    assert r.exact_method == "FullEnumeration"
    assert r.p_exact == pytest.approx(brute_force_exact_p(g1, g2), abs=1e-12)


@settings(max_examples=30, deadline=None)
@given(st.integers(min_value=0, max_value=10 ** 6), st.integers(min_value=4, max_value=8))
def test_exact_close_to_asymptotic_tie_free(seed, n):
    rng = np.random.default_rng(seed)
    pooled = rng.permutation(2 * n).astype(float)
    r = mann_whitney_u(list(pooled[:n]), list(pooled[n:]))
    # continuity-corrected asymptotic p for the comparison
    mu = n * n / 2.0
    sigma = brute_force_sigma(list(pooled), n, n)
    z = (abs(r.U - mu) - 0.5) / sigma
    from statistics import NormalDist

    p_cc = min(2.0 * (1.0 - NormalDist().cdf(z)), 1.0)
    assert abs(r.p_exact - p_cc) < 0.05


def test_sigma_matches_brute_force_with_ties():
    rng = np.random.default_rng(0)
    g1 = list(rng.integers(0, 5, size=15).astype(float))
    g2 = list(rng.integers(0, 5, size=18).astype(float))
    r = mann_whitney_u(g1, g2, exact="never")
    sigma = brute_force_sigma(g1 + g2, len(g1), len(g2))
    assert r.Z == pytest.approx((r.U - len(g1) * len(g2) / 2.0) / sigma, abs=1e-9)


def test_csv_reader():
    text = "group,score\nexp,90\nexp,85\nctl,60\nctl,55\n"
    g1, g2 = read_comparison_csv(io.StringIO(text))
    assert g1 == [90.0, 85.0]
    assert g2 == [60.0, 55.0]
    with pytest.raises(MwuError):
        read_comparison_csv(io.StringIO("a,1\nb,2\nc,3\n"))
