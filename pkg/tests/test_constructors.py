import random
from fractions import Fraction
from math import comb, isclose, log

import pytest
from hypothesis import given, settings, strategies as st

from framecover.combinatorics import (
    complete_graph,
    covering_number,
    custom_graph,
    cycle_graph,
    is_c4_free,
    kneser_graph,
)
from framecover.constructors import (
    RandomTrialConfig,
    exact_bc,
    greedy_cover,
    halving_pool,
    maximal_bicliques,
    random_cover,
    sfpc_bound,
)
from framecover.covers import Biclique, bc_lower_bound, verify_cover
from framecover.errors import Budget, BudgetExceeded, ParameterError

import oracles


@pytest.mark.parametrize("t,r", [(4, 1), (5, 2), (6, 2), (7, 3), (10, 2)])
def test_halving_pool(t, r):
    pool = halving_pool(t, r)
    assert len(pool) == comb(t, (t + 1) // 2)
    full = (1 << t) - 1
    assert all(g.a | g.b == full and not g.a & g.b for g in pool)


def test_bound_t10_r2():
    b = sfpc_bound(10, 2)
    assert (b.pool_size, b.alpha, b.beta) == (252, 100, 40)
    assert b.prefactor == Fraction(63, 10)
    assert isclose(b.value, 252 / 40 * (1 + log(100)), rel_tol=1e-12)
    assert b.floor == 35
    assert isclose(b.p, log(100) / 40, rel_tol=1e-12)
    assert b.valid


def test_bound_degenerate_at_t_equal_2r():
    b = sfpc_bound(4, 2)
    assert b.alpha == 1 and b.p == 0 and not b.valid
    with pytest.raises(ParameterError):
        sfpc_bound(3, 2)


def test_random_cover_is_deterministic():
    cfg = RandomTrialConfig(seed=11, trials=5)
    a, b = random_cover(8, 2, cfg), random_cover(8, 2, cfg)
    assert a.sizes == b.sizes
    assert a.best.bicliques == b.best.bicliques


def test_trials_do_not_depend_on_count():
    a = random_cover(8, 2, RandomTrialConfig(seed=4, trials=3))
    b = random_cover(8, 2, RandomTrialConfig(seed=4, trials=6))
    assert b.sizes[:3] == a.sizes


def test_random_cover_t10_seed1():
    res = random_cover(10, 2, RandomTrialConfig(seed=1, trials=50))
    assert verify_cover(kneser_graph(10, 2), res.best).passed
    assert res.best.size <= 35
    assert res.best.size == min(res.sizes) == 27
    assert not res.clamped


def test_full_pool_needs_no_patching():
    res = random_cover(6, 2, RandomTrialConfig(seed=3, trials=2, p_override=1))
    assert res.sizes == [20, 20] and res.patched == [0, 0]


def test_p_out_of_range_is_clamped():
    with pytest.warns(UserWarning):
        res = random_cover(6, 2, RandomTrialConfig(seed=0, trials=1, p_override=1.5))
    assert res.clamped and res.p == 1.0


def test_greedy_baseline():
    c = greedy_cover(5, 2)
    assert verify_cover(kneser_graph(5, 2), c).passed
    assert c.size <= 10
    assert greedy_cover(10, 2).size <= 35


def label_sets(bics):
    return sorted(tuple(sorted([tuple(sorted(b.side_x)), tuple(sorted(b.side_y))])) for b in bics)


@pytest.mark.parametrize(
    "g,expect",
    [
        (complete_graph(3), [((1,), (2, 3)), ((1, 2), (3,)), ((1, 3), (2,))]),
        (custom_graph(4, [(0, 2), (0, 3), (1, 2), (1, 3)]), [((0, 1), (2, 3))]),
        (cycle_graph(6), [((0,), (1, 5)), ((0, 2), (1,)), ((0, 4), (5,)),
                          ((1, 3), (2,)), ((2, 4), (3,)), ((3, 5), (4,))]),
    ],
)
def test_maximal_bicliques_frozen(g, expect):
    assert label_sets(maximal_bicliques(g)) == expect


def small_graph(seed, n, p=0.55):
    rng = random.Random(seed)
    return [(i, j) for i in range(n) for j in range(i + 1, n) if rng.random() < p]


@settings(max_examples=60)
@given(st.integers(0, 10**6), st.integers(2, 6))
def test_maximal_bicliques_match_oracle(seed, n):
    edges = small_graph(seed, n)
    ours = label_sets(maximal_bicliques(custom_graph(n, edges)))
    ref = label_sets(Biclique(frozenset(x), frozenset(y)) for x, y in oracles.maximal_bicliques_oracle(n, edges))
    assert ours == ref


@settings(max_examples=60)
@given(st.integers(0, 10**6), st.integers(2, 6))
def test_exact_bc_matches_oracle(seed, n):
    edges = small_graph(seed, n)
    res = exact_bc(custom_graph(n, edges), 1)
    assert res.size == oracles.bc_oracle(n, edges, 1)


@settings(max_examples=40)
@given(st.integers(0, 10**6), st.integers(2, 5), st.integers(2, 3))
def test_exact_multicover_matches_oracle(seed, n, d):
    edges = small_graph(seed, n)
    g = custom_graph(n, edges)
    res = exact_bc(g, d)
    assert res.size == oracles.bc_oracle(n, edges, d, limit=12)
    assert res.size >= bc_lower_bound(g, d) if edges else res.size == 0
    assert verify_cover(g, res.witness).passes(d)


@settings(max_examples=60)
@given(st.integers(0, 10**6), st.integers(2, 9))
def test_c4_free_graphs_need_covering_number(seed, n):
    edges = small_graph(seed, n, 0.3)
    g = custom_graph(n, edges)
    if not is_c4_free(g)[0]:
        return
    assert not oracles.has_c4_oracle(n, edges)
    beta, _ = covering_number(g)
    assert beta == oracles.vertex_cover_oracle(n, edges)
    assert exact_bc(g, 1).size == beta


def test_kneser_values():
    assert exact_bc(kneser_graph(5, 2), 1).size == 6
    assert exact_bc(kneser_graph(5, 2), 2).size == 10
    assert exact_bc(complete_graph(8), 2).size == 4
    assert exact_bc(kneser_graph(6, 2), 2, Budget(max_edges=80)).size == 10


def test_budget_errors():
    with pytest.raises(BudgetExceeded):
        exact_bc(kneser_graph(7, 3), 1)  # 70 edges > default 40
    with pytest.raises(BudgetExceeded) as exc:
        exact_bc(kneser_graph(6, 2), 2, Budget(max_edges=80, max_nodes=100))
    assert exc.value.best >= 10  # best found so far; the optimum is 10
    with pytest.raises(BudgetExceeded):
        exact_bc(kneser_graph(6, 2), 2, Budget(max_edges=80, max_nodes=5))  # stops in enumeration
    with pytest.raises(ParameterError):
        exact_bc(cycle_graph(4), 0)
