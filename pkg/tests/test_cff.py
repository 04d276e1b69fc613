from math import comb

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from framecover.cff import CoverFreeFamily, exact_min_n, pair_count, verify_cff
from framecover.errors import BudgetExceeded, ParameterError

import oracles


def fam(n, *blocks):
    return CoverFreeFamily(n, tuple(frozenset(b) for b in blocks))


def test_singletons_are_cover_free():
    f = fam(4, {1}, {2}, {3}, {4})
    assert verify_cff(f, 1, 1)
    assert verify_cff(f, 1, 3)
    assert not verify_cff(f, 2, 1)


def test_failure_witness_is_least_pair():
    f = fam(3, {1, 2}, {2, 3}, {2})
    v = verify_cff(f, 1, 1)
    assert not v
    assert v.witness == ((3,), (1,))


def test_multiplicity_counts_points():
    f = fam(4, {1, 2}, {3, 4})
    assert verify_cff(f, 1, 1, 2)
    assert not verify_cff(f, 1, 1, 3)


def test_bad_parameters():
    f = fam(2, {1}, {2})
    with pytest.raises(ParameterError):
        verify_cff(f, 2, 1)
    with pytest.raises(ParameterError):
        fam(2, {3})


def test_incidence_round_trip():
    a = np.array([[1, 0, 1], [0, 1, 1], [1, 1, 0], [0, 0, 0]], dtype=np.uint8)
    f = CoverFreeFamily.from_incidence(a)
    assert f.n == 3 and f.t == 4
    assert np.array_equal(f.incidence, a)
    assert f.columns() == [frozenset({1, 3}), frozenset({2, 3}), frozenset({1, 2})]


blocks_st = st.integers(2, 6).flatmap(
    lambda t: st.tuples(
        st.integers(1, 6),
        st.just(t),
    )
).flatmap(
    lambda nt: st.lists(
        st.sets(st.integers(1, nt[0]), max_size=nt[0]), min_size=nt[1], max_size=nt[1]
    ).map(lambda bs: (nt[0], bs))
)


@settings(max_examples=300)
@given(blocks_st, st.integers(1, 3), st.integers(1, 3), st.integers(1, 2))
def test_matches_oracle(nb, r, w, d):
    n, blocks = nb
    if r + w > len(blocks):
        return
    f = CoverFreeFamily(n, tuple(frozenset(b) for b in blocks))
    assert bool(verify_cff(f, r, w, d)) == oracles.cff_oracle(blocks, r, w, d)


@settings(max_examples=300)
@given(blocks_st, st.integers(1, 3), st.integers(1, 3), st.integers(1, 3))
def test_monotone(nb, r, w, d):
    n, blocks = nb
    t = len(blocks)
    f = CoverFreeFamily(n, tuple(frozenset(b) for b in blocks))
    if r + w > t or not verify_cff(f, r, w, d):
        return
    # weaker requirements stay satisfied
    for r2 in range(1, r + 1):
        for w2 in range(1, w + 1):
            for d2 in range(1, d + 1):
                assert verify_cff(f, r2, w2, d2)
    # dropping a block keeps the property when r + w still fits
    if t - 1 >= r + w:
        assert verify_cff(CoverFreeFamily(n, f.blocks[:-1]), r, w, d)


@settings(max_examples=200)
@given(blocks_st, st.integers(1, 3), st.integers(1, 3))
def test_complement_symmetry(nb, r, w):
    # (r, w)-CFF <=> complemented blocks form a (w, r)-CFF
    n, blocks = nb
    if r + w > len(blocks):
        return
    f = CoverFreeFamily(n, tuple(frozenset(b) for b in blocks))
    g = CoverFreeFamily(n, tuple(frozenset(range(1, n + 1)) - b for b in f.blocks))
    assert bool(verify_cff(f, r, w)) == bool(verify_cff(g, w, r))


# values checked against the brute-force matrix oracle
@pytest.mark.parametrize(
    "r,w,d,t,n",
    [(1, 1, 1, 2, 2), (1, 1, 1, 3, 3), (1, 1, 1, 4, 4), (1, 1, 2, 2, 4), (1, 1, 2, 3, 6),
     (1, 1, 3, 2, 6), (2, 1, 1, 3, 3), (1, 2, 1, 3, 3), (2, 1, 1, 4, 4), (1, 2, 1, 4, 4)],
)
def test_exact_min_n_matches_oracle(r, w, d, t, n):
    res = exact_min_n(r, w, d, t)
    assert res.n == n == oracles.min_n_oracle(r, w, d, t, limit=n)
    assert res.bc == n
    assert verify_cff(res.witness, r, w, d)


@pytest.mark.parametrize("t,n", [(2, 2), (3, 3), (4, 4), (5, 4), (6, 4), (7, 5), (8, 5)])
def test_sperner_values(t, n):
    # N((1,1;1),t) is the least n with C(n, floor(n/2)) >= t
    assert exact_min_n(1, 1, 1, t, cross_check=False).n == n
    assert n == min(k for k in range(1, 20) if comb(k, k // 2) >= t)


@pytest.mark.parametrize("args", [(1, 1, 1, 5), (1, 2, 1, 4), (2, 2, 1, 5), (1, 1, 2, 4)])
def test_row_symmetry_break_does_not_change_optimum(args):
    a = exact_min_n(*args, cross_check=False)
    b = exact_min_n(*args, cross_check=False, lex_rows=False)
    assert a.n == b.n


def test_pair_count():
    assert pair_count(5, 2, 2) == 30
    assert pair_count(4, 1, 1) == 12


def test_budget():
    from framecover.errors import Budget

    with pytest.raises(BudgetExceeded):
        exact_min_n(2, 2, 1, 8, Budget(max_nodes=10), cross_check=False)
    with pytest.raises(BudgetExceeded):
        exact_min_n(1, 1, 1, 13)
