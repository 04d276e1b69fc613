from itertools import combinations

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from framecover.codes import (
    BinaryCode,
    feasible_sets_disjoint,
    in_feasible_set,
    is_frameproof,
    is_sfpc,
    majority_word,
    undetectable_positions,
)
from framecover.errors import ParameterError

import oracles


def code(*words):
    return BinaryCode.from_strings(words)


def test_undetectable_examples():
    c = code("010", "011", "101")
    assert undetectable_positions(c, {3}) == {1, 2, 3}
    assert undetectable_positions(c, {1, 2}) == {1, 2}
    assert undetectable_positions(code("01", "10"), {1, 2}) == frozenset()
    with pytest.raises(ParameterError):
        undetectable_positions(c, set())
    with pytest.raises(ParameterError):
        undetectable_positions(c, {4})


def test_feasible_disjoint_examples():
    assert feasible_sets_disjoint(code("000", "111"), {1}, {2}) == (True, 1)
    assert feasible_sets_disjoint(code("00", "01", "10", "11"), {1, 2}, {3, 4}) == (True, 1)
    assert feasible_sets_disjoint(code("01", "10", "11"), {1, 2}, {3}) == (False, None)


random_codes = st.integers(1, 12).flatmap(
    lambda v: st.lists(st.lists(st.integers(0, 1), min_size=v, max_size=v), min_size=2, max_size=6)
)


@settings(max_examples=1000)
@given(random_codes, st.data())
def test_feasible_disjoint_matches_enumeration(rows, data):
    c = BinaryCode(rows)
    t = c.t
    c1 = data.draw(st.sets(st.integers(1, t), min_size=1, max_size=3))
    c2 = data.draw(st.sets(st.integers(1, t), min_size=1, max_size=3))
    ok, pos = feasible_sets_disjoint(c, c1, c2)
    F1, F2 = oracles.feasible_set(rows, sorted(c1)), oracles.feasible_set(rows, sorted(c2))
    assert ok == (not F1 & F2)
    if ok:
        assert pos in undetectable_positions(c, c1) & undetectable_positions(c, c2)
        assert rows[min(c1) - 1][pos - 1] != rows[min(c2) - 1][pos - 1]


@given(random_codes, st.data())
def test_monotone_in_coalition(rows, data):
    c = BinaryCode(rows)
    small = data.draw(st.sets(st.integers(1, c.t), min_size=1))
    big = small | data.draw(st.sets(st.integers(1, c.t)))
    assert undetectable_positions(c, big) <= undetectable_positions(c, small)
    if c.v <= 8:
        assert oracles.feasible_set(rows, sorted(small)) <= oracles.feasible_set(rows, sorted(big))


def test_sfpc_examples():
    v = is_sfpc(code("010", "010", "111"), 1)
    assert not v and v.witness == ((1,), (2,))
    assert is_sfpc(code("000", "111"), 1)
    with pytest.raises(ParameterError):
        is_sfpc(code("0", "1"), 2)


@settings(max_examples=300)
@given(st.integers(1, 5).flatmap(
    lambda v: st.lists(st.lists(st.integers(0, 1), min_size=v, max_size=v), min_size=3, max_size=6)
), st.integers(1, 2))
def test_sfpc_matches_oracle_and_fast_mode(rows, r):
    c = BinaryCode(rows)
    if r >= c.t:
        return
    v = is_sfpc(c, r)
    assert v.passed == oracles.sfpc_oracle(rows, r)
    if not v:
        c1, c2 = v.witness
        assert not set(c1) & set(c2)
        assert not feasible_sets_disjoint(c, c1, c2)[0]
    if c.t >= 2 * r:
        assert is_sfpc(c, r, fast=True).passed == v.passed
    # r-SFPC implies r'-SFPC for r' <= r
    if v and r == 2:
        assert is_sfpc(c, 1)


def test_sfpc_witness_is_least():
    # rows 1, 2 and 3, 4 collide in several ways; the least pair must be reported
    c = code("00", "00", "11", "11")
    assert is_sfpc(c, 1).witness == ((1,), (2,))


def test_frameproof_examples():
    for t in range(2, 6):
        ident = BinaryCode(np.eye(t, dtype=np.uint8))
        for r in range(1, t):
            assert is_frameproof(ident, r)
            assert oracles.fpc_oracle(ident.rows.tolist(), r)
    assert is_frameproof(code("00", "11"), 1)
    # {110, 101, 011}: every pair agrees on one position, the third word differs there
    assert is_frameproof(code("110", "101", "011"), 2)


def test_frameproof_minimal_failure():
    # smallest failing 2-FPC found by enumerating all distinct-row codes by (v, t)
    v = is_frameproof(code("00", "01", "10"), 2)
    assert not v and v.witness == ((2, 3), 1)
    assert not oracles.fpc_oracle([[0, 0], [0, 1], [1, 0]], 2)


@settings(max_examples=300)
@given(st.integers(1, 4).flatmap(
    lambda v: st.lists(st.lists(st.integers(0, 1), min_size=v, max_size=v), min_size=2, max_size=6)
), st.integers(1, 3))
def test_frameproof_matches_oracle(rows, r):
    assert is_frameproof(BinaryCode(rows), r).passed == oracles.fpc_oracle(rows, r)


def test_majority_examples():
    assert majority_word(code("0", "0", "1"), {1, 2, 3}) == (0,)
    assert majority_word(code("110", "101", "011"), {1, 2, 3}) == (1, 1, 1)
    with pytest.raises(ParameterError):
        majority_word(code("0", "1"), {1, 2})


@settings(max_examples=300)
@given(st.integers(1, 3), st.integers(1, 10), st.data())
def test_majority_in_every_r_feasible_set(r, v, data):
    rows = data.draw(st.lists(st.lists(st.integers(0, 1), min_size=v, max_size=v),
                              min_size=2 * r - 1, max_size=2 * r + 3))
    c = BinaryCode(rows)
    D = sorted(data.draw(st.sets(st.integers(1, c.t), min_size=2 * r - 1, max_size=2 * r - 1)))
    m = majority_word(c, D)
    for C in combinations(D, r):
        assert in_feasible_set(c, C, m)


def _fpcs(t, v, r, attempts=300):
    rng = np.random.default_rng(7)
    found = [BinaryCode(np.eye(t, dtype=np.uint8))]
    for _ in range(attempts):
        c = BinaryCode(rng.integers(0, 2, size=(t, v)))
        if is_frameproof(c, r):
            found.append(c)
    return found


# r = 1 is excluded: D is a single codeword and maj(D) is that codeword
@pytest.mark.parametrize("r,t,v", [(2, 4, 6), (2, 5, 8), (2, 6, 10), (3, 7, 7)])
def test_majority_is_unregistered_in_fpc(r, t, v):
    codes = _fpcs(t, v, r)
    assert codes
    for c in codes:
        words = set(c.masks)
        for D in combinations(range(1, t + 1), 2 * r - 1):
            m = majority_word(c, D)
            assert sum(b << j for j, b in enumerate(m)) not in words


def test_duplicates_flagged():
    assert code("01", "10", "01").duplicate_rows == ((1, 3),)
