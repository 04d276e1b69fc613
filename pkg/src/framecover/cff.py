"""Cover-free families: verification and exact minimum ground-set size.

Block indices and points are 1-based.  An (r, w; d)-CFF requires, for all
disjoint I, J of sizes r and w, at least ``d`` points that lie in every block
of I and in no block of J.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from math import ceil, comb

import numpy as np

from .codes import Verdict
from .combinatorics import popcount
from .errors import Budget, BudgetExceeded, FramecoverError, ParameterError, default_budget


@dataclass(frozen=True)
class CoverFreeFamily:
    n: int
    blocks: tuple

    def __post_init__(self):
        blocks = tuple(frozenset(int(x) for x in b) for b in self.blocks)
        if not blocks:
            raise ParameterError("a family needs at least one block")
        for b in blocks:
            if any(x < 1 or x > self.n for x in b):
                raise ParameterError(f"block {sorted(b)} has points outside 1..{self.n}")
        object.__setattr__(self, "blocks", blocks)

    @classmethod
    def from_incidence(cls, matrix):
        a = np.asarray(matrix, dtype=np.uint8)
        if a.ndim != 2:
            raise ParameterError("incidence matrix must be 2-d")
        return cls(a.shape[1], tuple(frozenset(int(j) + 1 for j in np.flatnonzero(row)) for row in a))

    @property
    def t(self):
        return len(self.blocks)

    @property
    def masks(self):
        return tuple(sum(1 << (x - 1) for x in b) for b in self.blocks)

    @property
    def incidence(self):
        a = np.zeros((self.t, self.n), dtype=np.uint8)
        for i, b in enumerate(self.blocks):
            for x in b:
                a[i, x - 1] = 1
        return a

    def columns(self):
        """Point ``j`` as the set of blocks containing it (1-based), for j = 1..n."""
        return [frozenset(i + 1 for i in range(self.t) if j + 1 in self.blocks[i]) for j in range(self.n)]


def _check_params(r, w, d, t):
    if r < 1 or w < 1 or d < 1:
        raise ParameterError("r, w, d must be positive")
    if r + w > t:
        raise ParameterError(f"need r + w <= t, got r={r}, w={w}, t={t}")


def verify_cff(f, r, w, d=1):
    """Exhaustive (r, w; d) check. Failure witness: least ``(I, J)`` as sorted tuples."""
    _check_params(r, w, d, f.t)
    masks = f.masks
    everything = (1 << f.n) - 1
    for I in combinations(range(1, f.t + 1), r):
        common = everything
        for i in I:
            common &= masks[i - 1]
        if popcount(common) < d:
            # every J fails; report the least one
            rest = [j for j in range(1, f.t + 1) if j not in I]
            return Verdict(False, (I, tuple(rest[:w])))
        rest = [j for j in range(1, f.t + 1) if j not in I]
        for J in combinations(rest, w):
            union = 0
            for j in J:
                union |= masks[j - 1]
            if popcount(common & ~union) < d:
                return Verdict(False, (I, J))
    return Verdict(True)


@dataclass(frozen=True)
class MinNResult:
    n: int
    witness: CoverFreeFamily
    bc: int | None
    nodes: int


def _pairs(t, r, w):
    pairs = []
    for I in combinations(range(t), r):
        rest = [j for j in range(t) if j not in I]
        for J in combinations(rest, w):
            pairs.append((sum(1 << i for i in I), sum(1 << j for j in J)))
    return pairs


def _column_rows(code, t):
    """Column code (row 1 in the most significant bit) -> row bitmask (row i in bit i-1)."""
    return sum(1 << i for i in range(t) if code >> (t - 1 - i) & 1)


class _ColumnSearch:
    """Depth-first search over nondecreasing column sequences.

    Columns are subsets of the block indices.  With ``lex_rows`` the rows of
    the incidence matrix are also kept lexicographically nondecreasing, which
    is sound because relabelling blocks preserves the cover-free property and
    any 0/1 matrix can be permuted to have both rows and columns sorted.
    """

    def __init__(self, r, w, d, t, max_nodes, lex_rows=True):
        self.t, self.d, self.max_nodes, self.lex_rows = t, d, max_nodes, lex_rows
        pairs = _pairs(t, r, w)
        self.npairs = len(pairs)
        cands = []
        for code in range(1 << t):
            rows = _column_rows(code, t)
            cov = [p for p, (I, J) in enumerate(pairs) if I & rows == I and not J & rows]
            if cov:
                cands.append((code, rows, tuple(cov)))
        self.cands = cands
        self.maxpos = [-1] * self.npairs
        for pos, (_, _, cov) in enumerate(cands):
            for p in cov:
                self.maxpos[p] = pos
        self.suffix_maxcov = [0] * (len(cands) + 1)
        for pos in range(len(cands) - 1, -1, -1):
            self.suffix_maxcov[pos] = max(self.suffix_maxcov[pos + 1], len(cands[pos][2]))
        self.maxcov = self.suffix_maxcov[0]
        self.nodes = 0

    def lower_bound(self):
        return max(self.d, ceil(self.d * self.npairs / self.maxcov))

    def solve(self, n):
        self.deficit = [self.d] * self.npairs
        self.total = self.d * self.npairs
        self.chosen = []
        tied = (1 << (self.t - 1)) - 1
        return self._dfs(n, 0, tied)

    def _dfs(self, remaining, start, tied):
        self.nodes += 1
        if self.nodes > self.max_nodes:
            raise BudgetExceeded(f"column search exceeded {self.max_nodes} nodes")
        if self.total == 0:
            return True
        if remaining == 0:
            return False
        deficit = self.deficit
        if max(deficit) > remaining:
            return False
        if self.total > remaining * self.suffix_maxcov[start]:
            return False
        hi = min(self.maxpos[p] for p in range(self.npairs) if deficit[p])
        pair_mask = (1 << (self.t - 1)) - 1
        for pos in range(start, hi + 1):
            _, rows, cov = self.cands[pos]
            if not any(deficit[p] for p in cov):
                continue
            new_tied = tied
            if self.lex_rows:
                greater = rows & ~(rows >> 1) & pair_mask
                if tied & greater:
                    continue
                new_tied = tied & ~(~rows & (rows >> 1) & pair_mask)
            touched = [p for p in cov if deficit[p]]
            for p in touched:
                deficit[p] -= 1
            self.total -= len(touched)
            self.chosen.append(pos)
            if self._dfs(remaining - 1, pos, new_tied):
                return True
            self.chosen.pop()
            self.total += len(touched)
            for p in touched:
                deficit[p] += 1
        return False

    def family(self):
        cols = [self.cands[pos][1] for pos in self.chosen]
        blocks = [frozenset(j + 1 for j, rows in enumerate(cols) if rows >> i & 1) for i in range(self.t)]
        return CoverFreeFamily(len(cols), tuple(blocks))


def exact_min_n(r, w, d, t, budget: Budget | None = None, cross_check=True, lex_rows=True):
    """Smallest n admitting an (r, w; d)-CFF with t blocks, with a verified witness.

    Tries n upward from the edge-counting lower bound.  With ``cross_check``
    the biclique covering number of I_t(r, w) at multiplicity ``d`` is also
    computed by the independent graph solver and must agree.
    """
    _check_params(r, w, d, t)
    budget = budget or default_budget()
    if t > 12:
        raise BudgetExceeded(f"t={t} is beyond the column search")
    search = _ColumnSearch(r, w, d, t, budget.max_nodes, lex_rows=lex_rows)
    n = search.lower_bound()
    upper = d * search.npairs  # one column per pair and unit of multiplicity always works
    while n <= upper:
        if search.solve(n):
            fam = search.family()
            if not verify_cff(fam, r, w, d):
                raise FramecoverError("column search produced a family that fails verification")
            bc = None
            if cross_check:
                from .combinatorics import intersection_bigraph
                from .constructors import exact_bc

                bc = exact_bc(intersection_bigraph(t, r, w), d, budget).size
                if bc != fam.n:
                    raise FramecoverError(
                        f"N(({r},{w};{d}),{t}) = {fam.n} but bc_{d}(I_{t}({r},{w})) = {bc}"
                    )
            return MinNResult(fam.n, fam, bc, search.nodes)
        n += 1
    raise FramecoverError("no family found up to the trivial upper bound")


def pair_count(t, r, w):
    return comb(t, r) * comb(t - r, w)
