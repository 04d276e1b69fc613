"""Biclique cover constructions for Kneser graphs and the exact bc_d solver.

``random_cover`` samples each halving biclique independently with the
probability that minimises the expected cover size, then patches every
uncovered edge with a single-edge biclique.  ``exact_bc`` is a
branch-and-bound multicover search over the maximal bicliques of a graph.
"""

from __future__ import annotations

import logging
import warnings
from dataclasses import dataclass, field
from fractions import Fraction
from math import ceil, comb, floor, log

import numpy as np

from .combinatorics import (
    complement,
    enumerate_ksubsets,
    kneser_graph,
    maximal_biclique_masks,
    popcount,
)
from .covers import Biclique, BicliqueCover, GroundPairBiclique, verify_cover
from .errors import Budget, BudgetExceeded, FramecoverError, ParameterError, default_budget

log_ = logging.getLogger(__name__)

RNG_ALGORITHM = "numpy.random.PCG64 seeded by SeedSequence([seed, trial])"


@dataclass(frozen=True)
class RandomTrialConfig:
    seed: int = 0
    trials: int = 50
    p_override: float | None = None

    def __post_init__(self):
        if self.trials < 1:
            raise ParameterError("trials must be >= 1")
        if not (0 <= self.seed < 2**64):
            raise ParameterError("seed must fit in 64 bits")


def halving_pool(t, r):
    """One ground-pair biclique (A, A^c) for every ceil(t/2)-subset A of [t]."""
    if r < 1 or t < 2 * r:
        raise ParameterError(f"halving pool needs t >= 2r >= 2, got t={t}, r={r}")
    half = (t + 1) // 2
    return [GroundPairBiclique(a, complement(a, t), r) for a in enumerate_ksubsets(t, half)]


@dataclass(frozen=True)
class SfpcBound:
    t: int
    r: int
    pool_size: int      # C(t, ceil(t/2))
    alpha: int          # C(ceil(t/2), r) * C(floor(t/2), r)
    beta: int           # 2 * C(t - 2r, ceil(t/2) - r): halving bicliques through a fixed edge
    prefactor: Fraction  # pool_size / beta
    value: float
    p: float
    valid: bool

    @property
    def floor(self):
        return floor(self.value)


def sfpc_bound(t, r):
    """Upper bound on the shortest r-SFPC with t codewords from random halving covers."""
    if r < 1 or t < 2 * r:
        raise ParameterError(f"bound needs t >= 2r >= 2, got t={t}, r={r}")
    hi, lo = (t + 1) // 2, t // 2
    pool = comb(t, hi)
    alpha = comb(hi, r) * comb(lo, r)
    beta = 2 * comb(t - 2 * r, hi - r)
    pref = Fraction(pool, beta)
    value = float(pref) * (1 + log(alpha))
    p = log(alpha) / beta
    return SfpcBound(t, r, pool, alpha, beta, pref, value, p, valid=t > 2 * r and 0 < p <= 1)


def _edge_in_pair(a, b, s, sc):
    return (a & s == a and b & sc == b) or (b & s == b and a & sc == a)


def _kneser_edges(t, r):
    verts = enumerate_ksubsets(t, r)
    return [(a, b) for i, a in enumerate(verts) for b in verts[i + 1:] if not a & b]


@dataclass
class RandomCoverResult:
    best: BicliqueCover
    sizes: list
    picked: list
    patched: list
    p: float
    clamped: bool
    bound: SfpcBound
    seed: int
    rng: str = RNG_ALGORITHM

    @property
    def best_size(self):
        return self.best.size


def random_cover(t, r, cfg: RandomTrialConfig | None = None):
    """Run ``cfg.trials`` independent random halving covers of KG(t, r); keep the smallest.

    Each trial uses its own stream derived from ``(seed, trial)``, so results
    do not depend on the order trials are run in.
    """
    cfg = cfg or RandomTrialConfig()
    bound = sfpc_bound(t, r)
    p = bound.p if cfg.p_override is None else float(cfg.p_override)
    clamped = False
    if p > 1 or p < 0:
        clamped = True
        warnings.warn(f"p={p:.4g} outside [0, 1] for t={t}, r={r}; clamping", stacklevel=2)
        p = min(max(p, 0.0), 1.0)
    pool = halving_pool(t, r)
    edges = _kneser_edges(t, r)
    graph = kneser_graph(t, r)
    full = (1 << t) - 1
    best = None
    sizes, picked_counts, patched_counts = [], [], []
    for trial in range(cfg.trials):
        rng = np.random.Generator(np.random.PCG64(np.random.SeedSequence([cfg.seed, trial])))
        mask = rng.random(len(pool)) < p
        chosen = [g for g, keep in zip(pool, mask) if keep]
        sets = [(g.a, full & ~g.a) for g in chosen]
        patch = [
            GroundPairBiclique(a, b, r)
            for a, b in edges
            if not any(_edge_in_pair(a, b, s, sc) for s, sc in sets)
        ]
        cover = BicliqueCover(("kneser", t, r), 1, tuple(chosen) + tuple(patch))
        if not verify_cover(graph, cover).passes(1):
            raise FramecoverError(f"trial {trial} produced an invalid cover")
        sizes.append(cover.size)
        picked_counts.append(len(chosen))
        patched_counts.append(len(patch))
        if best is None or cover.size < best.size:
            best = cover
    log_.debug("random_cover t=%d r=%d p=%.4f sizes=%s", t, r, p, sizes)
    return RandomCoverResult(best, sizes, picked_counts, patched_counts, p, clamped, bound, cfg.seed)


def greedy_cover(t, r):
    """Deterministic baseline: take the halving biclique covering most uncovered edges, repeat."""
    if t < 2 * r:
        return BicliqueCover(("kneser", t, r), 1, ())
    pool = halving_pool(t, r)
    full = (1 << t) - 1
    uncovered = set(_kneser_edges(t, r))
    chosen = []
    while uncovered:
        best_gain, best_g = 0, None
        for g in pool:
            s, sc = g.a, full & ~g.a
            gain = sum(1 for a, b in uncovered if _edge_in_pair(a, b, s, sc))
            if gain > best_gain:
                best_gain, best_g = gain, g
        if best_g is None:
            break
        s, sc = best_g.a, full & ~best_g.a
        uncovered = {e for e in uncovered if not _edge_in_pair(*e, s, sc)}
        chosen.append(best_g)
    chosen.extend(GroundPairBiclique(a, b, r) for a, b in sorted(uncovered))
    cover = BicliqueCover(("kneser", t, r), 1, tuple(chosen))
    if not verify_cover(kneser_graph(t, r), cover).passes(1):
        raise FramecoverError("greedy cover failed verification")
    return cover


def maximal_bicliques(g, budget: Budget | None = None):
    """Maximal bicliques of ``g`` (both sides nonempty), one per unordered pair of sides."""
    verts = g.vertices

    def labels(mask):
        return frozenset(verts[i] for i in range(g.n) if mask >> i & 1)

    return [Biclique(labels(x), labels(y)) for x, y in maximal_biclique_masks(g, budget)]


@dataclass
class ExactBcResult:
    size: int
    witness: BicliqueCover
    lower_bound: int
    nodes: int
    candidates: int = field(default=0)


class _MulticoverSearch:
    def __init__(self, cand_edges, m, d, max_nodes):
        self.cand_edges = cand_edges
        self.m, self.d, self.max_nodes = m, d, max_nodes
        self.edge_cands = []
        for e in range(m):
            self.edge_cands.append([c for c, em in enumerate(cand_edges) if em >> e & 1])
        self.edge_cmask = [sum(1 << c for c in cs) for cs in self.edge_cands]
        self.nodes = 0

    def greedy(self):
        deficit = [self.d] * self.m
        chosen = []
        while any(deficit):
            need = sum(1 << e for e in range(self.m) if deficit[e])
            c = max(range(len(self.cand_edges)), key=lambda c: (popcount(self.cand_edges[c] & need), -c))
            chosen.append(c)
            for e in range(self.m):
                if self.cand_edges[c] >> e & 1 and deficit[e]:
                    deficit[e] -= 1
        return chosen

    def bound(self, deficit, need, allowed):
        total = sum(deficit)
        maxcov = 0
        rest = allowed
        while rest:
            c = (rest & -rest).bit_length() - 1
            rest &= rest - 1
            cov = popcount(self.cand_edges[c] & need)
            if cov > maxcov:
                maxcov = cov
        if maxcov == 0:
            return None
        lb = max(ceil(total / maxcov), max(deficit))
        # edges no single allowed biclique can share need separate bicliques
        used = 0
        packed = 0
        order = sorted((e for e in range(self.m) if deficit[e]), key=lambda e: popcount(self.edge_cmask[e] & allowed))
        for e in order:
            cm = self.edge_cmask[e] & allowed
            if not cm:
                return None
            if not cm & used:
                used |= cm
                packed += deficit[e]
        return max(lb, packed)

    def run(self, upper):
        self.best = list(upper)
        allowed = (1 << len(self.cand_edges)) - 1
        deficit = [self.d] * self.m
        self._dfs(deficit, allowed, [])
        return self.best

    def _dfs(self, deficit, allowed, chosen):
        self.nodes += 1
        if self.nodes > self.max_nodes:
            raise BudgetExceeded(
                f"exact bc search exceeded {self.max_nodes} nodes", best=len(self.best)
            )
        need = sum(1 << e for e in range(self.m) if deficit[e])
        if not need:
            if len(chosen) < len(self.best):
                self.best = list(chosen)
            return
        lb = self.bound(deficit, need, allowed)
        if lb is None or len(chosen) + lb >= len(self.best):
            return
        # most constrained deficient edge
        e = min(
            (e for e in range(self.m) if deficit[e]),
            key=lambda e: (popcount(self.edge_cmask[e] & allowed), e),
        )
        excluded = 0
        for c in self.edge_cands[e]:
            if not allowed >> c & 1:
                continue
            sub_allowed = allowed & ~excluded
            if self.d == 1:
                sub_allowed &= ~(1 << c)
            em = self.cand_edges[c]
            new_def = [x - 1 if x and em >> i & 1 else x for i, x in enumerate(deficit)]
            chosen.append(c)
            self._dfs(new_def, sub_allowed, chosen)
            chosen.pop()
            excluded |= 1 << c


def exact_bc(g, d=1, budget: Budget | None = None):
    """Minimum size of a d-biclique cover of ``g``, with a verified optimal witness.

    Branches on the deficient edge with the fewest available maximal
    bicliques; the i-th branch commits to the i-th such biclique as the
    lowest one used, so no multiset is visited twice.  Pruning combines the
    edge-count bound with a packing bound over edges no available biclique
    can share.
    """
    if d < 1:
        raise ParameterError("d must be positive")
    budget = budget or default_budget()
    m = len(g.edges)
    if m > budget.max_edges:
        raise BudgetExceeded(f"{m} edges exceeds the exact-search budget of {budget.max_edges}")
    if m == 0:
        return ExactBcResult(0, BicliqueCover(g.family, d, ()), 0, 0)
    masks = maximal_biclique_masks(g, budget)
    edge_index = {e: k for k, e in enumerate(g.sorted_edges)}
    cand_edges = []
    for x, y in masks:
        em = 0
        xs = [i for i in range(g.n) if x >> i & 1]
        ys = [j for j in range(g.n) if y >> j & 1]
        for i in xs:
            for j in ys:
                em |= 1 << edge_index[(min(i, j), max(i, j))]
        cand_edges.append(em)
    search = _MulticoverSearch(cand_edges, m, d, budget.max_nodes)
    upper = search.greedy()
    all_cands = (1 << len(cand_edges)) - 1
    lb0 = search.bound([d] * m, (1 << m) - 1, all_cands)
    best = upper if len(upper) <= lb0 else search.run(upper)
    verts = g.vertices

    def labels(mask):
        return frozenset(verts[i] for i in range(g.n) if mask >> i & 1)

    witness = BicliqueCover(g.family, d, tuple(Biclique(labels(masks[c][0]), labels(masks[c][1])) for c in sorted(best)))
    if not verify_cover(g, witness).passes(d):
        raise FramecoverError("exact bc witness failed verification")
    return ExactBcResult(len(best), witness, lb0, search.nodes, len(cand_edges))
