"""Biclique covers: data model, exhaustive verification, edge-counting lower bound."""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from math import ceil, comb

from .combinatorics import LabeledGraph, format_descriptor, max_biclique_edges, popcount, submasks_of_size
from .errors import InvalidBicliqueError, ParameterError


@dataclass(frozen=True)
class Biclique:
    """Explicit biclique: every vertex of ``side_x`` joined to every vertex of ``side_y``.

    Either side may be empty (an empty biclique covers nothing).
    """

    side_x: frozenset
    side_y: frozenset

    def __post_init__(self):
        object.__setattr__(self, "side_x", frozenset(self.side_x))
        object.__setattr__(self, "side_y", frozenset(self.side_y))
        if self.side_x & self.side_y:
            raise ParameterError("biclique sides must be disjoint")

    @property
    def edge_count(self):
        return len(self.side_x) * len(self.side_y)


@dataclass(frozen=True)
class GroundPairBiclique:
    """Biclique of a Kneser graph given by disjoint ground sets ``a``, ``b`` (masks).

    Expands to all r-subsets of ``a`` against all r-subsets of ``b``.
    """

    a: int
    b: int
    r: int

    def __post_init__(self):
        if self.a & self.b:
            raise ParameterError("ground pair sets must be disjoint")
        if self.r < 1:
            raise ParameterError("ground pair needs r >= 1")

    @property
    def edge_count(self):
        return comb(popcount(self.a), self.r) * comb(popcount(self.b), self.r)


def expand_ground_pair(gp):
    return Biclique(frozenset(submasks_of_size(gp.a, gp.r)), frozenset(submasks_of_size(gp.b, gp.r)))


def as_biclique(b):
    return expand_ground_pair(b) if isinstance(b, GroundPairBiclique) else b


@dataclass(frozen=True)
class BicliqueCover:
    """A multiset of bicliques claimed to cover every edge of ``target`` at least ``d`` times."""

    target: tuple
    d: int
    bicliques: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "bicliques", tuple(self.bicliques))
        if self.d < 0:
            raise ParameterError("multiplicity must be nonnegative")

    def __len__(self):
        return len(self.bicliques)

    @property
    def size(self):
        return len(self.bicliques)

    def expanded(self):
        return [as_biclique(b) for b in self.bicliques]

    def with_d(self, d):
        return BicliqueCover(self.target, d, self.bicliques)


@dataclass
class CoverReport:
    valid_bicliques: bool
    min_multiplicity: int | None  # None for an edgeless graph
    uncovered: list
    deficient: list
    profile: dict
    invalid: list = field(default_factory=list)
    d: int = 1

    @property
    def passed(self):
        return self.passes(self.d)

    def passes(self, d):
        if not self.valid_bicliques:
            return False
        return self.min_multiplicity is None or self.min_multiplicity >= d

    def __bool__(self):
        return self.passed


def coverage_counts(g, bicliques, strict=True):
    """Per-edge cover counts (indexed like ``g.sorted_edges``) plus offending pairs."""
    counts = Counter()
    invalid = []
    index, adj = g.index, g.adj
    for k, b in enumerate(bicliques):
        b = as_biclique(b)
        xs = []
        for side in (b.side_x, b.side_y):
            ids = []
            for v in side:
                if v not in index:
                    if strict:
                        raise ParameterError(f"biclique {k} uses vertex {v!r} not in the graph")
                    invalid.append((k, (v, None)))
                    continue
                ids.append(index[v])
            xs.append(ids)
        for i in xs[0]:
            for j in xs[1]:
                if not adj[i] >> j & 1:
                    pair = (g.vertices[i], g.vertices[j])
                    if strict:
                        raise InvalidBicliqueError(k, pair)
                    invalid.append((k, pair))
                    continue
                counts[(min(i, j), max(i, j))] += 1
    return counts, invalid


def verify_cover(g: LabeledGraph, cover: BicliqueCover, strict=True):
    """Count how often each edge of ``g`` is covered.

    With ``strict`` a biclique joining a non-adjacent pair raises
    :class:`InvalidBicliqueError`; otherwise the pair is listed in the report.
    """
    if cover.target[0] != "custom" and g.family[0] != "custom" and tuple(cover.target) != tuple(g.family):
        raise ParameterError(
            f"cover targets {format_descriptor(cover.target)} but graph is {format_descriptor(g.family)}"
        )
    counts, invalid = coverage_counts(g, cover.bicliques, strict)
    edges = g.sorted_edges
    per_edge = [counts.get(e, 0) for e in edges]
    label = lambda e: (g.vertices[e[0]], g.vertices[e[1]])  # noqa: E731
    return CoverReport(
        valid_bicliques=not invalid,
        min_multiplicity=min(per_edge) if per_edge else None,
        uncovered=[label(e) for e, c in zip(edges, per_edge) if c == 0],
        deficient=[label(e) for e, c in zip(edges, per_edge) if c < cover.d],
        profile=dict(sorted(Counter(per_edge).items())),
        invalid=invalid,
        d=cover.d,
    )


def bc_lower_bound(g, d, budget=None):
    """ceil(d |E| / B) where B is the largest biclique edge count of ``g``."""
    if d < 1:
        raise ParameterError("d must be positive")
    m = len(g.edges)
    if m == 0:
        return 0
    return ceil(d * m / max_biclique_edges(g, budget))
