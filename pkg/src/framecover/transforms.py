"""Constructive bridges between codes, cover-free families and biclique covers.

* code <-> 1-cover of KG(t, r): column j of the code is the ground pair
  (A_j, A_j^c) where A_j is the set of rows holding a 1.
* (r, r; d)-CFF -> 2d-cover of KG(t, r), and d-cover -> (r, r; d)-CFF on
  twice as many points.
* projection of a cover of KG(t, r) to KG(t, s), s < r, and its analogue
  for the bipartite graphs I_t(r, w).
* the homomorphism ``kneser_phi`` from KG(t, r) onto the edges of
  KG(t - 2, r - 1), and pushing covers along it.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

import numpy as np

from .cff import CoverFreeFamily, exact_min_n, verify_cff
from .codes import BinaryCode
from .combinatorics import (
    LabeledGraph,
    elements,
    enumerate_ksubsets,
    full_mask,
    graph_from_family,
    kneser_graph,
    popcount,
    submasks_of_size,
)
from .covers import Biclique, BicliqueCover, GroundPairBiclique, as_biclique, verify_cover
from .errors import BudgetExceeded, FramecoverError, ParameterError


def _kneser_params(cover):
    if cover.target[0] != "kneser":
        raise ParameterError(f"expected a cover of a Kneser graph, got {cover.target!r}")
    return cover.target[1], cover.target[2]


def _union(side):
    u = 0
    for m in side:
        u |= m
    return u


def side_unions(cover):
    """(A_i, B_i): unions of the subsets on each side of every biclique."""
    out = []
    for b in cover.bicliques:
        if isinstance(b, GroundPairBiclique):
            e = as_biclique(b)
            out.append((_union(e.side_x), _union(e.side_y)))
        else:
            out.append((_union(b.side_x), _union(b.side_y)))
    return out


def code_to_cover(code, r):
    """One ground-pair biclique per column; a 1-cover of KG(t, r) when the code is an r-SFPC."""
    t = code.t
    if r < 1 or t < 2 * r:
        raise ParameterError(f"need t >= 2r, got t={t}, r={r}")
    full = full_mask(t)
    bicliques = []
    for j in range(code.v):
        a = sum(1 << i for i in range(t) if code.rows[i, j])
        bicliques.append(GroundPairBiclique(a, full & ~a, r))
    return BicliqueCover(("kneser", t, r), 1, tuple(bicliques))


def cover_to_code(cover, unchecked=False):
    """Column i is the indicator vector of the union of side X of biclique i."""
    t, r = _kneser_params(cover)
    if t < 2 * r:
        raise ParameterError(f"need t >= 2r, got t={t}, r={r}")
    if not cover.bicliques:
        raise ParameterError("an empty cover gives no code columns")
    if not unchecked and not verify_cover(kneser_graph(t, r), cover.with_d(1)).passes(1):
        raise FramecoverError("cover does not verify as a 1-cover; pass unchecked=True to convert anyway")
    cols = [a for a, _ in side_unions(cover)]
    rows = np.array([[a >> i & 1 for a in cols] for i in range(t)], dtype=np.uint8)
    return BinaryCode(rows)


def cff_to_cover(f, r, d=1, check=True):
    """Ground pair (A_j, A_j^c) per point j, A_j the blocks through j; a 2d-cover of KG(t, r)."""
    t = f.t
    if r < 1 or t < 2 * r:
        raise ParameterError(f"need t >= 2r, got t={t}, r={r}")
    if check and not verify_cff(f, r, r, d):
        raise FramecoverError(f"family is not an ({r},{r};{d})-CFF")
    full = full_mask(t)
    bicliques = []
    for col in f.columns():
        a = sum(1 << (i - 1) for i in col)
        bicliques.append(GroundPairBiclique(a, full & ~a, r))
    return BicliqueCover(("kneser", t, r), 2 * d, tuple(bicliques))


def cover_to_cff(cover, check=True):
    """Two points per biclique, the indicators of A_i and B_i; an (r, r; d)-CFF on 2l points."""
    t, r = _kneser_params(cover)
    if check and not verify_cover(kneser_graph(t, r), cover).passes(cover.d):
        raise FramecoverError(f"cover does not verify at d={cover.d}")
    cols = []
    for a, b in side_unions(cover):
        cols.extend([a, b])
    blocks = tuple(frozenset(j + 1 for j, c in enumerate(cols) if c >> i & 1) for i in range(t))
    return CoverFreeFamily(len(cols), blocks)


def _side_tagged(b):
    """Split an I_t(r, w) biclique into (w-side masks, r-side masks)."""
    sides = {0: set(), 1: set()}
    for side in (b.side_x, b.side_y):
        tags = {v[0] for v in side}
        if len(tags) > 1:
            raise ParameterError("a biclique side mixes both parts of a bipartite graph")
        for v in side:
            sides[v[0]].add(v[1])
    return sides[0], sides[1]


def intersection_cover_to_cff(cover, check=True):
    """Turn a d-cover of I_t(r, w) (or K^-_{m,m} = I_m(1, 1)) into an (r, w; d)-CFF.

    A biclique joining w-subsets X to r-subsets Y becomes the point lying in
    exactly the blocks of the union of Y.
    """
    fam = cover.target
    if fam[0] == "inter":
        t, r, w = fam[1:]
        lift = lambda b: b  # noqa: E731
    elif fam[0] == "kmm":
        t, r, w = fam[1], 1, 1

        def lift(b):
            return Biclique(frozenset((s, 1 << (k - 1)) for s, k in b.side_x),
                            frozenset((s, 1 << (k - 1)) for s, k in b.side_y))
    else:
        raise ParameterError(f"expected an intersection-graph cover, got {fam!r}")
    if check and not verify_cover(graph_from_family(fam), cover).passes(cover.d):
        raise FramecoverError(f"cover does not verify at d={cover.d}")
    cols = []
    for b in cover.expanded():
        _, rside = _side_tagged(lift(b))
        cols.append(_union(rside))
    blocks = tuple(frozenset(j + 1 for j, c in enumerate(cols) if c >> i & 1) for i in range(t))
    f = CoverFreeFamily(len(cols), blocks)
    if check and not verify_cff(f, r, w, cover.d):
        raise FramecoverError("derived family failed verification")
    return f


def cff_to_intersection_cover(f, r, w, d=1):
    """One biclique per point of an (r, w; d)-CFF, giving a d-cover of I_t(r, w)."""
    t = f.t
    full = full_mask(t)
    bicliques = []
    for col in f.columns():
        s = sum(1 << (i - 1) for i in col)
        x = frozenset((0, m) for m in submasks_of_size(full & ~s, w))
        y = frozenset((1, m) for m in submasks_of_size(s, r))
        bicliques.append(Biclique(x, y))
    return BicliqueCover(("inter", t, r, w), d, tuple(bicliques))


@dataclass
class ProjectionResult:
    cover: BicliqueCover
    m: int
    m_exact: bool
    observed_min: int | None


def _multiplicity_from_cff(r, w, d, t, budget):
    try:
        return exact_min_n(r, w, d, t, budget=budget, cross_check=False).n, True
    except BudgetExceeded:
        return 1, False


def project_cover(cover, s, budget=None):
    """Replace each biclique by all s-subsets of A_i against all s-subsets of B_i.

    The result is claimed as an m-cover of KG(t, s) with
    m = N((r-s, r-s; d), t-2s) when that is computable, else m = 1; it is
    verified at the claimed m and the observed minimum is reported too.
    """
    t, r = _kneser_params(cover)
    if not (t > 2 * r and r > s >= 1):
        raise ParameterError(f"projection needs t > 2r and r > s >= 1, got t={t}, r={r}, s={s}")
    m, exact = _multiplicity_from_cff(r - s, r - s, cover.d, t - 2 * s, budget)
    projected = BicliqueCover(
        ("kneser", t, s), m, tuple(GroundPairBiclique(a, b, s) for a, b in side_unions(cover))
    )
    report = verify_cover(kneser_graph(t, s), projected)
    if not report.passes(m):
        raise FramecoverError(f"projected cover has minimum multiplicity {report.min_multiplicity} < {m}")
    return ProjectionResult(projected, m, exact, report.min_multiplicity)


def project_intersection_cover(cover, i, j, budget=None):
    """Shrink a d-cover of I_t(r, w) to a cover of I_t(r-i, w-j).

    Claimed multiplicity m = N((i, j; d), t - r - w + i + j).
    """
    if cover.target[0] != "inter":
        raise ParameterError("expected a cover of an intersection graph")
    t, r, w = cover.target[1:]
    if not (1 <= i < r and 1 <= j < w):
        raise ParameterError(f"need 1 <= i < r and 1 <= j < w, got i={i}, j={j}")
    m, exact = _multiplicity_from_cff(i, j, cover.d, t - r - w + i + j, budget)
    bicliques = []
    for b in cover.expanded():
        wside, rside = _side_tagged(b)
        a, bb = _union(wside), _union(rside)
        bicliques.append(Biclique(
            frozenset((0, x) for x in submasks_of_size(a, w - j)),
            frozenset((1, y) for y in submasks_of_size(bb, r - i)),
        ))
    target = ("inter", t, r - i, w - j)
    projected = BicliqueCover(target, m, tuple(bicliques))
    report = verify_cover(graph_from_family(target), projected)
    if not report.passes(m):
        raise FramecoverError(f"projected cover has minimum multiplicity {report.min_multiplicity} < {m}")
    return ProjectionResult(projected, m, exact, report.min_multiplicity)


# ---------------------------------------------------------------------------
# the homomorphism KG(t, r) -> KG(t-2, r-1)
# ---------------------------------------------------------------------------

def kneser_phi(t, r, a):
    """Drop the maximum of ``a``, unless ``a`` holds both t-1 and t: then swap
    those two for the largest element missing from ``a``."""
    if not t > 2 * r:
        raise ParameterError(f"phi needs t > 2r, got t={t}, r={r}")
    if popcount(a) != r or a >> t:
        raise ParameterError(f"{elements(a)} is not an {r}-subset of [{t}]")
    top = (1 << (t - 1)) | (1 << (t - 2))
    if a & top != top:
        return a & ~(1 << (a.bit_length() - 1))
    x = next(e for e in range(t, 0, -1) if not a >> (e - 1) & 1)
    return (a & ~top) | (1 << (x - 1))


@dataclass(frozen=True)
class HomomorphismMap:
    t: int
    r: int

    def __post_init__(self):
        if self.r < 2 or not self.t > 2 * self.r:
            raise ParameterError(f"phi needs r >= 2 and t > 2r, got t={self.t}, r={self.r}")

    @property
    def source(self):
        return ("kneser", self.t, self.r)

    @property
    def target(self):
        return ("kneser", self.t - 2, self.r - 1)

    def __call__(self, a):
        return kneser_phi(self.t, self.r, a)

    def table(self):
        return {a: self(a) for a in enumerate_ksubsets(self.t, self.r)}


def check_homomorphism(t, r):
    """Exhaustively test that phi maps edges to edges and hits every target edge.

    Returns ``(is_homomorphism, is_onto_edge, bad)`` where ``bad`` lists a
    violating source edge or a missed target edge.
    """
    phi = HomomorphismMap(t, r)
    table = phi.table()
    src = kneser_graph(t, r)
    dst = kneser_graph(t - 2, r - 1)
    hit = set()
    for a, b in src.label_edges():
        pa, pb = table[a], table[b]
        if pa & pb:
            return False, False, [(a, b)]
        hit.add((min(pa, pb), max(pa, pb)))
    missed = [(a, b) for a, b in dst.label_edges() if (min(a, b), max(a, b)) not in hit]
    return True, not missed, missed


@dataclass
class PushResult:
    cover: BicliqueCover
    dropped: int
    observed_min: int | None


def push_cover(cover, check=True):
    """Image of a d-cover of KG(t, r) under phi, verified as a 3d-cover of KG(t-2, r-1).

    A vertex landing on both sides of an image biclique is removed from both
    (this cannot happen for a biclique with both sides nonempty, since phi
    never maps adjacent vertices together; ``dropped`` counts such removals).
    """
    t, r = _kneser_params(cover)
    phi = HomomorphismMap(t, r)
    if check and not verify_cover(kneser_graph(t, r), cover).passes(cover.d):
        raise FramecoverError(f"cover does not verify at d={cover.d}")
    images = []
    dropped = 0
    for b in cover.expanded():
        x = {phi(v) for v in b.side_x}
        y = {phi(v) for v in b.side_y}
        both = x & y
        dropped += len(both)
        images.append(Biclique(frozenset(x - both), frozenset(y - both)))
    pushed = BicliqueCover(phi.target, 3 * cover.d, tuple(images))
    report = verify_cover(kneser_graph(t - 2, r - 1), pushed)
    if not report.passes(pushed.d):
        raise FramecoverError(f"pushed cover has minimum multiplicity {report.min_multiplicity} < {pushed.d}")
    return PushResult(pushed, dropped, report.min_multiplicity)


def preimage_subgraph(t, r, edge):
    """Bipartite subgraph of KG(t, r) between the phi-preimages of the two ends of ``edge``."""
    phi = HomomorphismMap(t, r)
    a, b = edge
    if a & b or popcount(a) != r - 1 or popcount(b) != r - 1:
        raise ParameterError("edge must join two disjoint (r-1)-subsets")
    table = phi.table()
    left = sorted(v for v, img in table.items() if img == a)
    right = sorted(v for v, img in table.items() if img == b)
    verts = left + right
    pairs = [(x, y) for x in left for y in right if not x & y]
    return LabeledGraph.from_label_edges(verts, pairs, ("custom",))


def induced_structure(g):
    """``"C6"``, ``"3K2"`` or None: whether some 6 vertices induce a 6-cycle or a 3-edge matching.

    Returns ``(kind, vertices)`` for the first hit.
    """
    adj = g.adj
    for combo in combinations(range(g.n), 6):
        sub = sum(1 << i for i in combo)
        degs = [popcount(adj[i] & sub) for i in combo]
        if all(dg == 1 for dg in degs):
            return "3K2", tuple(g.vertices[i] for i in combo)
        if all(dg == 2 for dg in degs):
            # 2-regular on 6 vertices: a 6-cycle or two triangles
            start = combo[0]
            seen = {start}
            frontier = [start]
            while frontier:
                u = frontier.pop()
                nb = adj[u] & sub
                while nb:
                    v = (nb & -nb).bit_length() - 1
                    nb &= nb - 1
                    if v not in seen:
                        seen.add(v)
                        frontier.append(v)
            if len(seen) == 6:
                return "C6", tuple(g.vertices[i] for i in combo)
    return None, ()
