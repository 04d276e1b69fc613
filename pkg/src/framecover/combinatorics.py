"""Subset bitmasks, the graph families used throughout, and small exact graph parameters.

Subsets of the ground set ``[t] = {1, ..., t}`` are plain ``int`` bitmasks:
element ``i`` lives in bit ``i - 1``.  Ordering masks by integer value is
colexicographic order, which is the canonical vertex order for every
Kneser-family graph built here.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass, field
from functools import cached_property
from itertools import combinations
from math import comb

from .errors import Budget, BudgetExceeded, ParameterError, default_budget

MAX_GROUND = 63


# ---------------------------------------------------------------------------
# subset masks
# ---------------------------------------------------------------------------

def to_mask(elements):
    mask = 0
    for e in elements:
        if e < 1:
            raise ParameterError(f"subset elements start at 1, got {e}")
        mask |= 1 << (e - 1)
    return mask


def elements(mask):
    """Sorted elements of ``mask`` (1-based)."""
    out = []
    i = 1
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return out


def popcount(mask):
    return bin(mask).count("1")


def full_mask(t):
    return (1 << t) - 1


def complement(mask, t):
    return full_mask(t) & ~mask


def max_element(mask):
    return mask.bit_length()


def format_mask(mask):
    return "{" + ",".join(map(str, elements(mask))) + "}"


def enumerate_ksubsets(t, k):
    """All k-subsets of [t] as masks, in colex order (= increasing integer value)."""
    if not (0 <= t <= MAX_GROUND):
        raise ParameterError(f"ground size t={t} outside 0..{MAX_GROUND}")
    if k < 0 or k > t:
        raise ParameterError(f"need 0 <= k <= t, got k={k}, t={t}")
    masks = [sum(1 << i for i in c) for c in combinations(range(t), k)]
    masks.sort()
    return masks


def submasks_of_size(mask, k):
    """k-subsets of the set ``mask``, colex order."""
    elems = elements(mask)
    if k > len(elems):
        return []
    masks = [to_mask(c) for c in combinations(elems, k)]
    masks.sort()
    return masks


# ---------------------------------------------------------------------------
# graphs
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class LabeledGraph:
    """Small explicit graph. ``edges`` holds index pairs ``(i, j)`` with ``i < j``.

    ``family`` is a tuple descriptor such as ``("kneser", 5, 2)``; canonical
    vertex ids are positions in ``vertices``.
    """

    vertices: tuple
    edges: frozenset
    family: tuple = ("custom",)
    warning: str | None = field(default=None, compare=False)

    def __post_init__(self):
        n = len(self.vertices)
        if len(set(self.vertices)) != n:
            raise ParameterError("duplicate vertex labels")
        for i, j in self.edges:
            if not (0 <= i < j < n):
                raise ParameterError(f"bad edge ({i}, {j}) for {n} vertices")

    @classmethod
    def from_label_edges(cls, vertices, label_edges, family=("custom",)):
        vertices = tuple(vertices)
        index = {v: i for i, v in enumerate(vertices)}
        edges = set()
        for a, b in label_edges:
            if a not in index or b not in index:
                raise ParameterError(f"edge ({a!r}, {b!r}) references a missing vertex")
            i, j = index[a], index[b]
            if i == j:
                raise ParameterError(f"self-loop at {a!r}")
            edges.add((min(i, j), max(i, j)))
        return cls(vertices, frozenset(edges), family)

    @property
    def n(self):
        return len(self.vertices)

    @property
    def descriptor(self):
        return format_descriptor(self.family)

    @cached_property
    def index(self):
        return {v: i for i, v in enumerate(self.vertices)}

    @cached_property
    def adj(self):
        """Neighbourhood bitmasks over vertex indices."""
        adj = [0] * self.n
        for i, j in self.edges:
            adj[i] |= 1 << j
            adj[j] |= 1 << i
        return tuple(adj)

    @cached_property
    def sorted_edges(self):
        return tuple(sorted(self.edges))

    def has_edge(self, a, b):
        i, j = self.index.get(a), self.index.get(b)
        if i is None or j is None:
            return False
        return bool(self.adj[i] >> j & 1)

    def label_edges(self):
        return [(self.vertices[i], self.vertices[j]) for i, j in self.sorted_edges]

    def induced(self, labels):
        wanted = set(labels)
        keep = [v for v in self.vertices if v in wanted]
        return LabeledGraph.from_label_edges(
            keep, [(a, b) for a, b in self.label_edges() if a in wanted and b in wanted]
        )


def kneser_graph(t, r):
    """KG(t, r): r-subsets of [t], adjacent when disjoint."""
    if t < 1 or r < 1:
        raise ParameterError("kneser graph needs t, r >= 1")
    verts = enumerate_ksubsets(t, r)
    edges = set()
    for i, a in enumerate(verts):
        for j in range(i + 1, len(verts)):
            if not a & verts[j]:
                edges.add((i, j))
    warning = None
    if t < 2 * r:
        warning = f"KG({t},{r}) has t < 2r and is edgeless"
        warnings.warn(warning, stacklevel=2)
    return LabeledGraph(tuple(verts), frozenset(edges), ("kneser", t, r), warning)


def intersection_bigraph(t, r, w):
    """I_t(r, w): w-subsets (side 0) joined to disjoint r-subsets (side 1)."""
    if r < 1 or w < 1:
        raise ParameterError("intersection graph needs r, w >= 1")
    if r + w > t:
        raise ParameterError(f"need r + w <= t, got r={r}, w={w}, t={t}")
    left = [(0, m) for m in enumerate_ksubsets(t, w)]
    right = [(1, m) for m in enumerate_ksubsets(t, r)]
    verts = tuple(left + right)
    off = len(left)
    edges = set()
    for i, (_, a) in enumerate(left):
        for j, (_, b) in enumerate(right):
            if not a & b:
                edges.add((i, off + j))
    return LabeledGraph(verts, frozenset(edges), ("inter", t, r, w))


def complete_graph(n):
    if n < 1:
        raise ParameterError("complete graph needs n >= 1")
    verts = tuple(range(1, n + 1))
    edges = frozenset((i, j) for i in range(n) for j in range(i + 1, n))
    return LabeledGraph(verts, edges, ("kn", n))


def complete_bipartite_minus_matching(m):
    """K^-_{m,m}: left ``(0, i)`` is adjacent to right ``(1, j)`` iff ``i != j``."""
    if m < 2:
        raise ParameterError("K^-_{m,m} needs m >= 2")
    verts = tuple([(0, i) for i in range(1, m + 1)] + [(1, i) for i in range(1, m + 1)])
    edges = frozenset((i, m + j) for i in range(m) for j in range(m) if i != j)
    return LabeledGraph(verts, edges, ("kmm", m))


def custom_graph(n, edge_pairs):
    """Graph on vertices ``0..n-1``; used for tests and graph files."""
    return LabeledGraph.from_label_edges(range(n), edge_pairs, ("custom",))


def cycle_graph(n):
    return custom_graph(n, [(i, (i + 1) % n) for i in range(n)])


_FAMILY_ARITY = {"kneser": 2, "inter": 3, "kn": 1, "kmm": 1}


def parse_descriptor(text):
    """Parse ``kneser:t,r | inter:t,r,w | kn:n | kmm:m`` into a family tuple."""
    name, sep, args = str(text).strip().partition(":")
    name = name.strip().lower()
    if not sep or name not in _FAMILY_ARITY:
        raise ParameterError(f"unknown graph descriptor {text!r}")
    try:
        nums = tuple(int(a) for a in args.split(","))
    except ValueError:
        raise ParameterError(f"non-integer parameter in descriptor {text!r}") from None
    if len(nums) != _FAMILY_ARITY[name]:
        raise ParameterError(f"{name} takes {_FAMILY_ARITY[name]} parameters, got {text!r}")
    return (name,) + nums


def format_descriptor(family):
    if family[0] == "custom":
        return "custom"
    return f"{family[0]}:" + ",".join(str(x) for x in family[1:])


def graph_from_family(family):
    if isinstance(family, str):
        family = parse_descriptor(family)
    name = family[0]
    if name == "kneser":
        return kneser_graph(*family[1:])
    if name == "inter":
        return intersection_bigraph(*family[1:])
    if name == "kn":
        return complete_graph(*family[1:])
    if name == "kmm":
        return complete_bipartite_minus_matching(*family[1:])
    raise ParameterError(f"cannot regenerate family {family!r}")


# ---------------------------------------------------------------------------
# exact graph parameters
# ---------------------------------------------------------------------------

def _clique_cover_bound(adj, cand):
    """Greedy partition of ``cand`` into cliques; an independent set takes one per clique."""
    count = 0
    rest = cand
    while rest:
        v = (rest & -rest).bit_length() - 1
        clique_common = adj[v] & rest
        rest &= ~(1 << v)
        while clique_common:
            u = (clique_common & -clique_common).bit_length() - 1
            clique_common &= adj[u]
            rest &= ~(1 << u)
        count += 1
    return count


def _max_independent_set(adj, n, max_nodes):
    best = [0, 0]  # size, mask
    nodes = [0]

    def search(cand, chosen, size):
        nodes[0] += 1
        if nodes[0] > max_nodes:
            raise BudgetExceeded(f"independent-set search exceeded {max_nodes} nodes", best=n - best[0])
        # forced moves: vertices with degree <= 1 inside cand belong to some maximum set
        changed = True
        while changed and cand:
            changed = False
            c = cand
            while c:
                v = (c & -c).bit_length() - 1
                c &= c - 1
                if not cand >> v & 1:
                    continue
                if popcount(adj[v] & cand) <= 1:
                    chosen |= 1 << v
                    size += 1
                    cand &= ~(adj[v] | (1 << v))
                    changed = True
        if not cand:
            if size > best[0]:
                best[0], best[1] = size, chosen
            return
        if size + _clique_cover_bound(adj, cand) <= best[0]:
            return
        # branch on the highest-degree vertex (lowest index on ties)
        v, deg = -1, -1
        c = cand
        while c:
            u = (c & -c).bit_length() - 1
            c &= c - 1
            du = popcount(adj[u] & cand)
            if du > deg:
                v, deg = u, du
        search(cand & ~(adj[v] | (1 << v)), chosen | (1 << v), size + 1)
        search(cand & ~(1 << v), chosen, size)

    search((1 << n) - 1, 0, 0)
    return best[1]


def covering_number(g, budget: Budget | None = None):
    """Minimum vertex cover of ``g``: ``(size, witness labels)``.

    Certified by branch and bound on the complementary maximum independent set.
    """
    budget = budget or default_budget()
    if g.n > budget.max_vertices:
        raise BudgetExceeded(f"{g.n} vertices exceeds the exact-search budget of {budget.max_vertices}")
    indep = _max_independent_set(g.adj, g.n, budget.max_nodes)
    cover = [g.vertices[i] for i in range(g.n) if not indep >> i & 1]
    return len(cover), frozenset(cover)


def is_c4_free(g):
    """``(True, None)`` or ``(False, (a, b, c, d))`` with a-b-c-d-a a 4-cycle subgraph."""
    adj = g.adj
    for u in range(g.n):
        for v in range(u + 1, g.n):
            common = adj[u] & adj[v]
            if popcount(common) >= 2:
                a = (common & -common).bit_length() - 1
                common &= common - 1
                b = (common & -common).bit_length() - 1
                return False, (g.vertices[u], g.vertices[a], g.vertices[v], g.vertices[b])
    return True, None


def _side_key(mask):
    out = []
    i = 0
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return tuple(out)


def maximal_biclique_masks(g, budget: Budget | None = None):
    """Every maximal biclique of ``g`` with both sides nonempty, as index-bitmask pairs.

    A maximal biclique is a pair ``(X, Y)`` with ``Y = N(X)`` and ``X = N(Y)``
    (common neighbourhoods), so each side is an intersection of vertex
    neighbourhoods.  The family of such intersections is closed under
    intersecting with one more neighbourhood, which is how it is enumerated.
    Each biclique is reported once, the side with the lexicographically smaller
    index tuple first; the list is sorted.
    """
    budget = budget or default_budget()
    if g.n > budget.max_vertices:
        raise BudgetExceeded(f"{g.n} vertices exceeds the exact-search budget of {budget.max_vertices}")
    adj = g.adj
    full = (1 << g.n) - 1
    seen = set()
    stack = []
    for v in range(g.n):
        if adj[v] and adj[v] not in seen:
            seen.add(adj[v])
            stack.append(adj[v])
    while stack:
        y = stack.pop()
        for v in range(g.n):
            y2 = y & adj[v]
            if y2 and y2 != y and y2 not in seen:
                seen.add(y2)
                if len(seen) > budget.max_nodes:
                    raise BudgetExceeded("maximal biclique enumeration exceeded the node budget")
                stack.append(y2)
    out = set()
    for y in seen:
        x = full
        rest = y
        while rest:
            v = (rest & -rest).bit_length() - 1
            rest &= rest - 1
            x &= adj[v]
        if not x:
            continue
        kx, ky = _side_key(x), _side_key(y)
        out.add((x, y) if kx <= ky else (y, x))
    return sorted(out, key=lambda p: (_side_key(p[0]), _side_key(p[1])))


def max_biclique_edges(g, budget: Budget | None = None):
    """Largest ``|X| * |Y|`` over bicliques of ``g`` with both sides nonempty (0 if edgeless).

    This is the quantity used in the edge-counting lower bound for biclique covers.
    """
    best = 0
    for x, y in maximal_biclique_masks(g, budget):
        best = max(best, popcount(x) * popcount(y))
    return best


def kneser_edge_count(t, r):
    return comb(t, r) * comb(t - r, r) // 2
