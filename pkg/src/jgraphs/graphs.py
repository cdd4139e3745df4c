"""Immutable undirected simple graphs with bit-mask adjacency rows, the
graph families built on subset labels, and the standard constructions
(line graph, complement, induced subgraph, distance layers).

Vertices are 0-based indices.  Subset-labelled families attach a
SubsetLabel per vertex; the vertex order of those families is exactly the
colex rank order from the subsets module.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

from .subsets import SubsetLabel, binomial, unrank_subset

DEFAULT_VERTEX_CAP = 5000


class VertexCapExceeded(ValueError):
    """A construction or search would exceed the configured vertex cap."""


def bits(mask: int):
    """Yield the set bit positions of mask in ascending order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


class Graph:
    """Undirected simple graph on vertices 0..n-1.

    ``adj[v]`` is the neighbour set of v as a bit mask.  Instances are
    immutable after construction.  Equality and hashing are structural
    (vertex count plus adjacency); ``labels`` is carried metadata and does
    not participate in equality.
    """

    __slots__ = ("n", "adj", "labels")

    def __init__(self, n: int, adj, labels=None):
        if n < 1:
            raise ValueError("graphs need at least one vertex")
        adj = tuple(adj)
        if len(adj) != n:
            raise ValueError(f"adjacency has {len(adj)} rows for {n} vertices")
        full = (1 << n) - 1
        for v, row in enumerate(adj):
            if row & ~full:
                raise ValueError(f"row {v} mentions vertices outside 0..{n - 1}")
            if (row >> v) & 1:
                raise ValueError(f"self-loop at vertex {v}")
        for v, row in enumerate(adj):
            for w in bits(row):
                if not (adj[w] >> v) & 1:
                    raise ValueError(f"asymmetric adjacency between {v} and {w}")
        if labels is not None:
            labels = tuple(labels)
            if len(labels) != n:
                raise ValueError("label count must match vertex count")
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "adj", adj)
        object.__setattr__(self, "labels", labels)

    def __setattr__(self, name, value):
        raise AttributeError("Graph is immutable")

    @classmethod
    def from_edges(cls, n: int, edges, labels=None) -> "Graph":
        rows = [0] * n
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge ({u},{v}) outside 0..{n - 1}")
            if u == v:
                raise ValueError(f"self-loop at vertex {u}")
            rows[u] |= 1 << v
            rows[v] |= 1 << u
        return cls(n, rows, labels)

    def degree(self, v: int) -> int:
        return self.adj[v].bit_count()

    def degrees(self) -> tuple[int, ...]:
        return tuple(row.bit_count() for row in self.adj)

    def has_edge(self, u: int, v: int) -> bool:
        return bool((self.adj[u] >> v) & 1)

    def neighbors(self, v: int) -> frozenset[int]:
        return frozenset(bits(self.adj[v]))

    def edges(self) -> list[tuple[int, int]]:
        """Edges as (u, v) with u < v, in lexicographic order."""
        out = []
        for u in range(self.n):
            row = self.adj[u] >> (u + 1)
            for w in bits(row):
                out.append((u, u + 1 + w))
        return out

    def edge_count(self) -> int:
        return sum(row.bit_count() for row in self.adj) // 2

    def __eq__(self, other) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        return self.n == other.n and self.adj == other.adj

    def __hash__(self) -> int:
        return hash((self.n, self.adj))

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, edges={self.edge_count()})"


@dataclass(frozen=True)
class DistancePartition:
    """BFS layers around a source vertex.

    ``layers[i]`` is the set of vertices at distance i; ``dist[v]`` is None
    exactly when v is unreachable from the source, and unreachable vertices
    appear in no layer.
    """

    source: int
    layers: tuple[frozenset[int], ...]
    dist: tuple

    @property
    def layer_sizes(self) -> tuple[int, ...]:
        return tuple(len(layer) for layer in self.layers)

    @property
    def eccentricity(self) -> int:
        return len(self.layers) - 1

    @property
    def unreachable(self) -> frozenset[int]:
        return frozenset(v for v, d in enumerate(self.dist) if d is None)


def complete_graph(n: int) -> Graph:
    if n < 1:
        raise ValueError("complete graph needs at least one vertex")
    full = (1 << n) - 1
    return Graph(n, [full ^ (1 << v) for v in range(n)])


def complete_bipartite(s: int, t: int) -> Graph:
    """K_{s,t} with side X = 0..s-1 and side Y = s..s+t-1."""
    if s < 1 or t < 1:
        raise ValueError("both sides of a complete bipartite graph must be nonempty")
    n = s + t
    x_mask = (1 << s) - 1
    y_mask = ((1 << n) - 1) ^ x_mask
    return Graph(n, [y_mask if v < s else x_mask for v in range(n)])


def _subset_family(n: int, m: int, cap: int):
    if not 1 <= m <= n - 1:
        raise ValueError(f"subset size must be in 1..{n - 1}, got {m}")
    count = binomial(n, m)
    if count > cap:
        raise VertexCapExceeded(f"C({n},{m}) = {count} exceeds the vertex cap {cap}")
    labels = [unrank_subset(r, n, m) for r in range(count)]
    index = {label.mask: r for r, label in enumerate(labels)}
    return count, labels, index


def johnson_graph(n: int, m: int, cap: int = DEFAULT_VERTEX_CAP) -> Graph:
    """J(n, m): m-subsets of {1..n}, adjacent when they share m-1 elements.

    Regular of degree m*(n-m).  J(n, 1) is the complete graph K_n.
    """
    count, labels, index = _subset_family(n, m, cap)
    rows = [0] * count
    for r, label in enumerate(labels):
        mask = label.mask
        inside = list(bits(mask))
        outside = [b for b in range(n) if not (mask >> b) & 1]
        for a in inside:
            removed = mask ^ (1 << a)
            for b in outside:
                rows[r] |= 1 << index[removed | (1 << b)]
    return Graph(count, rows, labels)


def kneser_graph(n: int, m: int, cap: int = DEFAULT_VERTEX_CAP) -> Graph:
    """K(n, m): m-subsets of {1..n}, adjacent when disjoint."""
    count, labels, index = _subset_family(n, m, cap)
    rows = [0] * count
    for r, label in enumerate(labels):
        outside = [b for b in range(n) if not (label.mask >> b) & 1]
        if len(outside) < m:
            continue
        for combo in combinations(outside, m):
            other = 0
            for b in combo:
                other |= 1 << b
            rows[r] |= 1 << index[other]
    return Graph(count, rows, labels)


def line_graph(g: Graph) -> tuple[Graph, tuple[tuple[int, int], ...]]:
    """Line graph of g plus the edge map.

    Line-graph vertex i corresponds to ``edge_map[i]``; the map lists g's
    edges as (u, v) with u < v in lexicographic order, and that order is a
    frozen contract.  Two line vertices are adjacent when the underlying
    edges share exactly one endpoint.
    """
    edge_map = tuple(g.edges())
    if not edge_map:
        raise ValueError("line graph of an edgeless graph is not defined here")
    count = len(edge_map)
    incident = [[] for _ in range(g.n)]
    for i, (u, v) in enumerate(edge_map):
        incident[u].append(i)
        incident[v].append(i)
    rows = [0] * count
    for hub in range(g.n):
        members = incident[hub]
        for a_pos, i in enumerate(members):
            for j in members[a_pos + 1:]:
                rows[i] |= 1 << j
                rows[j] |= 1 << i
    return Graph(count, rows), edge_map


def complement(g: Graph) -> Graph:
    full = (1 << g.n) - 1
    return Graph(g.n, [(full ^ row) ^ (1 << v) for v, row in enumerate(g.adj)], g.labels)


def induced_subgraph(g: Graph, vertices) -> tuple[Graph, tuple[int, ...]]:
    """Subgraph induced on the given vertex set.

    Returns the new graph together with the mapping new-index -> old-index;
    new indices follow ascending old indices.
    """
    mapping = tuple(sorted(set(vertices)))
    if not mapping:
        raise ValueError("induced subgraph needs at least one vertex")
    if mapping[0] < 0 or mapping[-1] >= g.n:
        raise ValueError(f"vertices outside 0..{g.n - 1}")
    position = {old: new for new, old in enumerate(mapping)}
    rows = [0] * len(mapping)
    for new, old in enumerate(mapping):
        for w in bits(g.adj[old]):
            if w in position:
                rows[new] |= 1 << position[w]
    labels = None
    if g.labels is not None:
        labels = tuple(g.labels[old] for old in mapping)
    return Graph(len(mapping), rows, labels), mapping


def distance_partition(g: Graph, source: int) -> DistancePartition:
    """BFS layers from source; unreachable vertices are flagged, not layered."""
    if not 0 <= source < g.n:
        raise ValueError(f"source {source} outside 0..{g.n - 1}")
    dist = [None] * g.n
    dist[source] = 0
    layers = [frozenset([source])]
    frontier = [source]
    d = 0
    while frontier:
        d += 1
        nxt = []
        for v in frontier:
            for w in bits(g.adj[v]):
                if dist[w] is None:
                    dist[w] = d
                    nxt.append(w)
        if nxt:
            layers.append(frozenset(nxt))
        frontier = nxt
    return DistancePartition(source, tuple(layers), tuple(dist))


def neighborhood(g: Graph, v: int) -> frozenset[int]:
    if not 0 <= v < g.n:
        raise ValueError(f"vertex {v} outside 0..{g.n - 1}")
    return g.neighbors(v)
