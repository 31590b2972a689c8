"""Simple undirected graphs with stable vertex labels, plus the structural
predicates used by the reduction rules.

Vertices carry two identities: a dense id in ``0..n-1`` (recompacted after
every deletion) and a stable *label* that survives all mutations.  Traces and
file formats speak labels; solvers speak ids.  All values are immutable
snapshots: every operation returns a fresh graph.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterable, Union

Label = Union[int, str]


def label_key(label: Label):
    """Total order over mixed int/str labels (ints first, then strings)."""
    if isinstance(label, bool) or not isinstance(label, (int, str)):
        raise TypeError(f"labels must be int or str, got {label!r}")
    return (0, label, "") if isinstance(label, int) else (1, 0, label)


@dataclass(frozen=True)
class Graph:
    """Finite simple undirected graph on dense vertex ids with stable labels."""

    adj: tuple[frozenset[int], ...]
    labels: tuple[Label, ...]

    def __post_init__(self):
        n = len(self.adj)
        if len(self.labels) != n:
            raise ValueError("one label per vertex required")
        if len(set(self.labels)) != n:
            raise ValueError("labels must be unique")
        for v, nbrs in enumerate(self.adj):
            if v in nbrs:
                raise ValueError(f"self-loop at vertex {v}")
            for u in nbrs:
                if not 0 <= u < n:
                    raise ValueError(f"neighbor id {u} out of range")
                if v not in self.adj[u]:
                    raise ValueError(f"adjacency not symmetric at ({v}, {u})")

    @staticmethod
    def from_edges(n: int, edges: Iterable[tuple[int, int]],
                   labels: Iterable[Label] | None = None) -> Graph:
        adj = [set() for _ in range(n)]
        for u, v in edges:
            if u == v:
                raise ValueError(f"self-loop at vertex {u}")
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge ({u}, {v}) out of range")
            adj[u].add(v)
            adj[v].add(u)
        lab = tuple(labels) if labels is not None else tuple(range(n))
        return Graph(tuple(frozenset(s) for s in adj), lab)

    @property
    def n(self) -> int:
        return len(self.adj)

    def vertices(self) -> range:
        return range(len(self.adj))

    def degree(self, v: int) -> int:
        return len(self.adj[v])

    def neighbors(self, v: int) -> frozenset[int]:
        return self.adj[v]

    def closed_neighbors(self, v: int) -> frozenset[int]:
        return self.adj[v] | {v}

    def has_edge(self, u: int, v: int) -> bool:
        return v in self.adj[u]

    def edges(self) -> list[tuple[int, int]]:
        return [(u, v) for u in self.vertices() for v in self.adj[u] if u < v]

    @property
    def edge_count(self) -> int:
        return sum(len(s) for s in self.adj) // 2

    def label(self, v: int) -> Label:
        return self.labels[v]

    def id_of(self, label: Label) -> int:
        try:
            return self.labels.index(label)
        except ValueError:
            raise KeyError(f"no vertex labeled {label!r}") from None

    def neighbor_masks(self) -> list[int]:
        """Open neighborhoods as bitmasks over ids (helper for subset DPs)."""
        return [sum(1 << u for u in nbrs) for nbrs in self.adj]

    def sorted_by_label(self) -> list[int]:
        """All vertex ids ordered by their labels."""
        return sorted(self.vertices(), key=lambda v: label_key(self.labels[v]))


def induced_subgraph(g: Graph, keep: Iterable[int]) -> Graph:
    """Subgraph on `keep`, ids recompacted in ascending order, labels kept."""
    kept = sorted(set(keep))
    for v in kept:
        if not 0 <= v < g.n:
            raise ValueError(f"unknown vertex id {v}")
    remap = {old: new for new, old in enumerate(kept)}
    adj = tuple(frozenset(remap[u] for u in g.adj[old] if u in remap)
                for old in kept)
    return Graph(adj, tuple(g.labels[old] for old in kept))


def delete_vertex(g: Graph, v: int) -> Graph:
    if not 0 <= v < g.n:
        raise ValueError(f"unknown vertex id {v}")
    return induced_subgraph(g, (u for u in g.vertices() if u != v))


def delete_vertices(g: Graph, vs: Iterable[int]) -> Graph:
    drop = set(vs)
    for v in drop:
        if not 0 <= v < g.n:
            raise ValueError(f"unknown vertex id {v}")
    return induced_subgraph(g, (u for u in g.vertices() if u not in drop))


def add_edge(g: Graph, u: int, v: int) -> Graph:
    """Add edge {u, v}; adding an existing edge returns the graph unchanged."""
    if u == v:
        raise ValueError("cannot add a self-loop")
    if g.has_edge(u, v):
        return g
    adj = list(g.adj)
    adj[u] = adj[u] | {v}
    adj[v] = adj[v] | {u}
    return Graph(tuple(adj), g.labels)


def add_vertex(g: Graph, label: Label, neighbors: Iterable[int]) -> Graph:
    """Append a fresh vertex with the given label and open neighborhood."""
    if label in g.labels:
        raise ValueError(f"label {label!r} already in use")
    nbrs = frozenset(neighbors)
    for u in nbrs:
        if not 0 <= u < g.n:
            raise ValueError(f"unknown vertex id {u}")
    new = g.n
    adj = [s | {new} if v in nbrs else s for v, s in enumerate(g.adj)]
    adj.append(nbrs)
    return Graph(tuple(adj), g.labels + (label,))


def contract_edge(g: Graph, u: int, v: int) -> Graph:
    """Contract edge {u, v}, merging v into u (u keeps its label)."""
    if not g.has_edge(u, v):
        raise ValueError(f"({u}, {v}) is not an edge; cannot contract")
    merged = add_edges_between(g, u, (w for w in g.adj[v] if w != u))
    return delete_vertex(merged, v)


def add_edges_between(g: Graph, u: int, targets: Iterable[int]) -> Graph:
    out = g
    for w in targets:
        out = add_edge(out, u, w)
    return out


def is_clique(g: Graph, vs: Iterable[int]) -> bool:
    vl = list(vs)
    return all(g.has_edge(a, b) for a, b in combinations(vl, 2))


def is_simplicial(g: Graph, v: int) -> bool:
    """True iff the open neighborhood of v induces a clique."""
    if not 0 <= v < g.n:
        raise ValueError(f"unknown vertex id {v}")
    return is_clique(g, g.adj[v])


def special_neighbors(g: Graph, v: int) -> frozenset[int]:
    """All neighbors w of v such that N(v) - {w} is a clique.

    Nonempty iff v is almost simplicial; equals N(v) iff v is simplicial
    (for degree >= 1).
    """
    if not 0 <= v < g.n:
        raise ValueError(f"unknown vertex id {v}")
    return frozenset(w for w in g.adj[v] if is_clique(g, g.adj[v] - {w}))


def connected_components(g: Graph, within: Iterable[int] | None = None) -> list[frozenset[int]]:
    """Connected components of g (or of the subgraph induced by `within`)."""
    pool = set(g.vertices()) if within is None else set(within)
    comps = []
    while pool:
        start = min(pool)
        seen = {start}
        queue = deque([start])
        while queue:
            x = queue.popleft()
            for y in g.adj[x]:
                if y in pool and y not in seen:
                    seen.add(y)
                    queue.append(y)
        comps.append(frozenset(seen))
        pool -= seen
    return comps


def simplicial_components(g: Graph, modulator: Iterable[int]) -> list[frozenset[int]]:
    """Components W of G - S whose neighborhood in S induces a clique.

    An empty neighborhood qualifies vacuously.  Components are returned in
    ascending order of their smallest member id.
    """
    s = set(modulator)
    out = []
    for comp in connected_components(g, (v for v in g.vertices() if v not in s)):
        boundary = frozenset().union(*(g.adj[v] for v in comp)) - comp
        if is_clique(g, boundary):
            out.append(comp)
    return out


def count_internally_disjoint_paths(g: Graph, v: int, w: int, limit: int) -> int:
    """Maximum number of v-w paths sharing only their endpoints, capped.

    Computed as unit-capacity vertex-disjoint flow via vertex splitting,
    stopping as soon as `limit` augmenting paths have been found.  Requires
    v != w and {v, w} not an edge.
    """
    if v == w:
        raise ValueError("endpoints must differ")
    if g.has_edge(v, w):
        raise ValueError("endpoints must be nonadjacent")
    if limit <= 0:
        return 0
    # Node x splits into x_in = 2x and x_out = 2x+1 with an internal unit arc;
    # each edge {x, y} becomes arcs x_out->y_in and y_out->x_in.
    source, sink = 2 * v + 1, 2 * w
    cap: dict[tuple[int, int], int] = {}
    for x in g.vertices():
        cap[(2 * x, 2 * x + 1)] = 1
    for x, y in g.edges():
        cap[(2 * x + 1, 2 * y)] = 1
        cap[(2 * y + 1, 2 * x)] = 1
    arcs: dict[int, list[int]] = {}
    for (a, b) in list(cap):
        arcs.setdefault(a, []).append(b)
        arcs.setdefault(b, []).append(a)
        cap[(b, a)] = 0
    flow = 0
    while flow < limit:
        parent = {source: source}
        queue = deque([source])
        while queue and sink not in parent:
            a = queue.popleft()
            for b in arcs.get(a, ()):
                if b not in parent and cap[(a, b)] > 0:
                    parent[b] = a
                    queue.append(b)
        if sink not in parent:
            break
        b = sink
        while b != source:
            a = parent[b]
            cap[(a, b)] -= 1
            cap[(b, a)] += 1
            b = a
        flow += 1
    return flow


@dataclass(frozen=True)
class Instance:
    """A graph with a modulator vertex set S and a target pathwidth k."""

    graph: Graph
    modulator: frozenset[int] = field(default_factory=frozenset)
    target: int = 0

    def __post_init__(self):
        object.__setattr__(self, "modulator", frozenset(self.modulator))
        if any(not 0 <= v < self.graph.n for v in self.modulator):
            raise ValueError("modulator must be a subset of the vertex set")
        if self.target < 0:
            raise ValueError("target pathwidth must be nonnegative")

    def modulator_labels(self) -> frozenset[Label]:
        return frozenset(self.graph.labels[v] for v in self.modulator)


@dataclass(frozen=True)
class WeightedGraph:
    """A graph with positive integer vertex weights (indexed by vertex id)."""

    graph: Graph
    weights: tuple[int, ...]

    def __post_init__(self):
        if len(self.weights) != self.graph.n:
            raise ValueError("one weight per vertex required")
        if any(w < 1 for w in self.weights):
            raise ValueError("weights must be positive integers")

    def weight_of(self, vs: Iterable[int]) -> int:
        return sum(self.weights[v] for v in vs)

    @property
    def total_weight(self) -> int:
        return sum(self.weights)
