"""Named small graphs and seeded random instance generators.

The random generators back both the test suite and the `audit` command.
They take an explicit ``random.Random`` so every run is reproducible from a
seed.  Family generators attach every component of the complement to the
modulator: a free-floating component never interacts with the modulator and
is not what the preprocessing pipelines are meant for.
"""

from __future__ import annotations

import random
from itertools import combinations

from .composition import Cutwidth3Instance
from .graph import Graph, Instance, WeightedGraph


def clique(n: int) -> Graph:
    return Graph.from_edges(n, list(combinations(range(n), 2)))


def path_graph(n: int) -> Graph:
    return Graph.from_edges(n, [(i, i + 1) for i in range(n - 1)])


def cycle_graph(n: int) -> Graph:
    if n < 3:
        raise ValueError("a cycle needs at least 3 vertices")
    return Graph.from_edges(n, [(i, (i + 1) % n) for i in range(n)])


def star_graph(leaves: int) -> Graph:
    """K_{1, leaves}: center is vertex 0."""
    return Graph.from_edges(leaves + 1, [(0, i) for i in range(1, leaves + 1)])


def complete_bipartite(a: int, b: int) -> Graph:
    return Graph.from_edges(a + b, [(i, a + j) for i in range(a) for j in range(b)])


def disjoint_union(*graphs: Graph) -> Graph:
    edges = []
    offset = 0
    labels = []
    for g in graphs:
        edges += [(u + offset, v + offset) for u, v in g.edges()]
        labels += [offset + v for v in g.vertices()]
        offset += g.n
    return Graph.from_edges(offset, edges, labels)


def random_graph(rng: random.Random, n: int, p: float) -> Graph:
    edges = [(u, v) for u, v in combinations(range(n), 2) if rng.random() < p]
    return Graph.from_edges(n, edges)


def random_instance(rng: random.Random, max_n: int = 9,
                    k_range: tuple[int, int] = (0, 4)) -> Instance:
    n = rng.randint(1, max_n)
    g = random_graph(rng, n, rng.uniform(0.15, 0.7))
    mod_size = rng.randint(0, max(0, n // 2))
    modulator = frozenset(rng.sample(range(n), mod_size))
    return Instance(g, modulator, rng.randint(*k_range))


def random_weighted_graph(rng: random.Random, n: int, max_weight: int = 3,
                          p: float | None = None) -> WeightedGraph:
    g = random_graph(rng, n, p if p is not None else rng.uniform(0.2, 0.8))
    return WeightedGraph(g, tuple(rng.randint(1, max_weight) for _ in range(n)))


def random_cobipartite(rng: random.Random, n: int) -> tuple[Graph, tuple[list[int], list[int]]]:
    """A random co-bipartite graph: two cliques plus random cross edges."""
    a = rng.randint(1, n - 1) if n >= 2 else n
    side_a, side_b = list(range(a)), list(range(a, n))
    edges = list(combinations(side_a, 2)) + list(combinations(side_b, 2))
    p = rng.uniform(0.1, 0.9)
    edges += [(u, v) for u in side_a for v in side_b if rng.random() < p]
    return Graph.from_edges(n, edges), (side_a, side_b)


def random_weighted_cobipartite(rng: random.Random, n: int, max_weight: int = 4
                                ) -> tuple[WeightedGraph, tuple[list[int], list[int]]]:
    g, partition = random_cobipartite(rng, n)
    return WeightedGraph(g, tuple(rng.randint(1, max_weight) for _ in range(n))), partition


def _attach(rng: random.Random, edges: list[tuple[int, int]],
            comp_vertices: list[int], modulator: list[int]) -> None:
    # At least one edge into the modulator, then a few extra at random.
    edges.append((rng.choice(comp_vertices), rng.choice(modulator)))
    for v in comp_vertices:
        for s in modulator:
            if rng.random() < 0.25:
                edges.append((v, s))


def _with_modulator_edges(rng: random.Random, ell: int,
                          edges: list[tuple[int, int]]) -> None:
    for u, v in combinations(range(ell), 2):
        if rng.random() < 0.5:
            edges.append((u, v))


def _dedup(edges: list[tuple[int, int]]) -> list[tuple[int, int]]:
    return sorted({(min(u, v), max(u, v)) for u, v in edges})


def random_star_forest_instance(rng: random.Random, ell: int, k: int,
                                max_components: int = 4,
                                max_leaves: int = 3) -> Instance:
    """Modulator of size ell, complement a disjoint union of stars, every
    star attached to the modulator."""
    if ell < 1:
        raise ValueError("generator needs a nonempty modulator")
    edges: list[tuple[int, int]] = []
    _with_modulator_edges(rng, ell, edges)
    nxt = ell
    modulator = list(range(ell))
    for _ in range(rng.randint(1, max_components)):
        leaves = rng.randint(0, max_leaves)
        center = nxt
        comp = [center]
        nxt += 1
        for _ in range(leaves):
            edges.append((center, nxt))
            comp.append(nxt)
            nxt += 1
        _attach(rng, edges, comp, modulator)
    return Instance(Graph.from_edges(nxt, _dedup(edges)), frozenset(modulator), k)


def random_bounded_instance(rng: random.Random, ell: int, c: int, k: int,
                            max_components: int = 4) -> Instance:
    """Modulator of size ell, complement components of at most c vertices."""
    if ell < 1:
        raise ValueError("generator needs a nonempty modulator")
    edges: list[tuple[int, int]] = []
    _with_modulator_edges(rng, ell, edges)
    nxt = ell
    modulator = list(range(ell))
    for _ in range(rng.randint(1, max_components)):
        size = rng.randint(1, c)
        comp = list(range(nxt, nxt + size))
        nxt += size
        # random connected component: a random spanning tree plus extras
        for idx, v in enumerate(comp[1:], start=1):
            edges.append((v, rng.choice(comp[:idx])))
        for u, v in combinations(comp, 2):
            if rng.random() < 0.3:
                edges.append((u, v))
        _attach(rng, edges, comp, modulator)
    return Instance(Graph.from_edges(nxt, _dedup(edges)), frozenset(modulator), k)


def random_vertex_cover_instance(rng: random.Random, ell: int, k: int,
                                 max_extra: int = 6) -> Instance:
    """Modulator is a vertex cover: the complement is an independent set."""
    return random_bounded_instance(rng, ell, 1, k, max_components=max_extra)


def random_degree_sequence(rng: random.Random, n: int) -> list[int]:
    """A graphical degree sequence with entries in 1..3 and an even sum."""
    while True:
        degs = [rng.randint(1, min(3, n - 1)) for _ in range(n)]
        if sum(degs) % 2 == 0 and _realize_degrees(rng, n, degs) is not None:
            return degs


def _realize_degrees(rng: random.Random, n: int, degs: list[int],
                     tries: int = 300) -> Graph | None:
    for _ in range(tries):
        stubs = [v for v in range(n) for _ in range(degs[v])]
        rng.shuffle(stubs)
        edges = set()
        ok = True
        for a, b in zip(stubs[::2], stubs[1::2]):
            if a == b or (min(a, b), max(a, b)) in edges:
                ok = False
                break
            edges.add((min(a, b), max(a, b)))
        if ok:
            return Graph.from_edges(n, sorted(edges))
    return None


def random_cutwidth_batch(rng: random.Random, n: int, t: int,
                          k: int | None = None) -> list[Cutwidth3Instance]:
    """t degree-bounded cutwidth instances sharing one equivalence key."""
    degs = random_degree_sequence(rng, n)
    graphs = []
    while len(graphs) < t:
        g = _realize_degrees(rng, n, degs)
        if g is not None:
            graphs.append(g)
    if k is None:
        k = rng.randint(1, max(1, sum(degs) // 2))
    return [Cutwidth3Instance(g, k) for g in graphs]
