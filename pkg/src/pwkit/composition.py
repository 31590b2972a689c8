"""The cutwidth-to-weighted-treewidth composition gadget.

A batch of degree-bounded cutwidth instances sharing one equivalence key is
embedded into a single weighted co-bipartite graph whose weighted treewidth
is at most a threshold k' exactly when some batch member has cutwidth at
most k.  The module also provides the weight-expansion to an unweighted
graph and desk-scale verification of the whole equivalence.

Instance indices i run over 1..t as published in the vertex labels; the bit
pattern of index i is that of i mod t (so index t wraps to all zeros),
zero-padded to log2(t) bits, with bit position q = 1 the least significant.
Node positions j run over 1..n in increasing-degree order (ties by original
vertex id).
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Sequence, Union

from .decompositions import EliminationOrdering, LinearLayout
from .errors import BatchError, PwkitError
from .graph import Graph, Instance, Label, WeightedGraph
from . import oracles


@dataclass(frozen=True)
class Cutwidth3Instance:
    """A cutwidth question on a graph with all degrees between one and three.

    Validity (degree bounds, 0 <= k <= m) is a predicate rather than a
    construction invariant so that malformed inputs can still be grouped
    into the sentinel equivalence class.
    """

    graph: Graph
    target: int

    def is_valid(self) -> bool:
        g = self.graph
        return (
            g.n > 0
            and all(1 <= g.degree(v) <= 3 for v in g.vertices())
            and 0 <= self.target <= g.edge_count
        )


@dataclass(frozen=True)
class EquivalenceKey:
    n: int
    m: int
    k: int
    histogram: tuple[tuple[int, int], ...]

    @property
    def malformed(self) -> bool:
        return self.n < 0


MALFORMED_KEY = EquivalenceKey(-1, -1, -1, ())


def equivalence_key(inst: Cutwidth3Instance) -> EquivalenceKey:
    """Group instances by (n, m, k, degree histogram); all invalid instances
    land in one shared sentinel class."""
    if not inst.is_valid():
        return MALFORMED_KEY
    g = inst.graph
    hist: dict[int, int] = {}
    for v in g.vertices():
        hist[g.degree(v)] = hist.get(g.degree(v), 0) + 1
    return EquivalenceKey(g.n, g.edge_count, inst.target,
                          tuple(sorted(hist.items())))


@dataclass(frozen=True)
class Solved:
    """Outcome of a batch short-circuited without building the gadget."""

    answer: bool
    cutwidths: tuple[int, ...] = ()


def prepare_batch(
    instances: Sequence[Cutwidth3Instance],
    cutwidth_cap: int = oracles.DEFAULT_CUTWIDTH_CAP,
) -> Union[list[Cutwidth3Instance], Solved]:
    """Check the shared equivalence key and pad the batch to a power of two.

    Batches too small for the gadget arithmetic (n < 2 or 2^n < t) are
    solved directly and returned as the OR of their answers; an all-malformed
    batch is a constant no.
    """
    if not instances:
        raise BatchError("empty batch")
    keys = {equivalence_key(inst) for inst in instances}
    if len(keys) != 1:
        raise BatchError(f"batch mixes {len(keys)} equivalence classes")
    key = keys.pop()
    if key.malformed:
        return Solved(False)
    t = len(instances)
    if key.n < 2 or (1 << key.n) < t:
        widths = tuple(oracles.cutwidth_exact(inst.graph, cap=cutwidth_cap)[0]
                       for inst in instances)
        return Solved(any(w <= key.k for w in widths), widths)
    padded = 1 << (t - 1).bit_length()
    return list(instances) + [instances[-1]] * (padded - t)


def degree_sorted_positions(g: Graph) -> list[int]:
    """Vertex ids in increasing-degree order (ties by id); index = position - 1."""
    return sorted(g.vertices(), key=lambda v: (g.degree(v), v))


@dataclass(frozen=True, eq=False)
class ComposedInstance:
    gadget: WeightedGraph
    a_side: tuple[int, ...]
    b_side: tuple[int, ...]
    b_selector: tuple[int, ...]
    b_node: tuple[int, ...]
    b_edge: tuple[int, ...]
    kprime: int
    t: int
    n: int
    k: int
    rep: dict  # (i, j) -> vertex id of the instance-i representative of node j
    dummy: dict  # i -> vertex id
    selector: dict  # (q, bit) -> vertex id
    node_rep: dict  # j -> vertex id
    edge_rep: dict  # (u, v), u < v -> vertex id
    position_edges: tuple[frozenset[frozenset[int]], ...]  # per instance, edges on positions

    @property
    def log_t(self) -> int:
        return self.t.bit_length() - 1


def compose(batch: Sequence[Cutwidth3Instance]) -> ComposedInstance:
    """Build the weighted co-bipartite gadget for a prepared batch.

    Side A holds one representative per (instance, node position) at weight
    n^3 plus one dummy per instance at weight n^6; side B holds the binary
    instance selectors at weight n^5, one node representative per position at
    weight n^3 - deg(j), and one weight-2 representative per possible edge.
    """
    if not batch:
        raise BatchError("empty batch")
    t = len(batch)
    if t & (t - 1):
        raise BatchError("batch size must be a power of two (use prepare_batch)")
    keys = {equivalence_key(inst) for inst in batch}
    if len(keys) != 1 or keys.pop().malformed:
        raise BatchError("batch must share one well-formed equivalence key")
    n = batch[0].graph.n
    k = batch[0].target
    log_t = t.bit_length() - 1
    if n < 2 or n < log_t:
        raise BatchError(f"gadget needs n >= max(2, log2 t); got n={n}, t={t}")
    if n > 50 or t > 2**32:
        raise PwkitError("weights would overflow the 64-bit budget")

    positions = [degree_sorted_positions(inst.graph) for inst in batch]
    degs = sorted(batch[0].graph.degree(v) for v in batch[0].graph.vertices())

    def deg(j: int) -> int:  # degree of position j, shared across the batch
        return degs[j - 1]

    labels: list[Label] = []
    weights: list[int] = []
    rep: dict[tuple[int, int], int] = {}
    dummy: dict[int, int] = {}
    selector: dict[tuple[int, int], int] = {}
    node_rep: dict[int, int] = {}
    edge_rep: dict[tuple[int, int], int] = {}

    def new_vertex(label: str, weight: int) -> int:
        labels.append(label)
        weights.append(weight)
        return len(labels) - 1

    for i in range(1, t + 1):
        for j in range(1, n + 1):
            rep[(i, j)] = new_vertex(f"v_{i}_{j}", n**3)
    for i in range(1, t + 1):
        dummy[i] = new_vertex(f"d_{i}", n**6)
    for q in range(1, log_t + 1):
        selector[(q, 1)] = new_vertex(f"a_{q}", n**5)
        selector[(q, 0)] = new_vertex(f"b_{q}", n**5)
    for j in range(1, n + 1):
        node_rep[j] = new_vertex(f"x_{j}", n**3 - deg(j))
    for u, v in combinations(range(1, n + 1), 2):
        edge_rep[(u, v)] = new_vertex(f"e_{u}_{v}", 2)

    a_side = tuple(rep.values()) + tuple(dummy.values())
    b_selector = tuple(selector.values())
    b_node = tuple(node_rep.values())
    b_edge = tuple(edge_rep.values())
    b_side = b_selector + b_node + b_edge

    edges: set[tuple[int, int]] = set()

    def connect(x: int, y: int) -> None:
        edges.add((min(x, y), max(x, y)))

    for side in (a_side, b_side):
        for x, y in combinations(side, 2):
            connect(x, y)

    position_edges = []
    for i in range(1, t + 1):
        g_i = batch[i - 1].graph
        pos_of = {v: p + 1 for p, v in enumerate(positions[i - 1])}
        pos_edges = frozenset(frozenset((pos_of[x], pos_of[y])) for x, y in g_i.edges())
        position_edges.append(pos_edges)
        for q in range(1, log_t + 1):
            bit = ((i % t) >> (q - 1)) & 1
            for j in range(1, n + 1):
                connect(rep[(i, j)], selector[(q, bit)])
            connect(dummy[i], selector[(q, bit)])
        for j in range(1, n + 1):
            connect(rep[(i, j)], node_rep[j])
            connect(dummy[i], node_rep[j])
        for (u, v), e_id in edge_rep.items():
            connect(dummy[i], e_id)
            if frozenset((u, v)) in pos_edges:
                connect(rep[(i, u)], e_id)
                connect(rep[(i, v)], e_id)

    gadget = WeightedGraph(
        Graph.from_edges(len(labels), sorted(edges), tuple(labels)),
        tuple(weights),
    )
    kprime = t * (n**4 + n**6) + n**3 + n**5 * log_t + k
    return ComposedInstance(
        gadget=gadget, a_side=a_side, b_side=b_side, b_selector=b_selector,
        b_node=b_node, b_edge=b_edge, kprime=kprime, t=t, n=n, k=k,
        rep=rep, dummy=dummy, selector=selector, node_rep=node_rep,
        edge_rep=edge_rep, position_edges=tuple(position_edges),
    )


def _check_step(ci: ComposedInstance, i: int, pi: Sequence[int], j: int | None = None) -> None:
    if not 1 <= i <= ci.t:
        raise ValueError(f"instance index {i} out of range 1..{ci.t}")
    if sorted(pi) != list(range(1, ci.n + 1)):
        raise ValueError("pi must be a permutation of the positions 1..n")
    if j is not None and not 1 <= j <= ci.n:
        raise ValueError(f"step {j} out of range 1..{ci.n}")


def e_weight_profile(ci: ComposedInstance, i: int, pi: Sequence[int]) -> list[int]:
    """Closed-neighborhood weights observed while eliminating instance i's
    representatives in the order of positions pi, one value per step."""
    _check_step(ci, i, pi)
    wg = ci.gadget
    adj = [set(s) for s in wg.graph.adj]
    out = []
    for step in range(ci.n):
        v = ci.rep[(i, pi[step])]
        nbrs = adj[v]
        out.append(wg.weights[v] + wg.weight_of(nbrs))
        for u in nbrs:
            adj[u].discard(v)
            adj[u].update(nbrs - {u})
        adj[v] = set()
    return out


def e_weight_simulated(ci: ComposedInstance, i: int, pi: Sequence[int], j: int) -> int:
    """Weight of N[v_{i, pi(j)}] just before its elimination, after the first
    j - 1 representatives of pi have been eliminated from the gadget."""
    _check_step(ci, i, pi, j)
    return e_weight_profile(ci, i, pi)[j - 1]


def e_weight_closed_form(n: int, t: int, k: int, cut_value: int) -> int:
    """The predicted elimination weight: t*(n^4 + n^6) + n^3 + n^5*log2(t)
    plus the current cut value.  (k is part of the batch signature but does
    not enter the formula.)"""
    del k
    if t < 1 or t & (t - 1):
        raise ValueError("t must be a power of two")
    return t * (n**4 + n**6) + n**3 + n**5 * (t.bit_length() - 1) + cut_value


def layout_cut_value(ci: ComposedInstance, i: int, pi: Sequence[int], j: int) -> int:
    """Number of instance-i edges crossing the cut after the first j
    positions of pi."""
    _check_step(ci, i, pi, j)
    placed = set(pi[:j])
    return sum(1 for e in ci.position_edges[i - 1] if len(e & placed) == 1)


def canonical_ordering_cost(ci: ComposedInstance, i: int, pi: Sequence[int]) -> int:
    """Cost of the full elimination ordering that takes instance i's
    representatives along pi, then its dummy, then everything else."""
    _check_step(ci, i, pi)
    head = [ci.rep[(i, j)] for j in pi] + [ci.dummy[i]]
    seen = set(head)
    rest = [v for v in ci.gadget.graph.vertices() if v not in seen]
    return oracles.elimination_cost(ci.gadget, EliminationOrdering(tuple(head + rest)))


def expand_weights(wg: WeightedGraph) -> Graph:
    """Replace each weight-w vertex by w mutually adjacent true twins.

    The first copy keeps the original label, further copies get '#c'
    suffixes; a unit-weight graph is returned unchanged.
    """
    if all(w == 1 for w in wg.weights):
        return wg.graph
    g = wg.graph
    copies: list[list[int]] = []
    labels: list[Label] = []
    counter = 0
    for v in g.vertices():
        ids = []
        for c in range(wg.weights[v]):
            labels.append(g.labels[v] if c == 0 else f"{g.labels[v]}#{c + 1}")
            ids.append(counter)
            counter += 1
        copies.append(ids)
    edges = []
    for v in g.vertices():
        for a, b in combinations(copies[v], 2):
            edges.append((a, b))
        for u in g.adj[v]:
            if u > v:
                continue
            for a in copies[v]:
                for b in copies[u]:
                    edges.append((a, b))
    return Graph.from_edges(counter, edges, tuple(labels))


def to_modulator_instance(ci: ComposedInstance) -> Instance:
    """Expand the gadget weights and return the unweighted question: the
    expanded B side is the modulator (its removal leaves the expanded A
    clique) and the width target drops by one."""
    expanded = expand_weights(ci.gadget)
    b_labels = {ci.gadget.graph.labels[v] for v in ci.b_side}
    modulator = frozenset(
        v for v in expanded.vertices()
        if _base_label(expanded.labels[v]) in b_labels
    )
    return Instance(expanded, modulator, ci.kprime - 1)


def _base_label(label: Label) -> Label:
    return label.split("#")[0] if isinstance(label, str) else label


@dataclass(frozen=True)
class CompositionVerdict:
    equivalent: bool
    weighted_treewidth: int
    kprime: int
    composed_yes: bool
    inputs_yes: bool
    cutwidths: tuple[int, ...]
    gadget_ordering: EliminationOrdering
    layouts: tuple[LinearLayout, ...]


def verify_composition(
    ci: ComposedInstance,
    originals: Sequence[Cutwidth3Instance],
    fast_path_cap: int = 12,
    cutwidth_cap: int = oracles.DEFAULT_CUTWIDTH_CAP,
) -> CompositionVerdict:
    """Check the OR-equivalence on a concrete batch: weighted treewidth of
    the gadget at most k' iff some input has cutwidth at most k."""
    width, ordering = oracles.weighted_treewidth_exact(
        ci.gadget, cobipartite_partition=(list(ci.a_side), list(ci.b_side)),
        cap=fast_path_cap,
    )
    solved = [oracles.cutwidth_exact(inst.graph, cap=cutwidth_cap) for inst in originals]
    cutwidths = tuple(w for w, _ in solved)
    layouts = tuple(layout for _, layout in solved)
    composed_yes = width <= ci.kprime
    inputs_yes = any(w <= ci.k for w in cutwidths)
    return CompositionVerdict(
        equivalent=composed_yes == inputs_yes,
        weighted_treewidth=width,
        kprime=ci.kprime,
        composed_yes=composed_yes,
        inputs_yes=inputs_yes,
        cutwidths=cutwidths,
        gadget_ordering=ordering,
        layouts=layouts,
    )
