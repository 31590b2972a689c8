"""Exact desk-scale solvers for pathwidth, treewidth, weighted treewidth,
and cutwidth.

All four oracles run a dynamic program over vertex subsets and recover a
certificate from stored parent choices.  They are exponential by design and
guarded by configurable caps; exceeding a cap raises, never truncates.
Vertices are scanned in increasing id order throughout, so results are
deterministic.
"""

from __future__ import annotations

import numpy as np

from .decompositions import EliminationOrdering, LinearLayout, PathDecomposition
from .errors import CapExceededError
from .graph import Graph, WeightedGraph, is_clique
from .errors import PwkitError

DEFAULT_CAP = 20
DEFAULT_CUTWIDTH_CAP = 18

_INF = float("inf")


def _require_cap(n: int, cap: int, what: str) -> None:
    if n > cap:
        raise CapExceededError(f"{what}: {n} vertices exceeds the cap of {cap}")


def _bits(x: int):
    while x:
        low = x & -x
        x ^= low
        yield low.bit_length() - 1


def pathwidth_exact(g: Graph, cap: int = DEFAULT_CAP) -> tuple[int, PathDecomposition]:
    """Minimum width over all path decompositions, with a witness.

    Runs the subset DP over vertex-separation prefixes: the value of a laid-
    out vertex set is the best achievable maximum boundary size.  The empty
    graph is assigned pathwidth 0 by convention (single empty bag).
    """
    _require_cap(g.n, cap, "pathwidth_exact")
    n = g.n
    if n == 0:
        return 0, PathDecomposition((frozenset(),))
    masks = g.neighbor_masks()
    full = (1 << n) - 1
    dp = [0] * (full + 1)
    choice = [0] * (full + 1)
    for x in range(1, full + 1):
        comp = full ^ x
        best = _INF
        pick = -1
        bcnt = 0
        rest = x
        while rest:
            low = rest & -rest
            rest ^= low
            if masks[low.bit_length() - 1] & comp:
                bcnt += 1
            prev = dp[x ^ low]
            if prev < best:
                best = prev
                pick = low.bit_length() - 1
        dp[x] = bcnt if bcnt > best else best
        choice[x] = pick
    order = _backtrack(choice, full)
    bags = []
    placed = 0
    for v in order:
        boundary = [u for u in _bits(placed) if masks[u] & ~placed & full]
        bags.append(frozenset(boundary) | {v})
        placed |= 1 << v
    return dp[full], PathDecomposition(tuple(bags))


def _backtrack(choice: list[int], full: int) -> list[int]:
    order = []
    x = full
    while x:
        v = choice[x]
        order.append(v)
        x ^= 1 << v
    order.reverse()
    return order


def _fill_neighbors(masks: list[int], v: int, eliminated: int) -> int:
    """Open neighborhood of v once `eliminated` has been eliminated: the
    non-eliminated vertices reachable from v through eliminated ones."""
    visited = 1 << v
    pending = masks[v]
    out = 0
    while pending:
        low = pending & -pending
        pending ^= low
        if visited & low:
            continue
        visited |= low
        if eliminated & low:
            pending |= masks[low.bit_length() - 1] & ~visited
        else:
            out |= low
    return out


def treewidth_exact(g: Graph, cap: int = DEFAULT_CAP) -> tuple[int, EliminationOrdering]:
    """Minimum over elimination orderings of the maximum elimination degree."""
    _require_cap(g.n, cap, "treewidth_exact")
    n = g.n
    if n == 0:
        return 0, EliminationOrdering(())
    masks = g.neighbor_masks()
    full = (1 << n) - 1
    dp = [0] * (full + 1)
    choice = [0] * (full + 1)
    for x in range(1, full + 1):
        best = _INF
        pick = -1
        rest = x
        while rest:
            low = rest & -rest
            rest ^= low
            v = low.bit_length() - 1
            prev = dp[x ^ low]
            if prev < best:
                cost = bin(_fill_neighbors(masks, v, x ^ low)).count("1")
                cand = cost if cost > prev else prev
                if cand < best:
                    best = cand
                    pick = v
        dp[x] = best
        choice[x] = pick
    return dp[full], EliminationOrdering(tuple(_backtrack(choice, full)))


def ordering_width(g: Graph, order: tuple[int, ...]) -> int:
    """Max degree at elimination time when eliminating along `order`,
    simulated by explicit clique fill-in (independent of the DP's
    reachability shortcut)."""
    _check_permutation(g.n, order)
    adj = [set(s) for s in g.adj]
    worst = 0
    for v in order:
        nbrs = adj[v]
        worst = max(worst, len(nbrs))
        for u in nbrs:
            adj[u].discard(v)
            adj[u].update(nbrs - {u})
        adj[v] = set()
    return worst


def elimination_cost(wg: WeightedGraph, pi: EliminationOrdering) -> int:
    """Maximum closed-neighborhood weight at elimination time along pi."""
    _check_permutation(wg.graph.n, pi.order)
    adj = [set(s) for s in wg.graph.adj]
    worst = 0
    for v in pi.order:
        nbrs = adj[v]
        worst = max(worst, wg.weights[v] + wg.weight_of(nbrs))
        for u in nbrs:
            adj[u].discard(v)
            adj[u].update(nbrs - {u})
        adj[v] = set()
    return worst


def _check_permutation(n: int, order: tuple[int, ...]) -> None:
    if sorted(order) != list(range(n)):
        raise ValueError("ordering must be a permutation of all vertex ids")


def weighted_treewidth_exact(
    wg: WeightedGraph,
    cobipartite_partition: tuple[list[int], list[int]] | None = None,
    cap: int = DEFAULT_CAP,
) -> tuple[int, EliminationOrdering]:
    """Minimum elimination cost (max closed-neighborhood weight, no minus
    one).

    Without a partition this is a subset DP over all vertices.  With a
    co-bipartite partition (A, B), both sides cliques, the solver explores
    only orderings that eliminate all of A first — optimal for co-bipartite
    graphs — so the state space is over subsets of A only.
    """
    if cobipartite_partition is not None:
        return _weighted_treewidth_cobipartite(wg, cobipartite_partition, cap)
    _require_cap(wg.graph.n, cap, "weighted_treewidth_exact")
    g = wg.graph
    n = g.n
    if n == 0:
        return 0, EliminationOrdering(())
    masks = g.neighbor_masks()
    w = wg.weights
    full = (1 << n) - 1
    dp = [0] * (full + 1)
    choice = [0] * (full + 1)
    for x in range(1, full + 1):
        best = _INF
        pick = -1
        rest = x
        while rest:
            low = rest & -rest
            rest ^= low
            v = low.bit_length() - 1
            prev = dp[x ^ low]
            if prev < best:
                cost = w[v] + sum(w[u] for u in _bits(_fill_neighbors(masks, v, x ^ low)))
                cand = cost if cost > prev else prev
                if cand < best:
                    best = cand
                    pick = v
        dp[x] = best
        choice[x] = pick
    return dp[full], EliminationOrdering(tuple(_backtrack(choice, full)))


def _popcount_u64(a: np.ndarray) -> np.ndarray:
    x = a.astype(np.uint64)
    m1 = np.uint64(0x5555555555555555)
    m2 = np.uint64(0x3333333333333333)
    m4 = np.uint64(0x0F0F0F0F0F0F0F0F)
    h01 = np.uint64(0x0101010101010101)
    x = x - ((x >> np.uint64(1)) & m1)
    x = (x & m2) + ((x >> np.uint64(2)) & m2)
    x = (x + (x >> np.uint64(4))) & m4
    return ((x * h01) >> np.uint64(56)).astype(np.int64)


def _weighted_treewidth_cobipartite(
    wg: WeightedGraph,
    partition: tuple[list[int], list[int]],
    cap: int,
) -> tuple[int, EliminationOrdering]:
    g = wg.graph
    a_side, b_side = (sorted(partition[0]), sorted(partition[1]))
    if sorted(a_side + b_side) != list(g.vertices()):
        raise PwkitError("partition must split the vertex set exactly")
    if not is_clique(g, a_side):
        raise PwkitError("partition side A is not a clique")
    if not is_clique(g, b_side):
        raise PwkitError("partition side B is not a clique")
    _require_cap(len(a_side), cap, "weighted_treewidth_exact (co-bipartite side A)")
    if g.n > 63:
        raise CapExceededError("co-bipartite fast path supports at most 63 vertices")
    w_b = wg.weight_of(b_side)
    if not a_side:
        order = tuple(b_side)
        return (w_b if order else 0), EliminationOrdering(order)

    na = len(a_side)
    size = 1 << na
    # Closed neighborhoods of A-vertices as bitmasks over all vertex ids.
    closed = np.array(
        [(1 << v) | sum(1 << u for u in g.adj[v]) for v in a_side], dtype=np.int64
    )
    wa = np.array([wg.weights[v] for v in a_side], dtype=np.int64)

    nbrmask = np.zeros(size, dtype=np.int64)
    for i in reversed(range(na)):
        idx = np.arange(1 << i, size, 1 << (i + 1), dtype=np.int64)
        nbrmask[idx] = nbrmask[idx - (1 << i)] | closed[i]

    # Weight of N[X] and of X itself, for every subset X of A.
    subsets = np.arange(size, dtype=np.int64)
    w_closed = np.zeros(size, dtype=np.int64)
    w_sub = np.zeros(size, dtype=np.int64)
    for v in g.vertices():
        w_closed += ((nbrmask >> np.int64(v)) & 1) * wg.weights[v]
    for i, v in enumerate(a_side):
        w_sub += ((subsets >> np.int64(i)) & 1) * wg.weights[v]
    w_open = w_closed - w_sub

    inf = np.int64(2**62)
    dp = np.full(size, inf, dtype=np.int64)
    dp[0] = 0
    choice = np.zeros(size, dtype=np.int8)
    pc = _popcount_u64(subsets)
    by_level = np.argsort(pc, kind="stable").astype(np.int64)
    starts = np.searchsorted(pc[by_level], np.arange(na + 2))
    for level in range(1, na + 1):
        masks_here = by_level[starts[level]:starts[level + 1]]
        for i in range(na):
            sel = masks_here[((masks_here >> np.int64(i)) & 1) == 1]
            if sel.size == 0:
                continue
            cand = np.maximum(dp[sel ^ (1 << i)], w_open[sel] + wa[i])
            better = cand < dp[sel]
            target = sel[better]
            dp[target] = cand[better]
            choice[target] = i
    width = int(max(dp[size - 1], w_b))
    x = size - 1
    rev = []
    while x:
        i = int(choice[x])
        rev.append(a_side[i])
        x ^= 1 << i
    order = tuple(reversed(rev)) + tuple(b_side)
    return width, EliminationOrdering(order)


def cutwidth_exact(g: Graph, cap: int = DEFAULT_CUTWIDTH_CAP) -> tuple[int, LinearLayout]:
    """Minimum over linear layouts of the maximum prefix cut."""
    _require_cap(g.n, cap, "cutwidth_exact")
    n = g.n
    if n == 0:
        return 0, LinearLayout(())
    masks = g.neighbor_masks()
    full = (1 << n) - 1
    dp = [0] * (full + 1)
    choice = [0] * (full + 1)
    for x in range(1, full + 1):
        comp = full ^ x
        cut = 0
        best = _INF
        pick = -1
        rest = x
        while rest:
            low = rest & -rest
            rest ^= low
            cut += bin(masks[low.bit_length() - 1] & comp).count("1")
            prev = dp[x ^ low]
            if prev < best:
                best = prev
                pick = low.bit_length() - 1
        dp[x] = cut if cut > best else best
        choice[x] = pick
    return dp[full], LinearLayout(tuple(_backtrack(choice, full)))


def layout_cutwidth(g: Graph, layout: LinearLayout) -> int:
    """Maximum prefix cut of a concrete layout."""
    _check_permutation(g.n, layout.order)
    if g.n == 0:
        return 0
    masks = g.neighbor_masks()
    placed = 0
    worst = 0
    for v in layout.order:
        placed |= 1 << v
        cut = sum(bin(masks[u] & ~placed).count("1") for u in _bits(placed))
        worst = max(worst, cut)
    return worst
