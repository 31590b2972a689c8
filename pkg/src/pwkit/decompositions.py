"""Width-measure certificates and their validators.

Four certificate kinds: bag sequences for pathwidth, bag trees for treewidth,
elimination orderings for (weighted) treewidth, and linear layouts for
cutwidth.  Validators return a report naming the first violated clause so
failures are actionable in tests and CLI output.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

from .graph import Graph, WeightedGraph, is_simplicial


@dataclass(frozen=True)
class PathDecomposition:
    bags: tuple[frozenset[int], ...]

    def __post_init__(self):
        if not self.bags:
            raise ValueError("a path decomposition needs at least one bag")

    def width(self) -> int:
        return max(len(b) for b in self.bags) - 1


@dataclass(frozen=True)
class TreeDecomposition:
    bags: dict[int, frozenset[int]]
    tree: frozenset[tuple[int, int]]

    def width(self) -> int:
        return max(len(b) for b in self.bags.values()) - 1


@dataclass(frozen=True)
class EliminationOrdering:
    order: tuple[int, ...]


@dataclass(frozen=True)
class LinearLayout:
    order: tuple[int, ...]


@dataclass(frozen=True)
class Validation:
    ok: bool
    message: str = "ok"

    def __bool__(self) -> bool:
        return self.ok


def _check_vertex_cover(g: Graph, bag_list: list[frozenset[int]]) -> Validation | None:
    covered = frozenset().union(*bag_list) if bag_list else frozenset()
    missing = set(g.vertices()) - covered
    if missing:
        return Validation(False, f"vertex {min(missing)} is in no bag")
    return None


def _check_edge_cover(g: Graph, bag_list: list[frozenset[int]]) -> Validation | None:
    for u, v in g.edges():
        if not any(u in b and v in b for b in bag_list):
            return Validation(False, f"edge ({u}, {v}) is in no bag")
    return None


def validate_path_decomposition(g: Graph, pd: PathDecomposition) -> Validation:
    """Check vertex cover, consecutiveness of occurrences, and edge cover,
    reporting the first violated clause."""
    bad = _check_vertex_cover(g, list(pd.bags))
    if bad is not None:
        return bad
    for v in g.vertices():
        idx = [i for i, b in enumerate(pd.bags) if v in b]
        if idx and idx[-1] - idx[0] + 1 != len(idx):
            return Validation(False, f"bags containing vertex {v} are not consecutive")
    bad = _check_edge_cover(g, list(pd.bags))
    if bad is not None:
        return bad
    return Validation(True)


def validate_tree_decomposition(g: Graph, td: TreeDecomposition) -> Validation:
    """Check cover conditions plus connectedness of each vertex's bag set."""
    nodes = set(td.bags)
    if not nodes:
        return Validation(False, "a tree decomposition needs at least one bag")
    for a, b in td.tree:
        if a not in nodes or b not in nodes:
            return Validation(False, f"tree edge ({a}, {b}) references unknown bag ids")
    if len(td.tree) != len(nodes) - 1 or not _connected(nodes, td.tree):
        return Validation(False, "bag links do not form a tree")
    bad = _check_vertex_cover(g, list(td.bags.values()))
    if bad is not None:
        return bad
    for v in g.vertices():
        holding = {i for i, b in td.bags.items() if v in b}
        if holding and not _connected(holding, {e for e in td.tree
                                                if e[0] in holding and e[1] in holding}):
            return Validation(False, f"bags containing vertex {v} do not induce a subtree")
    bad = _check_edge_cover(g, list(td.bags.values()))
    if bad is not None:
        return bad
    return Validation(True)


def _connected(nodes: set[int], edges: Iterable[tuple[int, int]]) -> bool:
    nodes = set(nodes)
    if not nodes:
        return True
    adj: dict[int, set[int]] = {v: set() for v in nodes}
    for a, b in edges:
        adj[a].add(b)
        adj[b].add(a)
    seen = {min(nodes)}
    stack = [min(nodes)]
    while stack:
        x = stack.pop()
        for y in adj[x]:
            if y not in seen:
                seen.add(y)
                stack.append(y)
    return seen == nodes


def decomposition_width(dec: PathDecomposition | TreeDecomposition,
                        weights: WeightedGraph | None = None) -> int:
    """Width of a decomposition: max bag size minus one, or — when weights
    are supplied — the max bag weight sum without the minus-one."""
    bags = dec.bags if isinstance(dec, PathDecomposition) else tuple(dec.bags.values())
    if weights is not None:
        return max(weights.weight_of(b) for b in bags)
    return max(len(b) for b in bags) - 1


def normalize_simplicial(g: Graph, pd: PathDecomposition) -> PathDecomposition:
    """Rewrite a valid decomposition so each simplicial vertex sits in exactly
    one bag; never increases the width and is idempotent."""
    check = validate_path_decomposition(g, pd)
    if not check:
        raise ValueError(f"input decomposition invalid: {check.message}")
    bags = [set(b) for b in pd.bags]
    for v in g.vertices():
        if not is_simplicial(g, v):
            continue
        holding = [i for i, b in enumerate(bags) if v in b]
        if len(holding) <= 1:
            continue
        closed = g.closed_neighbors(v)
        keep = next(i for i in holding if closed <= bags[i])
        for i in holding:
            if i != keep:
                bags[i].discard(v)
    return PathDecomposition(tuple(frozenset(b) for b in bags))
