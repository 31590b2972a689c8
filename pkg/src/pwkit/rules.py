"""The safe reduction rules and the exhaustive scheduler.

Each rule is an individually invokable pure transformation on instances:
it either returns the rewritten instance together with a trace record, or
``None`` when no site matches.  Site selection is deterministic (smallest
labels first), so identical inputs always yield identical traces.

R3G is the unrestricted edge-addition variant of R4: it adds an edge between
*any* nonadjacent pair joined by enough disjoint paths, without requiring a
modulator endpoint.  It is opt-in and never enabled by kernelizers, since it
can grow the effective modulator.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from enum import Enum
from functools import lru_cache
from itertools import combinations, combinations_with_replacement
from typing import Callable, Optional, Union

from .errors import BudgetExceededError, CapExceededError
from .graph import (
    Graph,
    Instance,
    Label,
    add_edge,
    add_vertex,
    count_internally_disjoint_paths,
    delete_vertex,
    delete_vertices,
    induced_subgraph,
    is_simplicial,
    label_key,
    simplicial_components,
    special_neighbors,
)
from . import oracles

log = logging.getLogger(__name__)

DEFAULT_BUDGET_CONSTANT = 10


class RuleId(str, Enum):
    R1 = "R1"
    R2 = "R2"
    R3 = "R3"
    R3G = "R3G"
    R4 = "R4"
    R5 = "R5"
    R6 = "R6"
    R7 = "R7"


_PRIORITY = {r: i for i, r in enumerate(RuleId)}


@dataclass(frozen=True)
class RuleApplication:
    rule: RuleId
    site: tuple[Label, ...]
    removed: tuple[Label, ...] = ()
    added_vertices: tuple[Label, ...] = ()
    added_edges: tuple[tuple[Label, Label], ...] = ()

    def __post_init__(self):
        if set(self.removed) & set(self.added_vertices):
            raise ValueError("a vertex cannot be both removed and added")


@dataclass(frozen=True)
class Reduced:
    instance: Instance
    trace: tuple[RuleApplication, ...] = ()


@dataclass(frozen=True)
class DecidedYes:
    trace: tuple[RuleApplication, ...] = ()


@dataclass(frozen=True)
class DecidedNo:
    trace: tuple[RuleApplication, ...] = ()


ReductionOutcome = Union[Reduced, DecidedYes, DecidedNo]

RuleStep = Optional[tuple[Instance, RuleApplication]]


def _remap(inst: Instance, new_graph: Graph) -> Instance:
    """Carry the modulator across an id recompaction, dropping dead members."""
    surviving = set(new_graph.labels)
    pos = {lab: i for i, lab in enumerate(new_graph.labels)}
    mod = frozenset(pos[inst.graph.labels[v]] for v in inst.modulator
                    if inst.graph.labels[v] in surviving)
    return Instance(new_graph, mod, inst.target)


def rule1(inst: Instance) -> RuleStep:
    """Delete the lowest-labeled degree-zero vertex (modulator members too)."""
    g = inst.graph
    for v in g.sorted_by_label():
        if g.degree(v) == 0:
            app = RuleApplication(RuleId.R1, site=(g.labels[v],), removed=(g.labels[v],))
            return _remap(inst, delete_vertex(g, v)), app
    return None


def rule2(inst: Instance) -> RuleStep:
    """Delete one of two degree-one vertices that share their neighbor.

    Among matching pairs, the lexicographically smallest label pair wins;
    within the pair, a non-modulator vertex is deleted when possible,
    otherwise the higher-labeled one.
    """
    g = inst.graph
    leaves = [v for v in g.sorted_by_label() if g.degree(v) == 1]
    for a, b in combinations(leaves, 2):
        if g.adj[a] != g.adj[b]:
            continue
        victim = _prefer_outside_modulator(inst, a, b)
        app = RuleApplication(RuleId.R2, site=(g.labels[a], g.labels[b]),
                              removed=(g.labels[victim],))
        return _remap(inst, delete_vertex(g, victim)), app
    return None


def _prefer_outside_modulator(inst: Instance, a: int, b: int) -> int:
    outside = [v for v in (a, b) if v not in inst.modulator]
    candidates = outside or [a, b]
    return max(candidates, key=lambda v: label_key(inst.graph.labels[v]))


def rule3(inst: Instance) -> RuleStep:
    """Two degree-two vertices with the same neighbors {x, y}, x in S:
    delete one of them and add the edge {x, y}."""
    g = inst.graph
    deg2 = [v for v in g.sorted_by_label() if g.degree(v) == 2]
    for a, b in combinations(deg2, 2):
        if g.adj[a] != g.adj[b]:
            continue
        shared = sorted(g.adj[a], key=lambda v: label_key(g.labels[v]))
        in_s = [v for v in shared if v in inst.modulator]
        if not in_s:
            continue
        x = in_s[0]
        y = shared[1] if shared[0] == x else shared[0]
        victim = _prefer_outside_modulator(inst, a, b)
        added = () if g.has_edge(x, y) else ((g.labels[x], g.labels[y]),)
        new_graph = delete_vertex(add_edge(g, x, y), victim)
        keeper = a if victim == b else b
        app = RuleApplication(
            RuleId.R3,
            site=(g.labels[keeper], g.labels[victim], g.labels[x], g.labels[y]),
            removed=(g.labels[victim],),
            added_edges=added,
        )
        return _remap(inst, new_graph), app
    return None


def _disjoint_path_rule(inst: Instance, rule: RuleId, sources: list[int]) -> RuleStep:
    g, k = inst.graph, inst.target
    for v in sources:
        for w in g.sorted_by_label():
            if w == v or g.has_edge(v, w):
                continue
            if rule is RuleId.R3G and label_key(g.labels[w]) < label_key(g.labels[v]):
                continue
            if count_internally_disjoint_paths(g, v, w, k + 1) >= k + 1:
                app = RuleApplication(rule, site=(g.labels[v], g.labels[w]),
                                      added_edges=((g.labels[v], g.labels[w]),))
                return _remap(inst, add_edge(g, v, w)), app
    return None


def rule4(inst: Instance) -> RuleStep:
    """Add the edge {v, w} for v in S, w nonadjacent, joined by at least
    k + 1 internally vertex-disjoint paths.  S and k are unchanged."""
    sources = [v for v in inst.graph.sorted_by_label() if v in inst.modulator]
    return _disjoint_path_rule(inst, RuleId.R4, sources)


def rule3g(inst: Instance) -> RuleStep:
    """Unrestricted disjoint-paths edge addition (no modulator endpoint)."""
    return _disjoint_path_rule(inst, RuleId.R3G, inst.graph.sorted_by_label())


def rule5(inst: Instance) -> RuleStep:
    """Remove a simplicial vertex of degree >= 2 outside S, provided every
    pair of its neighbors is witnessed by another simplicial vertex."""
    g = inst.graph
    simplicial = [v for v in g.vertices() if is_simplicial(g, v)]
    for v in g.sorted_by_label():
        if v in inst.modulator or g.degree(v) < 2 or v not in simplicial:
            continue
        closed = g.closed_neighbors(v)
        if all(
            any(w not in closed and x in g.adj[w] and y in g.adj[w] for w in simplicial)
            for x, y in combinations(g.adj[v], 2)
        ):
            app = RuleApplication(RuleId.R5, site=(g.labels[v],), removed=(g.labels[v],))
            return _remap(inst, delete_vertex(g, v)), app
    return None


@lru_cache(maxsize=4096)
def _component_pathwidth(n: int, edges: tuple[tuple[int, int], ...], cap: int) -> int:
    width, _ = oracles.pathwidth_exact(Graph.from_edges(n, edges), cap=cap)
    return width


def component_pathwidth(g: Graph, comp: frozenset[int], cap: int) -> int:
    """Pathwidth of the subgraph induced by one component, memoized on its
    adjacency encoding."""
    sub = induced_subgraph(g, comp)
    return _component_pathwidth(sub.n, tuple(sub.edges()), cap)


def rule6(inst: Instance, oracle_cap: int = oracles.DEFAULT_CAP) -> RuleStep:
    """Remove a simplicial component that is dominated, for every pair of its
    modulator neighbors (including equal pairs), by at least 2k + 3 other
    simplicial components of no smaller pathwidth.

    For a component with no modulator neighbors the adjacency requirement is
    empty: at least 2k + 3 other simplicial components of no smaller
    pathwidth must exist.  Components beyond the pathwidth-oracle cap are
    reported and skipped.
    """
    g, k = inst.graph, inst.target
    comps = simplicial_components(g, inst.modulator)
    if len(comps) <= 2 * k + 3:
        return None
    widths: dict[frozenset[int], int] = {}
    for comp in comps:
        try:
            widths[comp] = component_pathwidth(g, comp, oracle_cap)
        except CapExceededError:
            log.warning("rule6: component with %d vertices exceeds the oracle cap; skipped",
                        len(comp))
    threshold = 2 * k + 3
    by_label = sorted((c for c in comps if c in widths),
                      key=lambda c: min(label_key(g.labels[v]) for v in c))
    for cand in by_label:
        boundary = frozenset().union(*(g.adj[v] for v in cand)) - cand
        pairs = (list(combinations_with_replacement(sorted(boundary), 2))
                 if boundary else [None])
        others = [z for z in comps if z != cand and z in widths
                  and widths[z] >= widths[cand]]
        if all(
            sum(1 for z in others
                if pair is None or set(pair) <= frozenset().union(*(g.adj[v] for v in z)))
            >= threshold
            for pair in pairs
        ):
            removed = tuple(sorted((g.labels[v] for v in cand), key=label_key))
            app = RuleApplication(RuleId.R6, site=removed, removed=removed)
            return _remap(inst, delete_vertices(g, cand)), app
    return None


def replace_almost_simplicial(g: Graph, v: int) -> tuple[Graph, list[Label], list[tuple[Label, Label]]]:
    """Delete v and add one degree-two vertex per pair of its neighbors.

    This is the raw rewrite used by R7.  It performs no precondition check:
    applied at a vertex that is not almost simplicial it changes the
    pathwidth, so regular callers must go through :func:`rule7`.
    """
    nbrs = sorted(g.adj[v], key=lambda u: label_key(g.labels[u]))
    base = g.labels[v]
    new_labels: list[Label] = []
    new_edges: list[tuple[Label, Label]] = []
    out = delete_vertex(g, v)
    for p, q in combinations(nbrs, 2):
        lp, lq = g.labels[p], g.labels[q]
        fresh = f"{base}:{lp}+{lq}"
        out = add_vertex(out, fresh, (out.id_of(lp), out.id_of(lq)))
        new_labels.append(fresh)
        new_edges.extend([(fresh, lp), (fresh, lq)])
    return out, new_labels, new_edges


def rule7(inst: Instance,
          vertex_filter: Callable[[Instance, int], bool] | None = None,
          ) -> Optional[tuple[Optional[Instance], RuleApplication]]:
    """Replace an almost simplicial vertex of degree >= 3 outside S by one
    degree-two vertex per pair of its neighbors; answer no outright when its
    degree exceeds k + 1 (its closed neighborhood minus the special neighbor
    is then a clique of size at least k + 2).

    Returns ``(None, application)`` for the no-answer, ``(instance,
    application)`` for a replacement, or ``None`` when no vertex matches.
    The optional filter restricts which matched vertices may fire.
    """
    g, k = inst.graph, inst.target
    for v in g.sorted_by_label():
        if v in inst.modulator or g.degree(v) < 3:
            continue
        special = special_neighbors(g, v)
        if not special:
            continue
        if vertex_filter is not None and not vertex_filter(inst, v):
            continue
        w = min(special, key=lambda u: label_key(g.labels[u]))
        site = (g.labels[v], g.labels[w])
        if g.degree(v) > k + 1:
            return None, RuleApplication(RuleId.R7, site=site)
        new_graph, added, edges = replace_almost_simplicial(g, v)
        app = RuleApplication(RuleId.R7, site=site, removed=(g.labels[v],),
                              added_vertices=tuple(added), added_edges=tuple(edges))
        return _remap(inst, new_graph), app
    return None


def application_budget(n: int, k: int,
                       constant: int = DEFAULT_BUDGET_CONSTANT) -> int:
    """Scheduler budget: a constant multiple of n^2 + n*k^2 applications."""
    return constant * (n * n + n * k * k)


def exhaustive_reduce(
    inst: Instance,
    enabled: set[RuleId] | None = None,
    rule7_filter: Callable[[Instance, int], bool] | None = None,
    budget_constant: int = DEFAULT_BUDGET_CONSTANT,
    oracle_cap: int = oracles.DEFAULT_CAP,
) -> ReductionOutcome:
    """Apply the enabled rules in priority order R1 < R2 < R3 < R3G < R4 <
    R5 < R6 < R7 until none matches, collecting the full trace.

    The number of applications is bounded by :func:`application_budget` on
    the input size; exceeding it aborts with a diagnostic, since it signals
    a bug or a violated termination assumption rather than slow progress.
    """
    if enabled is None:
        enabled = set(RuleId) - {RuleId.R3G}
    steppers: dict[RuleId, Callable[[Instance], RuleStep]] = {
        RuleId.R1: rule1,
        RuleId.R2: rule2,
        RuleId.R3: rule3,
        RuleId.R3G: rule3g,
        RuleId.R4: rule4,
        RuleId.R5: rule5,
        RuleId.R6: lambda i: rule6(i, oracle_cap=oracle_cap),
    }
    order = sorted(enabled, key=_PRIORITY.get)
    budget = application_budget(inst.graph.n, inst.target, budget_constant)
    trace: list[RuleApplication] = []
    current = inst
    while True:
        fired = False
        for rule in order:
            if rule is RuleId.R7:
                step7 = rule7(current, vertex_filter=rule7_filter)
                if step7 is None:
                    continue
                next_inst, app = step7
                trace.append(app)
                _charge(budget, trace)
                if next_inst is None:
                    return DecidedNo(tuple(trace))
                current = next_inst
            else:
                step = steppers[rule](current)
                if step is None:
                    continue
                current, app = step
                trace.append(app)
                _charge(budget, trace)
            fired = True
            break
        if not fired:
            return Reduced(current, tuple(trace))


def _charge(budget: int, trace: list[RuleApplication]) -> None:
    if len(trace) > budget:
        counts = {}
        for app in trace:
            counts[app.rule.value] = counts.get(app.rule.value, 0) + 1
        raise BudgetExceededError(
            f"reduction exceeded its application budget of {budget} "
            f"(per-rule counts: {counts})",
            trace=trace,
        )
