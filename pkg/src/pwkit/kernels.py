"""Kernelization pipelines for three target families, with family
recognizers, early-decision shortcuts, and audits of the structural counting
bounds their size guarantees rest on.

Counting bounds are asserted as exact inequalities against the *original*
modulator size (the parameter), not merely asymptotically.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Union

from .errors import AuditError, FamilyError
from .graph import (
    Graph,
    Instance,
    connected_components,
    induced_subgraph,
    is_simplicial,
    label_key,
    simplicial_components,
)
from .rules import (
    DEFAULT_BUDGET_CONSTANT,
    DecidedNo,
    DecidedYes,
    Reduced,
    ReductionOutcome,
    RuleId,
    exhaustive_reduce,
)


@dataclass(frozen=True)
class IndependentSet:
    name = "independent-set"


@dataclass(frozen=True)
class BoundedComponents:
    c: int
    name = "bounded-components"

    def __post_init__(self):
        if self.c < 1:
            raise ValueError("component size bound must be at least 1")


@dataclass(frozen=True)
class StarForest:
    name = "star-forest"


Family = Union[IndependentSet, BoundedComponents, StarForest]


@dataclass(frozen=True)
class Recognition:
    ok: bool
    offending: frozenset[int] | None = None
    reason: str = "ok"

    def __bool__(self) -> bool:
        return self.ok


def _component_is_star(sub: Graph) -> bool:
    # A star is K_1 or K_{1,r}: a tree whose edges all share one vertex.
    if sub.edge_count != sub.n - 1:
        return False
    return sub.n <= 2 or any(sub.degree(v) == sub.n - 1 for v in sub.vertices())


def recognize(g: Graph, modulator: frozenset[int], family: Family) -> Recognition:
    """Does G - S belong to the family?  Reports an offending component."""
    rest = [v for v in g.vertices() if v not in modulator]
    for comp in connected_components(g, rest):
        sub = induced_subgraph(g, comp)
        if isinstance(family, IndependentSet):
            if sub.edge_count:
                return Recognition(False, comp, "component is not edgeless")
        elif isinstance(family, BoundedComponents):
            if sub.n > family.c:
                return Recognition(False, comp,
                                   f"component has {sub.n} > {family.c} vertices")
        else:
            if not _component_is_star(sub):
                return Recognition(False, comp, "component is not a star")
    return Recognition(True)


@dataclass(frozen=True)
class StructuralCounts:
    vertices: int
    modulator_size: int
    components: int
    simplicial_components: int
    nonsimplicial_components: int
    simplicial_in_complement: int
    star_centers: int | None = None
    degree1_leaves: int | None = None
    degree2_leaves: int | None = None
    degree_gt2_leaves: int | None = None


def structural_counts(inst: Instance) -> StructuralCounts:
    """The component and leaf counts the kernel size bounds are built from.

    Star statistics (centers and leaf degrees, degrees taken in the full
    graph) are only populated when every component of G - S is a star.
    """
    g = inst.graph
    rest = [v for v in g.vertices() if v not in inst.modulator]
    comps = connected_components(g, rest)
    simp = set(simplicial_components(g, inst.modulator))
    simp_vertices = sum(1 for v in rest if is_simplicial(g, v))
    centers = deg1 = deg2 = deg_gt2 = 0
    all_stars = True
    for comp in comps:
        sub = induced_subgraph(g, comp)
        if not _component_is_star(sub):
            all_stars = False
            break
        center = min(sub.vertices(),
                     key=lambda v: (-sub.degree(v), label_key(sub.labels[v])))
        centers += 1
        center_label = sub.labels[center]
        for v in comp:
            if g.labels[v] == center_label:
                continue
            d = g.degree(v)
            if d == 1:
                deg1 += 1
            elif d == 2:
                deg2 += 1
            else:
                deg_gt2 += 1
    return StructuralCounts(
        vertices=g.n,
        modulator_size=len(inst.modulator),
        components=len(comps),
        simplicial_components=len(simp),
        nonsimplicial_components=len(comps) - len(simp),
        simplicial_in_complement=simp_vertices,
        star_centers=centers if all_stars else None,
        degree1_leaves=deg1 if all_stars else None,
        degree2_leaves=deg2 if all_stars else None,
        degree_gt2_leaves=deg_gt2 if all_stars else None,
    )


@dataclass(frozen=True)
class KernelConstants:
    """Multipliers for the audited bounds; the inequalities themselves come
    from the counting arguments and are not configurable."""

    star_headline: int = 8
    bounded_headline: int = 4
    vertex_cover_headline: int = 4
    vc_simplicial: int = 2
    budget_constant: int = DEFAULT_BUDGET_CONSTANT


DEFAULT_CONSTANTS = KernelConstants()


@dataclass(frozen=True)
class KernelResult:
    outcome: ReductionOutcome
    stats: StructuralCounts
    applications: int
    bound_ok: bool
    bound_formula: str
    violations: tuple[str, ...] = ()


def canonical_yes_instance() -> Instance:
    """A constant-size instance whose answer is yes: K_1 with k = 0."""
    return Instance(Graph.from_edges(1, []), frozenset(), 0)


def canonical_no_instance() -> Instance:
    """A constant-size instance whose answer is no: K_3 with k = 1."""
    return Instance(Graph.from_edges(3, [(0, 1), (1, 2), (0, 2)]), frozenset(), 1)


def _check(violations: list[str], label: str, value: int, bound: int) -> None:
    if value > bound:
        violations.append(f"{label}: {value} > {bound}")


def _shared_component_bounds(stats: StructuralCounts, ell: int, k: int,
                             violations: list[str]) -> None:
    _check(violations, "nonsimplicial components <= k*l^2",
           stats.nonsimplicial_components, k * ell * ell)
    _check(violations, "simplicial components <= (2k+3)*l^2",
           stats.simplicial_components, (2 * k + 3) * ell * ell)


def _finish(outcome: ReductionOutcome, stats: StructuralCounts, applications: int,
            formula: str, violations: list[str], strict: bool) -> KernelResult:
    result = KernelResult(outcome, stats, applications, not violations, formula,
                          tuple(violations))
    if strict and violations:
        raise AuditError("kernel bound audit failed: " + "; ".join(violations))
    return result


def kernelize_star_forest(inst: Instance,
                          constants: KernelConstants = DEFAULT_CONSTANTS,
                          strict: bool = True) -> KernelResult:
    """Kernel for modulators to disjoint unions of stars.

    Answers yes outright when k >= l + 1 (stars have pathwidth one, so the
    whole graph has pathwidth at most l + 1).  Otherwise applies R1-R6
    exhaustively plus R7 restricted to vertices with at most one neighbor
    outside the modulator, which keeps the complement a star forest.
    """
    rec = recognize(inst.graph, inst.modulator, StarForest())
    if not rec:
        raise FamilyError(f"not a star-forest instance: {rec.reason}")
    ell, k = len(inst.modulator), inst.target
    if k >= ell + 1:
        return KernelResult(DecidedYes(), structural_counts(inst), 0, True,
                            "decided yes: k >= l + 1")

    def at_most_one_outside(cur: Instance, v: int) -> bool:
        return sum(1 for u in cur.graph.adj[v] if u not in cur.modulator) <= 1

    outcome = exhaustive_reduce(
        inst,
        enabled=set(RuleId) - {RuleId.R3G},
        rule7_filter=at_most_one_outside,
        budget_constant=constants.budget_constant,
    )
    if isinstance(outcome, DecidedNo):
        return KernelResult(outcome, structural_counts(inst), len(outcome.trace),
                            True, "decided no: almost simplicial vertex of degree > k + 1")
    reduced = outcome.instance
    stats = structural_counts(reduced)
    violations: list[str] = []
    if not recognize(reduced.graph, reduced.modulator, StarForest()):
        violations.append("family closure: complement is no longer a star forest")
    _shared_component_bounds(stats, ell, k, violations)
    _check(violations, "degree-1 leaves <= centers",
           stats.degree1_leaves or 0, stats.star_centers or 0)
    _check(violations, "degree-2 leaves <= centers*l",
           stats.degree2_leaves or 0, (stats.star_centers or 0) * ell)
    _check(violations, "degree->2 leaves <= (k+1)*l^2",
           stats.degree_gt2_leaves or 0, (k + 1) * ell * ell)
    headline = constants.star_headline * (ell + 1) ** 4
    _check(violations, f"vertices <= {constants.star_headline}*(l+1)^4",
           stats.vertices, headline)
    formula = (f"vertices <= {constants.star_headline}*(l+1)^4 = {headline} with l={ell}; "
               f"component/leaf bounds at k={k}")
    return _finish(outcome, stats, len(outcome.trace), formula, violations, strict)


def kernelize_bounded_components(inst: Instance, c: int,
                                 constants: KernelConstants = DEFAULT_CONSTANTS,
                                 strict: bool = True) -> KernelResult:
    """Kernel for modulators to graphs with components of at most c vertices.

    Answers yes outright when k >= c + l - 1 (each component has pathwidth
    at most c - 1).  Otherwise applies rules R1, R2, R4, R5, R6.
    """
    rec = recognize(inst.graph, inst.modulator, BoundedComponents(c))
    if not rec:
        raise FamilyError(f"not a bounded-components instance: {rec.reason}")
    ell, k = len(inst.modulator), inst.target
    if k >= c + ell - 1:
        return KernelResult(DecidedYes(), structural_counts(inst), 0, True,
                            "decided yes: k >= c + l - 1")
    outcome = exhaustive_reduce(
        inst,
        enabled={RuleId.R1, RuleId.R2, RuleId.R4, RuleId.R5, RuleId.R6},
        budget_constant=constants.budget_constant,
    )
    reduced = outcome.instance
    stats = structural_counts(reduced)
    violations: list[str] = []
    if not recognize(reduced.graph, reduced.modulator, BoundedComponents(c)):
        violations.append("family closure: a component grew beyond c vertices")
    _shared_component_bounds(stats, ell, k, violations)
    headline = constants.bounded_headline * (c * ell**3 + c * c * ell**2 + ell + c)
    _check(violations,
           f"vertices <= {constants.bounded_headline}*(c*l^3 + c^2*l^2 + l + c)",
           stats.vertices, headline)
    formula = (f"vertices <= {constants.bounded_headline}*(c*l^3+c^2*l^2+l+c) = {headline} "
               f"with c={c}, l={ell}; component bounds at k={k}")
    return _finish(outcome, stats, len(outcome.trace), formula, violations, strict)


def kernelize_vertex_cover(inst: Instance,
                           constants: KernelConstants = DEFAULT_CONSTANTS,
                           strict: bool = True,
                           use_rule5: bool = True) -> KernelResult:
    """Kernel for instances whose modulator is a vertex cover (G - S is an
    independent set): the c = 1 case of the bounded-components kernel.

    With R5 enabled the number of simplicial vertices left in G - S is
    additionally audited against a quadratic bound.
    """
    rec = recognize(inst.graph, inst.modulator, IndependentSet())
    if not rec:
        raise FamilyError(f"modulator is not a vertex cover: {rec.reason}")
    ell, k = len(inst.modulator), inst.target
    if k >= ell:
        return KernelResult(DecidedYes(), structural_counts(inst), 0, True,
                            "decided yes: k >= l (c = 1)")
    rules = {RuleId.R1, RuleId.R2, RuleId.R4, RuleId.R6}
    if use_rule5:
        rules.add(RuleId.R5)
    outcome = exhaustive_reduce(inst, enabled=rules,
                                budget_constant=constants.budget_constant)
    reduced = outcome.instance
    stats = structural_counts(reduced)
    violations: list[str] = []
    if not recognize(reduced.graph, reduced.modulator, IndependentSet()):
        violations.append("family closure: complement gained an edge")
    _shared_component_bounds(stats, ell, k, violations)
    headline = constants.vertex_cover_headline * (ell**3 + ell)
    _check(violations, f"vertices <= {constants.vertex_cover_headline}*(l^3+l)",
           stats.vertices, headline)
    if use_rule5:
        _check(violations,
               f"simplicial vertices in G-S <= {constants.vc_simplicial}*l^2",
               stats.simplicial_in_complement, constants.vc_simplicial * ell * ell)
    formula = (f"vertices <= {constants.vertex_cover_headline}*(l^3+l) = {headline} "
               f"with l={ell}; component bounds at k={k}")
    return _finish(outcome, stats, len(outcome.trace), formula, violations, strict)
