import random
from itertools import combinations

import pytest

import sitegen
from pwkit.errors import BudgetExceededError
from pwkit.generators import clique, cycle_graph, path_graph, star_graph
from pwkit.graph import Graph, Instance, add_edge, is_simplicial
from pwkit.oracles import pathwidth_exact
from pwkit.rules import (
    DecidedNo,
    Reduced,
    RuleApplication,
    RuleId,
    exhaustive_reduce,
    replace_almost_simplicial,
    rule1,
    rule2,
    rule3,
    rule4,
    rule5,
    rule6,
    rule7,
)


def inst(g, mod=(), k=0):
    return Instance(g, frozenset(mod), k)


class TestRule1:
    def test_deletes_isolated_vertex(self):
        g = Graph.from_edges(3, [(0, 1)])
        out, app = rule1(inst(g))
        assert out.graph.n == 2 and out.graph.edge_count == 1
        assert app.rule is RuleId.R1 and app.removed == (2,)

    def test_no_match_without_isolated_vertex(self):
        assert rule1(inst(path_graph(3))) is None

    def test_isolated_modulator_vertex_shrinks_s(self):
        g = Graph.from_edges(3, [(0, 1)])
        before = inst(g, mod={2, 0}, k=1)
        out, _ = rule1(before)
        assert out.modulator == {0}
        assert pathwidth_exact(out.graph)[0] == pathwidth_exact(g)[0]


class TestRule2:
    def test_claw_loses_a_leaf(self):
        out, app = rule2(inst(star_graph(3)))
        assert out.graph.n == 3 and out.graph.edge_count == 2
        assert app.site == (1, 2)

    def test_path_has_no_shared_leaves(self):
        assert rule2(inst(path_graph(4))) is None

    def test_prefers_deleting_outside_modulator(self):
        out, app = rule2(inst(star_graph(2), mod={2}))
        assert app.removed == (1,)
        assert out.modulator


class TestRule3:
    def test_cycle_becomes_triangle(self):
        # C_4 as x(0) - v(1) - y(2) - w(3) - x
        g = cycle_graph(4)
        out, app = rule3(inst(g, mod={0}, k=2))
        assert out.graph.n == 3
        assert out.graph.edge_count == 3
        assert pathwidth_exact(out.graph)[0] == pathwidth_exact(g)[0] == 2

    def test_requires_modulator_common_neighbor(self):
        assert rule3(inst(cycle_graph(4))) is None

    def test_k23_with_modulator(self):
        g = complete_bipartite = Graph.from_edges(
            5, [(0, 2), (0, 3), (0, 4), (1, 2), (1, 3), (1, 4)])
        out, app = rule3(inst(g, mod={0}, k=2))
        assert out.graph.n == 4
        assert out.graph.has_edge(*sorted(out.graph.id_of(l) for l in app.site[2:]))

    def test_existing_cross_edge_not_recorded(self):
        g = add_edge(cycle_graph(4), 0, 2)
        _, app = rule3(inst(g, mod={0}, k=2))
        assert app.added_edges == ()


class TestRule4:
    def test_k2k1_adds_the_edge(self):
        for k in (1, 2):
            g = Graph.from_edges(k + 3, [(0, i) for i in range(2, k + 3)]
                                 + [(1, i) for i in range(2, k + 3)])
            out, app = rule4(inst(g, mod={0}, k=k))
            assert out.graph.has_edge(0, 1)
            assert app.added_edges == ((0, 1),)

    def test_too_few_paths_no_match(self):
        k = 2
        g = Graph.from_edges(k + 2, [(0, i) for i in range(2, k + 2)]
                             + [(1, i) for i in range(2, k + 2)])
        assert rule4(inst(g, mod={0}, k=k)) is None

    def test_requires_modulator_endpoint(self):
        g = Graph.from_edges(4, [(0, 2), (2, 1), (0, 3), (3, 1)])
        assert rule4(inst(g, k=1)) is None


class TestRule5:
    def test_twin_simplicial_vertices(self):
        # u(0), v(1) both adjacent to the edge {2, 3}: mutual witnesses.
        g = Graph.from_edges(4, [(0, 2), (0, 3), (1, 2), (1, 3), (2, 3)])
        out, app = rule5(inst(g))
        assert app.removed == (0,)
        assert pathwidth_exact(out.graph)[0] == pathwidth_exact(g)[0]

    def test_no_witness_no_match(self):
        g = Graph.from_edges(3, [(0, 1), (0, 2), (1, 2)])
        assert rule5(inst(g)) is None

    def test_modulator_vertices_not_removed(self):
        g = Graph.from_edges(4, [(0, 2), (0, 3), (1, 2), (1, 3), (2, 3)])
        out, app = rule5(inst(g, mod={0}))
        assert app.removed == (1,)


class TestRule6:
    def test_star_with_enough_components(self):
        k = 1
        g = star_graph(2 * k + 4)
        out, app = rule6(inst(g, mod={0}, k=k))
        assert app.rule is RuleId.R6
        assert out.graph.n == g.n - 1
        assert pathwidth_exact(out.graph)[0] == pathwidth_exact(g)[0]

    def test_threshold_not_met(self):
        k = 1
        g = star_graph(2 * k + 3)
        assert rule6(inst(g, mod={0}, k=k)) is None

    def test_isolated_components_need_unconstrained_witnesses(self):
        # a lone component with no modulator neighbors must not be removed
        g = Graph.from_edges(2, [(0, 1)])
        assert rule6(inst(g, mod=set(), k=0)) is None


class TestRule7:
    def test_replacement_creates_pair_vertices(self):
        # v(0) sees w(1) and clique {2, 3}; degree 3, k large enough.
        g = Graph.from_edges(4, [(0, 1), (0, 2), (0, 3), (2, 3)])
        step = rule7(inst(g, k=3))
        out, app = step
        assert out is not None
        assert out.graph.n == 3 + 3
        assert app.removed == (0,)
        assert len(app.added_vertices) == 3
        new_ids = [out.graph.id_of(l) for l in app.added_vertices]
        assert all(out.graph.degree(v) == 2 for v in new_ids)
        assert not out.modulator
        assert pathwidth_exact(out.graph)[0] == pathwidth_exact(g)[0]

    def test_degree_above_k_plus_one_decides_no(self):
        g = Graph.from_edges(4, [(0, 1), (0, 2), (0, 3), (2, 3)])
        decided, app = rule7(inst(g, k=1))
        assert decided is None
        assert pathwidth_exact(g)[0] > 1

    def test_claw_center_refused(self):
        assert rule7(inst(star_graph(3), k=5)) is None

    def test_modulator_vertices_refused(self):
        g = Graph.from_edges(4, [(0, 1), (0, 2), (0, 3), (2, 3)])
        assert rule7(inst(g, mod={0}, k=3)) is None

    def test_filter_restricts_sites(self):
        g = Graph.from_edges(4, [(0, 1), (0, 2), (0, 3), (2, 3)])
        assert rule7(inst(g, k=3), vertex_filter=lambda i, v: False) is None

    def test_forced_replacement_at_claw_center_changes_pathwidth(self):
        # The guard exists for a reason: forcing the rewrite through the raw
        # transform at a non-almost-simplicial site turns the claw (pathwidth
        # one) into a six-cycle (pathwidth two).
        claw = star_graph(3)
        rewritten, _, _ = replace_almost_simplicial(claw, 0)
        assert rewritten.n == 6
        assert pathwidth_exact(claw)[0] == 1
        assert pathwidth_exact(rewritten)[0] == 2


class TestExhaustiveReduce:
    def test_edgeless_graph_empties(self):
        outcome = exhaustive_reduce(inst(Graph.from_edges(4, [])))
        assert isinstance(outcome, Reduced)
        assert outcome.instance.graph.n == 0
        assert [a.rule for a in outcome.trace] == [RuleId.R1] * 4

    def test_star_with_r1_r2_only(self):
        outcome = exhaustive_reduce(inst(star_graph(5), mod={0}, k=1),
                                    enabled={RuleId.R1, RuleId.R2})
        assert isinstance(outcome, Reduced)
        assert outcome.instance.graph.n == 2
        assert len(outcome.trace) == 4

    def test_decided_no_via_rule7(self):
        g = Graph.from_edges(5, [(0, 1), (0, 2), (0, 3), (0, 4),
                                 (2, 3), (2, 4), (3, 4)])
        outcome = exhaustive_reduce(inst(g, k=1), enabled={RuleId.R7})
        assert isinstance(outcome, DecidedNo)

    def test_traces_are_deterministic(self):
        rng = random.Random(42)
        for _ in range(20):
            base, _ = sitegen.applicable_site(RuleId.R2, rng)
            first = exhaustive_reduce(base)
            second = exhaustive_reduce(base)
            assert type(first) is type(second)
            assert first.trace == second.trace

    def test_budget_violation_raises_diagnostic(self):
        with pytest.raises(BudgetExceededError):
            exhaustive_reduce(inst(Graph.from_edges(6, []), k=0), budget_constant=0)

    def test_answer_preserved_end_to_end(self):
        rng = random.Random(7)
        for _ in range(40):
            base = sitegen.applicable_r6(rng) if rng.random() < 0.2 else \
                sitegen.applicable_r2(rng)
            outcome = exhaustive_reduce(base)
            before = pathwidth_exact(base.graph)[0] <= base.target
            if isinstance(outcome, DecidedNo):
                assert not before
            else:
                after = pathwidth_exact(outcome.instance.graph)[0] <= outcome.instance.target
                assert before == after


class TestSafenessSampled:
    """Small seeded spot-checks per rule; the acceptance suite runs the full
    500-site version."""

    @pytest.mark.parametrize("rule", list(RuleId))
    def test_rule_preserves_answer(self, rule):
        rng = random.Random(hash(rule.value) & 0xFFFF)
        for _ in range(40):
            before, step = sitegen.applicable_site(rule, rng)
            k = before.target
            pw_before = pathwidth_exact(before.graph)[0]
            if rule is RuleId.R7 and step[0] is None:
                assert pw_before > k
                continue
            after = step[0]
            pw_after = pathwidth_exact(after.graph)[0]
            assert (pw_before <= k) == (pw_after <= after.target)
            if rule in (RuleId.R5, RuleId.R7):
                assert pw_before == pw_after

    def test_rule4_never_links_two_outsiders(self):
        rng = random.Random(11)
        for _ in range(40):
            before, step = sitegen.applicable_site(RuleId.R4, rng)
            after, app = step
            (a, b), = app.added_edges
            assert (before.graph.id_of(a) in before.modulator
                    or before.graph.id_of(b) in before.modulator)

    def test_k_and_modulator_stable_outside_r1_r2_r3(self):
        rng = random.Random(12)
        for rule in (RuleId.R4, RuleId.R5, RuleId.R6, RuleId.R7):
            for _ in range(20):
                before, step = sitegen.applicable_site(rule, rng)
                if step[0] is None:
                    continue
                after = step[0]
                assert after.target == before.target
                assert after.modulator_labels() == before.modulator_labels()


def degree3_count(g: Graph) -> int:
    return sum(1 for v in g.vertices() if g.degree(v) >= 3)


class TestDegreeThreeAccounting:
    """No rule increases the number of degree->=3 vertices, guarded for the
    two rules that can touch low-degree vertices: R4 counts only when both
    endpoints already had degree >= 3, R7 only when all neighbors of the
    replaced vertex did."""

    @pytest.mark.parametrize("rule", [RuleId.R1, RuleId.R2, RuleId.R3,
                                      RuleId.R5, RuleId.R6])
    def test_removal_rules_never_increase(self, rule):
        rng = random.Random(hash(rule.value) & 0xFFF)
        for _ in range(30):
            before, (after, _) = sitegen.applicable_site(rule, rng)
            assert degree3_count(after.graph) <= degree3_count(before.graph)

    def test_rule4_guarded(self):
        rng = random.Random(13)
        for _ in range(30):
            before, (after, app) = sitegen.applicable_site(RuleId.R4, rng)
            u, v = (before.graph.id_of(l) for l in app.added_edges[0])
            if min(before.graph.degree(u), before.graph.degree(v)) >= 3:
                assert degree3_count(after.graph) <= degree3_count(before.graph)

    def test_rule7_guarded(self):
        rng = random.Random(14)
        for _ in range(30):
            before, step = sitegen.applicable_site(RuleId.R7, rng)
            if step[0] is None:
                continue
            v = before.graph.id_of(step[1].site[0])
            if all(before.graph.degree(u) >= 3 for u in before.graph.adj[v]):
                assert degree3_count(step[0].graph) <= degree3_count(before.graph)


class TestTraceRecords:
    def test_removed_and_added_disjoint(self):
        with pytest.raises(ValueError):
            RuleApplication(RuleId.R7, site=(0,), removed=(1,), added_vertices=(1,))

    def test_sites_reference_existing_labels(self):
        rng = random.Random(15)
        for rule in RuleId:
            before, (_, app) = sitegen.applicable_site(rule, rng)
            for label in app.site:
                assert label in before.graph.labels
