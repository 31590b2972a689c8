import random
from itertools import permutations

import pytest

import brute
from pwkit.decompositions import (
    EliminationOrdering,
    validate_path_decomposition,
)
from pwkit.errors import CapExceededError, PwkitError
from pwkit.generators import (
    clique,
    cycle_graph,
    disjoint_union,
    path_graph,
    random_graph,
    random_weighted_cobipartite,
    random_weighted_graph,
    star_graph,
)
from pwkit.graph import Graph, WeightedGraph, contract_edge, delete_vertex
from pwkit.oracles import (
    cutwidth_exact,
    elimination_cost,
    layout_cutwidth,
    ordering_width,
    pathwidth_exact,
    treewidth_exact,
    weighted_treewidth_exact,
)


class TestPathwidth:
    def test_claw(self):
        assert pathwidth_exact(star_graph(3))[0] == 1

    def test_six_cycle(self):
        assert pathwidth_exact(cycle_graph(6))[0] == 2

    @pytest.mark.parametrize("n", [1, 2, 3, 5])
    def test_cliques(self, n):
        assert pathwidth_exact(clique(n))[0] == n - 1

    def test_empty_graph_convention(self):
        width, pd = pathwidth_exact(Graph.from_edges(0, []))
        assert width == 0 and pd.bags == (frozenset(),)

    def test_certificates_validate_at_width(self):
        rng = random.Random(1)
        for _ in range(80):
            g = random_graph(rng, rng.randint(1, 8), rng.uniform(0.1, 0.9))
            width, pd = pathwidth_exact(g)
            assert validate_path_decomposition(g, pd)
            assert pd.width() == width

    def test_matches_permutation_brute_force(self):
        rng = random.Random(2)
        for _ in range(60):
            g = random_graph(rng, rng.randint(1, 7), rng.uniform(0.1, 0.9))
            assert pathwidth_exact(g)[0] == brute.vertex_separation(g)

    def test_disjoint_union_takes_max(self):
        g = disjoint_union(cycle_graph(6), star_graph(3), clique(4))
        assert pathwidth_exact(g)[0] == 3

    def test_minor_monotone(self):
        rng = random.Random(3)
        for _ in range(60):
            g = random_graph(rng, rng.randint(2, 7), rng.uniform(0.3, 0.9))
            base = pathwidth_exact(g)[0]
            assert pathwidth_exact(delete_vertex(g, rng.randrange(g.n)))[0] <= base
            if g.edge_count:
                u, v = rng.choice(g.edges())
                assert pathwidth_exact(contract_edge(g, u, v))[0] <= base

    def test_cap_enforced(self):
        with pytest.raises(CapExceededError):
            pathwidth_exact(clique(6), cap=5)


class TestTreewidth:
    def test_k4(self):
        assert treewidth_exact(clique(4))[0] == 3

    def test_trees_have_treewidth_one(self):
        assert treewidth_exact(path_graph(6))[0] == 1
        assert treewidth_exact(star_graph(4))[0] == 1

    def test_six_cycle(self):
        assert treewidth_exact(cycle_graph(6))[0] == 2

    def test_matches_ordering_brute_force(self):
        rng = random.Random(4)
        for _ in range(50):
            g = random_graph(rng, rng.randint(1, 7), rng.uniform(0.1, 0.9))
            assert treewidth_exact(g)[0] == brute.treewidth(g)

    def test_certificate_achieves_width(self):
        rng = random.Random(5)
        for _ in range(60):
            g = random_graph(rng, rng.randint(1, 8), rng.uniform(0.1, 0.9))
            width, order = treewidth_exact(g)
            assert ordering_width(g, order.order) == width

    def test_pathwidth_at_least_treewidth(self):
        rng = random.Random(6)
        for _ in range(60):
            g = random_graph(rng, rng.randint(1, 9), rng.uniform(0.1, 0.9))
            assert pathwidth_exact(g)[0] >= treewidth_exact(g)[0]


class TestWeightedTreewidth:
    def test_unit_weight_tree_is_two(self):
        for g in (path_graph(5), star_graph(4)):
            wg = WeightedGraph(g, tuple([1] * g.n))
            assert weighted_treewidth_exact(wg)[0] == 2

    def test_single_heavy_vertex(self):
        wg = WeightedGraph(Graph.from_edges(1, []), (5,))
        assert weighted_treewidth_exact(wg)[0] == 5

    def test_unit_weights_equal_treewidth_plus_one(self):
        rng = random.Random(7)
        for _ in range(50):
            g = random_graph(rng, rng.randint(1, 8), rng.uniform(0.1, 0.9))
            wg = WeightedGraph(g, tuple([1] * g.n))
            assert weighted_treewidth_exact(wg)[0] == treewidth_exact(g)[0] + 1

    def test_matches_ordering_brute_force(self):
        rng = random.Random(8)
        for _ in range(40):
            wg = random_weighted_graph(rng, rng.randint(1, 6))
            assert weighted_treewidth_exact(wg)[0] == brute.weighted_treewidth(wg)

    def test_minimum_over_permutations_of_elimination_cost(self):
        rng = random.Random(9)
        for _ in range(25):
            wg = random_weighted_graph(rng, rng.randint(1, 5))
            best = min(
                elimination_cost(wg, EliminationOrdering(p))
                for p in permutations(range(wg.graph.n))
            )
            assert weighted_treewidth_exact(wg)[0] == best

    def test_fast_path_agrees_with_general_dp(self):
        rng = random.Random(10)
        for _ in range(50):
            wg, partition = random_weighted_cobipartite(rng, rng.randint(2, 10))
            general = weighted_treewidth_exact(wg)[0]
            fast, order = weighted_treewidth_exact(wg, cobipartite_partition=partition)
            assert fast == general
            assert elimination_cost(wg, order) == fast

    def test_fast_path_rejects_noncliques(self):
        wg = WeightedGraph(path_graph(4), (1, 1, 1, 1))
        with pytest.raises(PwkitError):
            weighted_treewidth_exact(wg, cobipartite_partition=([0, 2], [1, 3]))

    def test_fast_path_cap_is_on_side_a(self):
        wg, partition = random_weighted_cobipartite(random.Random(11), 8)
        with pytest.raises(CapExceededError):
            weighted_treewidth_exact(wg, cobipartite_partition=partition,
                                     cap=len(partition[0]) - 1)


class TestEliminationCost:
    def test_unit_triangle_any_order(self):
        wg = WeightedGraph(clique(3), (1, 1, 1))
        for p in permutations(range(3)):
            assert elimination_cost(wg, EliminationOrdering(p)) == 3

    def test_unit_path_endpoint_first(self):
        wg = WeightedGraph(path_graph(3), (1, 1, 1))
        assert elimination_cost(wg, EliminationOrdering((0, 1, 2))) == 2

    def test_requires_permutation(self):
        wg = WeightedGraph(clique(3), (1, 1, 1))
        with pytest.raises(ValueError):
            elimination_cost(wg, EliminationOrdering((0, 1)))


class TestCutwidth:
    def test_path(self):
        assert cutwidth_exact(path_graph(3))[0] == 1

    def test_four_cycle_matches_brute_force(self):
        assert cutwidth_exact(cycle_graph(4))[0] == brute.cutwidth(cycle_graph(4)) == 2

    def test_k4_matches_brute_force(self):
        assert cutwidth_exact(clique(4))[0] == brute.cutwidth(clique(4)) == 4

    def test_random_graphs_match_brute_force(self):
        rng = random.Random(12)
        for _ in range(50):
            g = random_graph(rng, rng.randint(1, 7), rng.uniform(0.1, 0.9))
            assert cutwidth_exact(g)[0] == brute.cutwidth(g)

    def test_certificate_achieves_width(self):
        rng = random.Random(13)
        for _ in range(50):
            g = random_graph(rng, rng.randint(1, 8), rng.uniform(0.1, 0.9))
            width, layout = cutwidth_exact(g)
            assert layout_cutwidth(g, layout) == width

    def test_cap_enforced(self):
        with pytest.raises(CapExceededError):
            cutwidth_exact(clique(8), cap=7)


class TestDeterminism:
    def test_solvers_are_reproducible(self):
        rng = random.Random(14)
        for _ in range(10):
            g = random_graph(rng, rng.randint(2, 7), 0.5)
            assert pathwidth_exact(g) == pathwidth_exact(g)
            assert treewidth_exact(g) == treewidth_exact(g)
            assert cutwidth_exact(g) == cutwidth_exact(g)
