import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import brute
from pwkit.generators import (
    clique,
    complete_bipartite,
    cycle_graph,
    path_graph,
    random_graph,
    star_graph,
)
from pwkit.graph import (
    Graph,
    Instance,
    WeightedGraph,
    add_edge,
    add_vertex,
    contract_edge,
    count_internally_disjoint_paths,
    delete_vertex,
    delete_vertices,
    induced_subgraph,
    is_simplicial,
    simplicial_components,
    special_neighbors,
)


@st.composite
def small_graphs(draw):
    n = draw(st.integers(min_value=0, max_value=7))
    pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
    edges = [p for p in pairs if draw(st.booleans())]
    return Graph.from_edges(n, edges)


class TestGraphBasics:
    def test_rejects_self_loop(self):
        with pytest.raises(ValueError):
            Graph.from_edges(2, [(0, 0)])

    def test_rejects_asymmetric_adjacency(self):
        with pytest.raises(ValueError):
            Graph((frozenset({1}), frozenset()), (0, 1))

    def test_rejects_duplicate_labels(self):
        with pytest.raises(ValueError):
            Graph.from_edges(2, [], labels=("a", "a"))

    def test_edges_and_degrees(self):
        g = cycle_graph(4)
        assert g.edge_count == 4
        assert all(g.degree(v) == 2 for v in g.vertices())

    def test_label_lookup(self):
        g = Graph.from_edges(2, [(0, 1)], labels=("x", "y"))
        assert g.id_of("y") == 1
        with pytest.raises(KeyError):
            g.id_of("z")


class TestMutations:
    def test_delete_from_triangle_leaves_an_edge(self):
        g = delete_vertex(clique(3), 0)
        assert (g.n, g.edge_count) == (2, 1)
        assert g.labels == (1, 2)

    def test_delete_single_vertex_gives_empty_graph(self):
        g = delete_vertex(Graph.from_edges(1, []), 0)
        assert g.n == 0

    def test_delete_from_cycle_gives_path(self):
        g = delete_vertex(cycle_graph(4), 3)
        assert sorted(g.edges()) == [(0, 1), (1, 2)]

    def test_delete_unknown_vertex(self):
        with pytest.raises(ValueError):
            delete_vertex(clique(3), 7)

    def test_contract_path_gives_edge(self):
        g = contract_edge(path_graph(3), 0, 1)
        assert (g.n, g.edge_count) == (2, 1)

    def test_contract_cycle_gives_triangle(self):
        g = contract_edge(cycle_graph(4), 0, 1)
        assert g.n == 3 and g.edge_count == 3

    def test_contract_requires_an_edge(self):
        with pytest.raises(ValueError):
            contract_edge(path_graph(3), 0, 2)

    def test_add_edge_idempotent(self):
        g = path_graph(3)
        assert add_edge(g, 0, 1) == g

    def test_add_vertex_appends(self):
        g = add_vertex(path_graph(2), "new", [0])
        assert g.labels == (0, 1, "new")
        assert g.has_edge(0, 2)

    def test_labels_survive_deletion(self):
        g = Graph.from_edges(4, [(0, 1), (1, 2), (2, 3)], labels=("a", "b", "c", "d"))
        g2 = delete_vertices(g, [1])
        assert g2.labels == ("a", "c", "d")
        assert sorted(g2.edges()) == [(1, 2)]

    @settings(max_examples=60, deadline=None)
    @given(small_graphs(), st.data())
    def test_induced_subgraph_matches_label_structure(self, g, data):
        keep = data.draw(st.sets(st.integers(0, max(0, g.n - 1)), max_size=g.n)) if g.n else set()
        sub = induced_subgraph(g, keep)
        kept_labels = {g.labels[v] for v in keep}
        assert set(sub.labels) == kept_labels
        expected = {
            frozenset((g.labels[u], g.labels[v]))
            for u, v in g.edges()
            if u in keep and v in keep
        }
        got = {frozenset((sub.labels[u], sub.labels[v])) for u, v in sub.edges()}
        assert got == expected


class TestPredicates:
    def test_star_leaf_is_simplicial(self):
        assert is_simplicial(star_graph(3), 1)

    def test_claw_center_is_not_simplicial(self):
        assert not is_simplicial(star_graph(3), 0)

    def test_clique_vertices_are_simplicial(self):
        g = clique(4)
        assert all(is_simplicial(g, v) for v in g.vertices())

    def test_special_neighbors_unique(self):
        # v(0) sees w(1), p(2), q(3); only {p, q} is an edge.
        g = Graph.from_edges(4, [(0, 1), (0, 2), (0, 3), (2, 3)])
        assert special_neighbors(g, 0) == {1}

    def test_special_neighbors_simplicial_degree_two(self):
        g = clique(3)
        assert special_neighbors(g, 0) == {1, 2}

    def test_special_neighbors_claw_center_empty(self):
        assert special_neighbors(star_graph(3), 0) == frozenset()

    @settings(max_examples=60, deadline=None)
    @given(small_graphs())
    def test_simplicial_vs_special_neighbors(self, g):
        # Simplicial always means every neighbor is special; the converse
        # holds except at degree exactly 2, where both neighbors are special
        # regardless of adjacency between them (singletons are cliques).
        for v in g.vertices():
            if g.degree(v) < 1:
                continue
            if is_simplicial(g, v):
                assert special_neighbors(g, v) == g.adj[v]
            elif g.degree(v) != 2:
                assert special_neighbors(g, v) != g.adj[v]
            else:
                assert special_neighbors(g, v) == g.adj[v]

    def test_degree_two_path_center_special_but_not_simplicial(self):
        g = Graph.from_edges(3, [(0, 2), (1, 2)])
        assert not is_simplicial(g, 2)
        assert special_neighbors(g, 2) == {0, 1}


class TestDisjointPaths:
    def test_complete_bipartite_paths(self):
        g = complete_bipartite(2, 5)
        assert count_internally_disjoint_paths(g, 0, 1, 10) == 5

    def test_path_endpoints_single_path(self):
        assert count_internally_disjoint_paths(path_graph(4), 0, 3, 10) == 1

    def test_disconnected_endpoints(self):
        g = Graph.from_edges(4, [(0, 1), (2, 3)])
        assert count_internally_disjoint_paths(g, 0, 2, 10) == 0

    def test_adjacent_endpoints_rejected(self):
        with pytest.raises(ValueError):
            count_internally_disjoint_paths(path_graph(2), 0, 1, 3)

    def test_limit_caps_the_count(self):
        g = complete_bipartite(2, 5)
        assert count_internally_disjoint_paths(g, 0, 1, 3) == 3

    def test_matches_path_packing_enumeration(self):
        rng = random.Random(99)
        checked = 0
        while checked < 60:
            n = rng.randint(3, 7)
            g = random_graph(rng, n, rng.uniform(0.2, 0.8))
            nonadjacent = [(u, v) for u in range(n) for v in range(u + 1, n)
                           if not g.has_edge(u, v)]
            if not nonadjacent:
                continue
            u, v = rng.choice(nonadjacent)
            assert (count_internally_disjoint_paths(g, u, v, n + 1)
                    == brute.max_disjoint_paths(g, u, v))
            checked += 1


class TestSimplicialComponents:
    def test_claw_with_center_modulator(self):
        comps = simplicial_components(star_graph(3), {0})
        assert sorted(comps) == [{1}, {2}, {3}]

    def test_nonclique_neighborhood_disqualifies(self):
        # a(0), b(1) nonadjacent in S; component {2, 3} sees both.
        g = Graph.from_edges(4, [(0, 2), (1, 3), (2, 3)])
        assert simplicial_components(g, {0, 1}) == []

    def test_empty_complement(self):
        assert simplicial_components(clique(3), {0, 1, 2}) == []


class TestInstanceTypes:
    def test_modulator_must_be_subset(self):
        with pytest.raises(ValueError):
            Instance(clique(2), frozenset({5}), 1)

    def test_target_must_be_nonnegative(self):
        with pytest.raises(ValueError):
            Instance(clique(2), frozenset(), -1)

    def test_weights_must_be_positive(self):
        with pytest.raises(ValueError):
            WeightedGraph(clique(2), (1, 0))

    def test_weight_of(self):
        wg = WeightedGraph(clique(3), (2, 3, 4))
        assert wg.weight_of([0, 2]) == 6
        assert wg.total_weight == 9
