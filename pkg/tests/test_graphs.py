"""Graph machinery: parsing, subgraphs, ancestors, components, moral
graphs, chain-graph validity."""

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from covgraph import (
    GraphParseError,
    MixedGraph,
    ancestors,
    bit,
    connectivity_components,
    format_graph,
    induced_subgraph,
    is_chain_graph,
    iter_nodes,
    mask_of,
    moral_graph,
    parse_graph,
    submasks,
)
from oracles import dag_is_acyclic_dfs, has_semi_directed_cycle, naive_ancestors
from strategies import dags, mixed_graphs, ugs


def cycle4():
    return MixedGraph.ug("ABCD", [("A", "B"), ("B", "C"), ("C", "D"), ("D", "A")])


class TestMaskHelpers:
    def test_iter_nodes_ascending(self):
        assert list(iter_nodes(0b101101)) == [0, 2, 3, 5]

    def test_mask_of_roundtrip(self):
        assert mask_of([0, 2, 3, 5]) == 0b101101
        assert mask_of([]) == 0

    def test_submasks_cover_powerset(self):
        subs = list(submasks(0b1010))
        assert sorted(subs) == [0b0000, 0b0010, 0b1000, 0b1010]


class TestParse:
    def test_undirected_path(self):
        g = parse_graph("A -- B\nB -- C")
        assert g.n == 3
        assert g.labels == ("A", "B", "C")
        assert g.undirected == frozenset({(0, 1), (1, 2)})
        assert not g.directed

    def test_single_arrow(self):
        g = parse_graph("A -> B")
        assert g.directed == frozenset({(0, 1)})
        assert not g.undirected

    def test_self_loop_rejected(self):
        with pytest.raises(GraphParseError, match="line 1"):
            parse_graph("A -- A")

    def test_duplicate_edge_rejected(self):
        with pytest.raises(GraphParseError, match="line 2"):
            parse_graph("A -- B\nB -- A")

    def test_mixed_pair_rejected(self):
        with pytest.raises(GraphParseError, match="duplicate edge"):
            parse_graph("A -- B\nA -> B")

    def test_unknown_statement_names_line(self):
        with pytest.raises(GraphParseError, match="line 3"):
            parse_graph("A -- B\n# fine\nA => B")

    def test_comments_blanks_and_declarations(self):
        g = parse_graph("# header\nnode C\n\nA -- B  # tail comment\n")
        assert g.labels == ("C", "A", "B")
        assert g.undirected == frozenset({(1, 2)})

    def test_node_capacity(self):
        text = "\n".join(f"node N{i}" for i in range(65))
        with pytest.raises(GraphParseError, match="line 65"):
            parse_graph(text)

    @given(mixed_graphs())
    def test_format_roundtrip(self, g):
        assert parse_graph(format_graph(g)) == g


class TestInducedSubgraph:
    def test_cycle_to_path(self):
        g = cycle4()
        sub = induced_subgraph(g, mask_of([0, 1, 2]))
        assert sub.labels == ("A", "B", "C")
        assert sub.undirected == frozenset({(0, 1), (1, 2)})

    def test_identity_and_empty(self):
        g = cycle4()
        assert induced_subgraph(g, g.full_mask) == g
        assert induced_subgraph(g, 0).n == 0

    def test_out_of_range_rejected(self):
        with pytest.raises(ValueError):
            induced_subgraph(cycle4(), 1 << 10)

    @given(mixed_graphs(), st.data())
    def test_edges_are_double_filtered(self, g, data):
        keep = data.draw(st.integers(0, g.full_mask))
        sub = induced_subgraph(g, keep)
        kept_labels = {g.labels[v] for v in iter_nodes(keep)}
        expect_und = {
            frozenset((g.labels[i], g.labels[j]))
            for i, j in g.undirected
            if g.labels[i] in kept_labels and g.labels[j] in kept_labels
        }
        got_und = {
            frozenset((sub.labels[i], sub.labels[j])) for i, j in sub.undirected
        }
        assert got_und == expect_und
        expect_dir = {
            (g.labels[i], g.labels[j])
            for i, j in g.directed
            if g.labels[i] in kept_labels and g.labels[j] in kept_labels
        }
        assert {(sub.labels[i], sub.labels[j]) for i, j in sub.directed} == expect_dir


class TestAncestors:
    def test_directed_chain(self):
        g = MixedGraph.dag("ABC", [("A", "B"), ("B", "C")])
        assert ancestors(g, bit(2)) == mask_of([0, 1, 2])
        assert ancestors(g, bit(0)) == bit(0)

    def test_ug_reaches_whole_component(self):
        g = cycle4()
        assert ancestors(g, bit(0)) == g.full_mask

    def test_empty(self):
        assert ancestors(cycle4(), 0) == 0

    @given(mixed_graphs(), st.data())
    def test_matches_bruteforce_and_is_monotone_idempotent(self, g, data):
        small = data.draw(st.integers(0, g.full_mask))
        large = small | data.draw(st.integers(0, g.full_mask))
        got = ancestors(g, small)
        assert got == mask_of(naive_ancestors(g, set(iter_nodes(small))))
        assert got | ancestors(g, large) == ancestors(g, large)
        assert ancestors(g, got) == got


class TestComponents:
    def test_dag_gives_singletons(self):
        g = MixedGraph.dag("ABC", [("A", "B"), ("B", "C")])
        assert connectivity_components(g) == [bit(0), bit(1), bit(2)]

    def test_cycle_single_component(self):
        assert connectivity_components(cycle4()) == [cycle4().full_mask]

    def test_chain_graph_mix(self):
        g = MixedGraph(3, ("A", "B", "C"), frozenset({(0, 1)}), frozenset({(1, 2)}))
        assert connectivity_components(g) == [mask_of([0, 1]), bit(2)]

    @given(mixed_graphs())
    def test_partition(self, g):
        comps = connectivity_components(g)
        union = 0
        for comp in comps:
            assert comp
            assert union & comp == 0
            union |= comp
        assert union == g.full_mask


class TestMoralGraph:
    def test_collider_marries_parents(self):
        g = MixedGraph.dag("ABC", [("A", "B"), ("C", "B")])
        m = moral_graph(g)
        assert m.undirected == frozenset({(0, 1), (1, 2), (0, 2)})

    def test_chain_adds_nothing(self):
        g = MixedGraph.dag("ABC", [("A", "B"), ("B", "C")])
        assert moral_graph(g).undirected == frozenset({(0, 1), (1, 2)})

    @given(ugs())
    def test_identity_on_ugs(self, g):
        assert moral_graph(g) == g

    def test_component_parents_married(self):
        # both arrows point into the same undirected component
        g = MixedGraph(4, ("A", "B", "C", "D"),
                       frozenset({(2, 3)}), frozenset({(0, 2), (1, 3)}))
        m = moral_graph(g)
        assert (0, 1) in m.undirected


class TestChainGraph:
    def test_dag_is_chain_graph(self):
        assert is_chain_graph(MixedGraph.dag("ABC", [("A", "B"), ("B", "C")]))

    def test_two_cycle(self):
        g = MixedGraph(2, ("A", "B"), frozenset(), frozenset({(0, 1), (1, 0)}))
        assert not is_chain_graph(g)

    def test_semi_directed_cycle(self):
        g = MixedGraph(3, ("A", "B", "C"),
                       frozenset({(0, 1), (0, 2)}), frozenset({(1, 2)}))
        assert not is_chain_graph(g)

    @given(dags())
    def test_matches_acyclicity_on_dags(self, g):
        assert is_chain_graph(g) == dag_is_acyclic_dfs(g)

    @given(mixed_graphs())
    @settings(max_examples=200)
    def test_matches_semi_directed_cycle_search(self, g):
        assert is_chain_graph(g) == (not has_semi_directed_cycle(g))


class TestMixedGraphValidation:
    def test_rejects_duplicate_labels(self):
        with pytest.raises(ValueError):
            MixedGraph(2, ("A", "A"))

    def test_rejects_self_loop(self):
        with pytest.raises(ValueError):
            MixedGraph(2, ("A", "B"), frozenset({(1, 1)}))

    def test_rejects_conflicting_edges(self):
        with pytest.raises(ValueError):
            MixedGraph(2, ("A", "B"), frozenset({(0, 1)}), frozenset({(1, 0)}))

    def test_rejects_unnormalized_pair(self):
        with pytest.raises(ValueError):
            MixedGraph(2, ("A", "B"), frozenset({(1, 0)}))

    def test_node_set_resolution(self):
        g = cycle4()
        assert g.node_set(["A", "C"]) == mask_of([0, 2])
        with pytest.raises(ValueError, match="unknown node label"):
            g.node_set(["E"])
