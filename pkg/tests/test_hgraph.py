import pytest

from mimred.graph_core import Graph
from mimred.hgraph import (
    HRepresentation,
    MultiEdge,
    MultiGraph,
    intersection_graph,
    linear_order_from_representation,
    subdivide_edge,
    subdivide_uniform,
    validate_representation,
)
from mimred.reduction import build_h_pattern, build_models, pad_instance
from mimred.widths import mimw_of_order


def k2_multigraph():
    return MultiGraph.build(["a", "b"], [("e", "a", "b")])


def double_edge():
    return MultiGraph.build(["u", "v"], [("e1", "u", "v"), ("e2", "u", "v")])


def full_instance(k, p):
    parts = [[f"v[{i}]_{s}" for s in range(1, p + 1)] for i in range(1, k + 1)]
    edges = [
        (a, b)
        for i in range(k)
        for j in range(i + 1, k)
        for a in parts[i]
        for b in parts[j]
    ]
    g = Graph.build([v for part in parts for v in part], edges)
    return pad_instance(g, parts)


class TestMultiGraph:
    def test_parallel_edges_allowed(self):
        h = double_edge()
        assert h.degree("u") == 2

    def test_rejects_duplicate_edge_id(self):
        with pytest.raises(ValueError):
            MultiGraph.build(["a", "b"], [("e", "a", "b"), ("e", "b", "a")])

    def test_rejects_self_loop(self):
        with pytest.raises(ValueError):
            MultiGraph.build(["a"], [("e", "a", "a")])


class TestSubdivideEdge:
    def test_k2_becomes_path(self):
        h = subdivide_edge(k2_multigraph(), "e", "x")
        assert set(h.nodes) == {"a", "b", "x"}
        assert h.adjacency["x"] == frozenset({"a", "b"})
        assert not any(e.u == "a" and e.v == "b" for e in h.edges)

    def test_parallel_copy_untouched(self):
        h = subdivide_edge(double_edge(), "e1", "x")
        assert len(h.edges) == 3
        untouched = [e for e in h.edges if e.id == "e2"]
        assert untouched and {untouched[0].u, untouched[0].v} == {"u", "v"}

    def test_four_parallel_edges_p_times(self):
        h = MultiGraph.build(["u", "w"], [(f"e{i}", "u", "w") for i in range(4)])
        p = 3
        out = subdivide_uniform(h, p)
        assert len(out.nodes) == 2 + 4 * p

    def test_missing_edge(self):
        with pytest.raises(ValueError):
            subdivide_edge(k2_multigraph(), "nope", "x")

    def test_duplicate_node(self):
        with pytest.raises(ValueError):
            subdivide_edge(k2_multigraph(), "e", "a")


class TestSubdivideUniform:
    def test_k2_twice_gives_path_on_four(self):
        h = subdivide_uniform(k2_multigraph(), 2)
        assert len(h.nodes) == 4
        assert [e.id for e in h.edges] == ["e.0", "e.1", "e.2"]

    def test_pattern_node_count(self):
        for p in (1, 2, 3):
            h = subdivide_uniform(build_h_pattern(2), p)
            assert len(h.nodes) == 3 + 4 * p

    def test_edge_count(self):
        base = build_h_pattern(3)
        for times in (1, 2):
            h = subdivide_uniform(base, times)
            assert len(h.edges) == (times + 1) * len(base.edges)

    def test_degrees_preserved_and_new_nodes_degree_two(self):
        base = build_h_pattern(3)
        h = subdivide_uniform(base, 2)
        for node in base.nodes:
            assert h.degree(node) == base.degree(node)
        for node in h.nodes:
            if node not in base.node_set:
                assert h.degree(node) == 2


class TestIntersectionGraph:
    def test_shared_node_gives_edge(self):
        host = subdivide_uniform(k2_multigraph(), 2)
        rep = HRepresentation(host, {"A": frozenset({"a", "e_1"}), "B": frozenset({"e_1", "e_2"})})
        g = intersection_graph(rep)
        assert g.edges == frozenset({("A", "B")})

    def test_disjoint_models_no_edge(self):
        host = subdivide_uniform(k2_multigraph(), 2)
        rep = HRepresentation(host, {"A": frozenset({"a"}), "B": frozenset({"b"})})
        assert intersection_graph(rep).edges == frozenset()

    def test_three_overlapping_models_triangle(self):
        host = subdivide_uniform(k2_multigraph(), 3)
        mid = "e_2"
        rep = HRepresentation(
            host,
            {
                "A": frozenset({"e_1", mid}),
                "B": frozenset({mid}),
                "C": frozenset({mid, "e_3"}),
            },
        )
        g = intersection_graph(rep)
        assert len(g.edges) == 3

    def test_disconnected_model_raises_naming_vertex(self):
        host = subdivide_uniform(k2_multigraph(), 2)
        rep = HRepresentation(host, {"bad": frozenset({"a", "b"}), "ok": frozenset({"e_1"})})
        with pytest.raises(ValueError, match="bad"):
            intersection_graph(rep)


class TestValidateRepresentation:
    def test_reduction_models_are_valid(self):
        rep = build_models(full_instance(2, 2))
        assert validate_representation(rep) == []

    def test_split_model_one_violation(self):
        host = subdivide_uniform(k2_multigraph(), 2)
        rep = HRepresentation(host, {"split": frozenset({"a", "b"})})
        assert len(validate_representation(rep)) == 1

    def test_unknown_node_one_violation(self):
        host = subdivide_uniform(k2_multigraph(), 2)
        rep = HRepresentation(host, {"ghost": frozenset({"zz"})})
        assert len(validate_representation(rep)) == 1

    def test_empty_model_one_violation(self):
        host = subdivide_uniform(k2_multigraph(), 2)
        rep = HRepresentation(host, {"empty": frozenset()})
        assert len(validate_representation(rep)) == 1


class TestLinearOrder:
    def test_unit_models_along_a_path(self):
        host = subdivide_uniform(k2_multigraph(), 3)
        # consecutive overlapping 2-node models along the path a e_1 e_2 e_3 b
        rep = HRepresentation(
            host,
            {
                "m1": frozenset({"a", "e_1"}),
                "m2": frozenset({"e_1", "e_2"}),
                "m3": frozenset({"e_2", "e_3"}),
                "m4": frozenset({"e_3", "b"}),
            },
        )
        order = linear_order_from_representation(rep)
        assert order == ("m1", "m2", "m3", "m4")
        assert mimw_of_order(intersection_graph(rep), order) == 1

    def test_reduction_representation_bound(self):
        inst = full_instance(2, 2)
        rep = build_models(inst)
        order = linear_order_from_representation(rep)
        core = intersection_graph(rep)
        assert mimw_of_order(core, order) <= 2 * len(build_h_pattern(2).edges)

    def test_disjoint_unit_models(self):
        host = subdivide_uniform(k2_multigraph(), 2)
        rep = HRepresentation(host, {"A": frozenset({"a"}), "B": frozenset({"b"})})
        order = linear_order_from_representation(rep)
        assert mimw_of_order(intersection_graph(rep), order) == 0

    def test_determinism(self):
        rep = build_models(full_instance(2, 3))
        assert linear_order_from_representation(rep) == linear_order_from_representation(rep)

    def test_invalid_representation_rejected(self):
        host = subdivide_uniform(k2_multigraph(), 2)
        rep = HRepresentation(host, {"bad": frozenset({"a", "b"}), "ok": frozenset({"e_1"})})
        with pytest.raises(ValueError):
            linear_order_from_representation(rep)
