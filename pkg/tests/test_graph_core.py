import random
from itertools import combinations

import pytest

from mimred.graph_core import (
    BipartiteCutGraph,
    Cut,
    Graph,
    cut_graph,
    induced_subgraph,
    is_forest,
    max_induced_matching,
    mim_value,
)


def brute_max_induced_matching(cross_edges):
    """Independent oracle: enumerate all subsets of cross edges directly."""
    cross = set(cross_edges)
    for size in range(len(cross_edges), 0, -1):
        for combo in combinations(cross_edges, size):
            lefts = [u for u, _ in combo]
            rights = [v for _, v in combo]
            if len(set(lefts)) != size or len(set(rights)) != size:
                continue
            ok = True
            for (u1, v1), (u2, v2) in combinations(combo, 2):
                if (u1, v2) in cross or (u2, v1) in cross:
                    ok = False
                    break
            if ok:
                return size
    return 0


def random_graph(rng, n, density=0.5, prefix="v"):
    verts = [f"{prefix}{i}" for i in range(n)]
    edges = [(a, b) for a, b in combinations(verts, 2) if rng.random() < density]
    return Graph.build(verts, edges)


TRIANGLE = Graph.build(["a", "b", "c"], [("a", "b"), ("b", "c"), ("a", "c")])
C4 = Graph.build(["a", "b", "c", "d"], [("a", "b"), ("b", "c"), ("c", "d"), ("a", "d")])
PATH4 = Graph.build(["a", "b", "c", "d"], [("a", "b"), ("b", "c"), ("c", "d")])
K33 = Graph.build(
    ["l1", "l2", "l3", "r1", "r2", "r3"],
    [(a, b) for a in ("l1", "l2", "l3") for b in ("r1", "r2", "r3")],
)


class TestGraphBuild:
    def test_rejects_self_loop(self):
        with pytest.raises(ValueError):
            Graph.build(["a"], [("a", "a")])

    def test_rejects_unknown_endpoint(self):
        with pytest.raises(ValueError):
            Graph.build(["a"], [("a", "b")])

    def test_rejects_duplicate_vertex(self):
        with pytest.raises(ValueError):
            Graph.build(["a", "a"], [])

    def test_canonicalizes_and_dedups_edges(self):
        g = Graph.build(["a", "b"], [("b", "a"), ("a", "b")])
        assert g.edges == frozenset({("a", "b")})


class TestInducedSubgraph:
    def test_triangle_pair(self):
        sub = induced_subgraph(TRIANGLE, {"a", "b"})
        assert sub.edges == frozenset({("a", "b")})

    def test_empty_selection(self):
        sub = induced_subgraph(TRIANGLE, set())
        assert sub.vertices == () and sub.edges == frozenset()

    def test_path_with_gap(self):
        # a-b-c-d restricted to {a, c, d}: only cd survives, a is isolated
        sub = induced_subgraph(PATH4, {"a", "c", "d"})
        assert set(sub.vertices) == {"a", "c", "d"}
        assert sub.edges == frozenset({("c", "d")})

    def test_unknown_vertex(self):
        with pytest.raises(ValueError):
            induced_subgraph(TRIANGLE, {"z"})


class TestCutGraph:
    def test_c4_cut(self):
        b = cut_graph(C4, Cut(frozenset({"a", "b"}), frozenset({"c", "d"})))
        assert b.cross_edges == (("a", "d"), ("b", "c"))

    def test_empty_side(self):
        b = cut_graph(C4, Cut(frozenset({"a", "b", "c", "d"}), frozenset()))
        assert b.cross_edges == ()

    def test_star_from_one_vertex(self):
        b = cut_graph(TRIANGLE, Cut(frozenset({"a"}), frozenset({"b", "c"})))
        assert b.cross_edges == (("a", "b"), ("a", "c"))

    def test_rejects_non_partition(self):
        with pytest.raises(ValueError):
            cut_graph(C4, Cut(frozenset({"a"}), frozenset({"b", "c"})))


class TestMaxInducedMatching:
    def test_c4_cut_is_two(self):
        b = cut_graph(C4, Cut(frozenset({"a", "b"}), frozenset({"c", "d"})))
        assert max_induced_matching(b) == 2
        assert brute_max_induced_matching(b.cross_edges) == 2

    def test_no_cross_edges(self):
        assert max_induced_matching(BipartiteCutGraph(frozenset(), frozenset(), ())) == 0

    def test_complete_bipartite_is_one(self):
        b = cut_graph(K33, Cut(frozenset({"l1", "l2", "l3"}), frozenset({"r1", "r2", "r3"})))
        assert max_induced_matching(b) == 1
        assert brute_max_induced_matching(b.cross_edges) == 1

    def test_agrees_with_brute_force_on_random_cuts(self):
        rng = random.Random(2024)
        for trial in range(120):
            n = rng.randint(2, 8)
            g = random_graph(rng, n, density=rng.choice([0.3, 0.5, 0.8]))
            split = frozenset(v for v in g.vertices if rng.random() < 0.5)
            b = cut_graph(g, Cut(split, g.vertex_set - split))
            if len(b.cross_edges) > 14:
                continue
            assert max_induced_matching(b) == brute_max_induced_matching(b.cross_edges)


class TestMimValue:
    def test_c4(self):
        assert mim_value(C4, {"a", "b"}) == 2

    def test_full_and_empty_side(self):
        assert mim_value(C4, C4.vertex_set) == 0
        assert mim_value(C4, set()) == 0

    def test_k33_color_class(self):
        assert mim_value(K33, {"l1", "l2", "l3"}) == 1

    def test_symmetry_across_the_cut(self):
        rng = random.Random(11)
        for _ in range(40):
            g = random_graph(rng, rng.randint(2, 8))
            side = frozenset(v for v in g.vertices if rng.random() < 0.5)
            assert mim_value(g, side) == mim_value(g, g.vertex_set - side)

    def test_unknown_vertex(self):
        with pytest.raises(ValueError):
            mim_value(C4, {"nope"})


class TestIsForest:
    def test_triangle(self):
        assert not is_forest(TRIANGLE, {"a", "b", "c"})

    def test_empty_set(self):
        assert is_forest(TRIANGLE, set())

    def test_c4_minus_one(self):
        assert is_forest(C4, {"a", "b", "c"})

    def test_monotone_under_removal(self):
        rng = random.Random(5)
        for _ in range(40):
            g = random_graph(rng, rng.randint(2, 8))
            xs = [v for v in g.vertices if rng.random() < 0.7]
            if not is_forest(g, xs):
                continue
            smaller = [v for v in xs if rng.random() < 0.5]
            assert is_forest(g, smaller)


class TestDegenerateInputs:
    def test_empty_graph_everywhere(self):
        g = Graph.build([], [])
        assert induced_subgraph(g, set()).vertices == ()
        assert mim_value(g, set()) == 0
        assert is_forest(g, set())

    def test_single_vertex_everywhere(self):
        g = Graph.build(["solo"], [])
        assert mim_value(g, {"solo"}) == 0
        assert is_forest(g, {"solo"})
        assert induced_subgraph(g, {"solo"}).vertices == ("solo",)
