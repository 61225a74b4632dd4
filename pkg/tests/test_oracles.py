import random
from itertools import combinations, product

import pytest

from mimred.graph_core import Graph
from mimred.oracles import (
    BudgetExceeded,
    ContractViolation,
    ForestWitness,
    extract_clique,
    is_multicolored_clique,
    solve_fvs,
    solve_mcc,
    solve_mif,
)
from mimred.reduction import build_reduction, pad_instance
from .test_graph_core import random_graph
from .test_hgraph import full_instance

TRIANGLE = Graph.build(["a", "b", "c"], [("a", "b"), ("b", "c"), ("a", "c")])


def acyclic(vertices, edges):
    """Independent acyclicity check by union by size, no path tricks."""
    comp = {v: v for v in vertices}

    def root(v):
        while comp[v] != v:
            v = comp[v]
        return v

    for u, v in edges:
        ru, rv = root(u), root(v)
        if ru == rv:
            return False
        comp[ru] = rv
    return True


def brute_max_forest_size(g):
    """Scan all vertex subsets, checking acyclicity directly."""
    verts = list(g.vertices)
    best = 0
    for mask in range(1 << len(verts)):
        chosen = [verts[i] for i in range(len(verts)) if mask >> i & 1]
        if len(chosen) <= best:
            continue
        inside = set(chosen)
        edges = [e for e in g.edges if e[0] in inside and e[1] in inside]
        if acyclic(chosen, edges):
            best = len(chosen)
    return best


def brute_min_fvs_size(g):
    """Scan all deletion sets directly (not via the complement identity)."""
    verts = list(g.vertices)
    best = len(verts)
    for mask in range(1 << len(verts)):
        removed = {verts[i] for i in range(len(verts)) if mask >> i & 1}
        if len(removed) >= best:
            continue
        kept = [v for v in verts if v not in removed]
        edges = [e for e in g.edges if e[0] not in removed and e[1] not in removed]
        if acyclic(kept, edges):
            best = len(removed)
    return best


class TestSolveMcc:
    def test_single_candidate(self):
        g = Graph.build(["a", "b"], [("a", "b")])
        inst = pad_instance(g, [["a"], ["b"]])
        assert solve_mcc(inst).assignment == ("a", "b")

    def test_no_cross_edges(self):
        g = Graph.build(["a", "b"], [])
        assert solve_mcc(pad_instance(g, [["a"], ["b"]])) is None

    def test_agrees_with_unrestricted_triple_enumeration(self):
        rng = random.Random(99)
        for trial in range(25):
            parts = [[f"c{i}_{s}" for s in range(3)] for i in range(3)]
            verts = [v for part in parts for v in part]
            edges = [
                (a, b)
                for i in range(3)
                for j in range(i + 1, 3)
                for a in parts[i]
                for b in parts[j]
                if rng.random() < 0.4
            ]
            inst = pad_instance(Graph.build(verts, edges), parts)
            brute = any(
                all(inst.graph.has_edge(a, b) for a, b in combinations(triple, 2))
                and len({next(i for i, part in enumerate(parts) if v in part) for v in triple}) == 3
                for triple in combinations(verts, 3)
            )
            witness = solve_mcc(inst)
            assert (witness is not None) == brute
            if witness:
                assert is_multicolored_clique(inst, witness.assignment)


class TestSolveMif:
    def test_triangle_size_two(self):
        w = solve_mif(TRIANGLE, 2)
        assert w is not None and len(w.vertices) == 2

    def test_triangle_size_three(self):
        assert solve_mif(TRIANGLE, 3) is None

    def test_size_zero(self):
        assert solve_mif(TRIANGLE, 0).vertices == frozenset()

    def test_out_of_range(self):
        with pytest.raises(ValueError):
            solve_mif(TRIANGLE, 4)

    def test_agrees_with_subset_enumeration(self):
        rng = random.Random(4242)
        for trial in range(40):
            n = rng.randint(1, 9)
            g = random_graph(rng, n, density=rng.choice([0.2, 0.4, 0.7]))
            best = brute_max_forest_size(g)
            for size in range(n + 1):
                witness = solve_mif(g, size)
                assert (witness is not None) == (size <= best)
                if witness:
                    inside = witness.vertices
                    edges = [e for e in g.edges if e[0] in inside and e[1] in inside]
                    assert acyclic(sorted(inside), edges)

    def test_monotonicity(self):
        rng = random.Random(31)
        for _ in range(20):
            g = random_graph(rng, rng.randint(2, 8))
            for size in range(len(g.vertices), 0, -1):
                if solve_mif(g, size) is not None:
                    assert solve_mif(g, size - 1) is not None

    def test_deterministic_witness(self):
        rng = random.Random(8)
        g = random_graph(rng, 9, density=0.5)
        assert solve_mif(g, 5) == solve_mif(g, 5)

    def test_budget_exhaustion_raises(self):
        rng = random.Random(1)
        g = random_graph(rng, 9, density=0.9)
        with pytest.raises(BudgetExceeded):
            solve_mif(g, len(g.vertices), node_budget=2)

    def test_env_var_budget(self, monkeypatch):
        monkeypatch.setenv("MIMRED_BUDGET", "2")
        rng = random.Random(1)
        g = random_graph(rng, 9, density=0.9)
        with pytest.raises(BudgetExceeded):
            solve_mif(g, len(g.vertices))


class TestSolveFvs:
    def test_triangle_budget_one(self):
        w = solve_fvs(TRIANGLE, 1)
        assert w is not None and len(w) == 1

    def test_forest_budget_zero(self):
        g = Graph.build(["a", "b", "c"], [("a", "b"), ("b", "c")])
        assert solve_fvs(g, 0) == frozenset()

    def test_out_of_range(self):
        with pytest.raises(ValueError):
            solve_fvs(TRIANGLE, -1)

    def test_complement_identity_and_direct_enumeration(self):
        rng = random.Random(777)
        for trial in range(25):
            n = rng.randint(1, 8)
            g = random_graph(rng, n, density=rng.choice([0.3, 0.6]))
            min_fvs = brute_min_fvs_size(g)
            for budget in range(n + 1):
                fvs = solve_fvs(g, budget)
                assert (fvs is not None) == (budget >= min_fvs)
                assert (fvs is not None) == (solve_mif(g, n - budget) is not None)
                if fvs is not None:
                    kept = [v for v in g.vertices if v not in fvs]
                    edges = [e for e in g.edges if e[0] in kept and e[1] in kept]
                    assert acyclic(kept, edges)


class TestExtractClique:
    def test_roundtrip_through_oracle_forest(self):
        inst = full_instance(2, 2)
        out = build_reduction(inst)
        forest = solve_mif(out.g_prime, out.k_prime)
        witness = extract_clique(out, forest)
        assert is_multicolored_clique(inst, witness.assignment)
        assert solve_mcc(inst) is not None

    def test_planted_clique_recovered(self):
        # one cross edge only: the forest must select exactly that pair
        parts = [["a1", "a2"], ["b1", "b2"]]
        g = Graph.build(["a1", "a2", "b1", "b2"], [("a2", "b1")])
        inst = pad_instance(g, parts)
        out = build_reduction(inst)
        forest = solve_mif(out.g_prime, out.k_prime)
        assert extract_clique(out, forest).assignment == ("a2", "b1")

    def test_contract_violation_on_bad_witness(self):
        out = build_reduction(full_instance(2, 2))
        forest = solve_mif(out.g_prime, out.k_prime)
        broken = set(forest.vertices)
        broken.discard("beta")
        broken.add("z[1]_2" if "z[1]_2" not in broken else "z[1]_1")
        with pytest.raises(ContractViolation):
            extract_clique(out, ForestWitness(frozenset(broken)))

    def test_wrong_size_rejected(self):
        out = build_reduction(full_instance(2, 2))
        with pytest.raises(ContractViolation):
            extract_clique(out, ForestWitness(frozenset({"beta"})))
