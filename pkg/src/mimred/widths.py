"""Branch decompositions and exact mim-width evaluation.

Linear decompositions are kept canonically as vertex orders; the caterpillar
tree is only materialized when a generic decomposition is demanded. The cuts
of an order are its prefix cuts plus the singleton leaf cuts.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Sequence

from .graph_core import Graph, canon_edge, mim_value


@dataclass(frozen=True)
class BranchDecomposition:
    """Subcubic tree plus a bijection from graph vertices to its leaves."""

    tree_edges: frozenset[tuple[str, str]]
    leaf_map: dict[str, str]

    @cached_property
    def tree_nodes(self) -> frozenset[str]:
        return frozenset(n for e in self.tree_edges for n in e)

    @cached_property
    def tree_adjacency(self) -> dict[str, frozenset[str]]:
        nbrs: dict[str, set[str]] = {n: set() for n in self.tree_nodes}
        for a, b in self.tree_edges:
            nbrs[a].add(b)
            nbrs[b].add(a)
        return {n: frozenset(s) for n, s in nbrs.items()}

    @cached_property
    def leaves(self) -> frozenset[str]:
        return frozenset(n for n, nb in self.tree_adjacency.items() if len(nb) == 1)


def _checked_order(g: Graph, order: Sequence[str]) -> tuple[str, ...]:
    o = tuple(order)
    if len(o) != len(g.vertices) or set(o) != set(g.vertices):
        raise ValueError("order must be a permutation of the vertex set")
    return o


def caterpillar_from_order(g: Graph, order: Sequence[str]) -> BranchDecomposition:
    """Caterpillar decomposition whose spine leaves read the order left to right."""
    o = _checked_order(g, order)
    n = len(o)
    if n < 2:
        raise ValueError("branch decompositions require at least two vertices")
    leaf = {v: f"leaf:{v}" for v in o}
    edges: set[tuple[str, str]] = set()
    if n == 2:
        edges.add(canon_edge(leaf[o[0]], leaf[o[1]]))
    else:
        spine = [f"spine:{t}" for t in range(1, n - 1)]
        for a, b in zip(spine, spine[1:]):
            edges.add(canon_edge(a, b))
        edges.add(canon_edge(leaf[o[0]], spine[0]))
        for i in range(1, n - 1):
            edges.add(canon_edge(leaf[o[i]], spine[i - 1]))
        edges.add(canon_edge(leaf[o[n - 1]], spine[-1]))
    return BranchDecomposition(frozenset(edges), {v: leaf[v] for v in o})


def validate_decomposition(g: Graph, bd: BranchDecomposition) -> bool:
    """True iff the tree is connected, acyclic, subcubic, and leaf_map is a bijection."""
    nodes = bd.tree_nodes
    if not nodes or len(bd.tree_edges) != len(nodes) - 1:
        return False
    adjacency = bd.tree_adjacency
    if any(len(nb) > 3 for nb in adjacency.values()):
        return False
    start = next(iter(nodes))
    seen = {start}
    stack = [start]
    while stack:
        cur = stack.pop()
        for nxt in adjacency[cur]:
            if nxt not in seen:
                seen.add(nxt)
                stack.append(nxt)
    if seen != nodes:
        return False
    if set(bd.leaf_map) != set(g.vertices):
        return False
    images = list(bd.leaf_map.values())
    return len(images) == len(set(images)) and set(images) == set(bd.leaves)


def _component_without(adjacency: dict[str, frozenset[str]], start: str, banned: str) -> set[str]:
    # Nodes reachable from start when the edge (start, banned) is removed.
    seen = {start}
    stack = [start]
    while stack:
        cur = stack.pop()
        for nxt in adjacency[cur]:
            if cur == start and nxt == banned:
                continue
            if nxt not in seen:
                seen.add(nxt)
                stack.append(nxt)
    return seen


def mimw(g: Graph, bd: BranchDecomposition) -> int:
    """Exact mim-width of a branch decomposition: max cut mim over tree edges."""
    if not validate_decomposition(g, bd):
        raise ValueError("invalid branch decomposition for this graph")
    adjacency = bd.tree_adjacency
    best = 0
    seen_cuts: set[frozenset[str]] = set()
    for a, b in bd.tree_edges:
        comp = _component_without(adjacency, a, b)
        side = frozenset(v for v, leaf in bd.leaf_map.items() if leaf in comp)
        key = min(side, g.vertex_set - side, key=lambda s: (len(s), tuple(sorted(s))))
        if key in seen_cuts:
            continue
        seen_cuts.add(key)
        best = max(best, mim_value(g, side))
    return best


def prefix_cut_profile(g: Graph, order: Sequence[str]) -> list[int]:
    """Cut mim values at every proper prefix of the order, left to right."""
    o = _checked_order(g, order)
    values = []
    prefix: set[str] = set()
    for v in o[:-1]:
        prefix.add(v)
        values.append(mim_value(g, prefix))
    return values


def mimw_of_order(g: Graph, order: Sequence[str]) -> int:
    """Exact mim-width of the linear decomposition given by the order.

    Graphs with at most one vertex have width 0 by convention. Singleton leaf
    cuts are evaluated alongside the prefix cuts because the caterpillar's leaf
    edges induce them too.
    """
    o = _checked_order(g, order)
    if len(o) <= 1:
        return 0
    best = max(prefix_cut_profile(g, o), default=0)
    for v in o:
        best = max(best, mim_value(g, (v,)))
    return best
