"""Simple undirected graphs with opaque string vertex ids.

Vertex ids are labels, never indices; every other module builds on the
primitives here. All operations are pure functions of immutable inputs.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Iterable


def canon_edge(u: str, v: str) -> tuple[str, str]:
    return (u, v) if u <= v else (v, u)


@dataclass(frozen=True)
class Graph:
    """Finite simple undirected graph: ordered vertex tuple plus canonical edge set."""

    vertices: tuple[str, ...]
    edges: frozenset[tuple[str, str]]

    @classmethod
    def build(cls, vertices: Iterable[str], edges: Iterable[tuple[str, str]]) -> "Graph":
        """Validating constructor; canonicalizes edge endpoint order."""
        verts = tuple(vertices)
        vset: set[str] = set()
        for v in verts:
            if v in vset:
                raise ValueError(f"duplicate vertex id {v!r}")
            vset.add(v)
        canon: set[tuple[str, str]] = set()
        for u, v in edges:
            if u == v:
                raise ValueError(f"self-loop at vertex {u!r}")
            if u not in vset or v not in vset:
                raise ValueError(f"edge ({u!r}, {v!r}) has an undeclared endpoint")
            canon.add(canon_edge(u, v))
        return cls(verts, frozenset(canon))

    @cached_property
    def vertex_set(self) -> frozenset[str]:
        return frozenset(self.vertices)

    @cached_property
    def adjacency(self) -> dict[str, frozenset[str]]:
        nbrs: dict[str, set[str]] = {v: set() for v in self.vertices}
        for u, v in self.edges:
            nbrs[u].add(v)
            nbrs[v].add(u)
        return {v: frozenset(s) for v, s in nbrs.items()}

    def neighbors(self, v: str) -> frozenset[str]:
        return self.adjacency[v]

    def has_edge(self, u: str, v: str) -> bool:
        return canon_edge(u, v) in self.edges

    def degree(self, v: str) -> int:
        return len(self.adjacency[v])


@dataclass(frozen=True)
class Cut:
    """Bipartition of a graph's vertex set."""

    side_a: frozenset[str]
    side_b: frozenset[str]


@dataclass(frozen=True)
class BipartiteCutGraph:
    """The edges of a parent graph crossing a cut, kept as (left, right) pairs."""

    left: frozenset[str]
    right: frozenset[str]
    cross_edges: tuple[tuple[str, str], ...]


def _known_subset(g: Graph, x: Iterable[str]) -> frozenset[str]:
    xs = frozenset(x)
    unknown = xs - g.vertex_set
    if unknown:
        raise ValueError(f"unknown vertex ids: {sorted(unknown)}")
    return xs


def induced_subgraph(g: Graph, x: Iterable[str]) -> Graph:
    """Subgraph on vertex set x with exactly the edges of g inside x."""
    xs = _known_subset(g, x)
    verts = tuple(v for v in g.vertices if v in xs)
    edges = frozenset(e for e in g.edges if e[0] in xs and e[1] in xs)
    return Graph(verts, edges)


def cut_graph(g: Graph, cut: Cut) -> BipartiteCutGraph:
    """Bipartite graph of the edges of g with one endpoint on each side of the cut."""
    if cut.side_a & cut.side_b or (cut.side_a | cut.side_b) != g.vertex_set:
        raise ValueError("cut sides must partition the vertex set")
    cross = []
    for u, v in g.edges:
        if (u in cut.side_a) != (v in cut.side_a):
            cross.append((u, v) if u in cut.side_a else (v, u))
    return BipartiteCutGraph(cut.side_a, cut.side_b, tuple(sorted(cross)))


def max_induced_matching(b: BipartiteCutGraph) -> int:
    """Exact size of a maximum induced matching among the cross edges.

    A set of cross edges is an induced matching when no two of them share an
    endpoint and no third cross edge joins endpoints of two different members.
    Reduces to maximum independent set on the conflict graph over cross edges
    and solves that exactly by branch and bound with a greedy clique-cover
    bound; cut graphs stay small at the scales this package targets.
    """
    m = len(b.cross_edges)
    if m == 0:
        return 0
    left_masks: dict[str, int] = {}
    right_masks: dict[str, int] = {}
    for idx, (u, v) in enumerate(b.cross_edges):
        left_masks[u] = left_masks.get(u, 0) | (1 << idx)
        right_masks[v] = right_masks.get(v, 0) | (1 << idx)
    # chord_left[u]: edges whose right endpoint is a cross-neighbor of u,
    # i.e. partners that would close a chord through u.
    chord_left = {u: 0 for u in left_masks}
    chord_right = {v: 0 for v in right_masks}
    for u, v in b.cross_edges:
        chord_left[u] |= right_masks[v]
        chord_right[v] |= left_masks[u]
    adj = []
    for idx, (u, v) in enumerate(b.cross_edges):
        mask = left_masks[u] | right_masks[v] | chord_left[u] | chord_right[v]
        adj.append(mask & ~(1 << idx))
    return _max_independent_set(adj)


def mim_value(g: Graph, a: Iterable[str]) -> int:
    """Maximum induced matching size across the cut (a, V(g) minus a)."""
    aset = _known_subset(g, a)
    return max_induced_matching(cut_graph(g, Cut(aset, g.vertex_set - aset)))


def is_forest(g: Graph, x: Iterable[str]) -> bool:
    """True iff the subgraph induced by x is acyclic."""
    xs = _known_subset(g, x)
    parent = {v: v for v in xs}

    def find(v: str) -> str:
        while parent[v] != v:
            parent[v] = parent[parent[v]]
            v = parent[v]
        return v

    for u, v in g.edges:
        if u in xs and v in xs:
            ru, rv = find(u), find(v)
            if ru == rv:
                return False
            parent[ru] = rv
    return True


def _max_independent_set(adj: list[int]) -> int:
    """Exact MIS size for a graph given as per-vertex neighbor bitmasks."""
    n = len(adj)
    best = 0

    def clique_cover_bound(avail: int) -> int:
        # Greedily partition avail into cliques; an independent set meets each at most once.
        bound = 0
        rest = avail
        while rest:
            low = rest & -rest
            v = low.bit_length() - 1
            rest ^= low
            cand = rest & adj[v]
            while cand:
                lowc = cand & -cand
                u = lowc.bit_length() - 1
                rest ^= lowc
                cand = (cand ^ lowc) & adj[u]
            bound += 1
        return bound

    def explore(avail: int, count: int) -> None:
        nonlocal best
        if count > best:
            best = count
        if not avail:
            return
        if count + avail.bit_count() <= best:
            return
        if count + clique_cover_bound(avail) <= best:
            return
        pivot = -1
        pivot_deg = -1
        m = avail
        while m:
            low = m & -m
            v = low.bit_length() - 1
            m ^= low
            d = (adj[v] & avail).bit_count()
            if d > pivot_deg:
                pivot_deg = d
                pivot = v
        if pivot_deg == 0:
            total = count + avail.bit_count()
            if total > best:
                best = total
            return
        bit = 1 << pivot
        explore(avail & ~(adj[pivot] | bit), count + 1)
        explore(avail & ~bit, count)

    explore((1 << n) - 1, 0)
    return best
