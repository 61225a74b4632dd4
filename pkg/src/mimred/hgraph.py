"""Multigraphs, edge subdivisions, and connected-model intersection graphs.

Naming scheme for subdivisions (bit-exact, shared by files and tests): the
s-th internal node created on the edge with id E is "E_s" and the resulting
path segments carry ids "E.0", "E.1", ... from the u end to the v end; a
later subdivision of a single segment suffixes ":0"/":1". Edge-path ids of
the reduction look like "x[i,j]" / "y[i,j]", so the s-th node of the x-copy
of the ordered pair (i, j) is "x[i,j]_s".
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, NamedTuple

from .graph_core import Graph


class MultiEdge(NamedTuple):
    id: str
    u: str
    v: str


@dataclass(frozen=True)
class MultiGraph:
    """Undirected multigraph; parallel edges are distinguished by edge id."""

    nodes: tuple[str, ...]
    edges: tuple[MultiEdge, ...]

    @classmethod
    def build(cls, nodes: Iterable[str], edges: Iterable[tuple[str, str, str]]) -> "MultiGraph":
        node_tuple = tuple(nodes)
        nset: set[str] = set()
        for n in node_tuple:
            if n in nset:
                raise ValueError(f"duplicate node id {n!r}")
            nset.add(n)
        edge_tuple = tuple(e if isinstance(e, MultiEdge) else MultiEdge(*e) for e in edges)
        ids: set[str] = set()
        for e in edge_tuple:
            if e.id in ids:
                raise ValueError(f"duplicate edge id {e.id!r}")
            ids.add(e.id)
            if e.u == e.v:
                raise ValueError(f"self-loop at node {e.u!r} (edge {e.id!r})")
            if e.u not in nset or e.v not in nset:
                raise ValueError(f"edge {e.id!r} has an undeclared endpoint")
        return cls(node_tuple, edge_tuple)

    @cached_property
    def node_set(self) -> frozenset[str]:
        return frozenset(self.nodes)

    @cached_property
    def edge_ids(self) -> frozenset[str]:
        return frozenset(e.id for e in self.edges)

    @cached_property
    def adjacency(self) -> dict[str, frozenset[str]]:
        nbrs: dict[str, set[str]] = {n: set() for n in self.nodes}
        for e in self.edges:
            nbrs[e.u].add(e.v)
            nbrs[e.v].add(e.u)
        return {n: frozenset(s) for n, s in nbrs.items()}

    def degree(self, node: str) -> int:
        # Parallel edges each contribute; this is edge-incidence degree.
        return sum(1 for e in self.edges for end in (e.u, e.v) if end == node)


def subdivide_edge(h: MultiGraph, edge_id: str, new_node: str) -> MultiGraph:
    """Replace the edge uv with the path u - new_node - v."""
    if new_node in h.node_set:
        raise ValueError(f"node id {new_node!r} already exists")
    if edge_id not in h.edge_ids:
        raise ValueError(f"no edge with id {edge_id!r}")
    edges: list[MultiEdge] = []
    for e in h.edges:
        if e.id == edge_id:
            edges.append(MultiEdge(f"{edge_id}:0", e.u, new_node))
            edges.append(MultiEdge(f"{edge_id}:1", new_node, e.v))
        else:
            edges.append(e)
    return MultiGraph.build(h.nodes + (new_node,), edges)


def subdivide_uniform(h: MultiGraph, times: int) -> MultiGraph:
    """Subdivide every edge the same number of times, naming nodes "<edge>_s"."""
    if times < 1:
        raise ValueError("times must be at least 1")
    nodes = list(h.nodes)
    edges: list[MultiEdge] = []
    for e in h.edges:
        chain = [e.u] + [f"{e.id}_{s}" for s in range(1, times + 1)] + [e.v]
        nodes.extend(chain[1:-1])
        for s in range(times + 1):
            edges.append(MultiEdge(f"{e.id}.{s}", chain[s], chain[s + 1]))
    return MultiGraph.build(nodes, edges)


@dataclass(frozen=True)
class HRepresentation:
    """Map from intersection-graph vertices to connected node sets of a host."""

    host: MultiGraph
    models: dict[str, frozenset[str]]


def _model_connected(host: MultiGraph, model: frozenset[str]) -> bool:
    start = min(model)
    seen = {start}
    stack = [start]
    adjacency = host.adjacency
    while stack:
        cur = stack.pop()
        for nxt in adjacency[cur]:
            if nxt in model and nxt not in seen:
                seen.add(nxt)
                stack.append(nxt)
    return len(seen) == len(model)


def validate_representation(rep: HRepresentation) -> list[str]:
    """Violation messages; empty iff every model is a non-empty connected host subset."""
    problems = []
    for v in sorted(rep.models):
        model = rep.models[v]
        if not model:
            problems.append(f"model of {v!r} is empty")
            continue
        unknown = model - rep.host.node_set
        if unknown:
            problems.append(f"model of {v!r} uses unknown host nodes {sorted(unknown)}")
            continue
        if not _model_connected(rep.host, model):
            problems.append(f"model of {v!r} is not connected in the host")
    return problems


def intersection_graph(rep: HRepresentation) -> Graph:
    """Graph on the model family: vertices adjacent iff their models intersect."""
    problems = validate_representation(rep)
    if problems:
        raise ValueError("invalid representation: " + "; ".join(problems))
    verts = tuple(sorted(rep.models))
    edges: set[tuple[str, str]] = set()
    for i, u in enumerate(verts):
        mu = rep.models[u]
        for v in verts[i + 1 :]:
            if mu & rep.models[v]:
                edges.add((u, v))
    return Graph(verts, frozenset(edges))


_PATH_ID = re.compile(r"^([a-z]+)\[(\d+)(?:,(\d+))?\]((?:[.:]\d+)*)$")


def _natural_key(text: str) -> tuple:
    parts = re.split(r"(\d+)", text)
    return tuple((0, int(p)) if p.isdigit() else (1, p) for p in parts)


def _edge_walk_key(e: MultiEdge) -> tuple:
    m = _PATH_ID.match(e.id)
    if m:
        letter, i, j, suffix = m.groups()
        segments = tuple(int(x) for x in re.findall(r"\d+", suffix))
        return (0, int(i), int(j) if j else 0, letter, segments, e.id)
    return (1, _natural_key(e.id))


def _host_traversal_positions(host: MultiGraph) -> dict[str, int]:
    # Walks each subdivided edge-path consecutively: reduction-style path ids
    # sort by (i, j) then x before y, and their segments in path order.
    order: list[str] = []
    seen: set[str] = set()
    for e in sorted(host.edges, key=_edge_walk_key):
        for node in (e.u, e.v):
            if node not in seen:
                seen.add(node)
                order.append(node)
    for node in host.nodes:
        if node not in seen:
            seen.add(node)
            order.append(node)
    return {n: idx for idx, n in enumerate(order)}


def linear_order_from_representation(rep: HRepresentation) -> tuple[str, ...]:
    """Deterministic vertex order for the intersection graph of a representation.

    Each vertex is placed at the position of the smallest host node of its
    model under a traversal that walks the host's edge-paths consecutively;
    ties break by vertex id. Any claimed width bound for the order has to be
    certified by the exact evaluator, never assumed.
    """
    problems = validate_representation(rep)
    if problems:
        raise ValueError("invalid representation: " + "; ".join(problems))
    if len(rep.models) < 2:
        raise ValueError("need at least two models to order")
    pos = _host_traversal_positions(rep.host)
    return tuple(sorted(rep.models, key=lambda v: (min(pos[n] for n in rep.models[v]), v)))
