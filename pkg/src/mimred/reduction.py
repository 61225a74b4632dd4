"""Reduction from a partitioned clique instance to an induced-forest instance.

The construction pads the parts to a common size p, builds a pattern
multigraph with one hub node per color pair and two bundles of parallel
edges per pair, subdivides it, and represents three vertex families over the
subdivision: one selector vertex per color and index (z), two sentinel
vertices per color and per pair (alpha), and one vertex per cross-part edge
(r). An apex vertex beta adjacent to every selector and edge vertex turns
independent-set structure into forest structure.

Host node names: "u_i" and "w_{i,j}" for the pattern nodes; "x[i,j]_s" /
"y[i,j]_s" for subdivision nodes; "x[i]_0e", "y[i]_0e", "x[i,j]_pe",
"y[i,j]_pe" for the extra sentinel-anchor subdivisions.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from math import comb
from typing import Sequence

from .graph_core import Graph, canon_edge
from .hgraph import (
    HRepresentation,
    MultiEdge,
    MultiGraph,
    intersection_graph,
    linear_order_from_representation,
    subdivide_edge,
    subdivide_uniform,
)

BETA = "beta"


@dataclass(frozen=True)
class MccInstance:
    """A multicolored-clique instance with equal part sizes."""

    graph: Graph
    parts: tuple[tuple[str, ...], ...]
    k: int
    p: int


@dataclass(frozen=True)
class VertexClass:
    """Classification of one output vertex; unused index fields stay None."""

    kind: str  # "z" | "alpha_x" | "alpha_y" | "r" | "beta"
    i: int | None = None
    j: int | None = None
    s: int | None = None
    t: int | None = None


@dataclass(frozen=True)
class ReductionOutput:
    """Everything the reduction emits for one instance."""

    instance: MccInstance
    g_prime: Graph
    k_prime: int
    h_pattern: MultiGraph
    h_sub: MultiGraph
    representation: HRepresentation
    order: tuple[str, ...]
    k_pattern: MultiGraph
    k_representation: HRepresentation
    beta: str
    name_index: dict[str, VertexClass]
    epsilon_hosts: dict[str, str]

    @cached_property
    def alpha_vertices(self) -> frozenset[str]:
        return frozenset(v for v, c in self.name_index.items() if c.kind in ("alpha_x", "alpha_y"))

    def z_vertices(self, i: int) -> tuple[str, ...]:
        return tuple(
            sorted(v for v, c in self.name_index.items() if c.kind == "z" and c.i == i)
        )

    def r_vertices(self, i: int, j: int) -> tuple[str, ...]:
        return tuple(
            sorted(
                v
                for v, c in self.name_index.items()
                if c.kind == "r" and c.i == i and c.j == j
            )
        )

    def color_alphas(self, i: int) -> tuple[str, str]:
        return (_alpha_name("x", i), _alpha_name("y", i))

    def pair_alphas(self, i: int, j: int) -> tuple[str, str]:
        return (_alpha_name("x", i, j), _alpha_name("y", i, j))

    def clique_vertex(self, i: int, s: int) -> str:
        return self.instance.parts[i - 1][s - 1]


def _u_name(i: int) -> str:
    return f"u_{i}"


def _w_name(i: int, j: int) -> str:
    a, b = sorted((i, j))
    return f"w_{{{a},{b}}}"


def _path_id(copy: str, i: int, j: int) -> str:
    return f"{copy}[{i},{j}]"


def _path_node(copy: str, i: int, j: int, idx: int, p: int) -> str:
    # Index 0 and p+1 are aliases of the pattern endpoints.
    if idx == 0:
        return _u_name(i)
    if idx == p + 1:
        return _w_name(i, j)
    return f"{copy}[{i},{j}]_{idx}"


def _eps_u_name(copy: str, i: int) -> str:
    return f"{copy}[{i}]_0e"


def _eps_w_name(copy: str, i: int, j: int) -> str:
    return f"{copy}[{i},{j}]_pe"


def _z_name(i: int, s: int) -> str:
    return f"z[{i}]_{s}"


def _alpha_name(copy: str, i: int, j: int | None = None) -> str:
    return f"a{copy}[{i}]" if j is None else f"a{copy}[{i},{j}]"


def _r_name(i: int, j: int, s: int, t: int) -> str:
    return f"r[{i},{j}]_{s},{t}"


def _pendant_name(copy: str, i: int, j: int | None = None) -> str:
    return f"pi{copy}[{i}]" if j is None else f"pi{copy}[{i},{j}]"


def _epsilon_partner(i: int, k: int) -> int:
    return i + 1 if i < k else k - 1


def pad_instance(g: Graph, parts: Sequence[Sequence[str]]) -> MccInstance:
    """Equalize part sizes by adding isolated vertices; the answer is unchanged."""
    k = len(parts)
    if k < 2:
        raise ValueError("need at least two parts")
    part_tuples = [tuple(part) for part in parts]
    seen: set[str] = set()
    for part in part_tuples:
        for v in part:
            if v in seen:
                raise ValueError(f"vertex {v!r} appears in more than one part")
            seen.add(v)
    if seen != g.vertex_set:
        raise ValueError("parts must cover the vertex set exactly")
    p = max(len(part) for part in part_tuples)
    if p < 1:
        raise ValueError("at least one part must be non-empty")
    vertices = list(g.vertices)
    padded = []
    counter = 0
    for i, part in enumerate(part_tuples, start=1):
        extended = list(part)
        while len(extended) < p:
            candidate = f"pad[{i}]_{counter}"
            counter += 1
            if candidate in seen:
                continue
            seen.add(candidate)
            vertices.append(candidate)
            extended.append(candidate)
        padded.append(tuple(extended))
    graph = Graph.build(vertices, g.edges)
    return MccInstance(graph=graph, parts=tuple(padded), k=k, p=p)


def _require_padded(inst: MccInstance) -> None:
    if inst.k < 2 or inst.k != len(inst.parts):
        raise ValueError("instance must have k >= 2 parts")
    if inst.p < 1 or any(len(part) != inst.p for part in inst.parts):
        raise ValueError("instance parts must all have size p; run pad_instance first")
    flat = [v for part in inst.parts for v in part]
    if len(flat) != len(set(flat)) or set(flat) != inst.graph.vertex_set:
        raise ValueError("parts must partition the vertex set")


def build_h_pattern(k: int) -> MultiGraph:
    """Pattern multigraph: k color nodes, one hub per pair, four parallel edges each."""
    if k < 2:
        raise ValueError("k must be at least 2")
    nodes = [_u_name(i) for i in range(1, k + 1)]
    edges: list[MultiEdge] = []
    for i in range(1, k + 1):
        for j in range(i + 1, k + 1):
            nodes.append(_w_name(i, j))
    for i in range(1, k + 1):
        for j in range(i + 1, k + 1):
            w = _w_name(i, j)
            edges.append(MultiEdge(_path_id("x", i, j), _u_name(i), w))
            edges.append(MultiEdge(_path_id("y", i, j), _u_name(i), w))
            edges.append(MultiEdge(_path_id("x", j, i), _u_name(j), w))
            edges.append(MultiEdge(_path_id("y", j, i), _u_name(j), w))
    return MultiGraph.build(nodes, edges)


def build_h_subdivision(k: int, p: int) -> MultiGraph:
    """Subdivide every pattern edge p times, then add the sentinel-anchor nodes.

    Per color i one extra node next to u_i on the x-path and one on the y-path
    of a single designated pair ((i, i+1) for i < k, (k, k-1) for i = k); per
    pair i < j one extra node next to the hub on each of the (i, j) paths.
    """
    if p < 1:
        raise ValueError("p must be at least 1")
    h = subdivide_uniform(build_h_pattern(k), p)
    for i in range(1, k + 1):
        j = _epsilon_partner(i, k)
        for copy in ("x", "y"):
            h = subdivide_edge(h, f"{_path_id(copy, i, j)}.0", _eps_u_name(copy, i))
    for i in range(1, k + 1):
        for j in range(i + 1, k + 1):
            for copy in ("x", "y"):
                h = subdivide_edge(h, f"{_path_id(copy, i, j)}.{p}", _eps_w_name(copy, i, j))
    return h


def epsilon_host_paths(k: int) -> dict[str, str]:
    """Which edge-path hosts each sentinel-anchor node."""
    hosts: dict[str, str] = {}
    for i in range(1, k + 1):
        j = _epsilon_partner(i, k)
        for copy in ("x", "y"):
            hosts[_eps_u_name(copy, i)] = _path_id(copy, i, j)
    for i in range(1, k + 1):
        for j in range(i + 1, k + 1):
            for copy in ("x", "y"):
                hosts[_eps_w_name(copy, i, j)] = _path_id(copy, i, j)
    return hosts


def _cross_edges(inst: MccInstance) -> list[tuple[int, int, int, int]]:
    # (i, j, s, t) with i < j for every cross-part edge; intra-part edges are
    # ignored because they can never join a part-respecting clique.
    locator = {
        v: (i, s)
        for i, part in enumerate(inst.parts, start=1)
        for s, v in enumerate(part, start=1)
    }
    out = []
    for u, v in sorted(inst.graph.edges):
        iu, su = locator[u]
        iv, sv = locator[v]
        if iu == iv:
            continue
        out.append((iu, iv, su, sv) if iu < iv else ((iv, iu, sv, su)))
    return sorted(out)


def build_models(inst: MccInstance) -> HRepresentation:
    """Connected models of the selector, sentinel, and edge vertices."""
    _require_padded(inst)
    k, p = inst.k, inst.p
    host = build_h_subdivision(k, p)
    models: dict[str, frozenset[str]] = {}
    for i in range(1, k + 1):
        models[_alpha_name("x", i)] = frozenset({_eps_u_name("x", i)})
        models[_alpha_name("y", i)] = frozenset({_eps_u_name("y", i)})
        for s in range(1, p + 1):
            nodes = {_eps_u_name("x", i), _eps_u_name("y", i)}
            for j in range(1, k + 1):
                if j == i:
                    continue
                nodes.update(_path_node("x", i, j, idx, p) for idx in range(0, s))
                nodes.update(_path_node("y", i, j, idx, p) for idx in range(0, p - s + 1))
            models[_z_name(i, s)] = frozenset(nodes)
    for i in range(1, k + 1):
        for j in range(i + 1, k + 1):
            models[_alpha_name("x", i, j)] = frozenset({_eps_w_name("x", i, j)})
            models[_alpha_name("y", i, j)] = frozenset({_eps_w_name("y", i, j)})
    for i, j, s, t in _cross_edges(inst):
        nodes = {_eps_w_name("x", i, j), _eps_w_name("y", i, j)}
        nodes.update(_path_node("x", i, j, idx, p) for idx in range(s, p + 2))
        nodes.update(_path_node("y", i, j, idx, p) for idx in range(p - s + 1, p + 2))
        nodes.update(_path_node("x", j, i, idx, p) for idx in range(t, p + 2))
        nodes.update(_path_node("y", j, i, idx, p) for idx in range(p - t + 1, p + 2))
        models[_r_name(i, j, s, t)] = frozenset(nodes)
    return HRepresentation(host, models)


def _name_index(inst: MccInstance) -> dict[str, VertexClass]:
    k, p = inst.k, inst.p
    index: dict[str, VertexClass] = {BETA: VertexClass("beta")}
    for i in range(1, k + 1):
        index[_alpha_name("x", i)] = VertexClass("alpha_x", i=i)
        index[_alpha_name("y", i)] = VertexClass("alpha_y", i=i)
        for s in range(1, p + 1):
            index[_z_name(i, s)] = VertexClass("z", i=i, s=s)
        for j in range(i + 1, k + 1):
            index[_alpha_name("x", i, j)] = VertexClass("alpha_x", i=i, j=j)
            index[_alpha_name("y", i, j)] = VertexClass("alpha_y", i=i, j=j)
    for i, j, s, t in _cross_edges(inst):
        index[_r_name(i, j, s, t)] = VertexClass("r", i=i, j=j, s=s, t=t)
    return index


def build_k_pattern(k: int) -> MultiGraph:
    """Pattern extended by two pendant anchor nodes per pattern node."""
    base = build_h_pattern(k)
    nodes = list(base.nodes)
    edges = list(base.edges)
    for i in range(1, k + 1):
        for copy in ("x", "y"):
            pendant = _pendant_name(copy, i)
            nodes.append(pendant)
            edges.append(MultiEdge(pendant, _u_name(i), pendant))
    for i in range(1, k + 1):
        for j in range(i + 1, k + 1):
            for copy in ("x", "y"):
                pendant = _pendant_name(copy, i, j)
                nodes.append(pendant)
                edges.append(MultiEdge(pendant, _w_name(i, j), pendant))
    return MultiGraph.build(nodes, edges)


def pendant_nodes(k: int) -> frozenset[str]:
    out = set()
    for i in range(1, k + 1):
        for copy in ("x", "y"):
            out.add(_pendant_name(copy, i))
        for j in range(i + 1, k + 1):
            for copy in ("x", "y"):
                out.add(_pendant_name(copy, i, j))
    return frozenset(out)


def build_k_representation(inst: MccInstance) -> HRepresentation:
    """Representation of the full output graph over the pendant-anchored pattern.

    Only the core (non-pendant) edges are subdivided, so no sentinel-anchor
    subdivisions exist; sentinel models move to the pendants, selector and
    edge models pick up their two pendants, and the apex vertex gets every
    non-pendant host node as its model.
    """
    _require_padded(inst)
    k, p = inst.k, inst.p
    core = subdivide_uniform(build_h_pattern(k), p)
    nodes = list(core.nodes)
    edges = list(core.edges)
    pendants = pendant_nodes(k)
    for i in range(1, k + 1):
        for copy in ("x", "y"):
            pendant = _pendant_name(copy, i)
            nodes.append(pendant)
            edges.append(MultiEdge(pendant, _u_name(i), pendant))
    for i in range(1, k + 1):
        for j in range(i + 1, k + 1):
            for copy in ("x", "y"):
                pendant = _pendant_name(copy, i, j)
                nodes.append(pendant)
                edges.append(MultiEdge(pendant, _w_name(i, j), pendant))
    host = MultiGraph.build(nodes, edges)
    models: dict[str, frozenset[str]] = {}
    for i in range(1, k + 1):
        models[_alpha_name("x", i)] = frozenset({_pendant_name("x", i)})
        models[_alpha_name("y", i)] = frozenset({_pendant_name("y", i)})
        for s in range(1, p + 1):
            zset = {_pendant_name("x", i), _pendant_name("y", i)}
            for j in range(1, k + 1):
                if j == i:
                    continue
                zset.update(_path_node("x", i, j, idx, p) for idx in range(0, s))
                zset.update(_path_node("y", i, j, idx, p) for idx in range(0, p - s + 1))
            models[_z_name(i, s)] = frozenset(zset)
    for i in range(1, k + 1):
        for j in range(i + 1, k + 1):
            models[_alpha_name("x", i, j)] = frozenset({_pendant_name("x", i, j)})
            models[_alpha_name("y", i, j)] = frozenset({_pendant_name("y", i, j)})
    for i, j, s, t in _cross_edges(inst):
        rset = {_pendant_name("x", i, j), _pendant_name("y", i, j)}
        rset.update(_path_node("x", i, j, idx, p) for idx in range(s, p + 2))
        rset.update(_path_node("y", i, j, idx, p) for idx in range(p - s + 1, p + 2))
        rset.update(_path_node("x", j, i, idx, p) for idx in range(t, p + 2))
        rset.update(_path_node("y", j, i, idx, p) for idx in range(p - t + 1, p + 2))
        models[_r_name(i, j, s, t)] = frozenset(rset)
    models[BETA] = frozenset(host.node_set - pendants)
    return HRepresentation(host, models)


def build_reduction(inst: MccInstance) -> ReductionOutput:
    """Full reduction bundle: output graph, target size, order, both representations."""
    _require_padded(inst)
    k = inst.k
    rep = build_models(inst)
    core = intersection_graph(rep)
    index = _name_index(inst)
    apex_neighbors = sorted(v for v, c in index.items() if c.kind in ("z", "r"))
    edges = set(core.edges)
    edges.update(canon_edge(BETA, v) for v in apex_neighbors)
    g_prime = Graph.build(core.vertices + (BETA,), edges)
    order = linear_order_from_representation(rep) + (BETA,)
    return ReductionOutput(
        instance=inst,
        g_prime=g_prime,
        k_prime=3 * k + 3 * comb(k, 2) + 1,
        h_pattern=build_h_pattern(k),
        h_sub=rep.host,
        representation=rep,
        order=order,
        k_pattern=build_k_pattern(k),
        k_representation=build_k_representation(inst),
        beta=BETA,
        name_index=index,
        epsilon_hosts=epsilon_host_paths(k),
    )
