"""JSON and DOT serialization for every artifact the CLI reads or writes.

All JSON is dumped with sorted keys and a fixed indent so identical inputs
produce byte-identical files.
"""
from __future__ import annotations

import json
from pathlib import Path

from .graph_core import Graph
from .hgraph import HRepresentation, MultiEdge, MultiGraph
from .reduction import MccInstance, ReductionOutput, VertexClass
from .verification import CheckReport
from .widths import BranchDecomposition


def dumps(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"


def write_json(path: str | Path, obj) -> None:
    Path(path).write_text(dumps(obj), encoding="utf-8")


def read_json(path: str | Path):
    return json.loads(Path(path).read_text(encoding="utf-8"))


# ---------------------------------------------------------------------------
# graphs

def graph_to_obj(g: Graph) -> dict:
    return {
        "vertices": list(g.vertices),
        "edges": [list(e) for e in sorted(g.edges)],
    }


def graph_from_obj(obj: dict) -> Graph:
    return Graph.build(obj["vertices"], [tuple(e) for e in obj["edges"]])


def multigraph_to_obj(h: MultiGraph) -> dict:
    return {
        "nodes": list(h.nodes),
        "edges": [[e.id, e.u, e.v] for e in h.edges],
    }


def multigraph_from_obj(obj: dict) -> MultiGraph:
    return MultiGraph.build(obj["nodes"], [MultiEdge(*e) for e in obj["edges"]])


def representation_to_obj(rep: HRepresentation) -> dict:
    return {
        "host_nodes": list(rep.host.nodes),
        "host_edges": [[e.id, e.u, e.v] for e in rep.host.edges],
        "models": {v: sorted(model) for v, model in rep.models.items()},
    }


def representation_from_obj(obj: dict) -> HRepresentation:
    host = MultiGraph.build(obj["host_nodes"], [MultiEdge(*e) for e in obj["host_edges"]])
    models = {v: frozenset(nodes) for v, nodes in obj["models"].items()}
    return HRepresentation(host, models)


# ---------------------------------------------------------------------------
# decompositions

def order_to_obj(order) -> dict:
    return {"order": list(order)}


def decomposition_to_obj(bd: BranchDecomposition) -> dict:
    return {
        "tree_edges": [list(e) for e in sorted(bd.tree_edges)],
        "leaf_map": dict(sorted(bd.leaf_map.items())),
    }


def decomposition_from_obj(obj: dict) -> BranchDecomposition:
    return BranchDecomposition(
        frozenset(tuple(e) for e in obj["tree_edges"]),
        dict(obj["leaf_map"]),
    )


# ---------------------------------------------------------------------------
# instances and bundles

def instance_to_obj(inst: MccInstance) -> dict:
    return {
        "k": inst.k,
        "parts": [list(part) for part in inst.parts],
        "edges": [list(e) for e in sorted(inst.graph.edges)],
    }


def instance_from_obj(obj: dict) -> MccInstance:
    """Parse and re-pad; padding an already-equal instance leaves it unchanged."""
    parts = [list(part) for part in obj["parts"]]
    if obj.get("k") is not None and obj["k"] != len(parts):
        raise ValueError("field k does not match the number of parts")
    vertices = [v for part in parts for v in part]
    graph = Graph.build(vertices, [tuple(e) for e in obj["edges"]])
    from .reduction import pad_instance

    return pad_instance(graph, parts)


def _vertex_class_to_obj(cls: VertexClass) -> dict:
    obj: dict = {"kind": cls.kind}
    for name in ("i", "j", "s", "t"):
        value = getattr(cls, name)
        if value is not None:
            obj[name] = value
    return obj


def bundle_to_obj(out: ReductionOutput) -> dict:
    return {
        "instance": instance_to_obj(out.instance),
        "g_prime": graph_to_obj(out.g_prime),
        "k_prime": out.k_prime,
        "beta": out.beta,
        "order": list(out.order),
        "h_pattern": multigraph_to_obj(out.h_pattern),
        "h_sub": multigraph_to_obj(out.h_sub),
        "k_pattern": multigraph_to_obj(out.k_pattern),
        "representation": representation_to_obj(out.representation),
        "k_representation": representation_to_obj(out.k_representation),
        "name_index": {v: _vertex_class_to_obj(c) for v, c in out.name_index.items()},
        "epsilon_hosts": dict(sorted(out.epsilon_hosts.items())),
    }


def bundle_from_obj(obj: dict) -> ReductionOutput:
    name_index = {
        v: VertexClass(
            kind=c["kind"],
            i=c.get("i"),
            j=c.get("j"),
            s=c.get("s"),
            t=c.get("t"),
        )
        for v, c in obj["name_index"].items()
    }
    return ReductionOutput(
        instance=instance_from_obj(obj["instance"]),
        g_prime=graph_from_obj(obj["g_prime"]),
        k_prime=obj["k_prime"],
        h_pattern=multigraph_from_obj(obj["h_pattern"]),
        h_sub=multigraph_from_obj(obj["h_sub"]),
        representation=representation_from_obj(obj["representation"]),
        order=tuple(obj["order"]),
        k_pattern=multigraph_from_obj(obj["k_pattern"]),
        k_representation=representation_from_obj(obj["k_representation"]),
        beta=obj["beta"],
        name_index=name_index,
        epsilon_hosts=dict(obj["epsilon_hosts"]),
    )


def report_to_obj(report: CheckReport) -> dict:
    return {
        "check": report.check,
        "instance": report.instance,
        "status": report.status,
        "counterexample": report.counterexample,
        "details": report.details,
    }


# ---------------------------------------------------------------------------
# DOT export

def _dot_quote(name: str) -> str:
    return '"' + name.replace("\\", "\\\\").replace('"', '\\"') + '"'

_CLASS_COLORS = {
    "z": "lightblue",
    "alpha_x": "palegreen",
    "alpha_y": "palegreen",
    "r": "lightsalmon",
    "beta": "tomato",
}


def graph_to_dot(g: Graph, classes: dict[str, str] | None = None) -> str:
    """Undirected DOT with verbatim vertex labels; `classes` maps vertex to a
    class name used for fill color."""
    lines = ["graph G {", "  node [style=filled, fillcolor=white];"]
    for v in g.vertices:
        color = _CLASS_COLORS.get(classes.get(v, ""), "white") if classes else "white"
        lines.append(f"  {_dot_quote(v)} [fillcolor={color}];")
    for u, v in sorted(g.edges):
        lines.append(f"  {_dot_quote(u)} -- {_dot_quote(v)};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def multigraph_to_dot(h: MultiGraph, highlight: frozenset[str] | set[str] = frozenset()) -> str:
    lines = ["graph H {", "  node [style=filled, fillcolor=white];"]
    for n in h.nodes:
        color = "gold" if n in highlight else "white"
        lines.append(f"  {_dot_quote(n)} [fillcolor={color}];")
    for e in h.edges:
        lines.append(f"  {_dot_quote(e.u)} -- {_dot_quote(e.v)} [label={_dot_quote(e.id)}];")
    lines.append("}")
    return "\n".join(lines) + "\n"
