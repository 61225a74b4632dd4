"""Executable checks for every structural fact the reduction relies on.

Each check returns a CheckReport; a failing report carries a concrete
counterexample that can be replayed by re-running the same check on the same
instance. The module also owns the seeded instance generators and the
level-based verification driver used by the CLI and the acceptance suite.
"""
from __future__ import annotations

import itertools
import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from math import comb
from typing import Iterable

from .graph_core import Graph, canon_edge, induced_subgraph, is_forest, mim_value
from .hgraph import intersection_graph, validate_representation
from .oracles import (
    BudgetExceeded,
    ContractViolation,
    ForestWitness,
    extract_clique,
    is_multicolored_clique,
    solve_mcc,
    solve_mif,
)
from .reduction import MccInstance, ReductionOutput, build_reduction, pad_instance
from .widths import prefix_cut_profile

LEVELS = ("structure", "claims", "end-to-end")
Q_CYCLE = (0.3, 0.6, 0.9)


@dataclass(frozen=True)
class CheckReport:
    """Outcome of one named check on one instance."""

    check: str
    instance: str
    status: str  # "pass" | "fail" | "undecided"
    counterexample: dict | None = None
    details: dict | None = None

    @property
    def passed(self) -> bool:
        return self.status == "pass"


def _passed(check: str, instance: str, details: dict | None = None) -> CheckReport:
    return CheckReport(check, instance, "pass", None, details)


def _failed(check: str, instance: str, counterexample: dict, details: dict | None = None) -> CheckReport:
    return CheckReport(check, instance, "fail", counterexample, details)


# ---------------------------------------------------------------------------
# instance generators

def _part_names(k: int, p: int) -> list[list[str]]:
    return [[f"v[{i}]_{s}" for s in range(1, p + 1)] for i in range(1, k + 1)]


def _instance_from_edges(parts: list[list[str]], edges: Iterable[tuple[str, str]]) -> MccInstance:
    vertices = [v for part in parts for v in part]
    return pad_instance(Graph.build(vertices, edges), parts)


def random_instance(k: int, p: int, q: float, seed: int) -> MccInstance:
    """Each cross-part vertex pair becomes an edge independently with probability q."""
    if not 0.0 <= q <= 1.0:
        raise ValueError("q must lie in [0, 1]")
    rng = random.Random(seed)
    parts = _part_names(k, p)
    edges = []
    for i in range(k):
        for j in range(i + 1, k):
            for a in parts[i]:
                for b in parts[j]:
                    if rng.random() < q:
                        edges.append((a, b))
    return _instance_from_edges(parts, edges)


def planted_instance(k: int, p: int, seed: int, extra_q: float = 0.25) -> tuple[MccInstance, tuple[str, ...]]:
    """Instance with a known part-respecting clique plus random extra edges."""
    rng = random.Random(seed)
    parts = _part_names(k, p)
    chosen = [rng.randrange(p) for _ in range(k)]
    assignment = tuple(parts[i][chosen[i]] for i in range(k))
    edges = {canon_edge(assignment[i], assignment[j]) for i in range(k) for j in range(i + 1, k)}
    for i in range(k):
        for j in range(i + 1, k):
            for a in parts[i]:
                for b in parts[j]:
                    if rng.random() < extra_q:
                        edges.add(canon_edge(a, b))
    return _instance_from_edges(parts, sorted(edges)), assignment


def clique_free_instance(k: int, p: int) -> MccInstance:
    """Deterministic no-instance: start complete, break every candidate tuple.

    Tuples are visited in lexicographic order; an intact tuple loses one edge,
    rotating through the color pairs so most pairs keep some edges.
    """
    parts = _part_names(k, p)
    pairs = [(i, j) for i in range(1, k + 1) for j in range(i + 1, k + 1)]
    edges = {
        canon_edge(a, b)
        for i in range(k)
        for j in range(i + 1, k)
        for a in parts[i]
        for b in parts[j]
    }
    counter = 0
    for tup in itertools.product(range(p), repeat=k):
        chosen = [parts[i][tup[i]] for i in range(k)]
        if all(canon_edge(chosen[i - 1], chosen[j - 1]) in edges for i, j in pairs):
            i, j = pairs[counter % len(pairs)]
            edges.discard(canon_edge(chosen[i - 1], chosen[j - 1]))
            counter += 1
    return _instance_from_edges(parts, sorted(edges))


def corpus(k: int, p: int, base_seed: int, count: int = 20) -> list[tuple[str, MccInstance]]:
    """Seeded random instances; q cycles through 0.3, 0.6, 0.9."""
    items = []
    for idx in range(count):
        q = Q_CYCLE[idx % len(Q_CYCLE)]
        seed = base_seed + 10_000 * k + 1_000 * p + idx
        desc = f"random(k={k},p={p},q={q},seed={seed})"
        items.append((desc, random_instance(k, p, q, seed)))
    return items


def crafted_corpus(k: int, p: int, base_seed: int) -> list[tuple[str, MccInstance]]:
    """Deterministic regression anchors: one planted yes, one forced no."""
    seed = base_seed + 17 * k + p
    planted, _ = planted_instance(k, p, seed)
    return [
        (f"crafted:planted(k={k},p={p},seed={seed})", planted),
        (f"crafted:no(k={k},p={p})", clique_free_instance(k, p)),
    ]


# ---------------------------------------------------------------------------
# structural checks

def check_adjacency_characterization(out: ReductionOutput, instance: str = "") -> CheckReport:
    """Selector-to-edge adjacency follows the index rule: non-adjacent iff equal index."""
    name = "adjacency_characterization"
    g = out.g_prime
    p = out.instance.p
    for r, cls in sorted(out.name_index.items()):
        if cls.kind != "r":
            continue
        for color, own_index in ((cls.i, cls.s), (cls.j, cls.t)):
            for h in range(1, p + 1):
                z = f"z[{color}]_{h}"
                expected = h != own_index
                if g.has_edge(z, r) != expected:
                    return _failed(
                        name,
                        instance,
                        {"z": z, "r": r, "expected_adjacent": expected},
                    )
    return _passed(name, instance)


def check_structure(out: ReductionOutput, instance: str = "") -> CheckReport:
    """Sentinel neighborhoods, independence of the sentinel block, selector and
    edge cliques, and the apex neighborhood."""
    name = "structure"
    g = out.g_prime
    k = out.instance.k

    def fail(item: str, payload: dict) -> CheckReport:
        payload = dict(payload)
        payload["item"] = item
        return _failed(name, instance, payload)

    for i in range(1, k + 1):
        zset = frozenset(out.z_vertices(i))
        for a in out.color_alphas(i):
            if g.neighbors(a) != zset:
                return fail("sentinel_color_neighborhood", {"alpha": a, "expected": sorted(zset)})
    for i in range(1, k + 1):
        for j in range(i + 1, k + 1):
            rset = frozenset(out.r_vertices(i, j))
            for a in out.pair_alphas(i, j):
                if g.neighbors(a) != rset:
                    return fail("sentinel_pair_neighborhood", {"alpha": a, "expected": sorted(rset)})
    alphas = sorted(out.alpha_vertices)
    if len(alphas) != 2 * k + 2 * comb(k, 2):
        return fail("sentinel_count", {"count": len(alphas)})
    for a, b in itertools.combinations(alphas, 2):
        if g.has_edge(a, b):
            return fail("sentinel_independence", {"pair": [a, b]})
    for i in range(1, k + 1):
        for a, b in itertools.combinations(out.z_vertices(i), 2):
            if not g.has_edge(a, b):
                return fail("selector_clique", {"pair": [a, b]})
        for j in range(i + 1, k + 1):
            for a, b in itertools.combinations(out.r_vertices(i, j), 2):
                if not g.has_edge(a, b):
                    return fail("edge_vertex_clique", {"pair": [a, b]})
    non_alpha = frozenset(
        v for v, c in out.name_index.items() if c.kind in ("z", "r")
    )
    if g.neighbors(out.beta) != non_alpha:
        return fail(
            "apex_neighborhood",
            {"unexpected": sorted(g.neighbors(out.beta) ^ non_alpha)},
        )
    return _passed(name, instance, {"alpha_count": len(alphas)})


def check_k_representation(out: ReductionOutput, instance: str = "") -> CheckReport:
    """Both representations are valid and describe the same output graph."""
    name = "k_representation"
    core_problems = validate_representation(out.representation)
    anchored_problems = validate_representation(out.k_representation)
    if core_problems or anchored_problems:
        return _failed(name, instance, {"violations": core_problems + anchored_problems})
    anchored = intersection_graph(out.k_representation)
    if set(anchored.vertices) != set(out.g_prime.vertices) or anchored.edges != out.g_prime.edges:
        diff = sorted(anchored.edges ^ out.g_prime.edges)
        return _failed(name, instance, {"edge_difference": [list(e) for e in diff[:10]]})
    return _passed(name, instance)


def check_width_bound(out: ReductionOutput, instance: str = "", core: bool = True) -> CheckReport:
    """Certify the emitted order with the exact evaluator against the k-derived bound.

    Also certifies the apex-free intersection graph against twice the pattern
    edge count when `core` is set.
    """
    name = "width_bound"
    k = out.instance.k
    bound = 4 * k * (k - 1) + 1
    profile = prefix_cut_profile(out.g_prime, out.order)
    value = max(profile, default=0)
    for v in out.order:
        value = max(value, mim_value(out.g_prime, (v,)))
    details: dict = {"mimw": value, "bound": bound, "profile": profile}
    ok = value <= bound
    if core:
        core_graph = intersection_graph(out.representation)
        core_order = tuple(v for v in out.order if v != out.beta)
        core_bound = 2 * len(out.h_pattern.edges)
        core_value = max(prefix_cut_profile(core_graph, core_order), default=0)
        for v in core_order:
            core_value = max(core_value, mim_value(core_graph, (v,)))
        details["core_mimw"] = core_value
        details["core_bound"] = core_bound
        ok = ok and core_value <= core_bound
    if not ok:
        return _failed(name, instance, {"mimw": value, "bound": bound}, details)
    return _passed(name, instance, details)


# ---------------------------------------------------------------------------
# forest-shape checks

def check_counting_bounds(out: ReductionOutput, f: ForestWitness, instance: str = "") -> CheckReport:
    """Per color and per pair: at most two non-sentinels, no sentinel next to a
    doubled group, and a tripled group must carry both sentinels."""
    name = "counting_bounds"
    if not is_forest(out.g_prime, f.vertices):
        raise ValueError("witness is not an induced forest")
    k = out.instance.k
    groups = []
    for i in range(1, k + 1):
        groups.append((f"color {i}", out.z_vertices(i), out.color_alphas(i)))
        for j in range(i + 1, k + 1):
            groups.append((f"pair ({i},{j})", out.r_vertices(i, j), out.pair_alphas(i, j)))
    for label, members, alphas in groups:
        chosen = [v for v in members if v in f.vertices]
        chosen_alphas = [a for a in alphas if a in f.vertices]
        if len(chosen) > 2:
            return _failed(name, instance, {"group": label, "chosen": chosen})
        if len(chosen) == 2 and chosen_alphas:
            return _failed(name, instance, {"group": label, "chosen": chosen, "alphas": chosen_alphas})
        if len(chosen) + len(chosen_alphas) >= 3 and len(chosen_alphas) != 2:
            return _failed(name, instance, {"group": label, "chosen": chosen, "alphas": chosen_alphas})
    return _passed(name, instance)


def check_forest_shape(out: ReductionOutput, f: ForestWitness, instance: str = "") -> CheckReport:
    """A full-size witness picks both sentinels plus exactly one selector per
    color, both sentinels plus exactly one edge vertex per pair, and the apex."""
    name = "forest_shape"
    if len(f.vertices) != out.k_prime:
        raise ValueError(f"witness must have exactly {out.k_prime} vertices")
    k = out.instance.k
    for i in range(1, k + 1):
        block = set(out.z_vertices(i)) | set(out.color_alphas(i))
        hit = sorted(block & f.vertices)
        zs = [v for v in hit if out.name_index[v].kind == "z"]
        if len(hit) != 3 or len(zs) != 1:
            return _failed(name, instance, {"condition": "I", "i": i, "got": hit})
    for i in range(1, k + 1):
        for j in range(i + 1, k + 1):
            block = set(out.r_vertices(i, j)) | set(out.pair_alphas(i, j))
            hit = sorted(block & f.vertices)
            rs = [v for v in hit if out.name_index[v].kind == "r"]
            if len(hit) != 3 or len(rs) != 1:
                return _failed(name, instance, {"condition": "II", "pair": [i, j], "got": hit})
    if out.beta not in f.vertices:
        return _failed(name, instance, {"condition": "III"})
    return _passed(name, instance)


def check_index_agreement(out: ReductionOutput, f: ForestWitness, instance: str = "") -> CheckReport:
    """Every chosen edge vertex carries exactly the chosen selector indices."""
    name = "index_agreement"
    shape = check_forest_shape(out, f, instance)
    if not shape.passed:
        raise ValueError("witness does not have the full-size forest shape")
    k = out.instance.k
    z_index = {}
    for i in range(1, k + 1):
        (z,) = [v for v in out.z_vertices(i) if v in f.vertices]
        z_index[i] = out.name_index[z].s
    for i in range(1, k + 1):
        for j in range(i + 1, k + 1):
            (r,) = [v for v in out.r_vertices(i, j) if v in f.vertices]
            cls = out.name_index[r]
            if cls.s != z_index[i] or cls.t != z_index[j]:
                return _failed(
                    name,
                    instance,
                    {"r": r, "selector_indices": [z_index[i], z_index[j]]},
                )
    return _passed(name, instance, {"selector_indices": z_index})


def forward_forest(out: ReductionOutput, assignment: tuple[str, ...]) -> frozenset[str]:
    """The forest a part-respecting clique induces: selectors and edge vertices
    of the clique's indices, every sentinel, and the apex."""
    inst = out.instance
    if not is_multicolored_clique(inst, assignment):
        raise ValueError("assignment is not a multicolored clique")
    index_of = {}
    for i, part in enumerate(inst.parts, start=1):
        for s, v in enumerate(part, start=1):
            index_of[v] = (i, s)
    chosen = {v: index_of[v] for v in assignment}
    picks = set(out.alpha_vertices)
    picks.add(out.beta)
    for v, (i, s) in chosen.items():
        picks.add(f"z[{i}]_{s}")
    pairs = sorted(chosen.values())
    for (i, s), (j, t) in itertools.combinations(pairs, 2):
        picks.add(f"r[{i},{j}]_{s},{t}")
    missing = picks - out.g_prime.vertex_set
    if missing:
        raise ValueError(f"forest vertices missing from the output graph: {sorted(missing)}")
    return frozenset(picks)


def check_forward_construction(out: ReductionOutput, assignment: tuple[str, ...], instance: str = "") -> CheckReport:
    """The forward forest has full size, induces a tree, and its non-apex part
    splits into 3-vertex paths whose middles are selectors or edge vertices."""
    name = "forward_construction"
    forest = forward_forest(out, assignment)
    if len(forest) != out.k_prime:
        return _failed(name, instance, {"size": len(forest), "expected": out.k_prime})
    if not is_forest(out.g_prime, forest):
        return _failed(name, instance, {"not_a_forest": sorted(forest)})
    sub = induced_subgraph(out.g_prime, forest)
    if len(sub.edges) != len(forest) - 1:
        return _failed(name, instance, {"edges": len(sub.edges), "vertices": len(forest)})
    # connected + acyclic == tree; acyclicity already holds
    without_apex = induced_subgraph(out.g_prime, forest - {out.beta})
    components = _components(without_apex)
    mids = 0
    for component in components:
        if len(component) != 3:
            return _failed(name, instance, {"component": sorted(component)})
        degrees = {v: sum(1 for u in component if u != v and without_apex.has_edge(u, v)) for v in component}
        middle = [v for v, d in degrees.items() if d == 2]
        if len(middle) != 1 or out.name_index[middle[0]].kind not in ("z", "r"):
            return _failed(name, instance, {"component": sorted(component), "degrees": degrees})
        mids += 1
    expected_paths = out.instance.k + comb(out.instance.k, 2)
    if mids != expected_paths:
        return _failed(name, instance, {"paths": mids, "expected": expected_paths})
    return _passed(name, instance, {"paths": mids})


def _components(g: Graph) -> list[set[str]]:
    seen: set[str] = set()
    components = []
    for v in g.vertices:
        if v in seen:
            continue
        comp = {v}
        stack = [v]
        seen.add(v)
        while stack:
            cur = stack.pop()
            for nxt in g.neighbors(cur):
                if nxt not in seen:
                    seen.add(nxt)
                    comp.add(nxt)
                    stack.append(nxt)
        components.append(comp)
    return components


# ---------------------------------------------------------------------------
# end-to-end equivalence

def end_to_end(inst: MccInstance, instance: str = "", node_budget: int | None = None) -> CheckReport:
    """Clique exists iff a full-size induced forest exists; on yes, extraction
    must return a witness the clique definition validates."""
    out = build_reduction(inst)
    report, _ = _end_to_end_with(out, instance, node_budget)
    return report


def _end_to_end_with(
    out: ReductionOutput, instance: str, node_budget: int | None
) -> tuple[CheckReport, ForestWitness | None]:
    name = "end_to_end"
    clique = solve_mcc(out.instance)
    try:
        forest = solve_mif(out.g_prime, out.k_prime, node_budget)
    except BudgetExceeded:
        return (
            CheckReport(name, instance, "undecided", None, {"mcc": clique is not None}),
            None,
        )
    details = {"mcc": clique is not None, "mif": forest is not None}
    if (clique is None) != (forest is None):
        counterexample: dict = {"mcc": clique.assignment if clique else None}
        if forest is not None:
            counterexample["forest"] = sorted(forest.vertices)
        return _failed(name, instance, counterexample, details), forest
    if forest is not None:
        try:
            witness = extract_clique(out, forest)
        except ContractViolation as exc:
            return _failed(name, instance, {"extraction_error": str(exc)}, details), forest
        if not is_multicolored_clique(out.instance, witness.assignment):
            return _failed(name, instance, {"extracted": list(witness.assignment)}, details), forest
        details["extracted"] = list(witness.assignment)
    return _passed(name, instance, details), forest


# ---------------------------------------------------------------------------
# level driver

def instance_reports(
    desc: str, inst: MccInstance, level: str, node_budget: int | None = None
) -> list[CheckReport]:
    """All checks of the given level (levels are cumulative) for one instance."""
    rank = LEVELS.index(level)
    out = build_reduction(inst)
    reports = [
        check_k_representation(out, desc),
        check_adjacency_characterization(out, desc),
        check_structure(out, desc),
    ]
    if rank >= 1:
        reports.append(check_width_bound(out, desc))
        clique = solve_mcc(inst)
        if clique is not None:
            reports.append(check_forward_construction(out, clique.assignment, desc))
            reports.append(
                check_counting_bounds(out, ForestWitness(forward_forest(out, clique.assignment)), desc)
            )
    if rank >= 2:
        e2e, forest = _end_to_end_with(out, desc, node_budget)
        reports.append(e2e)
        if forest is not None:
            reports.append(check_forest_shape(out, forest, desc))
            reports.append(check_index_agreement(out, forest, desc))
            reports.append(check_counting_bounds(out, forest, desc))
    return reports


def _worker(task: tuple[str, MccInstance, str, int | None]) -> list[CheckReport]:
    return instance_reports(*task)


def verification_tasks(
    seed: int, kmax: int, pmax: int, count: int = 20
) -> list[tuple[str, MccInstance]]:
    tasks: list[tuple[str, MccInstance]] = []
    for k in range(2, kmax + 1):
        for p in range(2, pmax + 1):
            tasks.extend(corpus(k, p, seed, count))
            tasks.extend(crafted_corpus(k, p, seed))
    return tasks


def run_verification(
    level: str,
    seed: int,
    kmax: int = 3,
    pmax: int = 3,
    count: int = 20,
    jobs: int = 1,
    node_budget: int | None = None,
) -> list[CheckReport]:
    """Run the level's checks over the whole seeded corpus, in corpus order."""
    if level not in LEVELS:
        raise ValueError(f"unknown level {level!r}; choose from {LEVELS}")
    tasks = [
        (desc, inst, level, node_budget)
        for desc, inst in verification_tasks(seed, kmax, pmax, count)
    ]
    reports: list[CheckReport] = []
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            for chunk in pool.map(_worker, tasks):
                reports.extend(chunk)
    else:
        for task in tasks:
            reports.extend(_worker(task))
    return reports


def summarize(reports: list[CheckReport]) -> dict[str, dict[str, int]]:
    """Per-check tallies of pass/fail/undecided."""
    summary: dict[str, dict[str, int]] = {}
    for report in reports:
        bucket = summary.setdefault(report.check, {"pass": 0, "fail": 0, "undecided": 0})
        bucket[report.status] += 1
    return summary
