"""Exact brute-force solvers: multicolored clique, induced forest, feedback vertex set.

Exactness is the contract here. The induced-forest search is a deterministic
branch and bound (lowest-id vertex first, include branch before exclude,
acyclicity maintained by an undoable union-find); when the node budget runs
out it raises BudgetExceeded instead of guessing.
"""
from __future__ import annotations

import os
from dataclasses import dataclass

from .graph_core import Graph, is_forest
from .reduction import BETA, MccInstance, ReductionOutput

DEFAULT_NODE_BUDGET = 20_000_000
BUDGET_ENV_VAR = "MIMRED_BUDGET"


class BudgetExceeded(RuntimeError):
    """Search aborted by the node budget; the answer is undecided, not no."""


class ContractViolation(RuntimeError):
    """An input broke a guarantee its producer was required to establish."""


@dataclass(frozen=True)
class CliqueWitness:
    assignment: tuple[str, ...]


@dataclass(frozen=True)
class ForestWitness:
    vertices: frozenset[str]


def effective_node_budget(explicit: int | None = None) -> int:
    if explicit is not None:
        return explicit
    env = os.environ.get(BUDGET_ENV_VAR)
    if env is not None:
        return int(env)
    return DEFAULT_NODE_BUDGET


def is_multicolored_clique(inst: MccInstance, assignment: tuple[str, ...]) -> bool:
    """One vertex per part, pairwise adjacent."""
    if len(assignment) != inst.k:
        return False
    for part, v in zip(inst.parts, assignment):
        if v not in part:
            return False
    return all(
        inst.graph.has_edge(assignment[a], assignment[b])
        for a in range(inst.k)
        for b in range(a + 1, inst.k)
    )


def solve_mcc(inst: MccInstance) -> CliqueWitness | None:
    """First part-respecting clique in deterministic order, or None."""
    chosen: list[str] = []

    def extend(i: int) -> bool:
        if i == inst.k:
            return True
        for v in inst.parts[i]:
            if all(inst.graph.has_edge(v, w) for w in chosen):
                chosen.append(v)
                if extend(i + 1):
                    return True
                chosen.pop()
        return False

    if extend(0):
        return CliqueWitness(tuple(chosen))
    return None


def solve_mif(g: Graph, size: int, node_budget: int | None = None) -> ForestWitness | None:
    """Induced forest on exactly `size` vertices, or None if none exists.

    Deleting a leaf keeps a forest a forest, so "exactly size" and "at least
    size" have the same answer; the search stops as soon as `size` vertices
    are in. The MIMRED_BUDGET environment variable overrides the default node
    budget when `node_budget` is not given.
    """
    n = len(g.vertices)
    if size < 0 or size > n:
        raise ValueError(f"size {size} out of range 0..{n}")
    if size == 0:
        return ForestWitness(frozenset())
    order = sorted(g.vertices)
    index = {v: i for i, v in enumerate(order)}
    adj = [0] * n
    for u, v in g.edges:
        iu, iv = index[u], index[v]
        adj[iu] |= 1 << iv
        adj[iv] |= 1 << iu
    budget = effective_node_budget(node_budget)

    parent = list(range(n))
    rank = [0] * n
    trail: list[tuple[int, int, bool]] = []

    def find(x: int) -> int:
        while parent[x] != x:
            x = parent[x]
        return x

    def union(a: int, b: int) -> None:  # both must be roots
        if rank[a] < rank[b]:
            a, b = b, a
        parent[b] = a
        bumped = rank[a] == rank[b]
        if bumped:
            rank[a] += 1
        trail.append((b, a, bumped))

    def undo(mark: int) -> None:
        while len(trail) > mark:
            b, a, bumped = trail.pop()
            parent[b] = b
            if bumped:
                rank[a] -= 1

    visited = 0
    included_mask = 0
    picked: list[int] = []
    found: frozenset[str] | None = None

    def explore(idx: int, count: int) -> bool:
        nonlocal visited, included_mask, found
        visited += 1
        if visited > budget:
            raise BudgetExceeded(f"induced-forest search exceeded {budget} nodes")
        if count == size:
            found = frozenset(order[i] for i in picked)
            return True
        if count + (n - idx) < size:
            return False
        v = idx
        nbrs = adj[v] & included_mask
        roots: set[int] = set()
        acyclic = True
        m = nbrs
        while m:
            low = m & -m
            m ^= low
            r = find(low.bit_length() - 1)
            if r in roots:
                acyclic = False
                break
            roots.add(r)
        if acyclic:
            mark = len(trail)
            for r in roots:
                union(find(v), r)
            included_mask |= 1 << v
            picked.append(v)
            if explore(idx + 1, count + 1):
                return True
            picked.pop()
            included_mask ^= 1 << v
            undo(mark)
        return explore(idx + 1, count)

    if not explore(0, 0):
        return None
    witness = ForestWitness(found)
    if not is_forest(g, witness.vertices):
        raise RuntimeError("internal error: search produced a non-forest witness")
    return witness


def solve_fvs(g: Graph, budget: int, node_budget: int | None = None) -> frozenset[str] | None:
    """Vertex set of exactly `budget` vertices whose removal leaves a forest.

    Solved through the complement identity: a deletion set of size b exists
    iff an induced forest on n - b vertices does.
    """
    n = len(g.vertices)
    if budget < 0 or budget > n:
        raise ValueError(f"budget {budget} out of range 0..{n}")
    witness = solve_mif(g, n - budget, node_budget)
    if witness is None:
        return None
    return frozenset(g.vertex_set - witness.vertices)


def forest_shape_selection(
    out: ReductionOutput, f: ForestWitness
) -> tuple[dict[int, int], dict[tuple[int, int], tuple[int, int]]]:
    """Selector and edge indices of a full-size forest witness.

    Requires the witness to contain, per color, both sentinels plus exactly
    one selector; per pair, both sentinels plus exactly one edge vertex; and
    the apex. Violations raise ContractViolation because a genuine full-size
    induced forest cannot break them.
    """
    vs = f.vertices
    if len(vs) != out.k_prime:
        raise ContractViolation(
            f"expected a witness of size {out.k_prime}, got {len(vs)}"
        )
    if BETA not in vs:
        raise ContractViolation("witness does not contain the apex vertex")
    k = out.instance.k
    z_choice: dict[int, int] = {}
    r_choice: dict[tuple[int, int], tuple[int, int]] = {}
    for i in range(1, k + 1):
        ax, ay = out.color_alphas(i)
        if ax not in vs or ay not in vs:
            raise ContractViolation(f"witness misses a sentinel for color {i}")
        zs = [v for v in out.z_vertices(i) if v in vs]
        if len(zs) != 1:
            raise ContractViolation(f"witness must pick exactly one selector for color {i}")
        z_choice[i] = out.name_index[zs[0]].s
    for i in range(1, k + 1):
        for j in range(i + 1, k + 1):
            ax, ay = out.pair_alphas(i, j)
            if ax not in vs or ay not in vs:
                raise ContractViolation(f"witness misses a sentinel for pair ({i},{j})")
            rs = [v for v in out.r_vertices(i, j) if v in vs]
            if len(rs) != 1:
                raise ContractViolation(
                    f"witness must pick exactly one edge vertex for pair ({i},{j})"
                )
            cls = out.name_index[rs[0]]
            r_choice[(i, j)] = (cls.s, cls.t)
    return z_choice, r_choice


def extract_clique(out: ReductionOutput, f: ForestWitness) -> CliqueWitness:
    """Read the clique back out of a full-size induced forest witness."""
    z_choice, _ = forest_shape_selection(out, f)
    assignment = tuple(
        out.clique_vertex(i, z_choice[i]) for i in range(1, out.instance.k + 1)
    )
    if not is_multicolored_clique(out.instance, assignment):
        raise ContractViolation(
            "extracted assignment is not a multicolored clique; the witness "
            "cannot be a genuine full-size induced forest"
        )
    return CliqueWitness(assignment)
