"""Brute-force ground truth for balance, counting, and connectivity.

Checking all simple cycles suffices for balancedness: the edge set of any
closed ttrail splits into edge-disjoint cycles, and each visit of a vertex
on the ttrail corresponds to exactly one partition cycle through it (at a
vertex visited m times the ttrail uses 2m incident edge slots, and the
partition cycles through it account for the same slots two at a time).  So
a labeling vanishing on every simple cycle vanishes on every closed ttrail.

Cycles are enumerated by backtracking from a minimal anchor edge; counts
enumerate the full labeling space through the kernels backend; connectivity
classes are re-derived from the deletion side of Menger's theorem.  All
bounds are explicit and overruns raise instead of silently truncating.
"""

from __future__ import annotations

import itertools
import math
from functools import lru_cache

from ballab.abelian import FiniteAbelianGroup
from ballab.connectivity import Partition, connected_components
from ballab.errors import BoundExceededError, InternalCheckError
from ballab.kernels import (
    LinearForm,
    count_outer_satisfiable,
    count_satisfying,
)
from ballab.labelings import (
    EdgeLabeling,
    FullLabeling,
    VertexLabeling,
    balance,
    labeling_from_index,
    value_along,
)
from ballab.multigraph import MultiGraph, SequenceKind, Ttrail, classify_sequence

DEFAULT_CYCLE_EDGE_BOUND = 14
DEFAULT_COUNT_BOUND = 1_000_000
DEFAULT_DELETION_BOUND = 1_000_000


@lru_cache(maxsize=None)
def enumerate_simple_cycles(
    g: MultiGraph, max_edges: int = DEFAULT_CYCLE_EDGE_BOUND
) -> tuple[Ttrail, ...]:
    """Every simple cycle once (by edge set), as a deterministic witness.

    Loops give 1-cycles and parallel pairs give 2-cycles.  Each cycle is
    anchored at its smallest edge: the backtracking search walks from that
    edge's second endpoint back to the first using larger edges only.
    """
    if g.n_edges > max_edges:
        raise BoundExceededError(
            f"|E| = {g.n_edges} exceeds the cycle enumeration bound {max_edges}"
        )
    cycles: list[Ttrail] = []
    seen_sets: set[frozenset[str]] = set()

    def emit(cycle: Ttrail) -> None:
        if classify_sequence(g, cycle) is not SequenceKind.CYCLE:
            raise InternalCheckError("enumerated sequence is not a cycle")
        edge_set = frozenset(cycle.edge_seq)
        if edge_set in seen_sets:
            raise InternalCheckError("cycle enumerated twice")
        seen_sets.add(edge_set)
        cycles.append(cycle)

    for anchor, (e, u, w) in enumerate(g.edges):
        if u == w:
            emit(Ttrail(((u, e),), u))
            continue
        path_steps: list[tuple[str, str]] = []
        visited = {w}

        def extend(x: str) -> None:
            for i in g.incident_edges(x):
                if i <= anchor:
                    continue
                eid, a, b = g.edges[i]
                if a == b:
                    continue
                y = b if x == a else a
                if y == u:
                    emit(Ttrail(((u, e), *path_steps, (x, eid)), u))
                elif y not in visited:
                    visited.add(y)
                    path_steps.append((x, eid))
                    extend(y)
                    path_steps.pop()
                    visited.remove(y)

        extend(w)
    return tuple(cycles)


def oracle_is_balanced(
    g: MultiGraph,
    group: FiniteAbelianGroup,
    labeling: EdgeLabeling | FullLabeling,
    max_edges: int = DEFAULT_CYCLE_EDGE_BOUND,
) -> bool:
    """Ground-truth balance check: zero sum over every simple cycle."""
    if isinstance(labeling, VertexLabeling):
        raise TypeError("balance is defined for edge and full labelings")
    if labeling.group != group:
        raise ValueError("labeling group does not match")
    return all(
        value_along(labeling, cycle).is_zero()
        for cycle in enumerate_simple_cycles(g, max_edges)
    )


def oracle_forms(g: MultiGraph, group: FiniteAbelianGroup, which: str) -> list[LinearForm]:
    """Simple-cycle zero-sum conditions over the enumeration item order.

    For H the items are the edges; for W (and the inner part of B) the
    vertices come first, then the edges.
    """
    w = which.upper()
    if w not in ("H", "W"):
        raise ValueError("oracle forms exist for H and W only")
    zero_targets = (0,) * group.rank
    n_v = g.n_vertices
    forms = []
    for cycle in enumerate_simple_cycles(g):
        items = []
        if w == "W":
            items += [g.vertex_index(v) for v in cycle.vertex_seq]
            items += [n_v + g.edge_index(e) for e in cycle.edge_seq]
        else:
            items += [g.edge_index(e) for e in cycle.edge_seq]
        forms.append(LinearForm(tuple(items), (1,) * len(items), zero_targets))
    return forms


def oracle_count_balanced(
    g: MultiGraph,
    group: FiniteAbelianGroup,
    which: str,
    bound: int = DEFAULT_COUNT_BOUND,
) -> int:
    """Exhaustive count of balanced labelings (H, W) or balanceable ones (B).

    For B every vertex labeling is enumerated; with the full joint space
    within bound the edge completions are exhausted directly, otherwise the
    solver constructs a balancer and its output is verified by the oracle.
    """
    w = which.upper()
    card = group.order
    if w == "H":
        space = card**g.n_edges
        if space > bound:
            raise BoundExceededError(f"|A|^|E| = {space} exceeds bound {bound}")
        return count_satisfying(group.moduli, g.n_edges, oracle_forms(g, group, "H"))
    if w == "W":
        space = card ** (g.n_vertices + g.n_edges)
        if space > bound:
            raise BoundExceededError(f"|A|^(|V|+|E|) = {space} exceeds bound {bound}")
        return count_satisfying(
            group.moduli,
            g.n_vertices + g.n_edges,
            oracle_forms(g, group, "W"),
        )
    if w != "B":
        raise ValueError(f"unknown labeling family {which!r}; expected H, B or W")
    joint_space = card ** (g.n_vertices + g.n_edges)
    if joint_space <= bound:
        return count_outer_satisfiable(
            group.moduli,
            g.n_vertices,
            g.n_vertices + g.n_edges,
            oracle_forms(g, group, "W"),
        )
    vertex_space = card**g.n_vertices
    if vertex_space > bound:
        raise BoundExceededError(f"|A|^|V| = {vertex_space} exceeds bound {bound}")
    count = 0
    for index in range(vertex_space):
        gv = labeling_from_index(g, group, "B", index)
        assert isinstance(gv, VertexLabeling)
        f = balance(g, group, gv)
        if f is None:
            continue
        if not oracle_is_balanced(g, group, FullLabeling.from_parts(gv, f)):
            raise InternalCheckError("constructed balancer failed the oracle")
        count += 1
    return count


def oracle_k_classes(
    g: MultiGraph, k: int, bound: int = DEFAULT_DELETION_BOUND
) -> Partition:
    """k-edge-connectivity classes from the deletion side of Menger's theorem.

    u ~ v iff no deletion of k-1 edges (all edges, when fewer exist)
    disconnects them; vertices are grouped by their connectivity signature
    across all deletions.
    """
    if k < 1:
        raise ValueError("k must be a positive integer")
    if k == 1 or g.n_edges == 0:
        return connected_components(g)
    subset_size = min(k - 1, g.n_edges)
    n_subsets = math.comb(g.n_edges, subset_size)
    if n_subsets * (g.n_edges + g.n_vertices) > bound:
        raise BoundExceededError(
            f"deletion check needs {n_subsets} subsets, exceeding bound {bound}"
        )
    signatures: dict[str, list[int]] = {v: [] for v in g.vertices}
    for removed in itertools.combinations(range(g.n_edges), subset_size):
        removed_set = set(removed)
        label: dict[str, int] = {}
        next_label = 0
        for root in g.vertices:
            if root in label:
                continue
            label[root] = next_label
            queue = [root]
            while queue:
                x = queue.pop(0)
                for i in g.incident_edges(x):
                    if i in removed_set:
                        continue
                    _, a, b = g.edges[i]
                    y = b if x == a else a
                    if y not in label:
                        label[y] = next_label
                        queue.append(y)
            next_label += 1
        for v in g.vertices:
            signatures[v].append(label[v])
    blocks: dict[tuple[int, ...], list[str]] = {}
    for v in g.vertices:
        blocks.setdefault(tuple(signatures[v]), []).append(v)
    return Partition.from_blocks(g, blocks.values())
