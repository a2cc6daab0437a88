"""Edge connectivity: components, edge-disjoint paths, k-classes, quotients.

Two distinct vertices are k-edge-connected when k pairwise edge-disjoint
ttrails join them; by convention every vertex is k-edge-connected to itself.
This is an equivalence relation, and the partition into classes refines as k
grows, which the class computation exploits: level k is obtained by
splitting the level k-1 blocks using unit-capacity max-flow checks.

The flow model puts one forward and one backward unit arc on every non-loop
edge (loops never contribute to connectivity between distinct vertices).
Augmenting paths are searched breadth-first scanning edges in insertion
order, so returned path sets are reproducible.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterable

from ballab.errors import InternalCheckError
from ballab.multigraph import MultiGraph, SequenceKind, Ttrail, classify_sequence


@dataclass(frozen=True)
class Partition:
    """A partition of the vertex set into ordered blocks.

    Blocks are ordered by their smallest member's insertion order and each
    block lists its members in insertion order.
    """

    blocks: tuple[tuple[str, ...], ...]

    _index: dict[str, int] = field(
        init=False, repr=False, compare=False, hash=False, default_factory=dict
    )

    def __post_init__(self) -> None:
        index: dict[str, int] = {}
        for b, block in enumerate(self.blocks):
            for v in block:
                if v in index:
                    raise ValueError(f"vertex {v!r} appears in two blocks")
                index[v] = b
        object.__setattr__(self, "_index", index)

    @classmethod
    def from_blocks(cls, g: MultiGraph, blocks: Iterable[Iterable[str]]) -> Partition:
        """Canonicalize arbitrary blocks against the graph's vertex order."""
        order = {v: i for i, v in enumerate(g.vertices)}
        normalized = [tuple(sorted(block, key=order.__getitem__)) for block in blocks]
        normalized.sort(key=lambda block: order[block[0]])
        part = cls(tuple(normalized))
        if {v for block in part.blocks for v in block} != set(g.vertices):
            raise ValueError("blocks do not cover the vertex set exactly")
        return part

    @property
    def num_blocks(self) -> int:
        return len(self.blocks)

    def block_of(self, v: str) -> int:
        if v not in self._index:
            raise ValueError(f"unknown vertex id {v!r}")
        return self._index[v]

    def same_block(self, u: str, v: str) -> bool:
        return self.block_of(u) == self.block_of(v)


@lru_cache(maxsize=None)
def connected_components(g: MultiGraph) -> Partition:
    """Standard connectivity partition; con(G) is its number of blocks."""
    seen: set[str] = set()
    blocks: list[list[str]] = []
    for root in g.vertices:
        if root in seen:
            continue
        queue = [root]
        seen.add(root)
        block = []
        while queue:
            x = queue.pop(0)
            block.append(x)
            for i in g.incident_edges(x):
                _, u, w = g.edges[i]
                y = w if x == u else u
                if y not in seen:
                    seen.add(y)
                    queue.append(y)
        blocks.append(block)
    return Partition.from_blocks(g, blocks)


def max_edge_disjoint_paths(
    g: MultiGraph, u: str, v: str, cap: int
) -> tuple[int, list[Ttrail]]:
    """min(cap, maximum number of pairwise edge-disjoint ttrails u -> v).

    Unit-capacity augmenting-path flow on the bidirected edge model; the
    returned ttrails are pairwise edge-disjoint and verified well-formed.
    u = v is rejected: a vertex counts as infinitely connected to itself and
    must be handled by the caller.
    """
    if cap < 1:
        raise ValueError("cap must be a positive integer")
    g.vertex_index(u)
    g.vertex_index(v)
    if u == v:
        raise ValueError(
            "edge-disjoint path search needs distinct endpoints "
            "(a vertex is k-edge-connected to itself by convention)"
        )

    # Arc 2*i is edge i traversed u->w as stored, arc 2*i+1 the reverse.
    flow = [0] * (2 * g.n_edges)
    count = 0
    while count < cap:
        parent: dict[str, tuple[str, int, str, bool]] = {}
        queue = [u]
        seen = {u}
        while queue and v not in seen:
            x = queue.pop(0)
            for i in g.incident_edges(x):
                e, a, b = g.edges[i]
                if a == b:
                    continue
                y = b if x == a else a
                if y in seen:
                    continue
                fwd = 2 * i if x == a else 2 * i + 1
                rev = fwd ^ 1
                if flow[fwd] == 0:
                    parent[y] = (x, fwd, e, True)
                elif flow[rev] == 1:
                    parent[y] = (x, rev, e, False)
                else:
                    continue
                seen.add(y)
                queue.append(y)
        if v not in seen:
            break
        x = v
        while x != u:
            px, arc, _, forward = parent[x]
            flow[arc] = 1 if forward else 0
            x = px
        count += 1

    # Opposite unit flows on one edge form a removable 2-cycle.
    for i in range(g.n_edges):
        if flow[2 * i] and flow[2 * i + 1]:
            flow[2 * i] = flow[2 * i + 1] = 0

    paths = []
    used = [False] * (2 * g.n_edges)
    for _ in range(count):
        steps: list[tuple[str, str]] = []
        x = u
        while x != v:
            for i in g.incident_edges(x):
                e, a, b = g.edges[i]
                if a == b:
                    continue
                arc = 2 * i if x == a else 2 * i + 1
                if flow[arc] == 1 and not used[arc]:
                    used[arc] = True
                    steps.append((x, e))
                    x = b if x == a else a
                    break
            else:
                raise InternalCheckError("flow walk stalled before the sink")
        path = Ttrail(tuple(steps), v)
        if classify_sequence(g, path) is not SequenceKind.OPEN_TTRAIL:
            raise InternalCheckError("extracted flow path is not an open ttrail")
        paths.append(path)

    all_edges = [e for p in paths for e in p.edge_seq]
    if len(set(all_edges)) != len(all_edges):
        raise InternalCheckError("extracted flow paths share an edge")
    return count, paths


@lru_cache(maxsize=None)
def k_edge_classes(g: MultiGraph, k: int) -> Partition:
    """Partition of V into k-edge-connectivity classes.

    Level 1 is plain connectivity; each next level splits existing blocks,
    comparing every vertex against one representative per sub-block (valid
    because the relation is an equivalence).
    """
    if k < 1:
        raise ValueError("k must be a positive integer")
    part = connected_components(g)
    for level in range(2, k + 1):
        refined: list[list[str]] = []
        for block in part.blocks:
            sub: list[list[str]] = []
            for v in block:
                for candidate in sub:
                    count, _ = max_edge_disjoint_paths(g, v, candidate[0], cap=level)
                    if count >= level:
                        candidate.append(v)
                        break
                else:
                    sub.append([v])
            refined.extend(sub)
        part = Partition.from_blocks(g, refined)
    return part


def quotient_graph(g: MultiGraph, part: Partition) -> tuple[MultiGraph, dict[str, str]]:
    """Glue each block to a single vertex, keeping every edge and its id.

    The quotient vertex of a block is named after the block's first member;
    edges internal to a block become loops.  Returns the quotient and the
    vertex map.
    """
    if {v for block in part.blocks for v in block} != set(g.vertices):
        raise ValueError("partition does not match the graph's vertex set")
    vmap = {v: part.blocks[part.block_of(v)][0] for v in g.vertices}
    q_vertices = tuple(block[0] for block in part.blocks)
    q_edges = tuple((e, vmap[u], vmap[w]) for e, u, w in g.edges)
    return MultiGraph(q_vertices, q_edges), vmap
