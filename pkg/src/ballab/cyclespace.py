"""F2 edge-set algebra, cycle and weak cycle spaces, and the basis extension.

Edge sets are vectors in F2^E (symmetric difference as addition).  The
boundary map sends an edge to the sum of its endpoints; its kernel is the
cycle space, of dimension |E| - |V| + con(G).  The k-weak cycle space is the
cycle space of the graph obtained by gluing each k-edge-connectivity class
to a point; its dimension is |E| - con_k(G) + con(G).

The basis extension is the deterministic frame behind all isomorphisms:
fundamental cycles of a BFS forest, one short ttrail per missing dimension
of the 3-weak space (their endpoint pairs forming a spanning tree inside
each 3-class), and a spanning forest of the 3-class quotient graph.  The
three families together form a basis of F2^E, which is re-verified by an
explicit rank computation.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Sequence

from ballab.connectivity import (
    Partition,
    connected_components,
    k_edge_classes,
    quotient_graph,
)
from ballab.errors import InternalCheckError
from ballab.multigraph import MultiGraph, SequenceKind, Ttrail, classify_sequence


@dataclass(frozen=True)
class EdgeSet:
    """A bit vector over the host graph's edge order."""

    size: int
    bits: int

    def __post_init__(self) -> None:
        if self.bits < 0 or self.bits >> self.size:
            raise ValueError("bits outside the edge index range")

    @classmethod
    def empty(cls, g: MultiGraph) -> EdgeSet:
        return cls(g.n_edges, 0)

    @classmethod
    def from_indices(cls, g: MultiGraph, indices: Iterable[int]) -> EdgeSet:
        bits = 0
        for i in indices:
            bits ^= 1 << i
        return cls(g.n_edges, bits)

    @classmethod
    def from_edge_ids(cls, g: MultiGraph, ids: Iterable[str]) -> EdgeSet:
        return cls.from_indices(g, (g.edge_index(e) for e in ids))

    def __xor__(self, other: EdgeSet) -> EdgeSet:
        if self.size != other.size:
            raise ValueError("edge sets over different graphs")
        return EdgeSet(self.size, self.bits ^ other.bits)

    __add__ = __xor__  # F2 addition is symmetric difference

    def __len__(self) -> int:
        return self.bits.bit_count()

    def __bool__(self) -> bool:
        return self.bits != 0

    def indices(self) -> tuple[int, ...]:
        return tuple(i for i in range(self.size) if self.bits >> i & 1)

    def contains_index(self, i: int) -> bool:
        return bool(self.bits >> i & 1)

    def edge_ids(self, g: MultiGraph) -> tuple[str, ...]:
        return tuple(g.edges[i][0] for i in self.indices())


@dataclass(frozen=True)
class ShortGenerator:
    """A selected short 3-weakly closed ttrail s' with its image in F2^E."""

    edge_set: EdgeSet
    ttrail: Ttrail
    start: str
    end: str


@dataclass(frozen=True)
class BasisExtension:
    """A basis of F2^E split into cycles, short generators, and forest edges.

    cycles        fundamental cycles c_i with witness ttrails,
                  |E| - |V| + con(G) of them;
    shorts        short generators s'_j, |V| - con_3(G) of them, endpoint
                  pairs spanning each 3-class;
    forest_edges  edge ids e_t of a spanning forest of the 3-class quotient,
                  con_3(G) - con(G) of them;
    reps          one representative vertex w_i per 3-class (first member);
    classes       the 3-edge-connectivity partition used throughout.
    """

    cycles: tuple[tuple[EdgeSet, Ttrail], ...]
    shorts: tuple[ShortGenerator, ...]
    forest_edges: tuple[str, ...]
    reps: tuple[str, ...]
    classes: Partition


def boundary(g: MultiGraph, s: EdgeSet) -> frozenset[str]:
    """The F2 boundary of an edge set: vertices of odd incidence.

    A loop contributes v + v = 0 and therefore never shows up.
    """
    odd: set[str] = set()
    for i in s.indices():
        _, u, w = g.edges[i]
        if u == w:
            continue
        odd.symmetric_difference_update({u, w})
    return frozenset(odd)


def _bfs_forest(g: MultiGraph) -> tuple[set[int], dict[str, tuple[str, int]], dict[str, int]]:
    """Deterministic BFS spanning forest (roots at first vertex per component).

    Returns (tree edge indices, parent map vertex -> (parent, edge index),
    depth map).
    """
    tree: set[int] = set()
    parent: dict[str, tuple[str, int]] = {}
    depth: dict[str, int] = {}
    for root in g.vertices:
        if root in depth:
            continue
        depth[root] = 0
        queue = [root]
        while queue:
            x = queue.pop(0)
            for i in g.incident_edges(x):
                _, u, w = g.edges[i]
                if u == w:
                    continue
                y = w if x == u else u
                if y not in depth:
                    depth[y] = depth[x] + 1
                    parent[y] = (x, i)
                    tree.add(i)
                    queue.append(y)
    return tree, parent, depth


def _tree_path(
    g: MultiGraph,
    parent: dict[str, tuple[str, int]],
    depth: dict[str, int],
    x: str,
    y: str,
) -> tuple[list[str], list[int]]:
    """Vertices and edge indices of the forest path from x to y."""
    up_x: list[tuple[str, int]] = []
    up_y: list[tuple[str, int]] = []
    a, b = x, y
    while depth[a] > depth[b]:
        pa, ea = parent[a]
        up_x.append((a, ea))
        a = pa
    while depth[b] > depth[a]:
        pb, eb = parent[b]
        up_y.append((b, eb))
        b = pb
    while a != b:
        pa, ea = parent[a]
        up_x.append((a, ea))
        a = pa
        pb, eb = parent[b]
        up_y.append((b, eb))
        b = pb
    vertices = [v for v, _ in up_x] + [a] + [v for v, _ in reversed(up_y)]
    edges = [e for _, e in up_x] + [e for _, e in reversed(up_y)]
    return vertices, edges


@lru_cache(maxsize=None)
def cycle_space_basis(g: MultiGraph) -> tuple[tuple[EdgeSet, Ttrail], ...]:
    """Fundamental cycles of the BFS forest, one per non-tree edge.

    Each comes with a witness cycle ttrail; the count is |E|-|V|+con(G) and
    every edge set lies in the kernel of the boundary map.
    """
    tree, parent, depth = _bfs_forest(g)
    basis: list[tuple[EdgeSet, Ttrail]] = []
    for i, (e, u, w) in enumerate(g.edges):
        if i in tree:
            continue
        if u == w:
            cycle = Ttrail(((u, e),), u)
            edge_set = EdgeSet.from_indices(g, [i])
        else:
            vertices, edges = _tree_path(g, parent, depth, u, w)
            steps = [(vertices[j], g.edges[edges[j]][0]) for j in range(len(edges))]
            steps.append((w, e))
            cycle = Ttrail(tuple(steps), u)
            edge_set = EdgeSet.from_indices(g, edges + [i])
        if classify_sequence(g, cycle) is not SequenceKind.CYCLE:
            raise InternalCheckError("fundamental cycle witness is not a cycle")
        if boundary(g, edge_set):
            raise InternalCheckError("fundamental cycle has non-empty boundary")
        basis.append((edge_set, cycle))
    expected = g.n_edges - g.n_vertices + connected_components(g).num_blocks
    if len(basis) != expected:
        raise InternalCheckError("cycle space dimension mismatch")
    return tuple(basis)


def weak_cycle_space(g: MultiGraph, k: int) -> tuple[int, list[EdgeSet]]:
    """Dimension and a basis of the k-weak cycle space of g.

    The basis is the fundamental cycle basis of the quotient by the
    k-edge-connectivity classes; edge ids and their order survive the
    quotient, so its edge sets are already edge sets of g.
    """
    classes = k_edge_classes(g, k)
    quotient, _ = quotient_graph(g, classes)
    basis = [EdgeSet(g.n_edges, es.bits) for es, _ in cycle_space_basis(quotient)]
    dim = g.n_edges - classes.num_blocks + connected_components(g).num_blocks
    if len(basis) != dim:
        raise InternalCheckError("weak cycle space dimension mismatch")
    return dim, basis


def decompose_homological_cycle(g: MultiGraph, c: EdgeSet) -> list[Ttrail]:
    """Split an element of Ker(boundary) into edge-disjoint cycles.

    Constructive walk: extend from an unused edge until a vertex repeats,
    split off the cycle between the two visits, continue with the prefix.
    The returned cycle edge sets partition c.
    """
    if boundary(g, c):
        raise ValueError("edge set is not a homological cycle (non-empty boundary)")
    remaining = set(c.indices())
    incident: dict[str, list[int]] = {}
    for i in sorted(remaining):
        _, u, w = g.edges[i]
        incident.setdefault(u, []).append(i)
        if w != u:
            incident.setdefault(w, []).append(i)

    cycles: list[Ttrail] = []
    while remaining:
        start_edge = min(remaining)
        walk_v = [g.edges[start_edge][1]]
        walk_e: list[int] = []
        pos = {walk_v[0]: 0}
        while True:
            x = walk_v[-1]
            next_edge = next(
                (i for i in incident.get(x, ()) if i in remaining), None
            )
            if next_edge is None:
                if walk_e:
                    raise InternalCheckError("walk stalled with pending edges")
                break
            remaining.discard(next_edge)
            _, a, b = g.edges[next_edge]
            y = b if x == a else a
            if y in pos:
                j = pos[y]
                steps = [
                    (walk_v[t], g.edges[walk_e[t]][0]) for t in range(j, len(walk_e))
                ]
                steps.append((x, g.edges[next_edge][0]))
                cycle = Ttrail(tuple(steps), y)
                if classify_sequence(g, cycle) is not SequenceKind.CYCLE:
                    raise InternalCheckError("split-off piece is not a cycle")
                cycles.append(cycle)
                for v in walk_v[j + 1 :]:
                    pos.pop(v, None)
                del walk_v[j + 1 :]
                del walk_e[j:]
            else:
                walk_v.append(y)
                walk_e.append(next_edge)
                pos[y] = len(walk_v) - 1

    covered = EdgeSet.empty(g)
    for cycle in cycles:
        piece = EdgeSet.from_edge_ids(g, cycle.edge_seq)
        if covered.bits & piece.bits:
            raise InternalCheckError("cycle pieces are not edge-disjoint")
        covered ^= piece
    if covered != c:
        raise InternalCheckError("cycle pieces do not cover the input")
    return cycles


def decompose_into_short(
    g: MultiGraph, p: Ttrail, classes: Partition | None = None
) -> list[Ttrail]:
    """Unique split of a 3-weakly closed ttrail into short pieces.

    Cut before every inner vertex 3-edge-connected to the start (and at the
    terminal); pieces concatenate back to p.  The trivial ttrail yields [].
    """
    if classes is None:
        classes = k_edge_classes(g, 3)
    if p.is_trivial or not p.steps:
        return []
    start = p.start
    assert start is not None and p.end is not None
    if not classes.same_block(start, p.end):
        raise ValueError("ttrail endpoints are not 3-edge-connected")
    home = classes.block_of(start)
    pieces: list[Ttrail] = []
    current: list[tuple[str, str]] = []
    for j, step in enumerate(p.steps):
        current.append(step)
        nxt = p.steps[j + 1][0] if j + 1 < len(p.steps) else p.end
        if classes.block_of(nxt) == home:
            pieces.append(Ttrail(tuple(current), nxt))
            current = []
    if current:
        raise InternalCheckError("short decomposition left a dangling piece")
    return pieces


def _short_from_bfs(
    g: MultiGraph, classes: Partition, v: str
) -> Ttrail | None:
    """BFS from v through outside-class vertices to the nearest classmate."""
    home = classes.block_of(v)
    parent: dict[str, tuple[str, int]] = {}
    seen = {v}
    queue = [v]
    while queue:
        x = queue.pop(0)
        for i in g.incident_edges(x):
            e, a, b = g.edges[i]
            if a == b:
                continue
            y = b if x == a else a
            if y in seen:
                continue
            if classes.block_of(y) == home:
                steps = [(x, e)]
                while x != v:
                    px, pi = parent[x]
                    steps.append((px, g.edges[pi][0]))
                    x = px
                return Ttrail(tuple(reversed(steps)), y)
            seen.add(y)
            parent[y] = (x, i)
            queue.append(y)
    return None


def _bfs_simple_path(g: MultiGraph, u: str, w: str) -> Ttrail:
    """Shortest path u -> w as a ttrail (insertion-order tie-breaks)."""
    parent: dict[str, tuple[str, int]] = {}
    seen = {u}
    queue = [u]
    while queue:
        x = queue.pop(0)
        if x == w:
            break
        for i in g.incident_edges(x):
            _, a, b = g.edges[i]
            if a == b:
                continue
            y = b if x == a else a
            if y not in seen:
                seen.add(y)
                parent[y] = (x, i)
                queue.append(y)
    if w not in seen:
        raise InternalCheckError("no path between vertices of one 3-class")
    steps = []
    x = w
    while x != u:
        px, pi = parent[x]
        steps.append((px, g.edges[pi][0]))
        x = px
    return Ttrail(tuple(reversed(steps)), w)


@lru_cache(maxsize=None)
def select_short_generators(g: MultiGraph) -> tuple[ShortGenerator, ...]:
    """m-1 short ttrails per 3-class of size m, endpoint pairs spanning it.

    Greedy BFS from each class vertex truncated at the first classmate; if
    the endpoint graph stays disconnected, a connecting path is decomposed
    into shorts and its pieces added until the class is spanned.
    """
    classes = k_edge_classes(g, 3)
    result: list[ShortGenerator] = []
    for block in classes.blocks:
        if len(block) < 2:
            continue
        leader: dict[str, str] = {v: v for v in block}

        def find(x: str) -> str:
            while leader[x] != x:
                leader[x] = leader[leader[x]]
                x = leader[x]
            return x

        adopted: list[Ttrail] = []

        def adopt(t: Ttrail) -> None:
            a, b = t.start, t.end
            assert a is not None and b is not None
            ra, rb = find(a), find(b)
            if ra != rb:
                leader[ra] = rb
                adopted.append(t)

        for v in block:
            candidate = _short_from_bfs(g, classes, v)
            if candidate is not None:
                adopt(candidate)
        while len({find(v) for v in block}) > 1:
            roots = sorted({find(v) for v in block}, key=g.vertex_index)
            u = min((v for v in block if find(v) == roots[0]), key=g.vertex_index)
            w = min((v for v in block if find(v) == roots[1]), key=g.vertex_index)
            before = len({find(v) for v in block})
            for piece in decompose_into_short(g, _bfs_simple_path(g, u, w), classes):
                adopt(piece)
            if len({find(v) for v in block}) >= before:
                raise InternalCheckError("short generator repair made no progress")
        if len(adopted) != len(block) - 1:
            raise InternalCheckError("short generator count is off")
        for t in adopted:
            assert t.start is not None and t.end is not None
            result.append(
                ShortGenerator(
                    edge_set=EdgeSet.from_edge_ids(g, t.edge_seq),
                    ttrail=t,
                    start=t.start,
                    end=t.end,
                )
            )
    return tuple(result)


def _f2_rank(vectors: Sequence[int]) -> int:
    pivots: dict[int, int] = {}  # leading bit -> reduced vector
    for vec in vectors:
        while vec:
            top = vec.bit_length() - 1
            if top not in pivots:
                pivots[top] = vec
                break
            vec ^= pivots[top]
    return len(pivots)


def _quotient_forest(g: MultiGraph, classes: Partition) -> tuple[str, ...]:
    """Spanning forest of the 3-class quotient, scanning edges in order."""
    leader = {b: b for b in range(classes.num_blocks)}

    def find(x: int) -> int:
        while leader[x] != x:
            leader[x] = leader[leader[x]]
            x = leader[x]
        return x

    forest: list[str] = []
    for e, u, w in g.edges:
        ru, rw = find(classes.block_of(u)), find(classes.block_of(w))
        if ru != rw:
            leader[ru] = rw
            forest.append(e)
    return tuple(forest)


@lru_cache(maxsize=None)
def basis_extension(g: MultiGraph) -> BasisExtension:
    """Assemble and verify the deterministic basis of F2^E."""
    classes = k_edge_classes(g, 3)
    cycles = cycle_space_basis(g)
    shorts = select_short_generators(g)
    forest = _quotient_forest(g, classes)
    reps = tuple(block[0] for block in classes.blocks)

    con = connected_components(g).num_blocks
    con3 = classes.num_blocks
    if len(shorts) != g.n_vertices - con3:
        raise InternalCheckError("short generator count mismatch")
    if len(forest) != con3 - con:
        raise InternalCheckError("quotient forest size mismatch")
    vectors = (
        [es.bits for es, _ in cycles]
        + [s.edge_set.bits for s in shorts]
        + [1 << g.edge_index(e) for e in forest]
    )
    if len(vectors) != g.n_edges or _f2_rank(vectors) != g.n_edges:
        raise InternalCheckError("cycles, shorts and forest edges do not form a basis")
    return BasisExtension(
        cycles=cycles,
        shorts=shorts,
        forest_edges=forest,
        reps=reps,
        classes=classes,
    )
