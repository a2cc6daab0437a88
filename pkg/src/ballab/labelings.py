"""Balanced labelings: deciders, balancing, structure formulas, isomorphisms.

A labeling sums along a ttrail v1,e1,...,vn,en as
h(v1)+h(e1)+...+h(vn)+h(en): the terminal vertex is excluded, and for pure
edge labelings the vertex terms are absent.  Balanced means the sum is zero
along every closed ttrail.

The fast deciders evaluate a finite condition set read off the basis
extension: zero sums over the fundamental cycles, plus one doubled condition
per short generator s' (from x to y):

    edge labelings:   2 * f(s'-edge-set) = 0        (value lands in A_2),
    full labelings:   2 * h(s')          = h(x) - h(y).

The second identity follows from summing a short against two edge-disjoint
companion ttrails; note the orientation: the *start* value enters with plus.
These finite condition sets are validated wholesale against the brute-force
oracle by the test suite, which fails on any disagreement.

All inverse isomorphisms solve the signed integer constraint systems with
the Smith-normal-form solver instead of expanding F2-linearly: the F2
expansion only determines values up to 2A and does not track signs.

Structure formulas (c = con(G), c3 = con_3(G)):

    H(E,A)       ~ A^(c3-c) x A_2^(|V|-c3)
    B(V,A)       ~ A^c3     x (2A)^(|V|-c3)
    W(V u E, A)  ~ A^(|V|+c3-c)
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from functools import lru_cache
from typing import Sequence

from ballab.abelian import (
    FiniteAbelianGroup,
    GroupElement,
    GroupStructure,
    element_at,
    element_index,
    in_double_image,
    in_two_torsion,
    parse_element,
    structure_cardinality,
)
from ballab.connectivity import connected_components
from ballab.cyclespace import BasisExtension, basis_extension
from ballab.errors import FormatError, InternalCheckError
from ballab.kernels import LinearForm
from ballab.linsolve import SmithSolver
from ballab.multigraph import MultiGraph, Ttrail


def _check_which(which: str) -> str:
    w = which.upper()
    if w not in ("H", "B", "W"):
        raise ValueError(f"unknown labeling family {which!r}; expected H, B or W")
    return w


# ---------------------------------------------------------------------------
# Labeling types
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class EdgeLabeling:
    """A total map E -> A."""

    group: FiniteAbelianGroup
    values: dict[str, GroupElement]

    def __getitem__(self, edge_id: str) -> GroupElement:
        return self.values[edge_id]

    @classmethod
    def zero(cls, g: MultiGraph, group: FiniteAbelianGroup) -> EdgeLabeling:
        return cls(group, {e: group.zero() for e in g.edge_ids})

    def __add__(self, other: EdgeLabeling) -> EdgeLabeling:
        if self.group != other.group or self.values.keys() != other.values.keys():
            raise ValueError("labelings are not over the same edges and group")
        return EdgeLabeling(
            self.group, {e: v + other.values[e] for e, v in self.values.items()}
        )


@dataclass(frozen=True)
class VertexLabeling:
    """A total map V -> A."""

    group: FiniteAbelianGroup
    values: dict[str, GroupElement]

    def __getitem__(self, vertex_id: str) -> GroupElement:
        return self.values[vertex_id]

    @classmethod
    def zero(cls, g: MultiGraph, group: FiniteAbelianGroup) -> VertexLabeling:
        return cls(group, {v: group.zero() for v in g.vertices})

    def __add__(self, other: VertexLabeling) -> VertexLabeling:
        if self.group != other.group or self.values.keys() != other.values.keys():
            raise ValueError("labelings are not over the same vertices and group")
        return VertexLabeling(
            self.group, {v: a + other.values[v] for v, a in self.values.items()}
        )


@dataclass(frozen=True)
class FullLabeling:
    """A total map (V u E) -> A."""

    group: FiniteAbelianGroup
    vertex_values: dict[str, GroupElement]
    edge_values: dict[str, GroupElement]

    @classmethod
    def from_parts(cls, gv: VertexLabeling, f: EdgeLabeling) -> FullLabeling:
        if gv.group != f.group:
            raise ValueError("vertex and edge parts use different groups")
        return cls(gv.group, dict(gv.values), dict(f.values))

    @classmethod
    def zero(cls, g: MultiGraph, group: FiniteAbelianGroup) -> FullLabeling:
        return cls.from_parts(VertexLabeling.zero(g, group), EdgeLabeling.zero(g, group))

    def vertex_part(self) -> VertexLabeling:
        return VertexLabeling(self.group, dict(self.vertex_values))

    def edge_part(self) -> EdgeLabeling:
        return EdgeLabeling(self.group, dict(self.edge_values))

    def __add__(self, other: FullLabeling) -> FullLabeling:
        if (
            self.group != other.group
            or self.vertex_values.keys() != other.vertex_values.keys()
            or self.edge_values.keys() != other.edge_values.keys()
        ):
            raise ValueError("labelings are not over the same graph and group")
        return FullLabeling(
            self.group,
            {v: a + other.vertex_values[v] for v, a in self.vertex_values.items()},
            {e: a + other.edge_values[e] for e, a in self.edge_values.items()},
        )


Labeling = EdgeLabeling | VertexLabeling | FullLabeling


def value_along(labeling: Labeling, t: Ttrail) -> GroupElement:
    """Sum of the labeling along a ttrail (terminal vertex excluded)."""
    total = labeling.group.zero()
    for v, e in t.steps:
        if isinstance(labeling, (VertexLabeling, FullLabeling)):
            total = total + (
                labeling.values[v]
                if isinstance(labeling, VertexLabeling)
                else labeling.vertex_values[v]
            )
        if isinstance(labeling, EdgeLabeling):
            total = total + labeling.values[e]
        elif isinstance(labeling, FullLabeling):
            total = total + labeling.edge_values[e]
    return total


def _require_edges(g: MultiGraph, group: FiniteAbelianGroup, f: EdgeLabeling) -> None:
    if f.group != group:
        raise ValueError("labeling group does not match")
    if set(f.values) != set(g.edge_ids):
        raise ValueError("labeling is not defined on exactly the graph's edges")


def _require_vertices(
    g: MultiGraph, group: FiniteAbelianGroup, gv: VertexLabeling
) -> None:
    if gv.group != group:
        raise ValueError("labeling group does not match")
    if set(gv.values) != set(g.vertices):
        raise ValueError("labeling is not defined on exactly the graph's vertices")


def _require_full(g: MultiGraph, group: FiniteAbelianGroup, h: FullLabeling) -> None:
    if h.group != group:
        raise ValueError("labeling group does not match")
    if set(h.vertex_values) != set(g.vertices) or set(h.edge_values) != set(g.edge_ids):
        raise ValueError("labeling is not defined on exactly the graph's ids")


# ---------------------------------------------------------------------------
# Labeling file format
# ---------------------------------------------------------------------------


def parse_labeling(g: MultiGraph, group: FiniteAbelianGroup, text: str) -> Labeling:
    """Parse labeling lines ``vertex <id> <residues>`` / ``edge <id> <residues>``.

    An edge-only file yields an EdgeLabeling, a vertex-only file a
    VertexLabeling, and a file with both a FullLabeling; whichever parts are
    present must cover their id set completely.
    """
    vertex_values: dict[str, GroupElement] = {}
    edge_values: dict[str, GroupElement] = {}
    for line_no, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        tokens = line.split()
        if len(tokens) != 3 or tokens[0] not in ("vertex", "edge"):
            raise FormatError("expected: vertex|edge <id> <residues>", line_no)
        kind, ident, literal = tokens
        try:
            value = parse_element(group, literal)
        except FormatError as exc:
            raise FormatError(str(exc), line_no) from exc
        if kind == "vertex":
            if not g.has_vertex(ident):
                raise FormatError(f"unknown vertex id {ident!r}", line_no)
            if ident in vertex_values:
                raise FormatError(f"duplicate value for vertex {ident!r}", line_no)
            vertex_values[ident] = value
        else:
            if not g.has_edge(ident):
                raise FormatError(f"unknown edge id {ident!r}", line_no)
            if ident in edge_values:
                raise FormatError(f"duplicate value for edge {ident!r}", line_no)
            edge_values[ident] = value
    if vertex_values and set(vertex_values) != set(g.vertices):
        missing = sorted(set(g.vertices) - set(vertex_values))
        raise FormatError(f"vertex values missing for: {', '.join(missing)}")
    if edge_values and set(edge_values) != set(g.edge_ids):
        missing = sorted(set(g.edge_ids) - set(edge_values))
        raise FormatError(f"edge values missing for: {', '.join(missing)}")
    if vertex_values and edge_values:
        return FullLabeling(group, vertex_values, edge_values)
    if vertex_values:
        return VertexLabeling(group, vertex_values)
    if edge_values:
        return EdgeLabeling(group, edge_values)
    raise FormatError("labeling file declares no values")


def serialize_labeling(g: MultiGraph, labeling: Labeling) -> str:
    """Render a labeling in the file format, ids in graph order."""
    lines = []
    if isinstance(labeling, (VertexLabeling, FullLabeling)):
        values = (
            labeling.values
            if isinstance(labeling, VertexLabeling)
            else labeling.vertex_values
        )
        lines += [f"vertex {v} {values[v]}" for v in g.vertices]
    if isinstance(labeling, (EdgeLabeling, FullLabeling)):
        values = (
            labeling.values
            if isinstance(labeling, EdgeLabeling)
            else labeling.edge_values
        )
        lines += [f"edge {e} {values[e]}" for e in g.edge_ids]
    return "\n".join(lines) + ("\n" if lines else "")


# ---------------------------------------------------------------------------
# Deciders
# ---------------------------------------------------------------------------


def is_balanced_edges(g: MultiGraph, group: FiniteAbelianGroup, f: EdgeLabeling) -> bool:
    """f sums to zero on every fundamental cycle and doubles to zero on shorts."""
    _require_edges(g, group, f)
    ext = basis_extension(g)
    for edge_set, _ in ext.cycles:
        total = group.zero()
        for e in edge_set.edge_ids(g):
            total = total + f.values[e]
        if not total.is_zero():
            return False
    for s in ext.shorts:
        total = group.zero()
        for e in s.edge_set.edge_ids(g):
            total = total + f.values[e]
        if not in_two_torsion(group, total):
            return False
    return True


def is_balanced_full(g: MultiGraph, group: FiniteAbelianGroup, h: FullLabeling) -> bool:
    """h vanishes on fundamental cycles and 2h(s') = h(start)-h(end) on shorts."""
    _require_full(g, group, h)
    ext = basis_extension(g)
    for _, cycle in ext.cycles:
        if not value_along(h, cycle).is_zero():
            return False
    for s in ext.shorts:
        lhs = 2 * value_along(h, s.ttrail)
        rhs = h.vertex_values[s.start] - h.vertex_values[s.end]
        if lhs != rhs:
            return False
    return True


def is_balanceable(
    g: MultiGraph, group: FiniteAbelianGroup, gv: VertexLabeling
) -> bool:
    """Within every 3-class all differences to the representative lie in 2A."""
    _require_vertices(g, group, gv)
    ext = basis_extension(g)
    for block, rep in zip(ext.classes.blocks, ext.reps):
        for v in block:
            if not in_double_image(group, gv.values[v] - gv.values[rep]):
                return False
    return True


# ---------------------------------------------------------------------------
# Constraint systems (cached per graph)
# ---------------------------------------------------------------------------


def _rows_for_edge_sets(g: MultiGraph, ext: BasisExtension) -> list[list[int]]:
    rows = []
    for edge_set, _ in ext.cycles:
        rows.append([1 if edge_set.contains_index(i) else 0 for i in range(g.n_edges)])
    return rows


@lru_cache(maxsize=None)
def _iso_solver(g: MultiGraph) -> SmithSolver:
    """Square system {cycles, forest reads, short edge-sums} over f(e)."""
    ext = basis_extension(g)
    rows = _rows_for_edge_sets(g, ext)
    for e in ext.forest_edges:
        row = [0] * g.n_edges
        row[g.edge_index(e)] = 1
        rows.append(row)
    for s in ext.shorts:
        rows.append(
            [1 if s.edge_set.contains_index(i) else 0 for i in range(g.n_edges)]
        )
    return SmithSolver(rows, cols=g.n_edges)


@lru_cache(maxsize=None)
def _balance_solver(g: MultiGraph) -> SmithSolver:
    """System {cycles, doubled short edge-sums} over f(e)."""
    ext = basis_extension(g)
    rows = _rows_for_edge_sets(g, ext)
    for s in ext.shorts:
        rows.append(
            [2 if s.edge_set.contains_index(i) else 0 for i in range(g.n_edges)]
        )
    return SmithSolver(rows, cols=g.n_edges)


def _edge_labeling_from_solution(
    g: MultiGraph, group: FiniteAbelianGroup, solution: Sequence[GroupElement]
) -> EdgeLabeling:
    return EdgeLabeling(group, {e: solution[i] for i, e in enumerate(g.edge_ids)})


# ---------------------------------------------------------------------------
# Balancing
# ---------------------------------------------------------------------------


def balance(
    g: MultiGraph, group: FiniteAbelianGroup, gv: VertexLabeling
) -> EdgeLabeling | None:
    """An edge labeling f making (gv, f) balanced, or None iff not balanceable.

    Solves the signed constraint system row per fundamental cycle and per
    short generator; the output is the solver's canonical solution and is
    verified balanced before being returned.
    """
    _require_vertices(g, group, gv)
    ext = basis_extension(g)
    rhs: list[GroupElement] = []
    for _, cycle in ext.cycles:
        rhs.append(-value_along(gv, cycle))
    for s in ext.shorts:
        vertex_sum = value_along(gv, s.ttrail)
        rhs.append(gv.values[s.start] - gv.values[s.end] - 2 * vertex_sum)
    solution = _balance_solver(g).solve(rhs, group)
    if solution is None:
        if is_balanceable(g, group, gv):
            raise InternalCheckError("balance system unsolvable on balanceable input")
        return None
    f = _edge_labeling_from_solution(g, group, solution)
    if not is_balanced_full(g, group, FullLabeling.from_parts(gv, f)):
        raise InternalCheckError("balance output failed verification")
    return f


def balance_doubled_vertex(
    g: MultiGraph, group: FiniteAbelianGroup, v: str, a: GroupElement
) -> EdgeLabeling:
    """Explicit balancer of the vertex labeling (2a at v, zero elsewhere).

    The classic direct construction: -a on non-loop edges at v, -2a on loops
    at v, zero elsewhere.  balance() itself always routes through the solver;
    this fast path exists to be property-tested against it.
    """
    g.vertex_index(v)
    if a.group != group:
        raise ValueError("element does not belong to the group")
    values = {}
    for e, x, w in g.edges:
        if x == v and w == v:
            values[e] = -2 * a
        elif v in (x, w):
            values[e] = -a
        else:
            values[e] = group.zero()
    return EdgeLabeling(group, values)


# ---------------------------------------------------------------------------
# Structure formulas
# ---------------------------------------------------------------------------


def group_structure(g: MultiGraph, which: str) -> GroupStructure:
    """The descriptor of H, B or W as powers of A, A_2 and 2A."""
    w = _check_which(which)
    con = connected_components(g).num_blocks
    con3 = basis_extension(g).classes.num_blocks
    n = g.n_vertices
    if w == "H":
        return GroupStructure(exp_A=con3 - con, exp_A2=n - con3)
    if w == "B":
        return GroupStructure(exp_A=con3, exp_2A=n - con3)
    return GroupStructure(exp_A=n + con3 - con)


def count_balanced(g: MultiGraph, group: FiniteAbelianGroup, which: str) -> int:
    """|H|, |B| or |W| straight from the structure descriptor."""
    return structure_cardinality(group_structure(g, which), group)


# ---------------------------------------------------------------------------
# Coordinates and the isomorphisms phi, psi, xi
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class PhiCoordinates:
    """Image of a balanced edge labeling: forest reads in A, short sums in A_2."""

    forest: tuple[GroupElement, ...]
    shorts: tuple[GroupElement, ...]

    def __add__(self, other: PhiCoordinates) -> PhiCoordinates:
        return PhiCoordinates(
            tuple(a + b for a, b in zip(self.forest, other.forest, strict=True)),
            tuple(a + b for a, b in zip(self.shorts, other.shorts, strict=True)),
        )


@dataclass(frozen=True)
class PsiCoordinates:
    """Image of a balanceable vertex labeling: rep values, differences in 2A.

    Differences run over the non-representative vertices in insertion order.
    """

    reps: tuple[GroupElement, ...]
    diffs: tuple[GroupElement, ...]

    def __add__(self, other: PsiCoordinates) -> PsiCoordinates:
        return PsiCoordinates(
            tuple(a + b for a, b in zip(self.reps, other.reps, strict=True)),
            tuple(a + b for a, b in zip(self.diffs, other.diffs, strict=True)),
        )


@dataclass(frozen=True)
class XiCoordinates:
    """Image of a balanced full labeling: rep, forest-edge and short values."""

    reps: tuple[GroupElement, ...]
    forest: tuple[GroupElement, ...]
    shorts: tuple[GroupElement, ...]

    def __add__(self, other: XiCoordinates) -> XiCoordinates:
        return XiCoordinates(
            tuple(a + b for a, b in zip(self.reps, other.reps, strict=True)),
            tuple(a + b for a, b in zip(self.forest, other.forest, strict=True)),
            tuple(a + b for a, b in zip(self.shorts, other.shorts, strict=True)),
        )


def _non_rep_vertices(g: MultiGraph, ext: BasisExtension) -> list[str]:
    reps = set(ext.reps)
    return [v for v in g.vertices if v not in reps]


def phi(g: MultiGraph, group: FiniteAbelianGroup, f: EdgeLabeling) -> PhiCoordinates:
    """Read a balanced edge labeling on the forest edges and short edge-sets."""
    if not is_balanced_edges(g, group, f):
        raise ValueError("phi is only defined on balanced edge labelings")
    ext = basis_extension(g)
    forest = tuple(f.values[e] for e in ext.forest_edges)
    shorts = []
    for s in ext.shorts:
        total = group.zero()
        for e in s.edge_set.edge_ids(g):
            total = total + f.values[e]
        if not in_two_torsion(group, total):
            raise InternalCheckError("short sum of a balanced labeling left A_2")
        shorts.append(total)
    return PhiCoordinates(forest, tuple(shorts))


def phi_inv(
    g: MultiGraph, group: FiniteAbelianGroup, coords: PhiCoordinates
) -> EdgeLabeling:
    """The unique balanced edge labeling with the given coordinates."""
    ext = basis_extension(g)
    if len(coords.forest) != len(ext.forest_edges) or len(coords.shorts) != len(
        ext.shorts
    ):
        raise ValueError("coordinate lengths do not match the basis extension")
    for a in coords.shorts:
        if not in_two_torsion(group, a):
            raise ValueError("short coordinates must lie in A_2")
    zero = group.zero()
    rhs = [zero] * len(ext.cycles) + list(coords.forest) + list(coords.shorts)
    solution = _iso_solver(g).solve(rhs, group)
    if solution is None:
        raise InternalCheckError("phi_inv system is unsolvable on valid coordinates")
    f = _edge_labeling_from_solution(g, group, solution)
    if not is_balanced_edges(g, group, f):
        raise InternalCheckError("phi_inv output failed the balance check")
    return f


def psi(g: MultiGraph, group: FiniteAbelianGroup, gv: VertexLabeling) -> PsiCoordinates:
    """Read rep values and per-vertex differences of a balanceable labeling."""
    if not is_balanceable(g, group, gv):
        raise ValueError("psi is only defined on balanceable vertex labelings")
    ext = basis_extension(g)
    reps = tuple(gv.values[w] for w in ext.reps)
    diffs = []
    for v in _non_rep_vertices(g, ext):
        rep = ext.reps[ext.classes.block_of(v)]
        d = gv.values[v] - gv.values[rep]
        if not in_double_image(group, d):
            raise InternalCheckError("difference of a balanceable labeling left 2A")
        diffs.append(d)
    return PsiCoordinates(reps, tuple(diffs))


def psi_inv(
    g: MultiGraph, group: FiniteAbelianGroup, coords: PsiCoordinates
) -> VertexLabeling:
    """Rebuild the vertex labeling from rep values and 2A differences."""
    ext = basis_extension(g)
    non_reps = _non_rep_vertices(g, ext)
    if len(coords.reps) != len(ext.reps) or len(coords.diffs) != len(non_reps):
        raise ValueError("coordinate lengths do not match the basis extension")
    for d in coords.diffs:
        if not in_double_image(group, d):
            raise ValueError("difference coordinates must lie in 2A")
    values: dict[str, GroupElement] = {}
    for w, a in zip(ext.reps, coords.reps):
        values[w] = a
    for v, d in zip(non_reps, coords.diffs):
        rep = ext.reps[ext.classes.block_of(v)]
        values[v] = d + values[rep]
    return VertexLabeling(group, values)


def xi(g: MultiGraph, group: FiniteAbelianGroup, h: FullLabeling) -> XiCoordinates:
    """Read a balanced full labeling on reps, forest edges, and shorts."""
    if not is_balanced_full(g, group, h):
        raise ValueError("xi is only defined on balanced full labelings")
    ext = basis_extension(g)
    return XiCoordinates(
        reps=tuple(h.vertex_values[w] for w in ext.reps),
        forest=tuple(h.edge_values[e] for e in ext.forest_edges),
        shorts=tuple(value_along(h, s.ttrail) for s in ext.shorts),
    )


def _propagate_vertex_values(
    g: MultiGraph,
    ext: BasisExtension,
    rep_values: Sequence[GroupElement],
    short_values: Sequence[GroupElement],
) -> dict[str, GroupElement]:
    """Extend rep values to all vertices along the short spanning trees.

    A short s' from x to y forces 2 h(s') = h(x) - h(y), so each tree edge
    determines the unknown endpoint from the known one.
    """
    values: dict[str, GroupElement] = {}
    for w, a in zip(ext.reps, rep_values):
        values[w] = a
    adjacency: dict[str, list[tuple[str, int, bool]]] = {v: [] for v in g.vertices}
    for j, s in enumerate(ext.shorts):
        adjacency[s.start].append((s.end, j, True))  # True: v is the start
        adjacency[s.end].append((s.start, j, False))
    for rep in ext.reps:
        queue = [rep]
        while queue:
            x = queue.pop(0)
            for y, j, x_is_start in adjacency[x]:
                if y in values:
                    continue
                t = short_values[j]
                # 2t = h(start) - h(end)
                values[y] = values[x] - 2 * t if x_is_start else values[x] + 2 * t
                queue.append(y)
    if len(values) != g.n_vertices:
        raise InternalCheckError("short trees failed to reach every vertex")
    return values


def xi_inv(
    g: MultiGraph, group: FiniteAbelianGroup, coords: XiCoordinates
) -> FullLabeling:
    """Rebuild the balanced full labeling from its coordinates.

    Vertex values propagate from the representatives along the shorts; edge
    values then solve the same square system as phi_inv with the vertex
    contributions moved to the right-hand side.
    """
    ext = basis_extension(g)
    if (
        len(coords.reps) != len(ext.reps)
        or len(coords.forest) != len(ext.forest_edges)
        or len(coords.shorts) != len(ext.shorts)
    ):
        raise ValueError("coordinate lengths do not match the basis extension")
    vertex_values = _propagate_vertex_values(g, ext, coords.reps, coords.shorts)
    gv = VertexLabeling(group, vertex_values)
    rhs: list[GroupElement] = []
    for _, cycle in ext.cycles:
        rhs.append(-value_along(gv, cycle))
    rhs.extend(coords.forest)
    for j, s in enumerate(ext.shorts):
        rhs.append(coords.shorts[j] - value_along(gv, s.ttrail))
    solution = _iso_solver(g).solve(rhs, group)
    if solution is None:
        raise InternalCheckError("xi_inv system is unsolvable on valid coordinates")
    h = FullLabeling.from_parts(gv, _edge_labeling_from_solution(g, group, solution))
    if not is_balanced_full(g, group, h):
        raise InternalCheckError("xi_inv output failed the balance check")
    return h


# ---------------------------------------------------------------------------
# Enumeration support: item order, index codecs, fast-decider forms
# ---------------------------------------------------------------------------


def labeling_items(g: MultiGraph, which: str) -> tuple[str, ...]:
    """Enumeration item order: H edges; B vertices; W vertices then edges."""
    w = _check_which(which)
    if w == "H":
        return g.edge_ids
    if w == "B":
        return g.vertices
    return g.vertices + g.edge_ids


def labeling_from_index(
    g: MultiGraph, group: FiniteAbelianGroup, which: str, index: int
) -> Labeling:
    """Decode an assignment index (item 0 most significant) to a labeling."""
    w = _check_which(which)
    items = labeling_items(g, w)
    card = group.order
    if not 0 <= index < card ** len(items):
        raise ValueError("labeling index out of range")
    digits = []
    for _ in items:
        digits.append(index % card)
        index //= card
    digits.reverse()
    elements = [element_at(group, d) for d in digits]
    if w == "H":
        return EdgeLabeling(group, dict(zip(g.edge_ids, elements)))
    if w == "B":
        return VertexLabeling(group, dict(zip(g.vertices, elements)))
    n_v = g.n_vertices
    return FullLabeling(
        group,
        dict(zip(g.vertices, elements[:n_v])),
        dict(zip(g.edge_ids, elements[n_v:])),
    )


def labeling_index(g: MultiGraph, group: FiniteAbelianGroup, labeling: Labeling) -> int:
    """Inverse of labeling_from_index."""
    if isinstance(labeling, EdgeLabeling):
        elements = [labeling.values[e] for e in g.edge_ids]
    elif isinstance(labeling, VertexLabeling):
        elements = [labeling.values[v] for v in g.vertices]
    else:
        elements = [labeling.vertex_values[v] for v in g.vertices] + [
            labeling.edge_values[e] for e in g.edge_ids
        ]
    index = 0
    for a in elements:
        index = index * group.order + element_index(group, a)
    return index


def decider_forms(
    g: MultiGraph, group: FiniteAbelianGroup, which: str
) -> list[LinearForm]:
    """The fast-decider condition set as linear forms over the item order.

    H: fundamental cycles sum to 0, short edge-sets doubled sum to 0.
    W: fundamental cycle ttrails sum to 0 (vertices once each), and per
       short 2 h(s') - h(start) + h(end) = 0.
    """
    w = _check_which(which)
    if w == "B":
        raise ValueError("balanceability is not a linear condition set; use the deciders")
    ext = basis_extension(g)
    zero_targets = (0,) * group.rank
    forms: list[LinearForm] = []
    n_v = g.n_vertices

    def edge_item(e: str) -> int:
        return g.edge_index(e) if w == "H" else n_v + g.edge_index(e)

    for edge_set, cycle in ext.cycles:
        weights: Counter[int] = Counter()
        for e in edge_set.edge_ids(g):
            weights[edge_item(e)] += 1
        if w == "W":
            for v in cycle.vertex_seq:
                weights[g.vertex_index(v)] += 1
        forms.append(
            LinearForm(tuple(weights), tuple(weights.values()), zero_targets)
        )
    for s in ext.shorts:
        weights = Counter()
        for e in s.ttrail.edge_seq:
            weights[edge_item(e)] += 2
        if w == "W":
            for v in s.ttrail.vertex_seq:
                weights[g.vertex_index(v)] += 2
            weights[g.vertex_index(s.start)] -= 1
            weights[g.vertex_index(s.end)] += 1
        forms.append(
            LinearForm(tuple(weights), tuple(weights.values()), zero_targets)
        )
    return forms
