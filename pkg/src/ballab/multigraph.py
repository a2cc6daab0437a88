"""Undirected multigraphs and truncated trails.

A graph is a plain list of vertex ids plus a list of edges, each an id with
an unordered endpoint pair; loops (u = w) and parallel edges are allowed.
Everything downstream derives its determinism from the insertion order of
these two lists, so both are kept exactly as declared.

A truncated trail (ttrail) is the alternating sequence v1,e1,v2,e2,...,vn,en
of a trail with the terminal vertex chopped off; the terminal is stored
separately.  Edges of a ttrail are pairwise distinct; vertices may repeat.
The trivial closed ttrail (no vertices, no edges) is permitted everywhere.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from ballab.errors import FormatError


@dataclass(frozen=True)
class MultiGraph:
    """Immutable multigraph over string vertex/edge ids."""

    vertices: tuple[str, ...]
    edges: tuple[tuple[str, str, str], ...]  # (edge id, endpoint u, endpoint w)

    _vindex: dict[str, int] = field(
        init=False, repr=False, compare=False, hash=False, default_factory=dict
    )
    _eindex: dict[str, int] = field(
        init=False, repr=False, compare=False, hash=False, default_factory=dict
    )
    _incident: dict[str, tuple[int, ...]] = field(
        init=False, repr=False, compare=False, hash=False, default_factory=dict
    )

    def __post_init__(self) -> None:
        vindex: dict[str, int] = {}
        for i, v in enumerate(self.vertices):
            if v in vindex:
                raise ValueError(f"duplicate vertex id {v!r}")
            vindex[v] = i
        eindex: dict[str, int] = {}
        incident: dict[str, list[int]] = {v: [] for v in self.vertices}
        for i, (e, u, w) in enumerate(self.edges):
            if e in eindex:
                raise ValueError(f"duplicate edge id {e!r}")
            eindex[e] = i
            for endpoint in (u, w):
                if endpoint not in vindex:
                    raise ValueError(f"edge {e!r}: unknown endpoint {endpoint!r}")
            incident[u].append(i)
            if w != u:
                incident[w].append(i)
        object.__setattr__(self, "_vindex", vindex)
        object.__setattr__(self, "_eindex", eindex)
        object.__setattr__(
            self, "_incident", {v: tuple(ix) for v, ix in incident.items()}
        )

    @property
    def n_vertices(self) -> int:
        return len(self.vertices)

    @property
    def n_edges(self) -> int:
        return len(self.edges)

    @property
    def edge_ids(self) -> tuple[str, ...]:
        return tuple(e for e, _, _ in self.edges)

    def has_vertex(self, v: str) -> bool:
        return v in self._vindex

    def has_edge(self, e: str) -> bool:
        return e in self._eindex

    def vertex_index(self, v: str) -> int:
        if v not in self._vindex:
            raise ValueError(f"unknown vertex id {v!r}")
        return self._vindex[v]

    def edge_index(self, e: str) -> int:
        if e not in self._eindex:
            raise ValueError(f"unknown edge id {e!r}")
        return self._eindex[e]

    def endpoints(self, e: str) -> tuple[str, str]:
        _, u, w = self.edges[self.edge_index(e)]
        return u, w

    def is_loop(self, e: str) -> bool:
        u, w = self.endpoints(e)
        return u == w

    def other_endpoint(self, e: str, v: str) -> str:
        u, w = self.endpoints(e)
        if v == u:
            return w
        if v == w:
            return u
        raise ValueError(f"vertex {v!r} is not an endpoint of edge {e!r}")

    def incident_edges(self, v: str) -> tuple[int, ...]:
        """Indices of edges at v in insertion order; a loop appears once."""
        if v not in self._incident:
            raise ValueError(f"unknown vertex id {v!r}")
        return self._incident[v]

    def degree(self, v: str) -> int:
        """Loops contribute 2."""
        d = 0
        for i in self.incident_edges(v):
            _, u, w = self.edges[i]
            d += 2 if u == w else 1
        return d


class SequenceKind(enum.Enum):
    NOT_A_TTRAIL = "not-a-ttrail"
    OPEN_TTRAIL = "open-ttrail"
    CLOSED_TTRAIL = "closed-ttrail"
    CYCLE = "cycle"


@dataclass(frozen=True)
class Ttrail:
    """Alternating vertex/edge sequence with its terminal vertex kept aside.

    ``steps`` is the sequence ((v1,e1),...,(vn,en)); ``end`` is the terminal
    vertex.  ``end is None`` only for the trivial closed ttrail, which is
    anchored nowhere.  An empty ``steps`` with an ``end`` is the empty closed
    ttrail at that vertex.  The constructor does not validate incidence or
    edge-distinctness against a graph; see ``classify_sequence``.
    """

    steps: tuple[tuple[str, str], ...]
    end: str | None

    def __post_init__(self) -> None:
        if self.steps and self.end is None:
            raise ValueError("a non-empty ttrail needs a terminal vertex")

    @classmethod
    def trivial(cls) -> Ttrail:
        return cls((), None)

    @classmethod
    def from_alternating(cls, sequence: Sequence[str], end: str) -> Ttrail:
        """Build from [v1, e1, v2, e2, ...] plus the terminal vertex."""
        if len(sequence) % 2 != 0:
            raise ValueError("alternating sequence must pair each vertex with an edge")
        steps = tuple(
            (sequence[i], sequence[i + 1]) for i in range(0, len(sequence), 2)
        )
        return cls(steps, end)

    @property
    def is_trivial(self) -> bool:
        return not self.steps and self.end is None

    @property
    def start(self) -> str | None:
        if self.steps:
            return self.steps[0][0]
        return self.end

    @property
    def edge_seq(self) -> tuple[str, ...]:
        return tuple(e for _, e in self.steps)

    @property
    def vertex_seq(self) -> tuple[str, ...]:
        """The listed vertices v1..vn (terminal excluded)."""
        return tuple(v for v, _ in self.steps)

    @property
    def inner_vertices(self) -> tuple[str, ...]:
        return self.vertex_seq[1:]

    @property
    def is_closed(self) -> bool:
        return self.start == self.end or self.is_trivial

    def has_distinct_edges(self) -> bool:
        return len(set(self.edge_seq)) == len(self.steps)

    def __str__(self) -> str:
        if self.is_trivial:
            return "(trivial)"
        body = " ".join(f"{v} {e}" for v, e in self.steps)
        return f"{body} [{self.end}]" if body else f"[{self.end}]"


def ttrail_concat(p: Ttrail, q: Ttrail) -> tuple[Ttrail, bool]:
    """Concatenate p and q; the flag says whether the result is a ttrail.

    The terminal of p must equal the start of q (the trivial ttrail composes
    with anything).  The concatenated alternating sequence is returned even
    when p and q share edges, in which case the flag is False.
    """
    if p.is_trivial:
        return q, q.has_distinct_edges()
    if q.is_trivial:
        return p, p.has_distinct_edges()
    if p.end != q.start:
        raise ValueError(
            f"cannot concatenate: p ends at {p.end!r}, q starts at {q.start!r}"
        )
    joined = Ttrail(p.steps + q.steps, q.end if q.steps else p.end)
    return joined, joined.has_distinct_edges()


def ttrail_inverse(p: Ttrail) -> Ttrail:
    """The reversed ttrail: same edges and inner vertices in reverse order."""
    if not p.steps:
        return p
    vertices = p.vertex_seq + (p.end,)
    edges = p.edge_seq
    steps = tuple(
        (vertices[len(edges) - i], edges[len(edges) - 1 - i])
        for i in range(len(edges))
    )
    return Ttrail(steps, vertices[0])


def classify_sequence(g: MultiGraph, t: Ttrail) -> SequenceKind:
    """Classify an alternating sequence against its host graph.

    Unknown ids raise; broken incidence or a repeated edge classify as
    NOT_A_TTRAIL.  A closed ttrail whose listed vertices are pairwise
    distinct is a CYCLE (the trivial ttrail vacuously is one).
    """
    if t.end is not None and not g.has_vertex(t.end):
        raise ValueError(f"unknown vertex id {t.end!r}")
    vertices = t.vertex_seq + ((t.end,) if not t.is_trivial else ())
    for v in t.vertex_seq:
        if not g.has_vertex(v):
            raise ValueError(f"unknown vertex id {v!r}")
    for e in t.edge_seq:
        if not g.has_edge(e):
            raise ValueError(f"unknown edge id {e!r}")
    for j, (v, e) in enumerate(t.steps):
        u, w = g.endpoints(e)
        if {v, vertices[j + 1]} != {u, w}:
            return SequenceKind.NOT_A_TTRAIL
    if not t.has_distinct_edges():
        return SequenceKind.NOT_A_TTRAIL
    if not t.is_closed:
        return SequenceKind.OPEN_TTRAIL
    listed = t.vertex_seq
    if len(set(listed)) == len(listed):
        return SequenceKind.CYCLE
    return SequenceKind.CLOSED_TTRAIL


def parse_graph(text: str) -> MultiGraph:
    """Parse the graph text format.

    One record per line: ``vertex <id>`` or ``edge <id> <u> <w>``;
    ``#`` starts a comment; vertices must be declared before use.
    """
    vertices: list[str] = []
    edges: list[tuple[str, str, str]] = []
    seen_v: set[str] = set()
    seen_e: set[str] = set()
    for line_no, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        tokens = line.split()
        if tokens[0] == "vertex":
            if len(tokens) != 2:
                raise FormatError("expected: vertex <id>", line_no)
            vid = tokens[1]
            if vid in seen_v:
                raise FormatError(f"duplicate vertex id {vid!r}", line_no)
            seen_v.add(vid)
            vertices.append(vid)
        elif tokens[0] == "edge":
            if len(tokens) != 4:
                raise FormatError("expected: edge <id> <u> <w>", line_no)
            eid, u, w = tokens[1], tokens[2], tokens[3]
            if eid in seen_e:
                raise FormatError(f"duplicate edge id {eid!r}", line_no)
            for endpoint in (u, w):
                if endpoint not in seen_v:
                    raise FormatError(f"endpoint {endpoint!r} undeclared", line_no)
            seen_e.add(eid)
            edges.append((eid, u, w))
        else:
            raise FormatError(f"unknown record {tokens[0]!r}", line_no)
    return MultiGraph(tuple(vertices), tuple(edges))


def serialize_graph(g: MultiGraph) -> str:
    """Render a graph in the text format (one record per line)."""
    lines = [f"vertex {v}" for v in g.vertices]
    lines += [f"edge {e} {u} {w}" for e, u, w in g.edges]
    return "\n".join(lines) + ("\n" if lines else "")


def build_graph(
    vertices: Iterable[str], edges: Iterable[tuple[str, str, str]]
) -> MultiGraph:
    """Convenience constructor from plain iterables."""
    return MultiGraph(tuple(vertices), tuple(edges))
