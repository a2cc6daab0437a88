"""Command-line front end over the text formats.

Exit codes: 0 for success or a true verdict, 1 for a false verdict, 2 for
usage or format errors (reported with line numbers where available).
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path
from typing import Sequence

from ballab import oracle
from ballab.abelian import FiniteAbelianGroup, GroupElement, parse_element, parse_group
from ballab.connectivity import Partition, k_edge_classes
from ballab.cyclespace import basis_extension, cycle_space_basis, weak_cycle_space
from ballab.errors import BoundExceededError, FormatError
from ballab.labelings import (
    EdgeLabeling,
    FullLabeling,
    VertexLabeling,
    XiCoordinates,
    balance,
    count_balanced,
    group_structure,
    is_balanced_edges,
    is_balanced_full,
    is_balanceable,
    parse_labeling,
    serialize_labeling,
    xi,
    xi_inv,
)
from ballab.multigraph import MultiGraph, parse_graph


def _load_graph(path: str) -> MultiGraph:
    return parse_graph(Path(path).read_text(encoding="utf-8"))


def _load_labeling(g: MultiGraph, group: FiniteAbelianGroup, path: str):
    return parse_labeling(g, group, Path(path).read_text(encoding="utf-8"))


def _print_partition(part: Partition) -> None:
    for block in part.blocks:
        print(" ".join(block))


def serialize_coordinates(g: MultiGraph, coords: XiCoordinates) -> str:
    """Render xi coordinates: rep/forest/short lines in basis order."""
    ext = basis_extension(g)
    lines = [f"rep {w} {a}" for w, a in zip(ext.reps, coords.reps)]
    lines += [f"forest {e} {a}" for e, a in zip(ext.forest_edges, coords.forest)]
    lines += [f"short {j} {a}" for j, a in enumerate(coords.shorts)]
    return "\n".join(lines) + ("\n" if lines else "")


def parse_coordinates(
    g: MultiGraph, group: FiniteAbelianGroup, text: str
) -> XiCoordinates:
    """Parse a coordinate file back into xi coordinates."""
    ext = basis_extension(g)
    reps: dict[str, GroupElement] = {}
    forest: dict[str, GroupElement] = {}
    shorts: dict[int, GroupElement] = {}
    for line_no, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        tokens = line.split()
        if len(tokens) != 3 or tokens[0] not in ("rep", "forest", "short"):
            raise FormatError("expected: rep|forest|short <key> <residues>", line_no)
        kind, key, literal = tokens
        try:
            value = parse_element(group, literal)
        except FormatError as exc:
            raise FormatError(str(exc), line_no) from exc
        if kind == "rep":
            if key not in ext.reps:
                raise FormatError(f"{key!r} is not a class representative", line_no)
            if key in reps:
                raise FormatError(f"duplicate rep {key!r}", line_no)
            reps[key] = value
        elif kind == "forest":
            if key not in ext.forest_edges:
                raise FormatError(f"{key!r} is not a forest edge", line_no)
            if key in forest:
                raise FormatError(f"duplicate forest edge {key!r}", line_no)
            forest[key] = value
        else:
            try:
                index = int(key)
            except ValueError as exc:
                raise FormatError(f"bad short index {key!r}", line_no) from exc
            if not 0 <= index < len(ext.shorts):
                raise FormatError(f"short index {index} out of range", line_no)
            if index in shorts:
                raise FormatError(f"duplicate short index {index}", line_no)
            shorts[index] = value
    missing = (
        [f"rep {w}" for w in ext.reps if w not in reps]
        + [f"forest {e}" for e in ext.forest_edges if e not in forest]
        + [f"short {j}" for j in range(len(ext.shorts)) if j not in shorts]
    )
    if missing:
        raise FormatError("coordinates missing: " + ", ".join(missing))
    return XiCoordinates(
        reps=tuple(reps[w] for w in ext.reps),
        forest=tuple(forest[e] for e in ext.forest_edges),
        shorts=tuple(shorts[j] for j in range(len(ext.shorts))),
    )


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ballab",
        description="Balanced labelings of multigraphs over finite Abelian groups.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name: str, **kwargs) -> argparse.ArgumentParser:
        p = sub.add_parser(name, **kwargs)
        p.add_argument("-g", "--graph", required=True, help="graph file")
        return p

    p = add("structure", help="group structure of H, B or W")
    p.add_argument("--which", choices=["H", "B", "W"])
    p.add_argument("--group")

    p = add("components", help="connectivity classes")
    p.add_argument("-k", type=int, default=1)

    p = add("cycle-basis", help="cycle space basis (or weak cycle space)")
    p.add_argument("--weak", type=int, metavar="K")

    for name in ("check", "balanceable", "balance", "coords", "oracle-check"):
        p = add(name)
        p.add_argument("--group", required=True)
        p.add_argument("--labels", required=True)

    p = add("extend", help="rebuild a balanced full labeling from coordinates")
    p.add_argument("--group", required=True)
    p.add_argument("--coords", required=True)

    p = add("count", help="number of balanced labelings")
    p.add_argument("--group", required=True)
    p.add_argument("--which", choices=["H", "B", "W"], required=True)
    p.add_argument("--oracle", action="store_true")

    p = add("oracle-classes", help="ground-truth connectivity classes")
    p.add_argument("-k", type=int, required=True)

    return parser


def _structure_line(g: MultiGraph, which: str, group: FiniteAbelianGroup | None) -> str:
    descriptor = group_structure(g, which).describe()
    if group is None:
        return descriptor
    return f"{descriptor}; |{which}| = {count_balanced(g, group, which)}"


def _cmd_structure(args) -> int:
    g = _load_graph(args.graph)
    group = parse_group(args.group) if args.group else None
    if args.which:
        print(_structure_line(g, args.which, group))
    else:
        for which in ("H", "B", "W"):
            print(f"{which}: {_structure_line(g, which, group)}")
    return 0


def _cmd_components(args) -> int:
    g = _load_graph(args.graph)
    _print_partition(k_edge_classes(g, args.k))
    return 0


def _cmd_cycle_basis(args) -> int:
    g = _load_graph(args.graph)
    if args.weak is None:
        basis = [edge_set for edge_set, _ in cycle_space_basis(g)]
    else:
        _, basis = weak_cycle_space(g, args.weak)
    print(f"dim {len(basis)}")
    for edge_set in basis:
        print(" ".join(edge_set.edge_ids(g)))
    return 0


def _promote_if_edgeless(g: MultiGraph, labeling):
    # A full labeling of an edgeless graph can only be written vertex-only.
    if isinstance(labeling, VertexLabeling) and g.n_edges == 0:
        return FullLabeling(labeling.group, dict(labeling.values), {})
    return labeling


def _cmd_check(args, use_oracle: bool) -> int:
    g = _load_graph(args.graph)
    group = parse_group(args.group)
    labeling = _promote_if_edgeless(g, _load_labeling(g, group, args.labels))
    if isinstance(labeling, VertexLabeling):
        raise FormatError(
            "vertex-only labelings have no balance verdict; use 'balanceable'"
        )
    if use_oracle:
        verdict = oracle.oracle_is_balanced(g, group, labeling)
    elif isinstance(labeling, EdgeLabeling):
        verdict = is_balanced_edges(g, group, labeling)
    else:
        verdict = is_balanced_full(g, group, labeling)
    print("balanced" if verdict else "not balanced")
    return 0 if verdict else 1


def _cmd_balanceable(args) -> int:
    g = _load_graph(args.graph)
    group = parse_group(args.group)
    labeling = _load_labeling(g, group, args.labels)
    if not isinstance(labeling, VertexLabeling):
        raise FormatError("'balanceable' expects a vertex-only labeling file")
    verdict = is_balanceable(g, group, labeling)
    print("balanceable" if verdict else "not balanceable")
    return 0 if verdict else 1


def _cmd_balance(args) -> int:
    g = _load_graph(args.graph)
    group = parse_group(args.group)
    labeling = _load_labeling(g, group, args.labels)
    if not isinstance(labeling, VertexLabeling):
        raise FormatError("'balance' expects a vertex-only labeling file")
    f = balance(g, group, labeling)
    if f is None:
        print("not balanceable", file=sys.stderr)
        return 1
    sys.stdout.write(serialize_labeling(g, f))
    return 0


def _cmd_coords(args) -> int:
    g = _load_graph(args.graph)
    group = parse_group(args.group)
    labeling = _promote_if_edgeless(g, _load_labeling(g, group, args.labels))
    if not isinstance(labeling, FullLabeling):
        raise FormatError("'coords' expects a labeling file with vertices and edges")
    if not is_balanced_full(g, group, labeling):
        print("not balanced", file=sys.stderr)
        return 1
    sys.stdout.write(serialize_coordinates(g, xi(g, group, labeling)))
    return 0


def _cmd_extend(args) -> int:
    g = _load_graph(args.graph)
    group = parse_group(args.group)
    coords = parse_coordinates(g, group, Path(args.coords).read_text(encoding="utf-8"))
    h = xi_inv(g, group, coords)
    sys.stdout.write(serialize_labeling(g, h))
    return 0


def _cmd_count(args) -> int:
    g = _load_graph(args.graph)
    group = parse_group(args.group)
    if args.oracle:
        print(oracle.oracle_count_balanced(g, group, args.which))
    else:
        print(count_balanced(g, group, args.which))
    return 0


def _cmd_oracle_classes(args) -> int:
    g = _load_graph(args.graph)
    _print_partition(oracle.oracle_k_classes(g, args.k))
    return 0


def run(argv: Sequence[str]) -> int:
    """Parse and execute; returns the exit code instead of raising."""
    parser = _build_parser()
    try:
        args = parser.parse_args(list(argv))
    except SystemExit as exc:
        return 2 if exc.code else 0
    try:
        if args.command == "structure":
            return _cmd_structure(args)
        if args.command == "components":
            return _cmd_components(args)
        if args.command == "cycle-basis":
            return _cmd_cycle_basis(args)
        if args.command == "check":
            return _cmd_check(args, use_oracle=False)
        if args.command == "oracle-check":
            return _cmd_check(args, use_oracle=True)
        if args.command == "balanceable":
            return _cmd_balanceable(args)
        if args.command == "balance":
            return _cmd_balance(args)
        if args.command == "coords":
            return _cmd_coords(args)
        if args.command == "extend":
            return _cmd_extend(args)
        if args.command == "count":
            return _cmd_count(args)
        if args.command == "oracle-classes":
            return _cmd_oracle_classes(args)
        raise AssertionError(f"unhandled command {args.command!r}")
    except (FormatError, BoundExceededError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def main() -> None:
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()
