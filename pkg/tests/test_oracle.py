"""Ground-truth cycle enumeration, balance checks, counts, and classes."""

from __future__ import annotations

import random

import pytest

from ballab.abelian import parse_group
from ballab.connectivity import connected_components
from ballab.errors import BoundExceededError
from ballab.labelings import (
    EdgeLabeling,
    FullLabeling,
    VertexLabeling,
    labeling_from_index,
)
from ballab.multigraph import SequenceKind, classify_sequence
from ballab.oracle import (
    enumerate_simple_cycles,
    oracle_count_balanced,
    oracle_is_balanced,
    oracle_k_classes,
)
from sample_graphs import (
    banana,
    bowtie_edge,
    bowtie_vertex,
    k4,
    loop1,
    random_multigraph,
    triangle,
)


class TestEnumerateSimpleCycles:
    @pytest.mark.parametrize(
        "builder,count",
        [
            (triangle, 1),
            (lambda: banana(3), 3),
            (k4, 7),
            (loop1, 1),
            (bowtie_vertex, 2),
            (bowtie_edge, 3),
        ],
    )
    def test_counts(self, builder, count):
        assert len(enumerate_simple_cycles(builder())) == count

    def test_all_are_cycles_and_distinct(self):
        rng = random.Random(79)
        for _ in range(40):
            g = random_multigraph(rng, max_vertices=6, max_edges=10)
            cycles = enumerate_simple_cycles(g)
            seen = set()
            for c in cycles:
                assert classify_sequence(g, c) is SequenceKind.CYCLE
                key = frozenset(c.edge_seq)
                assert key not in seen
                seen.add(key)

    def test_deterministic(self):
        assert enumerate_simple_cycles(k4()) == enumerate_simple_cycles(k4())

    def test_bound(self):
        rng = random.Random(83)
        g = random_multigraph(rng, max_vertices=4, max_edges=10)
        with pytest.raises(BoundExceededError):
            enumerate_simple_cycles(g, max_edges=g.n_edges - 1)


class TestOracleIsBalanced:
    def test_triangle(self):
        group = parse_group("Z3")
        f = EdgeLabeling(group, {e: group.element([1]) for e in "abc"})
        assert oracle_is_balanced(triangle(), group, f)

    def test_loop_full(self):
        group = parse_group("Z4")
        h = FullLabeling(
            group, {"v": group.element([1])}, {"l": group.element([1])}
        )
        assert not oracle_is_balanced(loop1(), group, h)
        h2 = FullLabeling(
            group, {"v": group.element([1])}, {"l": group.element([3])}
        )
        assert oracle_is_balanced(loop1(), group, h2)

    def test_zero_labeling(self):
        rng = random.Random(89)
        group = parse_group("Z6")
        for _ in range(20):
            g = random_multigraph(rng, max_vertices=5, max_edges=8)
            assert oracle_is_balanced(g, group, FullLabeling.zero(g, group))

    def test_rejects_vertex_labeling(self):
        group = parse_group("Z2")
        with pytest.raises(TypeError):
            oracle_is_balanced(
                triangle(), group, VertexLabeling.zero(triangle(), group)
            )


class TestOracleCountBalanced:
    def test_triangle_w_z2(self):
        assert oracle_count_balanced(triangle(), parse_group("Z2"), "W") == 32

    def test_banana3_h_z4(self):
        assert oracle_count_balanced(banana(3), parse_group("Z4"), "H") == 2

    def test_k4_h_z2(self):
        assert oracle_count_balanced(k4(), parse_group("Z2"), "H") == 8

    def test_bowtie_h_z4(self):
        assert oracle_count_balanced(bowtie_edge(), parse_group("Z4"), "H") == 32

    def test_counts_match_direct_exhaustion(self):
        group = parse_group("Z3")
        g = triangle()
        count = 0
        for index in range(group.order**g.n_edges):
            f = labeling_from_index(g, group, "H", index)
            if oracle_is_balanced(g, group, f):
                count += 1
        assert count == oracle_count_balanced(g, group, "H")

    def test_b_solver_route_matches_exhaustion(self):
        g = bowtie_edge()
        group = parse_group("Z2")
        full = oracle_count_balanced(g, group, "B")
        # force the per-vertex-labeling solver route with a tight bound
        solver_route = oracle_count_balanced(g, group, "B", bound=2**5)
        assert full == solver_route

    def test_bound(self):
        with pytest.raises(BoundExceededError):
            oracle_count_balanced(k4(), parse_group("Z6"), "H", bound=100)
        with pytest.raises(BoundExceededError):
            oracle_count_balanced(k4(), parse_group("Z6"), "B", bound=100)

    def test_bad_which(self):
        with pytest.raises(ValueError):
            oracle_count_balanced(triangle(), parse_group("Z2"), "X")


class TestOracleKClasses:
    def test_triangle_k3(self):
        assert oracle_k_classes(triangle(), 3).blocks == (("1",), ("2",), ("3",))

    def test_banana3_k3(self):
        assert oracle_k_classes(banana(3), 3).blocks == (("1", "2"),)

    def test_k4_k3(self):
        assert oracle_k_classes(k4(), 3).blocks == (("1", "2", "3", "4"),)

    def test_k1_is_components(self):
        rng = random.Random(97)
        for _ in range(20):
            g = random_multigraph(rng, max_vertices=6, max_edges=8)
            assert oracle_k_classes(g, 1) == connected_components(g)

    def test_few_edges_forces_singletons(self):
        g = banana(2)  # only two edges, so any two deletions empty it
        assert oracle_k_classes(g, 3).blocks == (("1",), ("2",))

    def test_bound(self):
        with pytest.raises(BoundExceededError):
            oracle_k_classes(k4(), 3, bound=10)
