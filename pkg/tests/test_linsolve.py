"""Smith normal form and canonical modular solving."""

from __future__ import annotations

import itertools
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ballab.abelian import enumerate_elements, parse_group
from ballab.linsolve import SmithSolver, smith_normal_form, solve_mod

matrix_strategy = st.integers(1, 4).flatmap(
    lambda rows: st.integers(1, 4).flatmap(
        lambda cols: st.lists(
            st.lists(st.integers(-6, 6), min_size=cols, max_size=cols),
            min_size=rows,
            max_size=rows,
        )
    )
)


def _det(M) -> Fraction:
    n = len(M)
    A = [[Fraction(x) for x in row] for row in M]
    det = Fraction(1)
    for c in range(n):
        pivot = next((r for r in range(c, n) if A[r][c]), None)
        if pivot is None:
            return Fraction(0)
        if pivot != c:
            A[c], A[pivot] = A[pivot], A[c]
            det = -det
        det *= A[c][c]
        for r in range(c + 1, n):
            factor = A[r][c] / A[c][c]
            A[r] = [a - factor * b for a, b in zip(A[r], A[c])]
    return det


def _mat_mul(A, B):
    return [
        [sum(A[i][k] * B[k][j] for k in range(len(B))) for j in range(len(B[0]))]
        for i in range(len(A))
    ]


class TestSmithNormalForm:
    def test_scalar(self):
        _, D, _ = smith_normal_form([[2]])
        assert D == [[2]]

    def test_rank_one(self):
        U, D, V = smith_normal_form([[1, 1], [1, 1]])
        assert D == [[1, 0], [0, 0]]
        assert _mat_mul(_mat_mul(U, [[1, 1], [1, 1]]), V) == D

    def test_zero_matrix(self):
        _, D, _ = smith_normal_form([[0, 0], [0, 0]])
        assert D == [[0, 0], [0, 0]]

    def test_empty(self):
        U, D, V = smith_normal_form([])
        assert U == [] and D == [] and V == []

    @settings(max_examples=150, deadline=None)
    @given(matrix_strategy)
    def test_decomposition_properties(self, M):
        U, D, V = smith_normal_form(M)
        assert _mat_mul(_mat_mul(U, M), V) == D
        assert abs(_det(U)) == 1
        assert abs(_det(V)) == 1
        rows, cols = len(M), len(M[0])
        diag = [D[i][i] for i in range(min(rows, cols))]
        for i in range(rows):
            for j in range(cols):
                if i != j:
                    assert D[i][j] == 0
        assert all(d >= 0 for d in diag)
        for a, b in zip(diag, diag[1:]):
            if a:
                assert b % a == 0
            else:
                assert b == 0


class TestSolveMod:
    def test_example_canonical(self):
        g4 = parse_group("Z4")
        x = solve_mod([[2]], [g4.element([2])], g4)
        assert [a.residues for a in x] == [(1,)]

    def test_example_parity_obstruction(self):
        g4 = parse_group("Z4")
        assert solve_mod([[2]], [g4.element([1])], g4) is None

    def test_example_free_variables_zeroed(self):
        g3 = parse_group("Z3")
        x = solve_mod([[1, 1]], [g3.element([0])], g3)
        assert [a.residues for a in x] == [(0,), (0,)]

    def test_dimension_mismatch(self):
        g3 = parse_group("Z3")
        with pytest.raises(ValueError):
            solve_mod([[1, 1]], [g3.element([0]), g3.element([0])], g3)

    def test_wrong_group_element(self):
        with pytest.raises(ValueError):
            solve_mod([[1]], [parse_group("Z5").element([1])], parse_group("Z4"))

    def test_no_rows(self):
        g4 = parse_group("Z4")
        x = solve_mod([], [], g4, cols=3)
        assert [a.residues for a in x] == [(0,)] * 3

    def test_product_group(self):
        group = parse_group("Z2xZ3")
        x = solve_mod([[2]], [group.element([0, 1])], group)
        assert x is not None
        assert (2 * x[0]) == group.element([0, 1])

    @settings(max_examples=80, deadline=None)
    @given(
        st.lists(
            st.lists(st.integers(0, 2), min_size=2, max_size=2),
            min_size=1,
            max_size=3,
        ),
        st.sampled_from(["Z2", "Z3", "Z4", "Z6", "Z2xZ2"]),
        st.integers(0, 10**6),
    )
    def test_matches_exhaustive_search(self, M, spec, seed):
        group = parse_group(spec)
        elements = list(enumerate_elements(group))
        b = [elements[seed % len(elements)] for _ in M]
        got = solve_mod(M, b, group)
        solutions = [
            x
            for x in itertools.product(elements, repeat=2)
            if all(
                sum((M[i][j] * x[j] for j in range(2)), group.zero()) == b[i]
                for i in range(len(M))
            )
        ]
        if got is None:
            assert not solutions
        else:
            assert tuple(got) in solutions

    def test_solution_verified_by_substitution(self):
        group = parse_group("Z6")
        M = [[2, 1, 0], [0, 2, 2], [1, 1, 1]]
        b = [group.element([4]), group.element([2]), group.element([3])]
        x = SmithSolver(M).solve(b, group)
        assert x is not None
        for i, row in enumerate(M):
            total = group.zero()
            for coeff, val in zip(row, x):
                total = total + coeff * val
            assert total == b[i]
