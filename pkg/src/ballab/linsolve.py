"""Exact integer linear systems modulo each cyclic factor of a group.

A single Smith normal form U*M*V = D over the integers (arbitrary-precision
arithmetic, unimodular U and V, divisibility chain d_1 | d_2 | ...) serves
all cyclic factors Z_n at once: M x = b (mod n) becomes D y = U b (mod n),
solved diagonally with a divisibility check, then x = V y.  Free variables
are pinned to 0 and each diagonal equation takes its smallest non-negative
solution, so the returned solution is a canonical, reproducible one.
"""

from __future__ import annotations

import math
from typing import Sequence

from ballab.abelian import FiniteAbelianGroup, GroupElement
from ballab.errors import InternalCheckError

IntMatrix = list[list[int]]


def _identity(n: int) -> IntMatrix:
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def smith_normal_form(M: IntMatrix) -> tuple[IntMatrix, IntMatrix, IntMatrix]:
    """Return (U, D, V) with U*M*V = D, U and V unimodular, d_i | d_{i+1}.

    Classic elimination: bring the smallest entry to the pivot, clear its
    row and column by division with remainder, and when some remaining entry
    resists divisibility by the pivot, fold its row in and repeat.  All
    diagonal entries end up non-negative.
    """
    rows = len(M)
    cols = len(M[0]) if rows else 0
    D = [list(row) for row in M]
    for row in D:
        if len(row) != cols:
            raise ValueError("matrix rows have unequal lengths")
    U = _identity(rows)
    V = _identity(cols)

    def swap_rows(i: int, j: int) -> None:
        D[i], D[j] = D[j], D[i]
        U[i], U[j] = U[j], U[i]

    def swap_cols(i: int, j: int) -> None:
        for row in D:
            row[i], row[j] = row[j], row[i]
        for row in V:
            row[i], row[j] = row[j], row[i]

    def add_row(dst: int, src: int, factor: int) -> None:
        D[dst] = [a + factor * b for a, b in zip(D[dst], D[src])]
        U[dst] = [a + factor * b for a, b in zip(U[dst], U[src])]

    def add_col(dst: int, src: int, factor: int) -> None:
        for row in D:
            row[dst] += factor * row[src]
        for row in V:
            row[dst] += factor * row[src]

    for t in range(min(rows, cols)):
        while True:
            pivot = None
            for i in range(t, rows):
                for j in range(t, cols):
                    if D[i][j] and (pivot is None or abs(D[i][j]) < abs(D[pivot[0]][pivot[1]])):
                        pivot = (i, j)
            if pivot is None:
                break
            if pivot != (t, t):
                if pivot[0] != t:
                    swap_rows(t, pivot[0])
                if pivot[1] != t:
                    swap_cols(t, pivot[1])
            dirty = False
            for i in range(t + 1, rows):
                if D[i][t]:
                    q = D[i][t] // D[t][t]
                    add_row(i, t, -q)
                    if D[i][t]:
                        swap_rows(t, i)
                        dirty = True
            for j in range(t + 1, cols):
                if D[t][j]:
                    q = D[t][j] // D[t][t]
                    add_col(j, t, -q)
                    if D[t][j]:
                        swap_cols(t, j)
                        dirty = True
            if dirty:
                continue
            offender = None
            for i in range(t + 1, rows):
                for j in range(t + 1, cols):
                    if D[i][j] % D[t][t]:
                        offender = i
                        break
                if offender is not None:
                    break
            if offender is None:
                break
            add_row(t, offender, 1)
        if t < rows and t < cols and D[t][t] < 0:
            D[t] = [-a for a in D[t]]
            U[t] = [-a for a in U[t]]
    return U, D, V


class SmithSolver:
    """Pre-factorized solver for repeated right-hand sides over one matrix.

    ``cols`` must be given explicitly when the system has no rows (a valid
    degenerate case: no constraints, canonical solution all zero).
    """

    def __init__(self, M: IntMatrix, cols: int | None = None):
        self.rows = len(M)
        self.cols = len(M[0]) if self.rows else (cols or 0)
        if cols is not None and self.cols != cols:
            raise ValueError("explicit column count contradicts the matrix")
        self.M = [list(row) for row in M]
        self.U, self.D, self.V = smith_normal_form(M)

    def solve_factor(self, b: Sequence[int], n: int) -> list[int] | None:
        """One canonical solution of M x = b (mod n), or None."""
        if len(b) != self.rows:
            raise ValueError("right-hand side length does not match row count")
        if n == 1 or self.rows == 0:
            return [0] * self.cols
        c = [
            sum(self.U[i][j] * b[j] for j in range(self.rows)) % n
            for i in range(self.rows)
        ]
        y = [0] * self.cols
        for i in range(self.rows):
            d = self.D[i][i] if i < self.cols else 0
            if d == 0:
                if c[i] % n:
                    return None
                continue
            gg = math.gcd(d, n)
            if c[i] % gg:
                return None
            reduced = n // gg
            y[i] = (c[i] // gg) * pow(d // gg, -1, reduced) % reduced
        x = [
            sum(self.V[i][j] * y[j] for j in range(self.cols)) % n
            for i in range(self.cols)
        ]
        for i in range(self.rows):
            if sum(self.M[i][j] * x[j] for j in range(self.cols)) % n != b[i] % n:
                raise InternalCheckError("solver produced a non-solution")
        return x

    def solve(
        self, b: Sequence[GroupElement], group: FiniteAbelianGroup
    ) -> list[GroupElement] | None:
        """Solve factor by factor; None as soon as any factor is unsolvable."""
        if any(elem.group != group for elem in b):
            raise ValueError("right-hand side elements are not in the given group")
        per_factor: list[list[int]] = []
        for k, n in enumerate(group.moduli):
            sol = self.solve_factor([elem.residues[k] for elem in b], n)
            if sol is None:
                return None
            per_factor.append(sol)
        return [
            GroupElement(group, tuple(per_factor[k][j] for k in range(group.rank)))
            for j in range(self.cols)
        ]


def solve_mod(
    M: IntMatrix,
    b: Sequence[GroupElement],
    group: FiniteAbelianGroup,
    cols: int | None = None,
) -> list[GroupElement] | None:
    """One canonical solution of M x = b over the group, or None.

    Each cyclic factor is solved independently through the shared Smith
    normal form; the canonical solution zeroes all free variables and takes
    the smallest residue lift on each diagonal equation.
    """
    return SmithSolver(M, cols=cols).solve(b, group)
