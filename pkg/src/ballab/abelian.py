"""Finite Abelian groups given as explicit products of cyclic groups.

A group A = Z_{n1} x ... x Z_{nk} is described by its tuple of moduli; an
element is the tuple of its residues, one per cyclic factor, always kept
canonical (0 <= r_i < n_i).  The structure theorems for balanced labelings
only ever need two derived subgroups, both computable coordinate-wise:

    A_2 = {a : 2a = 0}   the 2-torsion subgroup (the identity included), and
    2A  = {2a : a in A}  the image of the doubling map,

together with the identity |A| = |A_2| * |2A|.  Halving an element of 2A is
only defined up to A_2; the canonical half picks the smallest residue per
coordinate so that constructions built on it are deterministic.
"""

from __future__ import annotations

import itertools
import math
import re
from dataclasses import dataclass
from typing import Iterator, Sequence

from ballab.errors import BoundExceededError, FormatError

DEFAULT_ENUM_BOUND = 1_000_000


@dataclass(frozen=True)
class FiniteAbelianGroup:
    """Z_{n1} x ... x Z_{nk}; factors of modulus 1 are allowed (trivial)."""

    moduli: tuple[int, ...]

    def __post_init__(self) -> None:
        if any(n < 1 for n in self.moduli):
            raise ValueError("all moduli must be >= 1")

    @property
    def order(self) -> int:
        return math.prod(self.moduli)

    @property
    def rank(self) -> int:
        return len(self.moduli)

    def zero(self) -> GroupElement:
        return GroupElement(self, (0,) * self.rank)

    def element(self, residues: Sequence[int]) -> GroupElement:
        """Build an element, reducing arbitrary integers to canonical residues."""
        if len(residues) != self.rank:
            raise ValueError(
                f"expected {self.rank} residues, got {len(residues)}"
            )
        return GroupElement(self, tuple(r % n for r, n in zip(residues, self.moduli)))

    def __str__(self) -> str:
        return "x".join(f"Z{n}" for n in self.moduli)


@dataclass(frozen=True)
class GroupElement:
    """An element of a FiniteAbelianGroup as a canonical residue tuple."""

    group: FiniteAbelianGroup
    residues: tuple[int, ...]

    def __post_init__(self) -> None:
        if len(self.residues) != self.group.rank:
            raise ValueError("residue count does not match the group rank")
        if any(not 0 <= r < n for r, n in zip(self.residues, self.group.moduli)):
            raise ValueError(f"residues {self.residues} not canonical in {self.group}")

    def _check_same_group(self, other: GroupElement) -> None:
        if self.group != other.group:
            raise ValueError(f"mixed groups: {self.group} and {other.group}")

    def __add__(self, other: GroupElement) -> GroupElement:
        self._check_same_group(other)
        return GroupElement(
            self.group,
            tuple(
                (a + b) % n
                for a, b, n in zip(self.residues, other.residues, self.group.moduli)
            ),
        )

    def __sub__(self, other: GroupElement) -> GroupElement:
        return self + (-other)

    def __neg__(self) -> GroupElement:
        return GroupElement(
            self.group,
            tuple((-a) % n for a, n in zip(self.residues, self.group.moduli)),
        )

    def __mul__(self, k: int) -> GroupElement:
        return GroupElement(
            self.group,
            tuple((k * a) % n for a, n in zip(self.residues, self.group.moduli)),
        )

    __rmul__ = __mul__

    def is_zero(self) -> bool:
        return all(r == 0 for r in self.residues)

    def __str__(self) -> str:
        return ",".join(str(r) for r in self.residues)


@dataclass(frozen=True)
class GroupStructure:
    """Descriptor of a group isomorphic to A^exp_A x A_2^exp_A2 x (2A)^exp_2A."""

    exp_A: int = 0
    exp_A2: int = 0
    exp_2A: int = 0

    def __post_init__(self) -> None:
        if min(self.exp_A, self.exp_A2, self.exp_2A) < 0:
            raise ValueError("exponents must be non-negative")

    def describe(self) -> str:
        parts = []
        if self.exp_A:
            parts.append(f"A^{self.exp_A}")
        if self.exp_A2:
            parts.append(f"A_2^{self.exp_A2}")
        if self.exp_2A:
            parts.append(f"(2A)^{self.exp_2A}")
        return " x ".join(parts) if parts else "1"


def element_order(group: FiniteAbelianGroup, a: GroupElement) -> int:
    """Smallest m >= 1 with m*a = 0: lcm over factors of n_i / gcd(n_i, a_i)."""
    if a.group != group:
        raise ValueError("element does not belong to the group")
    return math.lcm(*(n // math.gcd(n, r) for r, n in zip(a.residues, group.moduli)))


def in_two_torsion(group: FiniteAbelianGroup, a: GroupElement) -> bool:
    """True iff 2a = 0, i.e. a lies in the subgroup A_2 (0 counts)."""
    if a.group != group:
        raise ValueError("element does not belong to the group")
    return all((2 * r) % n == 0 for r, n in zip(a.residues, group.moduli))


def two_torsion_count(group: FiniteAbelianGroup) -> int:
    """|A_2| = product over factors of (2 if n_i is even else 1)."""
    return math.prod(2 if n % 2 == 0 else 1 for n in group.moduli)


def double_image_count(group: FiniteAbelianGroup) -> int:
    """|2A| = |A| / |A_2|."""
    return group.order // two_torsion_count(group)


def half(group: FiniteAbelianGroup, b: GroupElement) -> GroupElement | None:
    """Canonical solution of 2x = b, or None when b is not in 2A.

    Per coordinate: modulus odd gives the unique solution b * inv(2); modulus
    even requires b even and the smallest of the two solutions is b/2.
    """
    if b.group != group:
        raise ValueError("element does not belong to the group")
    residues = []
    for r, n in zip(b.residues, group.moduli):
        if n % 2 == 1:
            residues.append((r * pow(2, -1, n)) % n if n > 1 else 0)
        elif r % 2 == 0:
            residues.append(r // 2)
        else:
            return None
    return GroupElement(group, tuple(residues))


def in_double_image(group: FiniteAbelianGroup, b: GroupElement) -> bool:
    """True iff b = 2a for some a, i.e. b lies in 2A."""
    return half(group, b) is not None


def structure_cardinality(structure: GroupStructure, group: FiniteAbelianGroup) -> int:
    """|A|^exp_A * |A_2|^exp_A2 * |2A|^exp_2A."""
    return (
        group.order**structure.exp_A
        * two_torsion_count(group) ** structure.exp_A2
        * double_image_count(group) ** structure.exp_2A
    )


def enumerate_elements(
    group: FiniteAbelianGroup, bound: int = DEFAULT_ENUM_BOUND
) -> Iterator[GroupElement]:
    """All |A| elements in lexicographic residue order."""
    if group.order > bound:
        raise BoundExceededError(
            f"|A| = {group.order} exceeds the enumeration bound {bound}"
        )
    for residues in itertools.product(*(range(n) for n in group.moduli)):
        yield GroupElement(group, residues)


def element_at(group: FiniteAbelianGroup, index: int) -> GroupElement:
    """The index-th element in lexicographic residue order (factor 0 high)."""
    if not 0 <= index < group.order:
        raise ValueError(f"element index {index} out of range for {group}")
    residues = []
    stride = group.order
    for n in group.moduli:
        stride //= n
        residues.append((index // stride) % n)
    return GroupElement(group, tuple(residues))


def element_index(group: FiniteAbelianGroup, a: GroupElement) -> int:
    """Position of a in the lexicographic enumeration; inverse of element_at."""
    if a.group != group:
        raise ValueError("element does not belong to the group")
    index = 0
    for r, n in zip(a.residues, group.moduli):
        index = index * n + r
    return index


def parse_group(text: str) -> FiniteAbelianGroup:
    """Parse a group spec such as ``Z2xZ4`` (case-insensitive, no spaces)."""
    s = text.strip()
    if not s:
        raise FormatError("empty group spec")
    parts = s.lower().split("x")
    moduli = []
    for part in parts:
        m = re.fullmatch(r"z(\d+)", part)
        if m is None:
            raise FormatError(f"bad group spec {text!r}: expected e.g. Z6 or Z2xZ4")
        n = int(m.group(1))
        if n < 1:
            raise FormatError(f"bad group spec {text!r}: modulus must be >= 1")
        moduli.append(n)
    return FiniteAbelianGroup(tuple(moduli))


def parse_element(group: FiniteAbelianGroup, text: str) -> GroupElement:
    """Parse an element literal: comma-separated residues, one per factor."""
    parts = text.strip().split(",")
    try:
        residues = [int(p) for p in parts]
    except ValueError as exc:
        raise FormatError(f"bad element literal {text!r}") from exc
    if len(residues) != group.rank:
        raise FormatError(
            f"element {text!r} has {len(residues)} residues, group {group} needs {group.rank}"
        )
    return group.element(residues)
