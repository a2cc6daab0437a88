"""Exhaustive assignment enumeration over residue tuples.

This is the hot loop behind the brute-force oracles: enumerate every
assignment of group elements to a list of items (edges, or vertices plus
edges) and evaluate a system of sparse linear forms on each.

Contract shared by both backends
--------------------------------
The group is Z_{n1} x ... x Z_{nk}.  An element index d in [0, |A|) stands
for the d-th element in lexicographic residue order (factor 0 most
significant).  An assignment of ``n_items`` elements is an integer in
[0, |A|^n_items) read as mixed-radix digits, item 0 most significant.

A ``LinearForm`` is satisfied by an assignment when, for every factor i,

    sum_t coeffs[t] * residue_i(digit(items[t]))  ==  targets[i]   (mod n_i).

Entry points (identical semantics in both backends):

* ``count_satisfying``          number of assignments satisfying all forms;
* ``satisfying_verdicts``       uint8 array, one verdict per assignment;
* ``count_outer_satisfiable``   number of prefixes of the first ``n_outer``
                                digits admitting at least one satisfying
                                completion of the remaining digits;
* ``outer_satisfiable_verdicts``uint8 array of those per-prefix verdicts.

The compiled backend (Cython) is selected at import when present; setting
BALLAB_PURE_PYTHON=1 forces the numpy fallback.
"""

from __future__ import annotations

import math
import os
from dataclasses import dataclass
from typing import Sequence

import numpy as np

if os.environ.get("BALLAB_PURE_PYTHON"):
    from ballab import _kernels_py as _impl

    BACKEND = "python"
else:
    try:
        from ballab import _kernels as _impl  # type: ignore[attr-defined]

        BACKEND = "cython"
    except ImportError:  # extension not built
        from ballab import _kernels_py as _impl

        BACKEND = "python"


@dataclass(frozen=True)
class LinearForm:
    """A sparse integer linear form with one target residue per factor."""

    items: tuple[int, ...]
    coeffs: tuple[int, ...]
    targets: tuple[int, ...]


def backend_name() -> str:
    return BACKEND


def _check(moduli: Sequence[int], n_items: int, forms: Sequence[LinearForm]) -> None:
    if any(n < 1 for n in moduli):
        raise ValueError("moduli must be >= 1")
    if n_items < 0:
        raise ValueError("n_items must be >= 0")
    k = len(moduli)
    for form in forms:
        if len(form.items) != len(form.coeffs):
            raise ValueError("form items and coeffs differ in length")
        if len(form.targets) != k:
            raise ValueError("form needs one target per factor")
        if any(not 0 <= t < n_items for t in form.items):
            raise ValueError("form references an item out of range")


def space_size(moduli: Sequence[int], n_items: int) -> int:
    """|A|^n_items, the number of assignments."""
    return math.prod(moduli) ** n_items


def count_satisfying(
    moduli: Sequence[int], n_items: int, forms: Sequence[LinearForm]
) -> int:
    _check(moduli, n_items, forms)
    return _impl.count_satisfying(tuple(moduli), n_items, list(forms))


def satisfying_verdicts(
    moduli: Sequence[int], n_items: int, forms: Sequence[LinearForm]
) -> np.ndarray:
    _check(moduli, n_items, forms)
    return _impl.satisfying_verdicts(tuple(moduli), n_items, list(forms))


def count_outer_satisfiable(
    moduli: Sequence[int], n_outer: int, n_items: int, forms: Sequence[LinearForm]
) -> int:
    _check(moduli, n_items, forms)
    if not 0 <= n_outer <= n_items:
        raise ValueError("n_outer must lie between 0 and n_items")
    return _impl.count_outer_satisfiable(tuple(moduli), n_outer, n_items, list(forms))


def outer_satisfiable_verdicts(
    moduli: Sequence[int], n_outer: int, n_items: int, forms: Sequence[LinearForm]
) -> np.ndarray:
    _check(moduli, n_items, forms)
    if not 0 <= n_outer <= n_items:
        raise ValueError("n_outer must lie between 0 and n_items")
    return _impl.outer_satisfiable_verdicts(
        tuple(moduli), n_outer, n_items, list(forms)
    )
