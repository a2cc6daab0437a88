"""Pure-Python (numpy-vectorized) enumeration backend.

Same contract as the compiled backend in ``_kernels.pyx``; see
``ballab.kernels`` for the semantics.  Verdicts for all assignments are
computed in bulk with vectorized residue arithmetic.
"""

from __future__ import annotations

import math

import numpy as np


def _residue_tables(moduli: tuple[int, ...]) -> list[np.ndarray]:
    """Table per factor: element index -> residue (lex order, factor 0 high)."""
    card = math.prod(moduli)
    tables = []
    stride = card
    for n in moduli:
        stride //= n
        tables.append((np.arange(card, dtype=np.int64) // stride) % n)
    return tables


def satisfying_verdicts(moduli, n_items, forms) -> np.ndarray:
    card = math.prod(moduli)
    n_assign = card**n_items
    ok = np.ones(n_assign, dtype=bool)
    if not forms:
        return ok.astype(np.uint8)
    res = _residue_tables(moduli)
    idx = np.arange(n_assign, dtype=np.int64)
    digits: dict[int, np.ndarray] = {}

    def digit(item: int) -> np.ndarray:
        if item not in digits:
            stride = card ** (n_items - 1 - item)
            digits[item] = (idx // stride) % card
        return digits[item]

    for form in forms:
        for i, n in enumerate(moduli):
            total = np.zeros(n_assign, dtype=np.int64)
            for item, coeff in zip(form.items, form.coeffs):
                total += (coeff % n) * res[i][digit(item)]
            ok &= (total % n) == (form.targets[i] % n)
    return ok.astype(np.uint8)


def count_satisfying(moduli, n_items, forms) -> int:
    return int(satisfying_verdicts(moduli, n_items, forms).sum())


def outer_satisfiable_verdicts(moduli, n_outer, n_items, forms) -> np.ndarray:
    card = math.prod(moduli)
    verdicts = satisfying_verdicts(moduli, n_items, forms)
    n_outer_assign = card**n_outer
    grouped = verdicts.reshape(n_outer_assign, -1)
    return grouped.any(axis=1).astype(np.uint8)


def count_outer_satisfiable(moduli, n_outer, n_items, forms) -> int:
    return int(outer_satisfiable_verdicts(moduli, n_outer, n_items, forms).sum())
