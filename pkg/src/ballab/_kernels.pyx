"""Compiled enumeration backend; see ballab.kernels for the contract.

The compiled core walks the assignment space with an odometer over the
item digits and evaluates every form from a precomputed contribution table
(entry = coeff * residue mod n, already reduced), so the inner loop is pure
int64 arithmetic.
"""

import math

import numpy as np


def _prepare(tuple moduli, int n_items, list forms):
    cdef int k = len(moduli)
    card_py = math.prod(moduli)
    if card_py ** max(n_items, 1) > 2 ** 62:
        raise ValueError("assignment space too large for the compiled backend")
    cdef long long card = card_py

    res = np.empty((card_py, k), dtype=np.int64)
    stride = card_py
    for i, n in enumerate(moduli):
        stride //= n
        res[:, i] = (np.arange(card_py, dtype=np.int64) // stride) % n

    n_forms = len(forms)
    off = np.zeros(n_forms + 1, dtype=np.int64)
    items_list = []
    coeffs_list = []
    targets = np.zeros(n_forms * k, dtype=np.int64)
    for f, form in enumerate(forms):
        off[f + 1] = off[f] + len(form.items)
        items_list.extend(form.items)
        coeffs_list.extend(form.coeffs)
        for i in range(k):
            targets[f * k + i] = form.targets[i] % moduli[i]

    total = len(items_list)
    items = np.array(items_list, dtype=np.int64) if total else np.zeros(0, np.int64)
    ctab = np.zeros(total * card_py * k, dtype=np.int64)
    for p in range(total):
        c = coeffs_list[p]
        for d in range(card_py):
            for i in range(k):
                ctab[(p * card_py + d) * k + i] = (c * int(res[d, i])) % moduli[i]

    mods = np.array(moduli, dtype=np.int64) if k else np.zeros(0, np.int64)
    return card, mods, off, items, ctab, targets


cdef inline bint _evaluate(
    long long[::1] digits,
    Py_ssize_t n_forms,
    long long[::1] off,
    long long[::1] items,
    long long[::1] ctab,
    long long[::1] targets,
    long long[::1] mods,
    int k,
    long long card,
) noexcept:
    cdef Py_ssize_t f
    cdef int i
    cdef long long p, s
    for f in range(n_forms):
        for i in range(k):
            s = 0
            for p in range(off[f], off[f + 1]):
                s += ctab[(p * card + digits[items[p]]) * k + i]
            if s % mods[i] != targets[f * k + i]:
                return 0
    return 1


cdef inline void _increment(
    long long[::1] digits, Py_ssize_t lo, Py_ssize_t hi, long long card
) noexcept:
    cdef Py_ssize_t pos = hi - 1
    while pos >= lo:
        digits[pos] += 1
        if digits[pos] == card:
            digits[pos] = 0
            pos -= 1
        else:
            break


def count_satisfying(tuple moduli, int n_items, list forms):
    card, mods, off, items, ctab, targets = _prepare(moduli, n_items, forms)
    cdef long long card_c = card
    cdef long long n_assign = card_c ** n_items if n_items else 1
    cdef long long[::1] digits = np.zeros(max(n_items, 1), dtype=np.int64)
    cdef long long[::1] off_v = off
    cdef long long[::1] items_v = items
    cdef long long[::1] ctab_v = ctab
    cdef long long[::1] targets_v = targets
    cdef long long[::1] mods_v = mods
    cdef Py_ssize_t n_forms = len(forms)
    cdef int k = len(moduli)
    cdef long long a, total = 0
    for a in range(n_assign):
        total += _evaluate(digits, n_forms, off_v, items_v, ctab_v, targets_v, mods_v, k, card_c)
        _increment(digits, 0, n_items, card_c)
    return int(total)


def satisfying_verdicts(tuple moduli, int n_items, list forms):
    card, mods, off, items, ctab, targets = _prepare(moduli, n_items, forms)
    cdef long long card_c = card
    cdef long long n_assign = card_c ** n_items if n_items else 1
    out = np.zeros(n_assign, dtype=np.uint8)
    cdef unsigned char[::1] out_v = out
    cdef long long[::1] digits = np.zeros(max(n_items, 1), dtype=np.int64)
    cdef long long[::1] off_v = off
    cdef long long[::1] items_v = items
    cdef long long[::1] ctab_v = ctab
    cdef long long[::1] targets_v = targets
    cdef long long[::1] mods_v = mods
    cdef Py_ssize_t n_forms = len(forms)
    cdef int k = len(moduli)
    cdef long long a
    for a in range(n_assign):
        out_v[a] = _evaluate(digits, n_forms, off_v, items_v, ctab_v, targets_v, mods_v, k, card_c)
        _increment(digits, 0, n_items, card_c)
    return out


def outer_satisfiable_verdicts(tuple moduli, int n_outer, int n_items, list forms):
    card, mods, off, items, ctab, targets = _prepare(moduli, n_items, forms)
    cdef long long card_c = card
    cdef long long n_outer_assign = card_c ** n_outer if n_outer else 1
    cdef long long n_inner = card_c ** (n_items - n_outer) if n_items > n_outer else 1
    out = np.zeros(n_outer_assign, dtype=np.uint8)
    cdef unsigned char[::1] out_v = out
    cdef long long[::1] digits = np.zeros(max(n_items, 1), dtype=np.int64)
    cdef long long[::1] off_v = off
    cdef long long[::1] items_v = items
    cdef long long[::1] ctab_v = ctab
    cdef long long[::1] targets_v = targets
    cdef long long[::1] mods_v = mods
    cdef Py_ssize_t n_forms = len(forms)
    cdef int k = len(moduli)
    cdef long long a, b
    cdef bint found
    cdef Py_ssize_t pos
    for a in range(n_outer_assign):
        found = 0
        for b in range(n_inner):
            if _evaluate(digits, n_forms, off_v, items_v, ctab_v, targets_v, mods_v, k, card_c):
                found = 1
                break
            _increment(digits, n_outer, n_items, card_c)
        out_v[a] = found
        for pos in range(n_outer, n_items):  # inner digits may be mid-count
            digits[pos] = 0
        _increment(digits, 0, n_outer, card_c)
    return out


def count_outer_satisfiable(tuple moduli, int n_outer, int n_items, list forms):
    return int(outer_satisfiable_verdicts(moduli, n_outer, n_items, forms).sum())
