"""
GF(2) linear algebra on int bitsets.

A vector over GF(2) is a Python int whose bit ``i`` is coordinate ``i``.
Elimination always picks the lowest-index available row as pivot, scanning
columns from bit 0 upward, so witnesses and bases are reproducible.
"""
from typing import List, NamedTuple, Optional, Sequence

import numpy as np

from tccmap.exceptions import CapExceeded
from tccmap.typing import Mask


class Echelon(NamedTuple):
    rows: List[Mask]       # reduced rows, the first len(pivots) are nonzero
    combos: List[Mask]     # input rows combined into each reduced row
    pivots: List[int]      # pivot column of each nonzero reduced row


def row_reduce(rows: Sequence[Mask], n_cols: int) -> Echelon:
    """Reduced row echelon form with the combination of input rows behind each row."""
    work = list(rows)
    combos = [1 << i for i in range(len(work))]
    pivots: List[int] = []
    r = 0
    for col in range(n_cols):
        if r == len(work):
            break
        pivot = next((i for i in range(r, len(work)) if (work[i] >> col) & 1), None)
        if pivot is None:
            continue
        work[r], work[pivot] = work[pivot], work[r]
        combos[r], combos[pivot] = combos[pivot], combos[r]
        for i in range(len(work)):
            if i != r and (work[i] >> col) & 1:
                work[i] ^= work[r]
                combos[i] ^= combos[r]
        pivots.append(col)
        r += 1
    return Echelon(work, combos, pivots)


def rank(rows: Sequence[Mask], n_cols: int) -> int:
    return len(row_reduce(rows, n_cols).pivots)


def row_basis(rows: Sequence[Mask], n_cols: int) -> List[Mask]:
    ech = row_reduce(rows, n_cols)
    return ech.rows[:len(ech.pivots)]


def solve(rows: Sequence[Mask], target: Mask, n_cols: int) -> Optional[Mask]:
    """
    Find a set of rows whose sum is ``target``.

    Returns
    -------
    Mask over row indices, or None when ``target`` is not in the row span.
    """
    ech = row_reduce(rows, n_cols)
    combo = 0
    for i, col in enumerate(ech.pivots):
        if (target >> col) & 1:
            target ^= ech.rows[i]
            combo ^= ech.combos[i]
    if target:
        return None
    return combo


def in_span(rows: Sequence[Mask], vec: Mask, n_cols: int) -> bool:
    return solve(rows, vec, n_cols) is not None


def kernel(rows: Sequence[Mask], n_cols: int) -> List[Mask]:
    """Basis of the row combinations summing to zero, as masks over row indices."""
    ech = row_reduce(rows, n_cols)
    return ech.combos[len(ech.pivots):]


def nullspace(rows: Sequence[Mask], n_cols: int) -> List[Mask]:
    """Basis of the vectors ``y`` orthogonal to every row."""
    ech = row_reduce(rows, n_cols)
    pivot_set = set(ech.pivots)
    basis = []
    for free in range(n_cols):
        if free in pivot_set:
            continue
        vec = 1 << free
        for i, col in enumerate(ech.pivots):
            if (ech.rows[i] >> free) & 1:
                vec |= 1 << col
        basis.append(vec)
    return basis


def span_elements(basis: Sequence[Mask], start: int, stop: int) -> np.ndarray:
    """
    Elements ``start..stop-1`` of the span of ``basis``.

    Element ``i`` is the sum of ``basis[j]`` over the set bits ``j`` of ``i``.
    """
    if any(b >> 64 for b in basis):
        raise CapExceeded("Span vectors wider than 64 bits cannot be enumerated")
    idx = np.arange(start, stop, dtype=np.uint64)
    out = np.zeros(stop - start, dtype=np.uint64)
    for j, b in enumerate(basis):
        bit = (idx >> np.uint64(j)) & np.uint64(1)
        out ^= bit * np.uint64(b)
    return out
