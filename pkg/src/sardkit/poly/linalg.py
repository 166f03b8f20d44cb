"""Exact linear algebra over Q (row reduction on lists of Fractions)."""
from __future__ import annotations

from fractions import Fraction
from typing import List, Optional, Sequence, Tuple


def rref(rows: Sequence[Sequence]) -> Tuple[List[List[Fraction]], List[int]]:
    m = [[Fraction(x) for x in r] for r in rows]
    if not m:
        return m, []
    ncols = len(m[0])
    pivots = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = 1 / m[r][c]
        m[r] = [x * inv for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return m, pivots


def rank(rows: Sequence[Sequence]) -> int:
    return len(rref(rows)[1])


def solve(A: Sequence[Sequence], b: Sequence) -> Optional[List[Fraction]]:
    """One exact solution of A x = b (free variables set to 0), or None."""
    if not A:
        return [] if all(Fraction(x) == 0 for x in b) else None
    ncols = len(A[0])
    aug = [list(row) + [bi] for row, bi in zip(A, b)]
    m, pivots = rref(aug)
    if ncols in pivots:
        return None
    x = [Fraction(0)] * ncols
    for i, c in enumerate(pivots):
        x[c] = m[i][ncols]
    return x


def nullspace_dim(A: Sequence[Sequence]) -> int:
    if not A:
        return 0
    return len(A[0]) - rank(A)
