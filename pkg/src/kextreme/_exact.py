"""Row reduction over the rationals."""

from __future__ import annotations

from fractions import Fraction


def rref(rows: list) -> tuple[list, list]:
    """Reduced row echelon form; returns ``(nonzero_rows, pivot_columns)``."""
    m = [[Fraction(x) for x in r] for r in rows]
    if not m:
        return [], []
    ncols = len(m[0])
    pivots = []
    r = 0
    for c in range(ncols):
        p = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if p is None:
            continue
        m[r], m[p] = m[p], m[r]
        piv = m[r][c]
        m[r] = [x / piv for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c] != 0:
                fac = m[i][c]
                m[i] = [a - fac * b for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return m[:r], pivots


def rank(rows: list) -> int:
    return len(rref(rows)[1])


def nullspace(rows: list, n: int) -> list:
    """Basis of ``{v : rows @ v = 0}`` in ``Q^n``."""
    if not rows:
        return [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]
    red, pivots = rref(rows)
    free = [c for c in range(n) if c not in pivots]
    basis = []
    for fc in free:
        v = [Fraction(0)] * n
        v[fc] = Fraction(1)
        for row, pc in zip(red, pivots):
            v[pc] = -row[fc]
        basis.append(v)
    return basis
