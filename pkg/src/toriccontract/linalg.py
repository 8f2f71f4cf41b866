"""Small exact linear algebra over Q, plus a positive-functional search."""
from __future__ import annotations

from fractions import Fraction
from typing import Sequence


def rref(rows: Sequence[Sequence]) -> tuple:
    """Reduced row echelon form over Q.  Returns (matrix, pivot columns)."""
    m = [[Fraction(x) for x in row] for row in rows]
    if not m:
        return [], []
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
                m[i] = [x - f * y for x, y in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return m, pivots


def rank(rows: Sequence[Sequence]) -> int:
    return len(rref(rows)[1])


def solve(a: Sequence[Sequence], b: Sequence) -> list | None:
    """One rational solution x of a x = b (free variables set to 0), or None."""
    if not a:
        return [] if not any(b) else None
    n = len(a[0])
    aug = [list(row) + [bi] for row, bi in zip(a, b)]
    m, pivots = rref(aug)
    if n in pivots:
        return None
    x = [Fraction(0)] * n
    for row, c in zip(m, pivots):
        x[c] = row[n]
    return x


def columns(matrix: Sequence[Sequence]) -> list:
    return [tuple(row[j] for row in matrix) for j in range(len(matrix[0]))] if matrix else []


def distinct_columns(matrix: Sequence[Sequence]) -> list:
    seen = []
    for col in columns(matrix):
        if col not in seen:
            seen.append(col)
    return seen


def columns_independent(cols: Sequence[Sequence]) -> bool:
    if not cols:
        return True
    if any(not any(c) for c in cols):
        return False
    transposed = [[c[i] for c in cols] for i in range(len(cols[0]))]
    return rank(transposed) == len(cols)


def positive_functional(cols: Sequence[Sequence]) -> tuple | None:
    """A rational vector lam with lam . c > 0 for every column c, or None.

    The LP ``lam . c >= 1`` is solved in floating point, then rounded to
    rationals and re-checked exactly.
    """
    cols = [tuple(c) for c in cols]
    if not cols:
        return ()
    d = len(cols[0])
    # cheap exact attempts first: a unit vector or the all-ones vector
    for cand in [tuple(int(i == j) for i in range(d)) for j in range(d)] + [(1,) * d]:
        if all(sum(x * y for x, y in zip(cand, c)) > 0 for c in cols):
            return tuple(Fraction(x) for x in cand)
    from scipy.optimize import linprog

    res = linprog(
        c=[0.0] * d,
        A_ub=[[-float(x) for x in c] for c in cols],
        b_ub=[-1.0] * len(cols),
        bounds=[(None, None)] * d,
        method="highs",
    )
    if res.status != 0:
        return None
    for limit in (10, 1000, 10**6, 10**9):
        lam = tuple(Fraction(x).limit_denominator(limit) for x in res.x)
        if all(sum(x * y for x, y in zip(lam, c)) > 0 for c in cols):
            return lam
    return None


def integer_kernel(matrix: Sequence[Sequence[int]]) -> list:
    """A Z-basis of {u in Z^s : matrix . u = 0}, lightly size-reduced."""
    if not matrix:
        return []
    d, s = len(matrix), len(matrix[0])
    # rows [A^T | I]; unimodular row operations echelonize the A^T part
    rows = [[int(matrix[i][j]) for i in range(d)] + [int(j == k) for k in range(s)] for j in range(s)]
    r = 0
    for c in range(d):
        while True:
            nz = [i for i in range(r, s) if rows[i][c] != 0]
            if not nz:
                break
            piv = min(nz, key=lambda i: abs(rows[i][c]))
            rows[r], rows[piv] = rows[piv], rows[r]
            done = True
            for i in range(r + 1, s):
                if rows[i][c]:
                    q = rows[i][c] // rows[r][c]
                    rows[i] = [x - q * y for x, y in zip(rows[i], rows[r])]
                    if rows[i][c]:
                        done = False
            if done:
                r += 1
                break
        if r == s:
            break
    basis = [row[d:] for row in rows[r:]]
    return _size_reduce(basis)


def _size_reduce(basis: list) -> list:
    basis = [list(b) for b in basis]
    norm = lambda v: sum(abs(x) for x in v)
    changed = True
    while changed:
        changed = False
        for i in range(len(basis)):
            for j in range(len(basis)):
                if i == j:
                    continue
                for sign in (1, -1):
                    cand = [x - sign * y for x, y in zip(basis[i], basis[j])]
                    if norm(cand) < norm(basis[i]):
                        basis[i] = cand
                        changed = True
    return [tuple(b) for b in basis]
