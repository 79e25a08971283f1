"""Exact integer linear algebra: fraction-free elimination, kernels, spans."""
from __future__ import annotations

import math
from fractions import Fraction
from typing import Sequence

Matrix = Sequence[Sequence[int]]


def content(v: Sequence[int]) -> int:
    return math.gcd(*v) if len(v) else 0


def primitive(v: Sequence[int]) -> tuple[int, ...]:
    """Divide by content and make the first nonzero entry positive."""
    g = content(v)
    if g == 0:
        raise ValueError("zero vector has no primitive form")
    lead = next(x for x in v if x)
    if lead < 0:
        g = -g
    return tuple(x // g for x in v)


def scale_to_integers(v: Sequence[Fraction]) -> tuple[int, ...]:
    den = math.lcm(*(Fraction(x).denominator for x in v))
    return primitive([int(Fraction(x) * den) for x in v])


def bareiss(M: Matrix) -> tuple[list[list[int]], list[int]]:
    """Fraction-free row echelon form of an integer matrix.

    Returns (rows, pivot_columns); ``rows`` holds only the nonzero rows.
    All intermediate divisions are exact (Bareiss / Sylvester identity).
    """
    a = [list(map(int, r)) for r in M]
    if not a:
        return [], []
    m, n = len(a), len(a[0])
    pivots = []
    prev = 1
    r = 0
    for c in range(n):
        if r == m:
            break
        piv = next((i for i in range(r, m) if a[i][c]), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        p = a[r][c]
        for i in range(r + 1, m):
            ai = a[i]
            f = ai[c]
            for j in range(c + 1, n):
                ai[j] = (p * ai[j] - f * a[r][j]) // prev
            ai[c] = 0
        # rows above the pivot row are already final
        prev = p
        pivots.append(c)
        r += 1
    return a[:r], pivots


def rank(M: Matrix) -> int:
    return len(bareiss(M)[1])


def rref(M: Matrix) -> tuple[list[list[Fraction]], list[int]]:
    rows, pivots = bareiss(M)
    R = [[Fraction(x) for x in row] for row in rows]
    for k in range(len(R) - 1, -1, -1):
        c = pivots[k]
        inv = 1 / R[k][c]
        R[k] = [x * inv for x in R[k]]
        for i in range(k):
            f = R[i][c]
            if f:
                R[i] = [x - f * y for x, y in zip(R[i], R[k])]
    return R, pivots


def canonical_span(rows: Matrix) -> tuple[tuple[int, ...], ...]:
    """Unique integer basis of the row space: RREF rows scaled to primitive."""
    R, _ = rref(rows)
    return tuple(scale_to_integers(r) for r in R)


def kernel(M: Matrix, ncols: int | None = None) -> list[tuple[int, ...]]:
    """Integer basis of {x : M x = 0}, primitive rows in canonical echelon form."""
    if ncols is None:
        ncols = len(M[0])
    R, pivots = rref(M) if len(M) else ([], [])
    free = [c for c in range(ncols) if c not in pivots]
    vecs = []
    for f in free:
        x = [Fraction(0)] * ncols
        x[f] = Fraction(1)
        for row, p in zip(R, pivots):
            x[p] = -row[f]
        vecs.append(x)
    if not vecs:
        return []
    R2, _ = rref([scale_to_integers(v) for v in vecs])
    return [scale_to_integers(v) for v in R2]


def det(M: Matrix) -> int:
    n = len(M)
    if n == 0:
        return 1
    a = [list(map(int, r)) for r in M]
    sign = 1
    prev = 1
    for c in range(n - 1):
        piv = next((i for i in range(c, n) if a[i][c]), None)
        if piv is None:
            return 0
        if piv != c:
            a[c], a[piv] = a[piv], a[c]
            sign = -sign
        p = a[c][c]
        for i in range(c + 1, n):
            for j in range(c + 1, n):
                a[i][j] = (p * a[i][j] - a[i][c] * a[c][j]) // prev
            a[i][c] = 0
        prev = p
    return sign * a[n - 1][n - 1]


def solve(A: Sequence[Sequence], b: Sequence) -> list[Fraction] | None:
    """Unique solution of the square system A x = b over Q, or None if singular."""
    n = len(A)
    a = [[Fraction(x) for x in row] + [Fraction(y)] for row, y in zip(A, b)]
    for c in range(n):
        piv = next((i for i in range(c, n) if a[i][c]), None)
        if piv is None:
            return None
        a[c], a[piv] = a[piv], a[c]
        inv = 1 / a[c][c]
        a[c] = [x * inv for x in a[c]]
        for i in range(n):
            if i != c and a[i][c]:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[c])]
    return [row[n] for row in a]


def intersect_spans(A: Matrix, B: Matrix) -> list[tuple[int, ...]]:
    """Canonical basis of rowspace(A) ∩ rowspace(B)."""
    if not len(A) or not len(B):
        return []
    # x A = y B  <=>  [x | -y] [A; B] = 0
    stacked = [list(r) for r in A] + [[-v for v in r] for r in B]
    n = len(A[0])
    cols = [[stacked[i][j] for i in range(len(stacked))] for j in range(n)]
    out = []
    for coeffs in kernel(cols, len(stacked)):
        v = [sum(coeffs[i] * A[i][j] for i in range(len(A))) for j in range(n)]
        if any(v):
            out.append(v)
    return list(canonical_span(out)) if out else []
