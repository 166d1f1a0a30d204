"""Small exact linear algebra over Q and short-vector enumeration.

Everything here works on plain nested sequences of ints/Fractions; the
dimensions involved never exceed a dozen or so.
"""
from __future__ import annotations

import math
from fractions import Fraction
from typing import Iterator, Sequence

import numpy as np


def inertia(q: Sequence[Sequence[int]]) -> tuple[int, int, int]:
    """Return (n_pos, n_neg, n_zero) of a symmetric rational matrix.

    Symmetric Gaussian elimination over Q; a zero pivot with a nonzero
    off-diagonal entry is repaired by the congruence e_i -> e_i + e_j.
    """
    a = [[Fraction(v) for v in row] for row in q]
    n = len(a)
    for row in a:
        if len(row) != n:
            raise ValueError("matrix is not square")
    for i in range(n):
        for j in range(i):
            if a[i][j] != a[j][i]:
                raise ValueError("matrix is not symmetric")
    pos = neg = 0
    active = list(range(n))
    while active:
        piv = next((i for i in active if a[i][i] != 0), None)
        if piv is None:
            pair = next(((i, j) for i in active for j in active
                         if i != j and a[i][j] != 0), None)
            if pair is None:
                break
            i, j = pair
            # congruence: row/col i += row/col j makes a[i][i] = 2 a[i][j] != 0
            for k in range(n):
                a[i][k] += a[j][k]
            for k in range(n):
                a[k][i] += a[k][j]
            piv = i
        p = a[piv][piv]
        if p > 0:
            pos += 1
        else:
            neg += 1
        active.remove(piv)
        for i in active:
            f = a[i][piv] / p
            if f:
                for k in active:
                    a[i][k] -= f * a[piv][k]
        for i in active:
            a[i][piv] = a[piv][i] = Fraction(0)
    return pos, neg, n - pos - neg


def solve(a: Sequence[Sequence], b: Sequence) -> list[Fraction] | None:
    """Solve the square system a x = b exactly; None when singular."""
    n = len(a)
    m = [[Fraction(v) for v in row] + [Fraction(rhs)] for row, rhs in zip(a, b)]
    for col in range(n):
        piv = next((r for r in range(col, n) if m[r][col] != 0), None)
        if piv is None:
            return None
        m[col], m[piv] = m[piv], m[col]
        p = m[col][col]
        for r in range(n):
            if r != col and m[r][col] != 0:
                f = m[r][col] / p
                m[r] = [x - f * y for x, y in zip(m[r], m[col])]
    return [m[i][n] / m[i][i] for i in range(n)]


def rank(rows: Sequence[Sequence]) -> int:
    m = [[Fraction(v) for v in row] for row in rows]
    r = 0
    ncols = len(m[0]) if m else 0
    for col in range(ncols):
        piv = next((i for i in range(r, len(m)) if m[i][col] != 0), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        for i in range(len(m)):
            if i != r and m[i][col] != 0:
                f = m[i][col] / m[r][col]
                m[i] = [x - f * y for x, y in zip(m[i], m[r])]
        r += 1
    return r


def short_vectors(gram: np.ndarray, bound: float) -> Iterator[tuple[int, ...]]:
    """Yield every integer x (including 0) with x^T gram x <= bound.

    Fincke-Pohst enumeration in floating point with a small slack; callers
    re-check the exact conditions they care about, so the slack only ever
    adds candidates.
    """
    n = gram.shape[0]
    chol = np.linalg.cholesky(gram)  # gram = L L^T
    r = chol.T  # upper triangular, x^T gram x = |R x|^2
    # q[i][j] = r[i][j] / r[i][i]
    diag = np.diag(r).copy()
    q = r / diag[:, None]
    qd = diag ** 2
    slack = 1e-7 * max(1.0, bound)
    x = [0] * n
    qrows = [list(map(float, q[i])) for i in range(n)]
    qd = [float(v) for v in qd]

    def rec(i: int, remaining: float) -> Iterator[tuple[int, ...]]:
        row = qrows[i]
        center = -sum(row[j] * x[j] for j in range(i + 1, n))
        half = math.sqrt(max(remaining, 0.0) / qd[i]) + 1e-9
        lo = math.ceil(center - half)
        hi = math.floor(center + half)
        for v in range(lo, hi + 1):
            t = v - center
            rest = remaining - qd[i] * t * t
            if rest < -slack:
                continue
            x[i] = v
            if i == 0:
                yield tuple(x)
            else:
                yield from rec(i - 1, rest)
        x[i] = 0

    yield from rec(n - 1, bound + slack)
