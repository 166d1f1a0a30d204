"""Independent reference computations used to cross-check the library.

Nothing here calls into conelab's algorithms; only the model's shape
(kind, l, g, qmin) is read.
"""
from __future__ import annotations

from itertools import product
from math import isqrt

import numpy as np


def gram(M) -> np.ndarray:
    """Intersection matrix built from scratch."""
    n = M.rank
    q = np.zeros((n, n), dtype=np.int64)
    if M.kind == "rational":
        q[0, 0] = 1
        off = 1
    elif M.kind == "ruled":
        q[0, 1] = q[1, 0] = 1
        off = 2
    else:
        r = len(M.qmin)
        q[:r, :r] = np.array(M.qmin)
        off = r
    for i in range(off, n):
        q[i, i] = -1
    return q


def pairing(M, x, y) -> int:
    q = gram(M)
    return int(np.array(x, dtype=np.int64) @ q @ np.array(y, dtype=np.int64))


def _sq_sums_linear(total, w, target):
    """x with sum x^2 = total and sum w.x = target, plain recursion with a remaining-norm cut."""
    n = len(w)
    out = []

    def rec(i, rem, t, acc):
        if i == n:
            if rem == 0 and t == 0:
                out.append(tuple(acc))
            return
        m = isqrt(rem)
        for v in range(-m, m + 1):
            rest = n - i - 1
            t2 = t - w[i] * v
            # the remaining coordinates can shift the target by at most sqrt(rem') * |w_rest|
            wr = sum(abs(c) for c in w[i + 1:])
            if abs(t2) > wr * isqrt(rem - v * v) + (wr if rest else 0):
                continue
            rec(i + 1, rem - v * v, t2, acc + [v])

    rec(0, total, target, [])
    return out


def rational_ek0(l: int, amax: int = 10) -> set:
    """Exhaustive E with E^2 = -1 and K_0.E = -1, over |a| <= amax."""
    out = set()
    for a in range(-amax, amax + 1):
        # K_0.E = -3a - sum x_i = -1
        for xs in _sq_sums_linear(a * a + 1, [1] * l, 1 - 3 * a):
            out.add((a,) + xs)
    return out


def rational_orthogonal_minus_one(e) -> list:
    """All square -1 classes E with e.E = 0, for e^2 > 0 (finite set)."""
    a0 = e[0]
    ef = list(e[1:])
    e2 = a0 * a0 - sum(v * v for v in ef)
    assert e2 > 0
    nf = sum(v * v for v in ef)
    amax = isqrt(nf // e2) + 1
    out = []
    for a in range(-amax, amax + 1):
        # e.E = a0*a - sum ef_i x_i = 0
        for xs in _sq_sums_linear(a * a + 1, ef, a0 * a):
            out.append((a,) + xs)
    return out


def theorem4_rational(e) -> bool:
    """e^2 > 0 and no square -1 class orthogonal to e (every such class is exceptional for l <= 9)."""
    a0 = e[0]
    if a0 * a0 - sum(v * v for v in e[1:]) <= 0:
        return False
    return not rational_orthogonal_minus_one(e)


def theorem4_ruled(M, e) -> bool:
    if pairing(M, e, e) <= 0:
        return False
    for i in range(M.l):
        x = e[2 + i]
        for s in range(-abs(x) - 1, abs(x) + 2):
            for sign in (1, -1):
                E = [0] * M.rank
                E[1] = s
                E[2 + i] = sign
                if pairing(M, e, E) == 0:
                    return False
    return True


def characteristic_brute(M, square: int, bound: int) -> set:
    """Characteristic vectors of the given square with |coeffs| <= bound, by full product."""
    q = gram(M)
    diag = np.diag(q)
    out = set()
    for v in product(range(-bound, bound + 1), repeat=M.rank):
        x = np.array(v)
        if int(x @ q @ x) != square:
            continue
        if all((int(x @ q[:, i]) - int(diag[i])) % 2 == 0 for i in range(M.rank)):
            out.add(v)
    return out


def pairing_fn(M):
    """Exact pairing with the Gram matrix frozen as Python ints, for hot loops."""
    q = [[int(v) for v in row] for row in gram(M)]
    nz = [[(j, v) for j, v in enumerate(row) if v] for row in q]

    def pair(x, y):
        return sum(x[i] * sum(v * y[j] for j, v in row) for i, row in enumerate(nz) if x[i])
    return pair


def is_characteristic_oracle(M, x) -> bool:
    q = gram(M)
    return all((int(np.dot(x, q[:, i])) - int(q[i, i])) % 2 == 0 for i in range(M.rank))


def theorem4_general(M, e) -> bool:
    """For the general models the exceptional set is {+-F_i}."""
    if pairing(M, e, e) <= 0:
        return False
    r = len(M.qmin)
    return all(e[r + i] != 0 for i in range(M.l))


def sup_square_faces(M, e, gens, ref):
    """Exact max of p(t)^2, p = e - sum t_i g_i, over {t >= 0, p.ref >= 0}, by face enumeration.

    Returns None when the polytope is empty.  The maximum of a quadratic on a
    polytope is a stationary point on the affine hull of some face, so every
    subset of generators (up to rank + 1) is tried, with and without the
    p.ref = 0 constraint active.  Exponential; only for small inputs.
    """
    from fractions import Fraction
    from itertools import combinations

    q = gram(M).tolist()

    def pr(x, y):
        return sum(x[i] * q[i][j] * y[j] for i in range(len(x)) for j in range(len(y)))

    def solve(a, b):
        n = len(a)
        m = [[Fraction(v) for v in row] + [Fraction(r)] for row, r in zip(a, b)]
        for c in range(n):
            piv = next((r for r in range(c, n) if m[r][c] != 0), None)
            if piv is None:
                return None
            m[c], m[piv] = m[piv], m[c]
            for r in range(n):
                if r != c and m[r][c] != 0:
                    f = m[r][c] / m[c][c]
                    m[r] = [x - f * y for x, y in zip(m[r], m[c])]
        return [m[i][n] / m[i][i] for i in range(n)]

    m = len(gens)
    r = [pr(g, ref) for g in gens]
    c0 = pr(e, ref)
    if c0 < 0:
        return None
    G = [[pr(gens[i], gens[j]) for j in range(m)] for i in range(m)]
    b = [pr(e, g) for g in gens]
    best = Fraction(pr(e, e))
    for k in range(1, min(m, M.rank + 1) + 1):
        for S in combinations(range(m), k):
            GS = [[G[i][j] for j in S] for i in S]
            bS = [b[i] for i in S]
            rS = [r[i] for i in S]
            cands = []
            t = solve(GS, bS)
            if t is not None:
                cands.append(t)
            sol = solve([row + [-rS[a]] for a, row in enumerate(GS)] + [rS + [0]], bS + [c0])
            if sol is not None:
                cands.append(sol[:-1])
            for tS in cands:
                if any(x < 0 for x in tS) or c0 - sum(x * y for x, y in zip(tS, rS)) < 0:
                    continue
                v = Fraction(pr(e, e))
                for a, i in enumerate(S):
                    v -= 2 * tS[a] * b[i]
                    for cc, j in enumerate(S):
                        v += tS[a] * tS[cc] * G[i][j]
                best = max(best, v)
    return best
