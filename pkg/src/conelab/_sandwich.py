"""Exact position of a class against closure(FP) + cone(gens) and its interior.

S = closure(FP) + sum t_i g_i (t_i >= 0) is a closed convex cone.  Its dual
under the form is D = closure(FP) ∩ {w : w.g_i >= 0}, so e is interior to S
iff e.w > 0 on D minus 0, and e lies in S iff e.w >= 0 on D.  On the slice
w.ref = 1 the square w^2 is strictly concave (b+ = 1), and the sign of
min{e.w : w in D, w.ref = 1} comes out of one or two strictly convex QPs.
Their Lagrange or Farkas multipliers give exact certificates.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import lcm
from typing import Sequence

from ._linalg import solve


@dataclass
class QPResult:
    feasible: bool
    x: list = field(default_factory=list)
    mult: dict = field(default_factory=dict)  # constraint index -> multiplier


def _dot(a, b):
    return sum(x * y for x, y in zip(a, b))


def _inverse_scaled(G):
    """(A, den) with A integral and A / den = G^-1."""
    n = len(G)
    cols = [solve(G, [int(i == j) for i in range(n)]) for j in range(n)]
    if any(c is None for c in cols):
        raise ValueError("QP matrix is singular")
    den = lcm(*(v.denominator for c in cols for v in c)) if n else 1
    return [[int(cols[j][i] * den) for j in range(n)] for i in range(n)], den


def _int_row(row, b):
    s = lcm(*(Fraction(v).denominator for v in list(row) + [b]))
    return [int(Fraction(v) * s) for v in row], int(Fraction(b) * s), s


def min_norm_qp(G, rows: Sequence[Sequence], rhs: Sequence) -> QPResult:
    """Minimize x^T G x / 2 subject to rows[j].x >= rhs[j], G positive definite.

    Dual active-set method of Goldfarb and Idnani in exact arithmetic.  On
    success mult holds u >= 0 with G x = sum u_j rows[j]; on infeasibility it
    holds a Farkas vector: u >= 0, sum u_j rows[j] = 0 and sum u_j rhs[j] > 0.
    """
    d = len(G)
    Ai, den = _inverse_scaled(G)
    scaled = [_int_row(r, b) for r, b in zip(rows, rhs)]
    rows = [r for r, _, _ in scaled]
    rhs = [b for _, b, _ in scaled]
    scale = [s for _, _, s in scaled]
    Gin = [[sum(a * v for a, v in zip(Ai[i], r)) for i in range(d)] for r in rows]  # den G^-1 n_j
    x = [Fraction(0)] * d
    A: list[int] = []
    u: list[Fraction] = []

    def result(ok, mult):
        return QPResult(ok, x, {j: v * scale[j] for j, v in mult.items()})

    while True:
        D = lcm(*(v.denominator for v in x)) if d else 1
        X = [int(v * D) for v in x]
        slack = [_dot(r, X) - b * D for r, b in zip(rows, rhs)]
        p = min(range(len(rows)), key=lambda j: (slack[j], j), default=None)
        if p is None or slack[p] >= 0:
            return result(True, dict(zip(A, u)))
        up = u + [Fraction(0)]
        while True:
            if A:
                Mq = [[_dot(rows[a], Gin[b]) for b in A] for a in A]
                r = solve(Mq, [_dot(rows[a], Gin[p]) for a in A])
                zs = [Gin[p][i] - sum(rk * Gin[a][i] for rk, a in zip(r, A)) for i in range(d)]
            else:
                r, zs = [], list(Gin[p])
            t1, k = None, None
            for idx, rv in enumerate(r):
                if rv > 0 and (t1 is None or up[idx] / rv < t1):
                    t1, k = up[idx] / rv, idx
            sp = _dot(rows[p], x) - rhs[p]
            # zs = den * z, so the full step is -sp / (z.n_p)
            t2 = -sp * den / _dot(zs, rows[p]) if any(zs) else None
            if t1 is None and t2 is None:
                cert = {a: -rv for a, rv in zip(A, r)}
                cert[p] = Fraction(1)
                return result(False, cert)
            full = t2 is not None and (t1 is None or t2 <= t1)
            t = t2 if full else t1
            x = [xi + t * zi / den for xi, zi in zip(x, zs)]
            up = [v - t * rv for v, rv in zip(up, r)] + [up[-1] + t]
            if full:
                A.append(p)
                u = up
                break
            A.pop(k)
            up.pop(k)


@dataclass
class Position:
    """sign: +1 interior, 0 boundary, -1 outside.

    Interior answers carry e = p + sum t_i g_i with p in FP; boundary and
    outside answers carry a dual class w in D with e.w = 0 or e.w < 0.
    """
    sign: int
    t: tuple = ()
    p: tuple = ()
    w: tuple = ()


def _integral(v):
    den = lcm(*(Fraction(c).denominator for c in v)) if v else 1
    return tuple(int(c * den) for c in v)


def cone_position(form, e: Sequence, gens: Sequence[Sequence[int]], ref: Sequence[int]) -> Position:
    n = len(e)
    Q = [list(row) for row in form]

    def Qv(v):
        return [sum(Q[i][j] * v[j] for j in range(n)) for i in range(n)]

    def pair(a, b):
        return _dot(a, Qv(b))

    e = [Fraction(v) for v in e]
    rr = pair(ref, ref)
    if rr <= 0:
        raise ValueError("reference class must have positive square")
    if any(pair(g, ref) <= 0 for g in gens):
        raise ValueError("every generator must pair positively with the reference class")
    c = Qv(ref)
    k = max(range(n), key=lambda i: (abs(c[i]), -i))
    # basis of ref-perp: c_k e_j - c_j e_k
    Z = []
    for j in range(n):
        if j != k:
            z = [0] * n
            z[j] = c[k]
            z[k] = -c[j]
            Z.append(z)
    QZ = [Qv(z) for z in Z]
    P = [[-2 * _dot(za, qzb) for qzb in QZ] for za in Z]
    w0 = [Fraction(v) / rr for v in ref]

    def perp(v):
        return [_dot(qz, v) for qz in QZ]

    rows = [perp(g) for g in gens] + [[-v for v in perp(e)]]
    rhs = [-pair(g, w0) for g in gens] + [pair(e, w0)]
    res = min_norm_qp(P, rows, rhs)
    m = len(gens)

    def decomposition(mult, core):
        ue = mult.get(m, Fraction(0))
        if ue <= 0:
            raise RuntimeError("degenerate multipliers in cone_position")
        t = tuple(mult.get(i, Fraction(0)) / ue for i in range(m))
        p = tuple(x / ue for x in core)
        if any(a != b + sum(ti * g[i] for ti, g in zip(t, gens)) for i, (a, b) in enumerate(zip(e, p))):
            raise RuntimeError("decomposition check failed")
        if pair(p, p) <= 0 or pair(p, ref) <= 0:
            raise RuntimeError("decomposition left the forward cone")
        return Position(1, t, p)

    if not res.feasible:
        # sum u_i g_i - u_e e = kappa ref with kappa < 0
        v = [sum(res.mult.get(i, 0) * g[a] for i, g in enumerate(gens)) - res.mult.get(m, 0) * e[a]
             for a in range(n)]
        kappa = pair(v, ref) / rr
        return decomposition(res.mult, [-kappa * r for r in ref])
    w = [w0[a] + sum(y * z[a] for y, z in zip(res.x, Z)) for a in range(n)]
    h = pair(w, w)
    if h < 0:
        return decomposition(res.mult, [2 * w[a] - 2 * h * ref[a] for a in range(n)])
    ew = pair(e, w)
    if h == 0:
        return Position(-1 if ew < 0 else 0, w=_integral(w))
    # h > 0: e is outside iff some w in the cone over D pairs negatively with e
    qrows = [Qv(g) for g in gens] + [[-v for v in Qv(e)], c]
    qrhs = [0] * m + [1, 0]
    ident = [[int(i == j) for j in range(n)] for i in range(n)]
    feas = min_norm_qp(ident, qrows, qrhs)
    if not feas.feasible:
        return Position(0, w=_integral(w))
    theta = Fraction(1)
    while True:
        wc = [a + theta * b for a, b in zip(w, feas.x)]
        if pair(wc, wc) > 0:
            return Position(-1, w=_integral(wc))
        theta /= 2


def conic_combination(e: Sequence, gens: Sequence[Sequence[int]]) -> tuple[Fraction, ...] | None:
    """Nonnegative t with e = sum t_i gens_i exactly, or None (Farkas)."""
    n = len(e)
    m = len(gens)
    if not any(e):
        return tuple(Fraction(0) for _ in range(m))
    ident = [[int(i == j) for j in range(n)] for i in range(n)]
    res = min_norm_qp(ident, list(gens) + [[-v for v in e]], [0] * m + [1])
    if res.feasible:
        return None
    ue = res.mult[m]
    t = tuple(res.mult.get(i, Fraction(0)) / ue for i in range(m))
    if any(sum(ti * g[a] for ti, g in zip(t, gens)) != e[a] for a in range(n)):
        raise RuntimeError("conic combination check failed")
    return t
