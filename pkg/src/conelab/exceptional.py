"""Exceptional classes: the set E of square -1 sphere classes and E_K."""
from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from math import isqrt
from typing import Sequence

import numpy as np

from ._linalg import short_vectors
from .canonical import validate_canonical
from .lattice import (
    GENERAL, RATIONAL, RULED, Class, ManifoldModel, ModelMismatchError, PreconditionError,
)
from .transform import cremona


class Verdict(str, Enum):
    YES = "Yes"
    NO = "No"
    UNKNOWN = "Unknown"


@dataclass(frozen=True)
class FiniteList:
    classes: tuple[Class, ...]
    complete: bool = True

    def __contains__(self, E):
        return tuple(E) in self.classes

    def __iter__(self):
        return iter(self.classes)

    def __len__(self):
        return len(self.classes)

    def describe(self) -> list[str]:
        return [",".join(map(str, c)) for c in self.classes]


@dataclass(frozen=True)
class RuledFamily:
    """The infinite family {s*T +- F_i : s in Z, 1 <= i <= l}."""
    l: int

    def __contains__(self, E):
        E = tuple(E)
        if len(E) != 2 + self.l or E[0] != 0:
            return False
        nz = [v for v in E[2:] if v]
        return len(nz) == 1 and abs(nz[0]) == 1

    def describe(self) -> list[str]:
        return [f"s*T +- F{i}" for i in range(1, self.l + 1)]


def _square_sums(total: int, n: int) -> list[tuple[int, ...]]:
    """All integer n-tuples with sum of squares equal to total."""
    if n == 0:
        return [()] if total == 0 else []
    out = []
    top = isqrt(total)
    for x in range(-top, top + 1):
        for rest in _square_sums(total - x * x, n - 1):
            out.append((x,) + rest)
    return out


def _constrained_square_sums(total: int, w: Sequence[int], target: int) -> list[tuple[int, ...]]:
    """Integer tuples x with sum x_i^2 = total and sum w_i x_i = target."""
    n = len(w)
    tails = [sum(v * v for v in w[i:]) for i in range(n + 1)]
    out = []
    x = [0] * n

    def rec(i, rem, t):
        if i == n:
            if rem == 0 and t == 0:
                out.append(tuple(x))
            return
        # Cauchy-Schwarz: |t| <= sqrt(rem * |w_tail|^2)
        if t * t > rem * tails[i]:
            return
        top = isqrt(rem)
        for v in range(-top, top + 1):
            x[i] = v
            rec(i + 1, rem - v * v, t - w[i] * v)
        x[i] = 0

    rec(0, total, target)
    return out


def _rational_minus_one(M: ManifoldModel, bound: int) -> list[Class]:
    out = []
    for a in range(-bound, bound + 1):
        for xs in _square_sums(a * a + 1, M.l):
            out.append((a,) + xs)
    return out


def exceptional_set(M: ManifoldModel, bound: int = 12):
    if M.kind == GENERAL:
        cls = []
        for i in range(1, M.l + 1):
            f = M.F(i)
            cls += [f, tuple(-v for v in f)]
        return FiniteList(tuple(cls))
    if M.kind == RULED:
        return RuledFamily(M.l)
    cands = _rational_minus_one(M, bound)
    if M.l > 9:
        cands = [E for E in cands if is_exceptional(M, E) == Verdict.YES]
    return FiniteList(tuple(sorted(cands)), complete=False)


def _rational_ek_positive(M: ManifoldModel, K: Class) -> list[Class]:
    """All E with E^2 = -1, K.E = -1 when K^2 > 0.

    With c = -K, the form Q_c(x) = -x.x + 2 (x.c)^2 / c^2 is positive
    definite, and every such E has Q_c(E) = 1 + 2/c^2, so a short-vector
    enumeration is complete.
    """
    n = M.rank
    q = np.array(M.form, dtype=float)
    c = np.array([-v for v in K], dtype=float)
    qc = q @ c
    c2 = float(c @ qc)
    gram = -q + 2.0 * np.outer(qc, qc) / c2
    out = []
    for x in short_vectors(gram, 1.0 + 2.0 / c2):
        if M.pair(x, x) == -1 and M.pair(K, x) == -1:
            out.append(x)
    assert all(len(x) == n for x in out)
    return sorted(out)


def exceptional_K_set(M: ManifoldModel, K: Sequence[int], bound: int = 12) -> FiniteList:
    """E_K = {E in E : K.E = -1}."""
    K = validate_canonical(M, K)
    if M.kind == GENERAL:
        out = []
        for i in range(1, M.l + 1):
            f = M.F(i)
            delta = M.pair(K, f)
            out.append(tuple(-delta * v for v in f))
        return FiniteList(tuple(sorted(out)))
    if M.kind == RULED:
        aK = K[0]
        out = []
        for i in range(1, M.l + 1):
            x = K[M.offset + i - 1]
            for sigma in (1, -1):
                s = (sigma * x - 1) // aK
                E = [0] * M.rank
                E[1] = s
                E[M.offset + i - 1] = sigma
                out.append(tuple(E))
        return FiniteList(tuple(sorted(out)))
    if M.pair(K, K) > 0:
        return FiniteList(tuple(_rational_ek_positive(M, K)))
    out = []
    w = K[1:]
    for a in range(-bound, bound + 1):
        for xs in _constrained_square_sums(a * a + 1, w, K[0] * a + 1):
            E = (a,) + xs
            if M.l <= 9 or is_exceptional(M, E) == Verdict.YES:
                out.append(E)
    return FiniteList(tuple(sorted(out)), complete=False)


def _is_pm_f(E: Sequence[int], off: int) -> bool:
    if any(E[:off]):
        return False
    nz = [v for v in E[off:] if v]
    return len(nz) == 1 and abs(nz[0]) == 1


def _is_pm_two_point(E: Sequence[int]) -> bool:
    a = E[0]
    if abs(a) != 1:
        return False
    rest = sorted(E[1:])
    want = -a
    return rest.count(want) == 2 and all(v == 0 for v in rest if v != want)


def is_exceptional(M: ManifoldModel, E: Sequence[int], max_steps: int = 1000) -> Verdict:
    """Orbit test: descend E by Cremona-type moves until it is +-F_i or stuck."""
    if M.kind != RATIONAL:
        raise ModelMismatchError("is_exceptional is the rational orbit test")
    E = M.check(E)
    if M.pair(E, E) != -1:
        raise PreconditionError(f"E^2 = {M.pair(E, E)}, expected -1")
    v = list(E)
    for _ in range(max_steps + 1):
        if _is_pm_f(v, 1) or _is_pm_two_point(v):
            return Verdict.YES
        if v[0] < 0:
            v = [-x for x in v]
        b = sorted((abs(x) for x in v[1:]), reverse=True)
        a = v[0]
        if M.l >= 3 and a < b[0] + b[1] + b[2]:
            v = list(cremona(M, (a,) + tuple(-x for x in b)))
        elif M.l == 2 and a < b[0] + b[1]:
            d = 2 * (a - b[0] - b[1])
            v = [a + d, -b[0] - d, -b[1] - d]
        else:
            return Verdict.NO
    return Verdict.UNKNOWN
