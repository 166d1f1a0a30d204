"""Lattice automorphisms realized by diffeomorphisms, and reduction to normal form.

Indices in moves are 1-based and refer to F_i.  All moves are involutions
preserving the intersection form.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from .lattice import (
    RATIONAL, RULED, Class, ConelabError, ManifoldModel, ModelMismatchError,
    NotApplicableError, PreconditionError,
)


class InvalidReflectorError(ConelabError):
    pass


class DescentError(AssertionError):
    """The a-coefficient failed to decrease or left the positive range."""


def _require(M: ManifoldModel, kind: str, what: str):
    if M.kind != kind:
        raise ModelMismatchError(f"{what} needs a {kind} model, got {M.kind}")


def _index(M: ManifoldModel, i: int) -> int:
    if not 1 <= i <= M.l:
        raise ModelMismatchError(f"index {i} out of range 1..{M.l}")
    return M.offset + i - 1


def reflect(M: ManifoldModel, alpha: Sequence[int], beta: Sequence[int]) -> Class:
    """R(alpha) beta = beta + 2 (beta.alpha) alpha, for alpha^2 = -1."""
    alpha, beta = M.check(alpha), M.check(beta)
    if M.pair(alpha, alpha) != -1:
        raise InvalidReflectorError(f"reflector must have square -1, got {M.pair(alpha, alpha)}")
    t = 2 * M.pair(beta, alpha)
    return tuple(b + t * a for a, b in zip(alpha, beta))


def cremona(M: ManifoldModel, beta: Sequence[int], ijk: tuple[int, int, int] = (1, 2, 3)) -> Class:
    """beta + (beta.alpha) alpha along alpha = H - F_i - F_j - F_k (alpha^2 = -2)."""
    _require(M, RATIONAL, "cremona")
    if M.l < 3:
        raise ModelMismatchError("cremona needs l >= 3")
    if len(set(ijk)) != 3:
        raise ModelMismatchError("cremona indices must be distinct")
    beta = M.check(beta)
    p, q, r = (_index(M, i) for i in ijk)
    v = list(beta)
    d = v[0] + v[p] + v[q] + v[r]  # beta.alpha
    v[0] += d
    v[p] -= d
    v[q] -= d
    v[r] -= d
    return tuple(v)


def ruled_move_fki(M: ManifoldModel, k: int, i: int, beta: Sequence[int]) -> Class:
    """Reflection along -kT - F_i: x_i -> 2ka - x_i, b -> b - 2k(x_i - ka)."""
    _require(M, RULED, "ruled_move_fki")
    beta = M.check(beta)
    p = _index(M, i)
    v = list(beta)
    a, x = v[0], v[p]
    v[1] -= 2 * k * (x - k * a)
    v[p] = 2 * k * a - x
    return tuple(v)


# -- moves -----------------------------------------------------------------

@dataclass(frozen=True)
class SignFlip:
    i: int

    def apply(self, M, x):
        v = list(M.check(x))
        p = _index(M, self.i)
        v[p] = -v[p]
        return tuple(v)

    def __str__(self):
        return f"signflip {self.i}"


@dataclass(frozen=True)
class Transpose:
    i: int
    j: int

    def apply(self, M, x):
        v = list(M.check(x))
        p, q = _index(M, self.i), _index(M, self.j)
        v[p], v[q] = v[q], v[p]
        return tuple(v)

    def __str__(self):
        return f"transpose {self.i} {self.j}"


@dataclass(frozen=True)
class TwoPointReflect:
    i: int
    j: int

    def apply(self, M, x):
        _require(M, RATIONAL, "TwoPointReflect")
        if self.i == self.j:
            raise ModelMismatchError("indices must be distinct")
        v = list(M.check(x))
        p, q = _index(M, self.i), _index(M, self.j)
        d = 2 * (v[0] + v[p] + v[q])
        v[0] += d
        v[p] -= d
        v[q] -= d
        return tuple(v)

    def __str__(self):
        return f"reflect2 {self.i} {self.j}"


@dataclass(frozen=True)
class Cremona:
    i: int
    j: int
    k: int

    def apply(self, M, x):
        return cremona(M, x, (self.i, self.j, self.k))

    def __str__(self):
        return f"cremona {self.i} {self.j} {self.k}"


@dataclass(frozen=True)
class RuledFki:
    k: int
    i: int

    def apply(self, M, x):
        return ruled_move_fki(M, self.k, self.i, x)

    def __str__(self):
        return f"ruledf {self.k} {self.i}"


@dataclass(frozen=True)
class GeneralReflect:
    alpha: Class

    def apply(self, M, x):
        return reflect(M, self.alpha, x)

    def __str__(self):
        return "reflect " + ",".join(map(str, self.alpha))


Move = SignFlip | Transpose | TwoPointReflect | Cremona | RuledFki | GeneralReflect


def parse_move(line: str) -> Move:
    parts = line.split()
    if not parts:
        raise ValueError("empty move line")
    name, args = parts[0], parts[1:]
    try:
        if name == "reflect":
            return GeneralReflect(tuple(int(t) for t in args[0].split(",")))
        nums = [int(t) for t in args]
        cls = {"signflip": SignFlip, "transpose": Transpose, "reflect2": TwoPointReflect,
               "cremona": Cremona, "ruledf": RuledFki}[name]
        return cls(*nums)
    except (KeyError, IndexError, TypeError, ValueError) as exc:
        raise ValueError(f"bad move line: {line!r}") from exc


@dataclass
class MoveTrace:
    start: Class
    end: Class
    moves: list = field(default_factory=list)

    def replay(self, M: ManifoldModel, x: Sequence[int] | None = None) -> Class:
        x = self.start if x is None else tuple(x)
        for m in self.moves:
            x = m.apply(M, x)
        return x

    def replay_inverse(self, M: ManifoldModel, x: Sequence[int]) -> Class:
        """Apply the inverse map; every move is an involution."""
        x = tuple(x)
        for m in reversed(self.moves):
            x = m.apply(M, x)
        return x

    def to_log(self) -> str:
        return "\n".join(str(m) for m in self.moves)

    @staticmethod
    def parse_log(text: str) -> list:
        return [parse_move(ln) for ln in text.splitlines() if ln.strip()]

    def __len__(self):
        return len(self.moves)


# -- reduction -------------------------------------------------------------

def is_reduced(M: ManifoldModel, e: Sequence[int]) -> bool:
    e = M.check(e)
    if M.kind == RATIONAL:
        b = [-v for v in e[1:]]
        if any(v < 0 for v in b) or any(b[i] < b[i + 1] for i in range(len(b) - 1)):
            return False
        return e[0] >= sum(b[:3])
    if M.kind == RULED:
        c = [-v for v in e[2:]]
        if any(v < 0 for v in c) or any(c[i] < c[i + 1] for i in range(len(c) - 1)):
            return False
        return all(e[0] >= v for v in c)
    raise NotApplicableError("reduced form is defined for rational and ruled models only")


def _sort_b(v: list, off: int, moves: list):
    """Selection sort so that b = -x is non-increasing, i.e. x non-decreasing."""
    n = len(v)
    for p in range(off, n):
        m = p
        for q in range(p + 1, n):
            if v[q] < v[m]:
                m = q
        if m != p:
            v[p], v[m] = v[m], v[p]
            moves.append(Transpose(p - off + 1, m - off + 1))


def _flip_to_nonneg_b(v: list, off: int, moves: list):
    for p in range(off, len(v)):
        if v[p] > 0:
            v[p] = -v[p]
            moves.append(SignFlip(p - off + 1))


def reduce(M: ManifoldModel, e: Sequence[int]) -> tuple[Class, MoveTrace, bool]:
    """Bring a positive-square class to reduced form.

    Classes with negative leading coefficient are negated first and the
    third return value reports that.  The trace starts at the (possibly
    negated) class.
    """
    e = M.check(e)
    if M.kind not in (RATIONAL, RULED):
        raise NotApplicableError("reduce is defined for rational and ruled models only")
    sq = M.pair(e, e)
    if sq <= 0:
        raise PreconditionError(f"reduce needs e^2 > 0, got {sq}")
    flipped = e[0] < 0
    start = tuple(-c for c in e) if flipped else e
    v = list(start)
    moves: list = []
    if M.kind == RATIONAL:
        _reduce_rational(v, M.l, moves)
    else:
        _reduce_ruled(v, M.l, moves)
    return tuple(v), MoveTrace(start, tuple(v), moves), flipped


def _reduce_rational(v: list, l: int, moves: list):
    while True:
        _flip_to_nonneg_b(v, 1, moves)
        _sort_b(v, 1, moves)
        a = v[0]
        if l >= 3 and a + v[1] + v[2] + v[3] < 0:
            d = a + v[1] + v[2] + v[3]
            na = a + d
            if not 0 < na < a:
                raise DescentError(f"cremona step a: {a} -> {na}")
            v[0] = na
            v[1] -= d
            v[2] -= d
            v[3] -= d
            moves.append(Cremona(1, 2, 3))
        elif l == 2 and a + v[1] + v[2] < 0:
            d = 2 * (a + v[1] + v[2])
            na = a + d
            if not 0 < na < a:
                raise DescentError(f"two-point step a: {a} -> {na}")
            v[0] = na
            v[1] -= d
            v[2] -= d
            moves.append(TwoPointReflect(1, 2))
        else:
            return


def _reduce_ruled(v: list, l: int, moves: list):
    a = v[0]
    for p in range(2, 2 + l):
        x = v[p]
        # k = round(x / 2a) puts 2ka - x into [-a, a]
        k = (x + a) // (2 * a)
        if k:
            v[1] -= 2 * k * (x - k * a)
            v[p] = 2 * k * a - x
            moves.append(RuledFki(k, p - 1))
    _flip_to_nonneg_b(v, 2, moves)
    _sort_b(v, 2, moves)
