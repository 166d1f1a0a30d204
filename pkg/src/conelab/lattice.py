"""Intersection lattices of the three b+ = 1 manifold models.

A class is a plain tuple of ints in the model's basis:

* ``rational l``  -- (H, F1..Fl), form diag(1, -1, ..., -1)
* ``ruled g l``   -- (U, T, F1..Fl), hyperbolic block on (U, T) plus -1's
* ``general``     -- (n1..nr, F1..Fl), Q_min plus -1's

Coefficients are stored as-is.  The reduced-form numbers b_i of a rational
class a*H + sum x_i F_i are b_i = -x_i; the same holds for the c_i of a
ruled class in the reduced-form sense.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from functools import cached_property
from typing import Sequence

from ._linalg import inertia

Class = tuple[int, ...]

RATIONAL = "rational"
RULED = "ruled"
GENERAL = "general"

HYPERBOLIC = ((0, 1), (1, 0))


class ConelabError(ValueError):
    """Base class for all library errors."""


class ModelMismatchError(ConelabError):
    pass


class PreconditionError(ConelabError):
    pass


class NotApplicableError(ConelabError):
    pass


@dataclass(frozen=True)
class ManifoldModel:
    kind: str
    l: int
    g: int = 0
    qmin: tuple[tuple[int, ...], ...] = ()
    vmin: tuple[int, ...] = ()
    declared_b1: int = 0
    _form: tuple = field(default=(), repr=False, compare=False)

    @classmethod
    def rational(cls, l: int) -> "ManifoldModel":
        if l < 0:
            raise ConelabError("l must be >= 0")
        return cls(RATIONAL, l)

    @classmethod
    def ruled(cls, g: int, l: int) -> "ManifoldModel":
        if g < 1:
            raise ConelabError("g must be >= 1")
        if l < 0:
            raise ConelabError("l must be >= 0")
        return cls(RULED, l, g=g)

    @classmethod
    def general(cls, qmin: Sequence[Sequence[int]], vmin: Sequence[int], l: int,
                b1: int = 0) -> "ManifoldModel":
        """Minimal piece N with form ``qmin`` and canonical class ``vmin``, blown up l times.

        Checks b+(N) = 1, that vmin is characteristic, and the Wu/Noether
        square vmin^2 = 10 - 4*b1 - rank (i.e. 2chi + 3sigma of N).
        """
        q = tuple(tuple(int(v) for v in row) for row in qmin)
        v = tuple(int(c) for c in vmin)
        r = len(q)
        if r == 0:
            raise ConelabError("qmin must be non-empty")
        if any(len(row) != r for row in q):
            raise ConelabError("qmin must be square")
        if any(q[i][j] != q[j][i] for i in range(r) for j in range(r)):
            raise ConelabError("qmin must be symmetric")
        pos, neg, zero = inertia(q)
        if zero:
            raise ConelabError("qmin must be nondegenerate")
        if pos != 1:
            raise ConelabError(f"qmin must have exactly one positive eigenvalue (found {pos})")
        if len(v) != r:
            raise ConelabError(f"vmin has length {len(v)}, expected {r}")
        if l < 0:
            raise ConelabError("l must be >= 0")
        if b1 < 0:
            raise ConelabError("b1 must be >= 0")
        if q == HYPERBOLIC and b1 == 0 and l > 0:
            raise ConelabError("S^2 x S^2 blown up is rational; use 'rational l=%d'" % (l + 1))
        for i in range(r):
            if (sum(v[j] * q[i][j] for j in range(r)) - q[i][i]) % 2:
                raise ConelabError("vmin is not characteristic for qmin")
        vv = sum(v[i] * q[i][j] * v[j] for i in range(r) for j in range(r))
        if vv != 10 - 4 * b1 - r:
            raise ConelabError(
                f"vmin^2 = {vv} but 2chi+3sigma of the minimal piece is {10 - 4 * b1 - r}")
        return cls(GENERAL, l, qmin=q, vmin=v, declared_b1=b1)

    # -- shape -----------------------------------------------------------
    @property
    def offset(self) -> int:
        """Index of F1 in the coefficient vector."""
        if self.kind == RATIONAL:
            return 1
        if self.kind == RULED:
            return 2
        return len(self.qmin)

    @property
    def rank(self) -> int:
        return self.offset + self.l

    @property
    def b1(self) -> int:
        if self.kind == RATIONAL:
            return 0
        if self.kind == RULED:
            return 2 * self.g
        return self.declared_b1

    @property
    def basis_labels(self) -> tuple[str, ...]:
        fs = tuple(f"F{i}" for i in range(1, self.l + 1))
        if self.kind == RATIONAL:
            return ("H",) + fs
        if self.kind == RULED:
            return ("U", "T") + fs
        return tuple(f"n{i}" for i in range(1, len(self.qmin) + 1)) + fs

    @property
    def is_minimal(self) -> bool:
        return self.l == 0

    @property
    def is_s2xs2(self) -> bool:
        return self.kind == GENERAL and self.qmin == HYPERBOLIC and self.declared_b1 == 0

    @cached_property
    def form(self) -> tuple[tuple[int, ...], ...]:
        n, o = self.rank, self.offset
        m = [[0] * n for _ in range(n)]
        if self.kind == RATIONAL:
            m[0][0] = 1
        elif self.kind == RULED:
            m[0][1] = m[1][0] = 1
        else:
            for i in range(o):
                for j in range(o):
                    m[i][j] = self.qmin[i][j]
        for i in range(o, n):
            m[i][i] = -1
        return tuple(tuple(r) for r in m)

    @property
    def canonical_square(self) -> int:
        """2 chi + 3 sigma, the square of every symplectic canonical class."""
        if self.kind == RATIONAL:
            return 9 - self.l
        if self.kind == RULED:
            return 8 - 8 * self.g - self.l
        return 10 - 4 * self.declared_b1 - len(self.qmin) - self.l

    def basis(self, i: int) -> Class:
        v = [0] * self.rank
        v[i] = 1
        return tuple(v)

    def F(self, i: int) -> Class:
        """The exceptional generator F_i (1-based)."""
        return self.basis(self.offset + i - 1)

    # -- pairing ---------------------------------------------------------
    def pair(self, x: Sequence[int], y: Sequence[int]):
        """Unchecked pairing; works for Fraction entries too."""
        o = self.offset
        if self.kind == RATIONAL:
            s = x[0] * y[0]
        elif self.kind == RULED:
            s = x[0] * y[1] + x[1] * y[0]
        else:
            q = self.qmin
            s = 0
            for i in range(o):
                xi = x[i]
                if xi:
                    row = q[i]
                    for j in range(o):
                        s += xi * row[j] * y[j]
        for i in range(o, len(x)):
            s -= x[i] * y[i]
        return s

    def check(self, x: Sequence) -> tuple:
        if len(x) != self.rank:
            raise ModelMismatchError(
                f"class has {len(x)} coefficients, model {self.spec()} has rank {self.rank}")
        return tuple(x)

    def spec(self) -> str:
        """Text form accepted by the CLI parser."""
        if self.kind == RATIONAL:
            return f"rational l={self.l}"
        if self.kind == RULED:
            return f"ruled g={self.g} l={self.l}"
        q = ";".join(",".join(str(v) for v in row) for row in self.qmin)
        v = ",".join(str(c) for c in self.vmin)
        s = f"general qmin={q} vmin={v} l={self.l}"
        if self.declared_b1:
            s += f" b1={self.declared_b1}"
        return s

    def positive_class(self) -> Class:
        """Some fixed class of positive square (the default reference)."""
        if self.kind == RATIONAL:
            return self.basis(0)
        if self.kind == RULED:
            return (1, 1) + (0,) * self.l
        return _positive_vector(self.qmin) + (0,) * self.l


def _positive_vector(q) -> Class:
    r = len(q)
    for i in range(r):
        if q[i][i] > 0:
            return tuple(1 if j == i else 0 for j in range(r))
    # no positive diagonal entry: search small vectors
    from itertools import product
    for size in range(1, 4):
        for v in product(range(-size, size + 1), repeat=r):
            if sum(v[i] * q[i][j] * v[j] for i in range(r) for j in range(r)) > 0:
                return v
    raise ConelabError("could not find a positive class for qmin")


# -- operations ----------------------------------------------------------

def intersection_pairing(M: ManifoldModel, x: Sequence[int], y: Sequence[int]) -> int:
    return M.pair(M.check(x), M.check(y))


def square(M: ManifoldModel, x: Sequence[int]) -> int:
    x = M.check(x)
    return M.pair(x, x)


def is_characteristic(M: ManifoldModel, x: Sequence[int]) -> bool:
    x = M.check(x)
    form = M.form
    for i in range(M.rank):
        xy = sum(x[j] * form[j][i] for j in range(M.rank))
        if (xy - form[i][i]) % 2:
            return False
    return True


def scale(c, x: Sequence) -> tuple:
    return tuple(c * v for v in x)


def add(x: Sequence, y: Sequence) -> tuple:
    return tuple(a + b for a, b in zip(x, y))


def sub(x: Sequence, y: Sequence) -> tuple:
    return tuple(a - b for a, b in zip(x, y))


def neg(x: Sequence) -> tuple:
    return tuple(-v for v in x)


def proportionality(x: Sequence, y: Sequence) -> Fraction | None:
    """r with y = r x exactly, or None.  x must be nonzero."""
    i = next((k for k, v in enumerate(x) if v), None)
    if i is None:
        raise PreconditionError("reference vector is zero")
    r = Fraction(y[i]) / x[i]
    if all(r * a == b for a, b in zip(x, y)):
        return r
    return None


class LightCone(str, Enum):
    ORTHOGONAL_NEGATIVE = "orthogonal_negative"
    PROPORTIONAL_NULL = "proportional_null"
    POSITIVE_PAIR = "positive_pair"
    NOT_APPLICABLE = "not_applicable"


@dataclass(frozen=True)
class LightConeReport:
    kind: LightCone
    a_dot_b: int
    b_square: int
    ratio: Fraction | None = None


class LightConeViolation(AssertionError):
    """Raised if an asserted light-cone inequality fails on the inputs."""


def _side(M: ManifoldModel, x, ref) -> int:
    s = M.pair(x, ref)
    return (s > 0) - (s < 0)


def light_cone_classify(M: ManifoldModel, A: Sequence[int], B: Sequence[int]) -> LightConeReport:
    """Classify (A, B) by the light cone lemma and re-verify what it asserts."""
    A, B = M.check(A), M.check(B)
    a2 = M.pair(A, A)
    if a2 < 0:
        raise PreconditionError(f"A^2 = {a2} < 0")
    if not any(A):
        raise PreconditionError("A must be nonzero")
    ab = M.pair(A, B)
    b2 = M.pair(B, B)
    if ab == 0:
        if b2 > 0:
            raise LightConeViolation(f"B.A = 0 but B^2 = {b2} > 0")
        if b2 < 0 or not any(B):
            return LightConeReport(LightCone.ORTHOGONAL_NEGATIVE, ab, b2)
        r = proportionality(A, B)
        if a2 != 0 or r is None:
            raise LightConeViolation("B^2 = 0 with B.A = 0 but B is not proportional to a null A")
        return LightConeReport(LightCone.PROPORTIONAL_NULL, ab, b2, r)
    if a2 >= 0 and b2 >= 0 and any(B):
        ref = M.positive_class()
        if _side(M, A, ref) == _side(M, B, ref):
            if ab < 0:
                raise LightConeViolation(f"A, B in the same closed forward cone but A.B = {ab}")
            return LightConeReport(LightCone.POSITIVE_PAIR, ab, b2)
    return LightConeReport(LightCone.NOT_APPLICABLE, ab, b2)


class ConePosition(str, Enum):
    INTERIOR = "Interior"
    BOUNDARY = "Boundary"
    OUTSIDE = "Outside"


def forward_cone_position(M: ManifoldModel, ref: Sequence, e: Sequence) -> ConePosition:
    ref, e = M.check(ref), M.check(e)
    if M.pair(ref, ref) <= 0:
        raise PreconditionError("reference class must have positive square")
    e2 = M.pair(e, e)
    er = M.pair(e, ref)
    if e2 > 0 and er > 0:
        return ConePosition.INTERIOR
    if e2 >= 0 and er >= 0:
        return ConePosition.BOUNDARY
    return ConePosition.OUTSIDE


def in_closed_forward_cone(M: ManifoldModel, ref, e) -> bool:
    return M.pair(e, e) >= 0 and M.pair(e, ref) >= 0


def in_open_forward_cone(M: ManifoldModel, ref, e) -> bool:
    return M.pair(e, e) > 0 and M.pair(e, ref) > 0
