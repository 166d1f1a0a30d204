"""Symplectic cones, K-symplectic cones, the K-surface sandwich and related arithmetic.

Forward cones FP(K) are fixed intrinsically from K where the lattice
allows it:

* rational, K^2 > 0: the component containing -K
* rational, l = 9 (or K = +-K_0 up to sign flips): the side of +-H with H.(-K) > 0
* ruled: the side where -(K.T/2) T pairs positively, i.e. the fibre class
  with positive area has K.fibre = -2
* general: -V for S^2 x S^2, V when V^2 > 0, both components when V = 0
  and l = 0; otherwise the caller passes ``ref``
"""
from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from typing import Any, Sequence

from ._sandwich import cone_position, conic_combination
from .canonical import UnsupportedError, validate_canonical
from .exceptional import exceptional_K_set
from .lattice import (
    GENERAL, RATIONAL, RULED, Class, ConePosition, ManifoldModel, NotApplicableError,
    PreconditionError,
)
from .transform import MoveTrace, reduce


class ConeStatus(str, Enum):
    IN = "In"
    OUT = "Out"
    INDETERMINATE = "IndeterminateAtBound"
    BOUNDARY = "BoundaryOfSandwich"


@dataclass
class ConeVerdict:
    status: ConeStatus
    certificate: Any = None
    trace: MoveTrace | None = None
    detail: str = ""

    def to_json(self) -> dict:
        out: dict = {"status": self.status.value}
        c = self.certificate
        if isinstance(c, tuple):
            out["certificate"] = list(c)
        elif c is not None:
            out["certificate"] = c
        else:
            out["certificate"] = None
        if self.trace is not None:
            out["trace"] = [str(m) for m in self.trace.moves]
        if self.detail:
            out["detail"] = self.detail
        return out


# -- forward cones ---------------------------------------------------------

def _sign(x) -> int:
    return (x > 0) - (x < 0)


def forward_reference(M: ManifoldModel, K: Sequence[int], ref: Sequence[int] | None = None):
    """A positive-square class in FP(K), or None when FP(K) is the whole positive cone."""
    K = M.check(K)
    if ref is not None:
        ref = M.check(ref)
        if M.pair(ref, ref) <= 0:
            raise PreconditionError("reference class must have positive square")
        return ref
    if M.kind == RATIONAL:
        if M.pair(K, K) > 0:
            return tuple(-v for v in K)
        aK = K[0]
        if M.l == 9 or (abs(aK) == 3 and all(abs(v) == 1 for v in K[1:])):
            return tuple(-_sign(aK) if i == 0 else 0 for i in range(M.rank))
        raise PreconditionError("forward cone of this canonical class needs --ref")
    if M.kind == RULED:
        s = -K[0] // 2
        return (s, s) + (0,) * M.l
    r = len(M.vmin)
    V = M.vmin
    s = 1 if K[:r] == V else -1
    if not any(V):
        if M.l == 0:
            return None
        raise PreconditionError("forward cone of this canonical class needs --ref")
    vv = M.pair(V + (0,) * M.l, V + (0,) * M.l)
    if M.is_s2xs2:
        base = tuple(-v for v in V)
    elif vv > 0:
        base = V
    else:
        raise PreconditionError("forward cone of this canonical class needs --ref")
    return tuple(s * v for v in base) + (0,) * M.l


def fp_position(M: ManifoldModel, fref, e: Sequence) -> ConePosition:
    e2 = M.pair(e, e)
    if fref is None:
        if e2 > 0:
            return ConePosition.INTERIOR
        return ConePosition.BOUNDARY if e2 == 0 else ConePosition.OUTSIDE
    er = M.pair(e, fref)
    if e2 > 0 and er > 0:
        return ConePosition.INTERIOR
    if e2 >= 0 and er >= 0:
        return ConePosition.BOUNDARY
    return ConePosition.OUTSIDE


def chamber_reference(M: ManifoldModel, K: Sequence[int], ref=None, bound: int = 12) -> Class:
    """A class in C_K: inside FP(K) and positive on every E in E_K."""
    K = validate_canonical(M, K)
    fref = forward_reference(M, K, ref)
    if M.l == 0:
        return fref if fref is not None else M.positive_class()
    if M.kind == RATIONAL:
        if M.pair(K, K) > 0:
            return tuple(-v for v in K)
        raise UnsupportedError("no chamber reference for rational models with K^2 <= 0")
    if M.kind == RULED:
        aK = K[0]
        N = 1
        while True:
            c = tuple(-v for v in K)
            c = (c[0], c[1] - aK * N) + c[2:]
            if fp_position(M, fref, c) == ConePosition.INTERIOR:
                return c
            N += 1
    r = len(M.vmin)
    base = fref[:r] if fref is not None else M.positive_class()[:r]
    delta = [M.pair(K, M.F(i)) for i in range(1, M.l + 1)]
    N = 1
    while True:
        c = tuple(N * v for v in base) + tuple(delta)
        if fp_position(M, fref, c) == ConePosition.INTERIOR:
            return c
        N += 1


# -- dimensions and wall crossing ------------------------------------------

@dataclass(frozen=True)
class GTDimension:
    d: int
    sw_half: int | None  # d/2 when d is even


def gt_dimension(M: ManifoldModel, K: Sequence[int], e: Sequence[int]) -> GTDimension:
    K = validate_canonical(M, K)
    e = M.check(e)
    d = M.pair(e, e) - M.pair(K, e)
    return GTDimension(d, d // 2 if d % 2 == 0 else None)


def wall_crossing(M: ManifoldModel, K: Sequence[int], e: Sequence[int],
                  gamma: Sequence[int] | None = None, b1: int | None = None) -> Fraction:
    """SW_- minus SW_+ on the top-degree form (b1 = 0) or ((-K + 2e).gamma)/2 (b1 = 2)."""
    K = validate_canonical(M, K)
    e = M.check(e)
    b1 = M.b1 if b1 is None else b1
    if b1 == 0:
        d = M.pair(e, e) - M.pair(K, e)
        if d < 0:
            raise NotApplicableError(f"wall crossing needs d(e) >= 0, got {d}")
        return Fraction(1)
    if b1 == 2:
        if gamma is None:
            if M.kind != RULED:
                raise PreconditionError("gamma is required outside the ruled model")
            gamma = M.basis(1)
        gamma = M.check(gamma)
        v = tuple(2 * x - k for x, k in zip(e, K))
        return Fraction(M.pair(v, gamma), 2)
    raise UnsupportedError(f"wall crossing is implemented for b1 in {{0, 2}}, got {b1}")


# -- symplectic cone -------------------------------------------------------

def in_symplectic_cone(M: ManifoldModel, e: Sequence[int], bound: int = 12) -> ConeVerdict:
    """Membership in the symplectic cone: e^2 > 0 and e.E != 0 for all exceptional E."""
    e = M.check(e)
    sq = M.pair(e, e)
    if sq <= 0:
        return ConeVerdict(ConeStatus.OUT, None, detail=f"e^2 = {sq} <= 0")
    if M.kind == GENERAL:
        for i in range(1, M.l + 1):
            f = M.F(i)
            if M.pair(e, f) == 0:
                return ConeVerdict(ConeStatus.OUT, f, detail=f"e.F{i} = 0")
        return ConeVerdict(ConeStatus.IN)
    if M.kind == RULED:
        a = e[0]
        for i in range(1, M.l + 1):
            x = e[M.offset + i - 1]
            if x % a == 0:
                cert = [0] * M.rank
                cert[1] = x // a
                cert[M.offset + i - 1] = 1
                return ConeVerdict(ConeStatus.OUT, tuple(cert), detail=f"a divides c{i}")
        return ConeVerdict(ConeStatus.IN)
    red, trace, flipped = reduce(M, e)
    b = [-v for v in red[1:]]
    bad = None
    for i, bi in enumerate(b, start=1):
        if bi == 0:
            bad = M.F(i)
            detail = f"reduced b{i} = 0"
            break
    if bad is None and M.l == 2 and red[0] == b[0] + b[1]:
        bad = (1, -1, -1)
        detail = "reduced a = b1 + b2"
    if bad is None:
        return ConeVerdict(ConeStatus.IN, trace=trace)
    E = trace.replay_inverse(M, bad)
    assert M.pair(e, E) == 0 and M.pair(E, E) == -1
    return ConeVerdict(ConeStatus.OUT, E, trace=trace, detail=detail)


def in_K_symplectic_cone(M: ManifoldModel, K: Sequence[int], e: Sequence[int],
                         bound: int = 12, ref=None) -> ConeVerdict:
    K = validate_canonical(M, K)
    e = M.check(e)
    fref = forward_reference(M, K, ref)
    if fp_position(M, fref, e) != ConePosition.INTERIOR:
        return ConeVerdict(ConeStatus.OUT, None, detail="not in the forward cone of K")
    if M.l == 0:
        return ConeVerdict(ConeStatus.IN)
    EK = exceptional_K_set(M, K, bound)
    for E in EK:
        if M.pair(e, E) <= 0:
            return ConeVerdict(ConeStatus.OUT, E, detail="e.E <= 0")
    if not EK.complete:
        return ConeVerdict(ConeStatus.INDETERMINATE, detail="E_K enumerated only up to the bound")
    return ConeVerdict(ConeStatus.IN)


class Representability(str, Enum):
    CONNECTED = "ConnectedSurface"
    SURFACE = "Surface"
    UNKNOWN = "Unknown"


def surface_representable(M: ManifoldModel, K: Sequence[int], e: Sequence[int],
                          bound: int = 12, ref=None) -> Representability:
    """Sufficient conditions for e to carry symplectic surfaces (never answers No)."""
    K = validate_canonical(M, K)
    e = M.check(e)
    fref = forward_reference(M, K, ref)
    diff = tuple(x - k for x, k in zip(e, K))
    if fp_position(M, fref, e) != ConePosition.INTERIOR:
        return Representability.UNKNOWN
    if fp_position(M, fref, diff) == ConePosition.OUTSIDE or not any(diff):
        return Representability.UNKNOWN
    if M.l == 0:
        return Representability.CONNECTED
    EK = exceptional_K_set(M, K, bound)
    if not EK.complete:
        return Representability.UNKNOWN
    pairs = [M.pair(e, E) for E in EK]
    if all(p >= 0 for p in pairs):
        return Representability.CONNECTED
    if all(p >= -1 for p in pairs):
        return Representability.SURFACE
    return Representability.UNKNOWN


# -- K-surface cone sandwich -----------------------------------------------

def surface_cone_position(M: ManifoldModel, K: Sequence[int], e: Sequence,
                          bound: int = 12, ref=None) -> ConeVerdict:
    """Place e against FP(K) + sum Q+ E_i  (inner)  and  closure(FP(K)) + sum Q+ E_i  (outer)."""
    K = validate_canonical(M, K)
    e = M.check(e)
    if M.kind == RATIONAL and M.l >= 9:
        return ConeVerdict(ConeStatus.INDETERMINATE, detail="E_K is infinite for l >= 9")
    fref = forward_reference(M, K, ref)
    if fref is None:
        pos = fp_position(M, None, e)
        if pos == ConePosition.INTERIOR:
            return ConeVerdict(ConeStatus.IN, {"p": list(e), "t": []})
        if pos == ConePosition.BOUNDARY:
            return ConeVerdict(ConeStatus.BOUNDARY)
        return ConeVerdict(ConeStatus.OUT, detail="e^2 < 0")
    gens = list(exceptional_K_set(M, K, bound)) if M.l else []
    cref = chamber_reference(M, K, ref, bound)
    return _classify(M, e, gens, cone_position(M.form, e, gens, cref), strict_zero=False)


def _classify(M, e, gens, pos, strict_zero: bool) -> ConeVerdict:
    if pos.sign < 0:
        return ConeVerdict(ConeStatus.OUT, pos.w,
                           detail="w in closure(FP) pairs nonnegatively with every generator but e.w < 0")
    if pos.sign > 0:
        cert = {"p": [str(v) for v in pos.p], "t": [str(v) for v in pos.t]}
        return ConeVerdict(ConeStatus.IN, cert, detail="e = p + sum t_i E_i with p^2 > 0")
    if strict_zero:
        return ConeVerdict(ConeStatus.IN, {"w": list(pos.w)},
                           detail="in the closed cone; w is a dual class with e.w = 0")
    tt = conic_combination(e, gens) if any(e) else None
    if tt is not None:
        return ConeVerdict(ConeStatus.IN, {"p": [0] * M.rank, "t": [str(v) for v in tt]},
                           detail="e is a nonnegative combination of E_K")
    return ConeVerdict(ConeStatus.BOUNDARY, {"w": list(pos.w)},
                       detail="only the closed forward cone is reached; w is a dual class with e.w = 0")


# -- A_K and the Castelnuovo criterion -------------------------------------

class AKVerdict(str, Enum):
    YES = "Yes"
    NO = "No"
    UNKNOWN = "Unknown"
    NOT_APPLICABLE = "NotApplicable"


def nK_in_AK(M: ManifoldModel, K: Sequence[int], n: int, ref=None, bound: int = 12) -> AKVerdict:
    """Whether nK is carried by K-stable symplectic surfaces.

    No is certified by a class of C_K pairing non-positively with nK (an
    element of A_K pairs positively with every class of C_K).
    """
    K = validate_canonical(M, K)
    if not any(K):
        return AKVerdict.NOT_APPLICABLE
    if n == 0:
        return AKVerdict.NO
    if M.l == 0 and M.pair(K, K) < 0:
        return AKVerdict.NO
    nK = tuple(n * v for v in K)
    try:
        w = chamber_reference(M, K, ref, bound)
    except (PreconditionError, UnsupportedError):
        w = None
    if w is not None and M.pair(nK, w) <= 0:
        return AKVerdict.NO
    if M.l > 0:
        return AKVerdict.UNKNOWN
    if n <= -1 and (M.kind == RATIONAL or M.is_s2xs2 or (M.kind == RULED and M.g == 1)):
        return AKVerdict.YES
    if M.kind == GENERAL and not M.is_s2xs2:
        if n == 1 and M.b1 == 2:
            return AKVerdict.YES
        if n >= 2:
            return AKVerdict.YES
    try:
        fref = forward_reference(M, K, ref)
    except PreconditionError:
        return AKVerdict.UNKNOWN
    if fp_position(M, fref, nK) == ConePosition.OUTSIDE:
        return AKVerdict.NO
    return AKVerdict.UNKNOWN


class Castelnuovo(str, Enum):
    RATIONAL = "Rational"
    NOT_APPLICABLE = "NotApplicable"


def castelnuovo(M: ManifoldModel, K: Sequence[int], b1: int | None = None, ref=None) -> Castelnuovo:
    K = validate_canonical(M, K)
    b1 = M.b1 if b1 is None else b1
    if b1 != 0 or not any(K):
        return Castelnuovo.NOT_APPLICABLE
    if nK_in_AK(M, K, 2, ref) == AKVerdict.NO:
        return Castelnuovo.RATIONAL
    return Castelnuovo.NOT_APPLICABLE


def bplus_gt1_constraint(e: Sequence[int], K: Sequence[int], basics: Sequence[Sequence[int]],
                         M: ManifoldModel) -> bool:
    e, K = M.check(e), M.check(K)
    eK = M.pair(e, K)
    if eK < 0:
        return False
    negK = tuple(-v for v in K)
    for b in basics:
        b = M.check(b)
        if b == K or b == negK:
            continue
        if not eK > abs(M.pair(e, b)):
            return False
    return True
