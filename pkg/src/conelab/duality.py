"""Dual cones of forward cones cut by finitely many classes, and duality verdicts."""
from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from itertools import product
from math import gcd
from typing import Sequence

import numpy as np

from ._sandwich import cone_position
from .canonical import validate_canonical
from .cones import ConeStatus, ConeVerdict, _classify, forward_reference, fp_position
from .lattice import (
    GENERAL, RATIONAL, RULED, ConelabError, ConePosition, ManifoldModel, PreconditionError,
    proportionality,
)


class SamplingExhaustedError(ConelabError):
    pass


@dataclass
class DualQuery:
    model: ManifoldModel
    F: list
    v: tuple
    ref: tuple

    def __post_init__(self):
        M = self.model
        self.F = [M.check(f) for f in self.F]
        self.v = M.check(self.v)
        self.ref = M.check(self.ref)
        if M.pair(self.ref, self.ref) <= 0:
            raise PreconditionError("ref must have positive square")
        for f in self.F:
            if M.pair(f, self.ref) <= 0:
                raise PreconditionError(f"ref must pair positively with every f, fails for {f}")


def dual_cone_membership(q: DualQuery) -> ConeVerdict:
    """v in closure(FP) + sum Q+ f, the dual of {w in FP : w.f > 0 for f in F}."""
    M = q.model
    if not any(q.v):
        return ConeVerdict(ConeStatus.OUT, detail="the zero class pairs to 0 with everything")
    return _classify(M, q.v, q.F, cone_position(M.form, q.v, q.F, q.ref), strict_zero=True)


@dataclass
class SampleReport:
    passed: bool
    samples: int
    attempts: int
    counterexample: tuple | None = None


def dual_sample_check(q: DualQuery, samples: int = 1000, seed: int = 0,
                      budget: int = 1_000_000) -> SampleReport:
    """Draw w in FP with w.f > 0 and check v.w > 0 on each draw."""
    if dual_cone_membership(q).status != ConeStatus.IN:
        raise PreconditionError("dual_sample_check needs a query whose membership is In")
    M = q.model
    rng = np.random.default_rng(seed)
    box = 4 * max(abs(c) for c in q.ref) + 4
    n = M.rank
    got = attempts = 0
    while got < samples:
        if attempts >= budget:
            raise SamplingExhaustedError(f"only {got} of {samples} samples after {budget} draws")
        attempts += 1
        s = int(rng.integers(1, box + 1))
        u = rng.integers(-box, box + 1, size=n)
        w = tuple(s * r + int(x) for r, x in zip(q.ref, u))
        if M.pair(w, w) <= 0 or M.pair(w, q.ref) <= 0:
            continue
        if any(M.pair(w, f) <= 0 for f in q.F):
            continue
        got += 1
        if M.pair(q.v, w) <= 0:
            return SampleReport(False, got, attempts, w)
    return SampleReport(True, got, attempts)


# -- duality verdicts --------------------------------------------------------

class DualityVerdict(str, Enum):
    HOLDS = "Holds"
    HOLDS_CONDITIONALLY = "HoldsConditionally"
    OUT_OF_SCOPE = "OutOfScope"


@dataclass
class DualityReport:
    verdict: DualityVerdict
    case: str | None = None
    rays: list = field(default_factory=list)
    detail: str = ""

    def to_json(self) -> dict:
        return {"verdict": self.verdict.value, "case": self.case,
                "rays_checked": [list(r) for r in self.rays], "detail": self.detail}


def _null_rays(M: ManifoldModel, fref, bound: int) -> list[tuple[int, ...]]:
    """Primitive square-zero classes in the closed forward cone, |coeffs| <= bound."""
    rays = []
    for v in product(range(-bound, bound + 1), repeat=M.rank):
        if not any(v) or M.pair(v, v) != 0:
            continue
        g = 0
        for c in v:
            g = gcd(g, c)
        if g != 1:
            continue
        if fp_position(M, fref, v) != ConePosition.OUTSIDE:
            rays.append(v)
    return rays


def _case_of(M: ManifoldModel, K) -> str | None:
    if M.l != 0:
        return None
    if M.kind == RATIONAL or M.is_s2xs2:
        return "b"
    if M.kind == RULED:
        return "c" if M.g == 1 else "d"
    if M.kind == GENERAL and not any(K) and M.b1 == 0:
        return "a"
    return None


def _ray_ok(M: ManifoldModel, K, fref, case: str, e) -> bool:
    minusK = tuple(-k for k in K)
    shifted = tuple(mk + 2 * x for mk, x in zip(minusK, e))
    if case == "a":
        # d(e) = 0 and (-K + 2e) pairs positively with the form
        d = M.pair(e, e) - M.pair(K, e)
        return d == 0 and (fref is None or M.pair(shifted, fref) > 0)
    if case == "b":
        return (fp_position(M, fref, minusK) == ConePosition.INTERIOR
                and fp_position(M, fref, shifted) == ConePosition.INTERIOR)
    if case == "c":
        r = proportionality(minusK, e)
        if r is not None and r > 0:
            return True  # -K itself carries K-stable surfaces
        return fp_position(M, fref, shifted) == ConePosition.INTERIOR
    if case == "d":
        nz = [i for i, c in enumerate(e) if c]
        return len(nz) == 1 and nz[0] in (0, 1)
    return False


def duality_verdict(M: ManifoldModel, K: Sequence[int], bound: int = 12) -> DualityReport:
    """Check the square-zero criterion for the minimal families where it is known."""
    K = validate_canonical(M, K)
    case = _case_of(M, K)
    if case is None:
        return DualityReport(DualityVerdict.OUT_OF_SCOPE,
                             detail="not one of the minimal families with a known argument")
    fref = forward_reference(M, K)
    if case == "a":
        # K = 0: d(e) = e^2 = 0 and 2e pairs positively with the cone for every null ray
        return DualityReport(DualityVerdict.HOLDS, case,
                             detail="torsion K: the ray rule holds identically on square-zero classes")
    if M.rank > 4:
        return DualityReport(DualityVerdict.HOLDS_CONDITIONALLY, case,
                             detail="rank too large to enumerate square-zero rays; argument is symbolic")
    rays = _null_rays(M, fref, min(bound, 12))
    for e in rays:
        if not _ray_ok(M, K, fref, case, e):
            raise AssertionError(f"case {case} rule fails on square-zero class {e}")
    return DualityReport(DualityVerdict.HOLDS, case, rays)
