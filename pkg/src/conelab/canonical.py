"""Symplectic canonical classes of the three models."""
from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from math import isqrt
from typing import Sequence

from .lattice import (
    GENERAL, RATIONAL, RULED, Class, ConelabError, ManifoldModel, ModelMismatchError,
    is_characteristic,
)
from .transform import RuledFki, SignFlip


class InvalidCanonicalError(ConelabError):
    pass


class UnsupportedError(ConelabError):
    pass


@dataclass(frozen=True)
class CanonicalDescriptor:
    """Ruled: (eps, c) with eps = +-2 and odd c.  General: (sign, signs)."""
    eps: int = 2
    c: tuple[int, ...] = ()
    signs: tuple[int, ...] = ()

    def __post_init__(self):
        if self.eps not in (2, -2):
            raise InvalidCanonicalError(f"eps must be +2 or -2, got {self.eps}")
        if any(ci % 2 == 0 for ci in self.c):
            raise InvalidCanonicalError(f"c entries must be odd, got {self.c}")
        if any(s not in (1, -1) for s in self.signs):
            raise InvalidCanonicalError("signs must be +1 or -1")


def standard_canonical(M: ManifoldModel) -> Class:
    if M.kind == RATIONAL:
        return (-3,) + (1,) * M.l
    if M.kind == RULED:
        return (2, 2 - 2 * M.g) + (1,) * M.l
    return M.vmin + (1,) * M.l


def kd_class(M: ManifoldModel, d: CanonicalDescriptor) -> Class:
    if M.kind != RULED:
        raise ModelMismatchError("kd_class needs a ruled model")
    if len(d.c) != M.l:
        raise InvalidCanonicalError(f"descriptor has {len(d.c)} entries, model has l={M.l}")
    num = 8 - 8 * M.g - M.l + sum(ci * ci for ci in d.c)
    t, r = divmod(num, 2 * d.eps)
    if r:
        raise InvalidCanonicalError("T-coefficient is not an integer")
    return (d.eps, t) + tuple(d.c)


def kd_via_reflections(M: ManifoldModel, d: CanonicalDescriptor) -> Class:
    """Build K_d from K_0 by sign flips and ruled reflections.

    For eps = +2, write c_i = 4k_i - tau_i with tau_i = +-1; the class is
    obtained by optionally flipping F_i (tau_i = -1) and then applying the
    reflection along -k_i T - F_i.  eps = -2 uses K_{-d} = -K_d.
    """
    if M.kind != RULED:
        raise ModelMismatchError("kd_via_reflections needs a ruled model")
    if len(d.c) != M.l:
        raise InvalidCanonicalError(f"descriptor has {len(d.c)} entries, model has l={M.l}")
    c = d.c if d.eps == 2 else tuple(-ci for ci in d.c)
    K = standard_canonical(M)
    for i, ci in enumerate(c, start=1):
        tau = -1 if ci % 4 == 1 else 1
        k = (ci + tau) // 4
        if tau == -1:
            K = SignFlip(i).apply(M, K)
        K = RuledFki(k, i).apply(M, K)
    if d.eps == -2:
        K = tuple(-v for v in K)
    return K


def validate_canonical(M: ManifoldModel, K: Sequence[int]) -> Class:
    """Check that K is a symplectic canonical class of M (as far as decidable)."""
    K = M.check(K)
    if not is_characteristic(M, K):
        raise InvalidCanonicalError(f"{K} is not characteristic")
    sq = M.pair(K, K)
    if sq != M.canonical_square:
        raise InvalidCanonicalError(f"K^2 = {sq}, expected {M.canonical_square}")
    if M.kind == RULED and K[0] not in (2, -2):
        raise InvalidCanonicalError("ruled canonical classes have U-coefficient +-2")
    if M.kind == GENERAL:
        r = len(M.vmin)
        head = K[:r]
        neg = tuple(-v for v in M.vmin)
        if head != M.vmin and head != neg:
            raise InvalidCanonicalError("general canonical classes are +-V + sum +-F_i")
        if any(v not in (1, -1) for v in K[r:]):
            raise InvalidCanonicalError("general canonical classes are +-V + sum +-F_i")
    return K


def _odd_square_sums(total: int, n: int, bound: int) -> list[tuple[int, ...]]:
    """All n-tuples of odd ints with |x| <= bound and sum of squares = total."""
    if n == 0:
        return [()] if total == 0 else []
    if total < n:  # every odd square is >= 1
        return []
    out = []
    top = min(bound, isqrt(total))
    for x in range(-top, top + 1):
        if x % 2 == 0:
            continue
        for rest in _odd_square_sums(total - x * x, n - 1, bound):
            out.append((x,) + rest)
    return out


def canonical_set(M: ManifoldModel, bound: int = 12) -> list[Class]:
    """The canonical classes of M, truncated by ``bound`` where the set is infinite."""
    if bound < 1:
        raise ConelabError("bound must be positive")
    out: set[Class] = set()
    if M.kind == RATIONAL:
        if M.l > 9:
            raise UnsupportedError("canonical classes of rational models are only enumerated for l <= 9")
        target = 9 - M.l
        for a in range(-bound, bound + 1):
            if a % 2 == 0:
                continue
            rest = a * a - target
            if rest < 0:
                continue
            for xs in _odd_square_sums(rest, M.l, bound):
                out.add((a,) + xs)
    elif M.kind == RULED:
        odd = [c for c in range(-bound, bound + 1) if c % 2]
        for eps in (2, -2):
            for c in product(odd, repeat=M.l):
                out.add(kd_class(M, CanonicalDescriptor(eps, tuple(c))))
    else:
        for s in (1, -1):
            for signs in product((1, -1), repeat=M.l):
                out.add(tuple(s * v for v in M.vmin) + signs)
    return sorted(out)


def symmetry_sign(b1: int, bplus: int, i: int) -> int:
    num = 1 - b1 - i + bplus
    if num % 2:
        raise ConelabError(f"parity error: 1 - b1 - i + b+ = {num} is odd")
    return -1 if (num // 2) % 2 else 1
