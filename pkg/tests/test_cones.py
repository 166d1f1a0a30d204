import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from conelab.canonical import standard_canonical
from conelab.cones import (
    AKVerdict, Castelnuovo, ConeStatus, Representability, bplus_gt1_constraint, castelnuovo,
    chamber_reference, forward_reference, gt_dimension, in_K_symplectic_cone, in_symplectic_cone,
    nK_in_AK, surface_cone_position, surface_representable, wall_crossing,
)
from conelab.exceptional import exceptional_K_set
from conelab.lattice import ManifoldModel, NotApplicableError, PreconditionError

from gen import random_class
from oracles import theorem4_rational, theorem4_ruled

CP2 = ManifoldModel.rational(0)
R1 = ManifoldModel.rational(1)
T0 = ManifoldModel.ruled(1, 0)


def test_gt_dimension():
    assert gt_dimension(CP2, (-3,), (1,)).d == 4
    assert gt_dimension(CP2, (-3,), (0,)).d == 0
    assert gt_dimension(CP2, (-3,), (-3,)).d == 0
    assert gt_dimension(R1, (-3, 1), (1, 0)).sw_half == 2
    # K is characteristic, so d(e) = e.e - K.e is always even
    assert gt_dimension(R1, (-3, 1), (0, 1)).sw_half == 0


def test_wall_crossing_examples():
    assert wall_crossing(T0, (2, 0), (1, 0), (0, 1)) == 0
    assert wall_crossing(T0, (2, 0), (2, 0), (0, 1)) == 1
    assert wall_crossing(R1, (-3, 1), (2, -1)) == 1
    with pytest.raises(NotApplicableError):
        wall_crossing(R1, (-3, 1), (0, 2))
    G = ManifoldModel.general(((0, 1), (1, 0)), (0, 0), 0, b1=2)
    with pytest.raises(PreconditionError):
        wall_crossing(G, (0, 0), (1, 0))
    assert wall_crossing(G, (0, 0), (1, 0), gamma=(0, 1)) == 1


def test_symplectic_cone_examples():
    assert in_symplectic_cone(R1, (2, -1)).status == ConeStatus.IN
    v = in_symplectic_cone(R1, (2, 0))
    assert v.status == ConeStatus.OUT and v.certificate == (0, 1)
    assert in_symplectic_cone(ManifoldModel.ruled(1, 1), (2, 1, 1)).status == ConeStatus.IN
    v = in_symplectic_cone(ManifoldModel.ruled(1, 1), (4, 3, 4))
    assert v.status == ConeStatus.OUT and v.certificate == (0, 1, 1)
    assert in_symplectic_cone(R1, (1, 1)).status == ConeStatus.OUT


def test_two_point_blowup_needs_extra_condition():
    # reduced with all b_i > 0, but orthogonal to H - F1 - F2
    R2 = ManifoldModel.rational(2)
    v = in_symplectic_cone(R2, (2, -1, -1))
    assert v.status == ConeStatus.OUT and v.certificate == (1, -1, -1)
    assert not theorem4_rational((2, -1, -1))


def test_out_certificates_are_orthogonal_exceptionals():
    rng = random.Random(5)
    for _ in range(300):
        M = ManifoldModel.rational(rng.randint(1, 8))
        e = random_class(rng, M, 15)
        v = in_symplectic_cone(M, e)
        if v.status == ConeStatus.OUT and v.certificate is not None:
            E = v.certificate
            assert M.pair(E, E) == -1 and M.pair(e, E) == 0


@settings(max_examples=300, deadline=None)
@given(st.integers(1, 8), st.lists(st.integers(-30, 30), min_size=9, max_size=9))
def test_rational_verdict_matches_theorem4_oracle(l, coeffs):
    M = ManifoldModel.rational(l)
    e = tuple(coeffs[: l + 1])
    assert (in_symplectic_cone(M, e).status == ConeStatus.IN) == theorem4_rational(e)


@settings(max_examples=300, deadline=None)
@given(st.integers(1, 3), st.integers(0, 4), st.lists(st.integers(-30, 30), min_size=6, max_size=6))
def test_ruled_verdict_matches_theorem4_oracle(g, l, coeffs):
    M = ManifoldModel.ruled(g, l)
    e = tuple(coeffs[: l + 2])
    assert (in_symplectic_cone(M, e).status == ConeStatus.IN) == theorem4_ruled(M, e)


@settings(max_examples=200, deadline=None)
@given(st.integers(0, 6), st.lists(st.integers(-20, 20), min_size=7, max_size=7))
def test_sign_symmetry(l, coeffs):
    M = ManifoldModel.rational(l)
    e = tuple(coeffs[: l + 1])
    ne = tuple(-v for v in e)
    assert in_symplectic_cone(M, e).status == in_symplectic_cone(M, ne).status


def test_k_cone_examples():
    assert in_K_symplectic_cone(CP2, (-3,), (5,)).status == ConeStatus.IN
    assert in_K_symplectic_cone(CP2, (-3,), (-5,)).status == ConeStatus.OUT
    assert in_K_symplectic_cone(R1, (-3, 1), (2, -1)).status == ConeStatus.IN
    S = ManifoldModel.ruled(1, 1)
    K0 = standard_canonical(S)
    # forms with canonical class K0 pair negatively with T
    assert in_K_symplectic_cone(S, K0, (2, 1, -1)).status == ConeStatus.OUT
    assert in_K_symplectic_cone(S, K0, (-2, -1, -1)).status == ConeStatus.IN
    R9 = ManifoldModel.rational(9)
    v = in_K_symplectic_cone(R9, standard_canonical(R9), (4,) + (-1,) * 9, bound=4)
    assert v.status == ConeStatus.INDETERMINATE


def test_ruled_forward_cone_matches_adjunction():
    # the fibre class of positive area must have K.fibre = -2
    for K in ((2, 0), (-2, 0)):
        ref = forward_reference(T0, K)
        fibre = (0, 1) if T0.pair(ref, (0, 1)) > 0 else (0, -1)
        assert T0.pair(K, fibre) == -2


def test_chamber_reference_is_in_k_cone():
    for M in (ManifoldModel.rational(4), ManifoldModel.ruled(2, 3),
              ManifoldModel.general(((1,),), (3,), 2)):
        K = standard_canonical(M)
        c = chamber_reference(M, K)
        assert in_K_symplectic_cone(M, K, c).status == ConeStatus.IN


def test_k_cone_inside_symplectic_cone():
    rng = random.Random(11)
    for _ in range(400):
        M = rng.choice([ManifoldModel.rational(rng.randint(0, 6)), ManifoldModel.ruled(rng.randint(1, 2), rng.randint(0, 3))])
        K = standard_canonical(M)
        e = random_class(rng, M, 12)
        if in_K_symplectic_cone(M, K, e).status == ConeStatus.IN:
            assert in_symplectic_cone(M, e).status == ConeStatus.IN


def test_surface_representable_examples():
    assert surface_representable(CP2, (-3,), (1,)) == Representability.CONNECTED
    assert surface_representable(CP2, (-3,), (-1,)) == Representability.UNKNOWN
    assert surface_representable(R1, (-3, 1), (3, -1)) == Representability.CONNECTED
    # a class pairing to -1 with F1 is still represented, maybe disconnected
    R2 = ManifoldModel.rational(2)
    assert surface_representable(R2, (-3, 1, 1), (4, 1, -1)) == Representability.SURFACE


def test_sandwich_examples():
    assert surface_cone_position(R1, (-3, 1), (0, 1)).status == ConeStatus.IN
    assert surface_cone_position(R1, (-3, 1), (1, -1)).status == ConeStatus.BOUNDARY
    assert surface_cone_position(CP2, (-3,), (2,)).status == ConeStatus.IN
    assert surface_cone_position(CP2, (-3,), (-2,)).status == ConeStatus.OUT
    assert surface_cone_position(R1, (-3, 1), (0, -1)).status == ConeStatus.OUT
    v = surface_cone_position(R1, (-3, 1), (Fraction(1, 2), Fraction(1, 3)))
    assert v.status == ConeStatus.IN


def test_sandwich_contains_forward_cone():
    rng = random.Random(3)
    for _ in range(100):
        M = ManifoldModel.rational(rng.randint(0, 3))
        K = standard_canonical(M)
        ref = forward_reference(M, K)
        e = random_class(rng, M, 8)
        if M.pair(e, e) > 0 and M.pair(e, ref) > 0:
            assert surface_cone_position(M, K, e).status == ConeStatus.IN


def test_sandwich_outer_bound_pairs_with_k_cone():
    # anything not Out pairs nonnegatively with the K-symplectic cone
    rng = random.Random(4)
    M = ManifoldModel.rational(2)
    K = standard_canonical(M)
    for _ in range(60):
        e = random_class(rng, M, 5)
        st_ = surface_cone_position(M, K, e).status
        w = random_class(rng, M, 9)
        if st_ != ConeStatus.OUT and in_K_symplectic_cone(M, K, w).status == ConeStatus.IN:
            assert M.pair(e, w) >= 0


def test_nk_in_ak():
    assert nK_in_AK(CP2, (-3,), -1) == AKVerdict.YES
    assert nK_in_AK(CP2, (-3,), 2) == AKVerdict.NO
    S2 = ManifoldModel.ruled(2, 0)
    assert all(nK_in_AK(S2, standard_canonical(S2), n) == AKVerdict.NO for n in (-2, -1, 1, 2))
    assert nK_in_AK(T0, (2, 0), -1) == AKVerdict.YES
    assert nK_in_AK(T0, (2, 0), 2) == AKVerdict.NO
    fake = ManifoldModel.general(((1,),), (3,), 0)
    assert nK_in_AK(fake, (3,), 2) == AKVerdict.YES
    assert nK_in_AK(fake, (3,), 1) == AKVerdict.UNKNOWN
    he = ManifoldModel.general(((0, 1), (1, 0)), (0, 0), 0, b1=2)
    assert nK_in_AK(he, (0, 0), 2) == AKVerdict.NOT_APPLICABLE


def test_castelnuovo():
    assert castelnuovo(CP2, (-3,)) == Castelnuovo.RATIONAL
    R5 = ManifoldModel.rational(5)
    assert castelnuovo(R5, standard_canonical(R5)) == Castelnuovo.RATIONAL
    assert castelnuovo(T0, (2, 0)) == Castelnuovo.NOT_APPLICABLE
    fake = ManifoldModel.general(((1,),), (3,), 0)
    assert castelnuovo(fake, (3,)) == Castelnuovo.NOT_APPLICABLE


def test_bplus_gt1_constraint():
    M = ManifoldModel.rational(2)
    K = (-3, 1, 1)
    nK = (3, -1, -1)
    e = (-1, 0, 0)  # e.K = 3
    assert bplus_gt1_constraint(e, K, [K, nK], M)
    assert bplus_gt1_constraint(e, K, [K, nK, (0, 2, 0)], M)  # e.b = 0
    b = (2, 0, 0)  # e.b = -2
    assert bplus_gt1_constraint(e, K, [K, nK, b], M)
    e2 = (0, 0, 1)  # e.K = -1
    assert not bplus_gt1_constraint(e2, K, [K, nK], M)
    assert not bplus_gt1_constraint((0, -1, 0), K, [K, nK, (0, 2, 0)], M)  # e.K = 1 < |e.b| = 2
