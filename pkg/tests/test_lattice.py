import pytest
from hypothesis import given, settings, strategies as st

from conelab._linalg import inertia
from conelab.canonical import standard_canonical
from conelab.lattice import (
    ConelabError, ConePosition, LightCone, ManifoldModel, ModelMismatchError, PreconditionError,
    forward_cone_position, intersection_pairing, is_characteristic, light_cone_classify, square,
)

from gen import classes, models
from oracles import gram, pairing


def test_pairing_examples():
    assert intersection_pairing(ManifoldModel.rational(2), (3, -1, 0), (1, 0, 1)) == 3
    assert intersection_pairing(ManifoldModel.ruled(1, 0), (1, 0), (0, 1)) == 1
    assert intersection_pairing(ManifoldModel.rational(1), (-3, 1), (0, 1)) == -1


def test_rank_mismatch():
    with pytest.raises(ModelMismatchError):
        square(ManifoldModel.rational(2), (1, 0))


@pytest.mark.parametrize("l", range(0, 10))
def test_standard_canonical_square(l):
    R = ManifoldModel.rational(l)
    assert square(R, standard_canonical(R)) == 9 - l == R.canonical_square
    for g in (1, 2, 5):
        S = ManifoldModel.ruled(g, l)
        assert square(S, standard_canonical(S)) == 8 - 8 * g - l == S.canonical_square


def test_characteristic_examples():
    assert is_characteristic(ManifoldModel.rational(2), (-3, 1, 1))
    assert not is_characteristic(ManifoldModel.rational(1), (1, 0))
    assert not is_characteristic(ManifoldModel.ruled(1, 0), (1, 0))
    G = ManifoldModel.general(((0, 1), (1, 0)), (2, 2), 0)
    assert is_characteristic(G, standard_canonical(G))


def test_general_validation():
    with pytest.raises(ConelabError, match="positive eigenvalue"):
        ManifoldModel.general(((1, 0), (0, 1)), (1, 1), 0)
    with pytest.raises(ConelabError, match="symmetric"):
        ManifoldModel.general(((0, 1), (2, 0)), (2, 2), 0)
    with pytest.raises(ConelabError, match="characteristic"):
        ManifoldModel.general(((0, 1), (1, 0)), (1, 8), 0)
    with pytest.raises(ConelabError, match="2chi"):
        ManifoldModel.general(((0, 1), (1, 0)), (2, 4), 0)
    with pytest.raises(ConelabError, match="rational"):
        ManifoldModel.general(((0, 1), (1, 0)), (2, 2), 1)
    with pytest.raises(ConelabError):
        ManifoldModel.ruled(0, 1)


def test_inertia_needs_congruence_repair():
    assert inertia([[0, 1], [1, 0]]) == (1, 1, 0)
    assert inertia([[0, 0], [0, 0]]) == (0, 0, 2)
    assert inertia([[1, 2], [2, 4]]) == (1, 0, 1)


@given(models(lmax=8))
def test_signature_is_one(M):
    pos, neg, zero = inertia(M.form)
    assert (pos, zero) == (1, 0)


@settings(max_examples=200)
@given(st.data())
def test_pairing_bilinear_symmetric(data):
    M = data.draw(models())
    x, y, z = (data.draw(classes(M)) for _ in range(3))
    s, t = data.draw(st.integers(-5, 5)), data.draw(st.integers(-5, 5))
    sxty = tuple(s * a + t * b for a, b in zip(x, y))
    assert M.pair(x, y) == M.pair(y, x) == pairing(M, x, y)
    assert M.pair(sxty, z) == s * M.pair(x, z) + t * M.pair(y, z)


def test_form_matches_oracle():
    for M in (ManifoldModel.rational(3), ManifoldModel.ruled(2, 2),
              ManifoldModel.general(((1,),), (3,), 2)):
        assert (gram(M) == [list(r) for r in M.form]).all()


def test_light_cone_examples():
    R1 = ManifoldModel.rational(1)
    assert light_cone_classify(R1, (1, 0), (0, 1)).kind == LightCone.ORTHOGONAL_NEGATIVE
    rep = light_cone_classify(ManifoldModel.ruled(1, 0), (0, 1), (0, 3))
    assert rep.kind == LightCone.PROPORTIONAL_NULL and rep.ratio == 3
    rep = light_cone_classify(R1, (1, 0), (2, -1))
    assert rep.kind == LightCone.POSITIVE_PAIR and rep.a_dot_b == 2
    with pytest.raises(PreconditionError):
        light_cone_classify(R1, (0, 1), (1, 0))


def test_forward_cone_examples():
    assert forward_cone_position(ManifoldModel.rational(0), (1,), (5,)) == ConePosition.INTERIOR
    assert forward_cone_position(ManifoldModel.ruled(1, 0), (1, 1), (0, 1)) == ConePosition.BOUNDARY
    assert forward_cone_position(ManifoldModel.rational(1), (1, 0), (-1, 0)) == ConePosition.OUTSIDE
    assert forward_cone_position(ManifoldModel.rational(1), (1, 0), (0, 0)) == ConePosition.BOUNDARY
    with pytest.raises(PreconditionError):
        forward_cone_position(ManifoldModel.rational(1), (0, 1), (1, 0))


def test_spec_text_round_trip():
    from conelab.cli import parse_manifold_spec
    for M in (ManifoldModel.rational(4), ManifoldModel.ruled(3, 2),
              ManifoldModel.general(((0, 1), (1, 0)), (0, 0), 2, b1=2),
              ManifoldModel.general(((1,),), (-3,), 1)):
        assert parse_manifold_spec(M.spec()) == M
