import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from eikhelix.jet import Jet, stack
from eikhelix.lorentz import (
    CausalCharacter,
    causal_character,
    det3,
    flip_time,
    lorentz_cross,
    minkowski_inner,
    pseudo_norm,
    vec3,
)

comp = st.floats(-10, 10, allow_nan=False)
vectors = st.tuples(comp, comp, comp).map(np.array)

E = np.eye(3)
EPS = (-1, 1, 1)


def test_inner_product_signature():
    assert minkowski_inner(E[0], E[0]) == -1
    assert minkowski_inner(E[1], E[1]) == 1
    assert minkowski_inner(E[0], E[2]) == 0


def test_vec3_rejects_non_finite():
    with pytest.raises(ValueError):
        vec3(1.0, float("inf"), 0.0)


def test_causal_character():
    assert causal_character([0, 1, 0]) is CausalCharacter.SPACELIKE
    assert causal_character([1, 0, 0]) is CausalCharacter.TIMELIKE
    assert causal_character([1, 1, 0]) is CausalCharacter.NULL
    assert CausalCharacter.TIMELIKE.epsilon == -1
    with pytest.raises(ValueError):
        causal_character([1, 0, 0], tol=0)


def test_pseudo_norm_vanishes_on_null():
    assert pseudo_norm([1.0, 1.0, 0.0]) == 0.0
    assert pseudo_norm([2.0, 1.0, 0.0]) == pytest.approx(np.sqrt(3))


def test_cross_reference_values():
    np.testing.assert_array_equal(lorentz_cross(E[1], E[2]), E[0])
    np.testing.assert_array_equal(lorentz_cross(E[0], E[1]), -E[2])
    np.testing.assert_allclose(lorentz_cross([1, 0, 1], [-0.5, 0, 0.5]), [0, 1, 0])


@pytest.mark.parametrize("i, j, k", [(0, 1, 2), (1, 2, 0), (2, 0, 1)])
def test_coordinate_frame_relations(i, j, k):
    np.testing.assert_array_equal(lorentz_cross(E[i], E[j]), EPS[i] * EPS[j] * E[k])


@given(vectors, vectors, vectors)
def test_cross_product_defining_identity(u, v, w):
    scale = 1 + np.abs(u).max() * np.abs(v).max() * np.abs(w).max()
    assert abs(minkowski_inner(lorentz_cross(u, v), w) + det3(u, v, w)) <= 1e-12 * scale


@given(vectors, vectors)
def test_cross_product_antisymmetric_and_orthogonal(u, v):
    c = lorentz_cross(u, v)
    np.testing.assert_allclose(c, -lorentz_cross(v, u))
    scale = 1 + np.abs(u).max() ** 2 * np.abs(v).max()
    assert abs(minkowski_inner(c, u)) <= 1e-12 * scale
    assert abs(minkowski_inner(c, v)) <= 1e-12 * scale


def test_batched_and_jet_inputs():
    u = np.random.default_rng(0).normal(size=(5, 3))
    v = np.random.default_rng(1).normal(size=(5, 3))
    batched = lorentz_cross(u, v)
    for n in range(5):
        np.testing.assert_allclose(batched[n], lorentz_cross(u[n], v[n]))
    s = Jet.variable(0.3, 2)
    ju = stack([s, s * s, 1.0])
    out = lorentz_cross(ju, stack([1.0, s, 0.0]))
    np.testing.assert_allclose(out.value, lorentz_cross([0.3, 0.09, 1.0], [1.0, 0.3, 0.0]))


def test_flip_time():
    np.testing.assert_array_equal(flip_time(np.array([1.0, 2.0, 3.0])), [-1.0, 2.0, 3.0])
    j = flip_time(stack([Jet.variable(1.0, 1), 2.0, 3.0]))
    np.testing.assert_allclose(j.value, [-1.0, 2.0, 3.0])
