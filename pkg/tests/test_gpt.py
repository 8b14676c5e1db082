import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import THEORIES, random_state
from gpt_spectra import (
    Classical,
    Effect,
    Gbit,
    ObservationTest,
    QuantumReal,
    ReversibleChannel,
    State,
    apply_channel,
    complete_to_maximal,
    dagger,
    deterministic_effect,
    invariant_state,
    is_observation_test,
    make_theory,
    maximize_pure_effect,
    pair,
)
from gpt_spectra.errors import (
    DaggerNotUnique,
    DimensionMismatch,
    InvalidChannel,
    InvalidState,
    NotDistinguishable,
    NotNormalized,
    NotPure,
    OutOfRange,
    UnsupportedTheory,
)


def test_dim_linear():
    assert QuantumReal(4).dim_linear == 10
    assert Classical(5).dim_linear == 5
    assert Gbit().dim_linear == 3


def test_make_theory():
    assert make_theory("quantum_real", 3) == QuantumReal(3)
    assert make_theory("gbit") == Gbit()
    with pytest.raises(UnsupportedTheory):
        make_theory("complex_quantum", 2)


# -- pair -------------------------------------------------------------------


def test_pair_quantum_trace():
    q = QuantumReal(2)
    assert pair(Effect(q, np.diag([1.0, 0.0])), State(q, np.diag([0.7, 0.3]))) == pytest.approx(0.7, abs=1e-15)


@pytest.mark.parametrize("theory", THEORIES, ids=repr)
def test_pair_unit_effect_is_one(theory, rng):
    u = deterministic_effect(theory)
    for _ in range(20):
        assert pair(u, random_state(theory, rng)) == pytest.approx(1.0, abs=1e-12)


def test_pair_gbit_edge_on_corner():
    g = Gbit()
    assert pair(Effect(g, [0.5, 0.5, 0.0]), State(g, [1.0, 1.0, 1.0])) == 1.0


def test_pair_clamps_inside_band_only():
    c = Classical(2)
    rho = State(c, [1.0, 0.0])
    assert pair(Effect(c, [1.0 + 5e-11, 0.0]), rho) == 1.0
    assert pair(Effect(c, [-5e-11, 0.0]), rho) == 0.0
    with pytest.raises(OutOfRange):
        pair(Effect(c, [1.0 + 1e-8, 0.0]), rho)
    with pytest.raises(OutOfRange):
        pair(Effect(c, [-1e-8, 0.0]), rho)


def test_pair_dimension_mismatch():
    with pytest.raises(DimensionMismatch):
        pair(Effect(Classical(2), [1.0, 0.0]), State(Classical(3), [1.0, 0.0, 0.0]))


@settings(max_examples=50, deadline=None)
@given(st.integers(0, 2**32 - 1), st.floats(0.0, 1.0), st.sampled_from(THEORIES))
def test_pair_is_bilinear(seed, lam, theory):
    rng = np.random.default_rng(seed)
    r1, r2 = random_state(theory, rng), random_state(theory, rng)
    a = Effect(theory, theory.unit_coords() * rng.uniform())
    mix = State(theory, lam * r1.coords + (1 - lam) * r2.coords)
    assert pair(a, mix) == pytest.approx(lam * pair(a, r1) + (1 - lam) * pair(a, r2), abs=1e-12)


# -- state validation -------------------------------------------------------


def test_state_cone_membership():
    with pytest.raises(InvalidState):
        State(QuantumReal(2), np.diag([1.1, -0.1]))
    with pytest.raises(InvalidState):
        State(Classical(2), [1.1, -0.1])
    with pytest.raises(InvalidState):
        State(Gbit(), [1.0, 1.1, 0.0])
    with pytest.raises(InvalidState):
        State(QuantumReal(2), [[0.5, 0.1], [0.0, 0.5]])
    with pytest.raises(DimensionMismatch):
        State(QuantumReal(2), np.eye(3) / 3)
    State(QuantumReal(2), np.diag([1.0 + 5e-11, -5e-11]))


def test_state_is_immutable():
    s = State(Classical(2), [0.5, 0.5])
    with pytest.raises(ValueError):
        s.coords[0] = 1.0


# -- deterministic and invariant --------------------------------------------


def test_deterministic_effects():
    np.testing.assert_array_equal(deterministic_effect(Classical(3)).coords, [1, 1, 1])
    np.testing.assert_array_equal(deterministic_effect(QuantumReal(2)).coords, np.eye(2))
    np.testing.assert_array_equal(deterministic_effect(Gbit()).coords, [1, 0, 0])


def test_invariant_states():
    np.testing.assert_allclose(invariant_state(Classical(4)).coords, [0.25] * 4)
    np.testing.assert_allclose(invariant_state(QuantumReal(3)).coords, np.eye(3) / 3)
    np.testing.assert_allclose(invariant_state(Gbit()).coords, [1, 0, 0])


@pytest.mark.parametrize("theory", THEORIES, ids=repr)
def test_generators_fix_invariant_state(theory):
    chi = invariant_state(theory)
    for g in theory.generators():
        out = apply_channel(ReversibleChannel(theory, g), chi)
        assert out.distance(chi) <= 1e-10


@pytest.mark.parametrize("theory", THEORIES, ids=repr)
def test_generators_preserve_normalization_and_invert(theory, rng):
    u = deterministic_effect(theory)
    for g in theory.generators():
        ch = ReversibleChannel(theory, g)
        for _ in range(100):
            rho = random_state(theory, rng)
            out = ch(rho)
            assert abs(pair(u, out) - pair(u, rho)) <= 1e-10
            assert ch.inverse()(out).distance(rho) <= 1e-10


# -- channels ---------------------------------------------------------------


def test_apply_channel_examples():
    q = QuantumReal(2)
    swap = ReversibleChannel(q, [[0.0, 1.0], [1.0, 0.0]])
    np.testing.assert_allclose(swap(State(q, np.diag([0.7, 0.3]))).coords, np.diag([0.3, 0.7]))

    c = Classical(3)
    p = State(c, [0.2, 0.5, 0.3])
    np.testing.assert_array_equal(ReversibleChannel.identity(c)(p).coords, p.coords)

    g = Gbit()
    rot = ReversibleChannel(g, [[0.0, -1.0], [1.0, 0.0]])
    np.testing.assert_array_equal(rot(State(g, [1.0, 1.0, 1.0])).coords, [1.0, -1.0, 1.0])


def test_invalid_channels():
    with pytest.raises(InvalidChannel):
        ReversibleChannel(QuantumReal(2), [[1.0, 1.0], [0.0, 1.0]])
    with pytest.raises(InvalidChannel):
        ReversibleChannel(Classical(2), [[np.cos(0.3), -np.sin(0.3)], [np.sin(0.3), np.cos(0.3)]])
    with pytest.raises(InvalidChannel):
        ReversibleChannel(Gbit(), [[np.cos(0.3), -np.sin(0.3)], [np.sin(0.3), np.cos(0.3)]])
    with pytest.raises(DimensionMismatch):
        ReversibleChannel(QuantumReal(3), np.eye(2))


def test_channel_composition_order():
    c = Classical(3)
    a = ReversibleChannel(c, c.generators()[0])  # swap 0,1
    b = ReversibleChannel(c, c.generators()[1])  # swap 1,2
    p = State(c, [0.5, 0.3, 0.2])
    np.testing.assert_array_equal(a.compose(b)(p).coords, a(b(p)).coords)


# -- pure effects -----------------------------------------------------------


def test_maximize_pure_effect_quantum_diagonal():
    q = QuantumReal(2)
    p, a, alpha = maximize_pure_effect(State(q, np.diag([0.7, 0.3])))
    assert p == pytest.approx(0.7, abs=1e-15)
    np.testing.assert_allclose(alpha.coords, np.diag([1.0, 0.0]), atol=1e-15)


def test_maximize_pure_effect_invariant():
    p, _, _ = maximize_pure_effect(invariant_state(QuantumReal(3)))
    assert p == pytest.approx(1 / 3, abs=1e-14)


def test_maximize_pure_effect_off_diagonal():
    # 2x2 symmetric [[a, b], [b, a]] has eigenvalues a +- b
    p, _, alpha = maximize_pure_effect(State(QuantumReal(2), [[0.5, 0.4], [0.4, 0.5]]))
    assert p == pytest.approx(0.9, abs=1e-14)
    np.testing.assert_allclose(alpha.coords, 0.5 * np.ones((2, 2)), atol=1e-14)


def test_maximize_pure_effect_requires_normalized():
    with pytest.raises(NotNormalized):
        maximize_pure_effect(State(Classical(2), [0.3, 0.3]))


def test_maximize_pure_effect_gbit():
    p, a, alpha = maximize_pure_effect(State(Gbit(), [1.0, 0.5, 0.5]))
    assert p == pytest.approx(0.75)
    assert pair(a, alpha) == 1.0


def test_dagger_examples():
    q = QuantumReal(2)
    alpha = State(q, np.diag([1.0, 0.0]))
    a = dagger(alpha)
    np.testing.assert_allclose(a.coords, np.diag([1.0, 0.0]))
    assert pair(a, alpha) == 1.0

    c = Classical(3)
    np.testing.assert_array_equal(dagger(State(c, [0.0, 1.0, 0.0])).coords, [0.0, 1.0, 0.0])

    with pytest.raises(DaggerNotUnique):
        dagger(State(Gbit(), [1.0, 1.0, 1.0]))
    with pytest.raises(NotPure):
        dagger(State(q, np.diag([0.5, 0.5])))
    with pytest.raises(NotPure):
        dagger(State(Gbit(), [1.0, 1.0, 0.0]))


@pytest.mark.parametrize("d", [2, 3, 5])
def test_quantum_dagger_orthogonality(d, rng):
    q = QuantumReal(d)
    for _ in range(20):
        o = np.linalg.qr(rng.standard_normal((d, d)))[0]
        alpha = State(q, np.outer(o[:, 0], o[:, 0]))
        beta = State(q, np.outer(o[:, 1], o[:, 1]))
        a = dagger(alpha)
        assert abs(pair(a, alpha) - 1.0) <= 1e-10
        assert abs(pair(a, beta)) <= 1e-10


# -- observation tests ------------------------------------------------------


def test_is_observation_test_examples():
    q = QuantumReal(2)
    assert is_observation_test([Effect(q, np.diag([1.0, 0.0])), Effect(q, np.diag([0.0, 1.0]))])
    assert is_observation_test([Effect(q, np.eye(2) / 2), Effect(q, np.eye(2) / 2)])
    c = Classical(3)
    assert not is_observation_test([Effect(c, [1.0, 0.0, 0.0]), Effect(c, [0.0, 1.0, 0.0])])
    # sums to u but one element is not an effect
    assert not is_observation_test([Effect(c, [2.0, 0.0, 0.0]), Effect(c, [-1.0, 1.0, 1.0])])
    with pytest.raises(DimensionMismatch):
        is_observation_test([Effect(c, [1.0, 0, 0]), Effect(Classical(2), [0.0, 1.0])])


def test_observation_test_type():
    c = Classical(2)
    t = ObservationTest((Effect(c, [1.0, 0.0]), Effect(c, [0.0, 1.0])))
    np.testing.assert_array_equal(t.probabilities(State(c, [0.3, 0.7])), [0.3, 0.7])
    with pytest.raises(OutOfRange):
        ObservationTest((Effect(c, [1.0, 0.0]),))


# -- completion -------------------------------------------------------------


def test_complete_quantum_canonical():
    q = QuantumReal(3)
    full = complete_to_maximal([State(q, np.diag([1.0, 0.0, 0.0]))], q)
    assert len(full) == 3
    np.testing.assert_allclose(full[1].coords, np.diag([0.0, 1.0, 0.0]), atol=1e-15)
    np.testing.assert_allclose(full[2].coords, np.diag([0.0, 0.0, 1.0]), atol=1e-15)


def test_complete_quantum_rotated():
    q = QuantumReal(2)
    v = np.array([1.0, 1.0]) / np.sqrt(2)
    w = np.array([1.0, -1.0]) / np.sqrt(2)
    full = complete_to_maximal([State(q, np.outer(v, v))], q)
    np.testing.assert_allclose(full[1].coords, np.outer(w, w), atol=1e-15)


def test_complete_classical_empty():
    c = Classical(2)
    full = complete_to_maximal([], c)
    np.testing.assert_array_equal([s.coords for s in full], np.eye(2))


def test_complete_rejects_overlapping():
    q = QuantumReal(2)
    v = np.array([1.0, 1.0]) / np.sqrt(2)
    with pytest.raises(NotDistinguishable):
        complete_to_maximal([State(q, np.diag([1.0, 0.0])), State(q, np.outer(v, v))], q)


def test_complete_gbit():
    g = Gbit()
    full = complete_to_maximal([State(g, [1.0, 1.0, -1.0])], g)
    np.testing.assert_array_equal(full[1].coords, [1.0, -1.0, 1.0])
    with pytest.raises(NotDistinguishable):
        complete_to_maximal([State(g, c) for c in ([1, 1, 1], [1, 1, -1], [1, -1, 1])], g)


@pytest.mark.parametrize("d", [2, 3, 4, 6])
def test_completion_is_orthonormal_test(d, rng):
    q = QuantumReal(d)
    v = rng.standard_normal(d)
    v /= np.linalg.norm(v)
    full = complete_to_maximal([State(q, np.outer(v, v))], q)
    assert is_observation_test([dagger(s) for s in full])
