import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import quantum_with_spectrum, random_state
from gpt_spectra import (
    Classical,
    Gbit,
    QuantumReal,
    State,
    diagonalize,
    eigensolve_symmetric,
    invariant_state,
    is_observation_test,
    p_star,
    peel,
    verify_distinguishable,
)
from gpt_spectra.errors import NotDiagonalizable, NotNormalized, NotPure
from gpt_spectra.gpt import random_orthogonal
from gpt_spectra.spectral import probability_table, spectrum


# -- Jacobi oracle ------------------------------------------------------------


def test_jacobi_diagonal():
    w, v = eigensolve_symmetric(np.diag([3.0, 1.0, 2.0]))
    np.testing.assert_allclose(w, [3.0, 2.0, 1.0], atol=1e-15)
    np.testing.assert_allclose(np.abs(v), np.eye(3)[:, [0, 2, 1]], atol=1e-15)


def test_jacobi_swap():
    w, v = eigensolve_symmetric([[0.0, 1.0], [1.0, 0.0]])
    np.testing.assert_allclose(w, [1.0, -1.0], atol=1e-15)
    s = 1 / np.sqrt(2)
    np.testing.assert_allclose(v[:, 0], [s, s], atol=1e-15)
    assert abs(abs(v[:, 1] @ [s, -s]) - 1.0) <= 1e-15


def test_jacobi_random_seed_42():
    rng = np.random.default_rng(42)
    a = rng.standard_normal((6, 6))
    m = a + a.T
    w, v = eigensolve_symmetric(m)
    assert np.max(np.abs(v @ np.diag(w) @ v.T - m)) < 1e-10
    np.testing.assert_allclose(v.T @ v, np.eye(6), atol=1e-12)
    assert np.all(np.diff(w) <= 0)


@settings(max_examples=60, deadline=None)
@given(st.integers(1, 7), st.integers(0, 2**32 - 1))
def test_jacobi_matches_numpy(d, seed):
    rng = np.random.default_rng(seed)
    a = rng.standard_normal((d, d))
    m = a + a.T
    w, v = eigensolve_symmetric(m)
    np.testing.assert_allclose(w, np.linalg.eigvalsh(m)[::-1], atol=1e-10)
    np.testing.assert_allclose(m @ v, v * w, atol=1e-10)


def test_jacobi_rejects_asymmetric():
    with pytest.raises(ValueError):
        eigensolve_symmetric([[1.0, 2.0], [0.0, 1.0]])


# -- p_star and peel ----------------------------------------------------------


def test_p_star_examples():
    q = QuantumReal(2)
    assert p_star(State(q, np.diag([1.0, 0.0]))) == pytest.approx(1.0, abs=1e-15)
    for d in (2, 3, 5):
        assert p_star(invariant_state(QuantumReal(d))) == pytest.approx(1 / d, abs=1e-14)
        assert p_star(invariant_state(Classical(d))) == pytest.approx(1 / d, abs=1e-15)
    assert p_star(State(q, [[0.6, 0.2], [0.2, 0.4]])) == pytest.approx(0.5 + np.sqrt(0.05), abs=1e-14)


def test_p_star_pure_gbit_corner():
    assert p_star(State(Gbit(), [1.0, -1.0, 1.0])) == 1.0


def test_peel_quantum_diagonal():
    step = peel(State(QuantumReal(2), np.diag([0.7, 0.3])))
    assert step.p_star == pytest.approx(0.7, abs=1e-15)
    np.testing.assert_allclose(step.alpha.coords, np.diag([1.0, 0.0]), atol=1e-15)
    np.testing.assert_allclose(step.residual.coords, np.diag([0.0, 1.0]), atol=1e-14)


def test_peel_classical_sort_and_strip():
    step = peel(State(Classical(3), [0.5, 0.3, 0.2]))
    assert step.p_star == 0.5
    np.testing.assert_array_equal(step.alpha.coords, [1.0, 0.0, 0.0])
    np.testing.assert_allclose(step.residual.coords, [0.0, 0.6, 0.4], atol=1e-15)


def test_peel_gbit_edge_midpoint():
    rho = State(Gbit(), [1.0, 1.0, 0.0])
    step = peel(rho)
    assert step.p_star == 1.0
    assert step.residual is None
    # the returned corner is not the state: the edge effect is certain on a mixed state
    assert step.defect == pytest.approx(1.0)
    assert not rho.is_pure()


# -- distinguishability -------------------------------------------------------


def test_verify_canonical_basis():
    q = QuantumReal(4)
    cert = verify_distinguishable([State(q, np.diag(e)) for e in np.eye(4)])
    assert cert
    assert len(cert.effects) == 4
    assert is_observation_test(list(cert.effects))


def test_verify_duplicate_fails():
    q = QuantumReal(2)
    v = np.array([0.6, 0.8])
    cert = verify_distinguishable([State(q, np.outer(v, v))] * 2)
    assert not cert
    assert cert.pair == (0, 1)  # 0-based indices of the states
    assert cert.value == pytest.approx(1.0)


def test_verify_gbit_opposite_corners():
    g = Gbit()
    cert = verify_distinguishable([State(g, [1.0, 1.0, 1.0]), State(g, [1.0, -1.0, -1.0])])
    assert cert
    np.testing.assert_allclose([e.coords for e in cert.effects], [[0.5, 0.5, 0.0], [0.5, -0.5, 0.0]])


def test_verify_gbit_three_corners_fails():
    g = Gbit()
    assert not verify_distinguishable([State(g, c) for c in ([1, 1, 1], [1, 1, -1], [1, -1, -1])])


def test_verify_requires_pure():
    with pytest.raises(NotPure):
        verify_distinguishable([invariant_state(QuantumReal(2))])


# -- diagonalize --------------------------------------------------------------


def test_diagonalize_invariant_quantum():
    diag = diagonalize(invariant_state(QuantumReal(3)))
    np.testing.assert_allclose(diag.eigenvalues, [1 / 3] * 3, atol=1e-14)
    assert diag.steps == 3


def test_diagonalize_pure_one_step(rng):
    for th in (QuantumReal(4), Classical(3)):
        diag = diagonalize(State(th, th.random_pure(rng)))
        np.testing.assert_allclose(diag.eigenvalues, [1.0], atol=1e-12)
        assert diag.steps == 1


def test_diagonalize_gbit_corner_has_no_unique_dagger():
    # two edge effects are certain on every corner, so no dagger test exists
    with pytest.raises(NotDiagonalizable, match="dagger"):
        diagonalize(State(Gbit(), [1.0, 1.0, 1.0]))


def test_diagonalize_two_by_two():
    diag = diagonalize(State(QuantumReal(2), [[0.5, 0.4], [0.4, 0.5]]))
    np.testing.assert_allclose(diag.eigenvalues, [0.9, 0.1], atol=1e-14)
    s = 1 / np.sqrt(2)
    np.testing.assert_allclose(diag.pure_states[0].coords, np.outer([s, s], [s, s]), atol=1e-14)
    np.testing.assert_allclose(diag.pure_states[1].coords, np.outer([s, -s], [s, -s]), atol=1e-14)


def test_diagonalize_gbit_not_diagonalizable():
    with pytest.raises(NotDiagonalizable):
        diagonalize(State(Gbit(), [1.0, 0.5, 0.5]))


def test_gbit_peeling_reaches_opposite_corners():
    # the peel itself succeeds: the obstruction is the missing unique dagger
    first = peel(State(Gbit(), [1.0, 0.5, 0.5]))
    assert first.p_star == pytest.approx(0.75)
    np.testing.assert_array_equal(first.alpha.coords, [1.0, 1.0, 1.0])
    np.testing.assert_allclose(first.residual.coords, [1.0, -1.0, -1.0], atol=1e-15)


def test_diagonalize_gbit_invariant_not_diagonalizable():
    with pytest.raises(NotDiagonalizable):
        diagonalize(invariant_state(Gbit()))


def test_diagonalize_requires_normalized():
    with pytest.raises(NotNormalized):
        diagonalize(State(QuantumReal(2), np.diag([0.2, 0.2])))


def test_diagonalize_rank_deficient_stops_early():
    diag = diagonalize(quantum_with_spectrum([0.6, 0.4, 0.0, 0.0], seed=1))
    assert diag.steps == 2
    np.testing.assert_allclose(diag.padded(), [0.6, 0.4, 0.0, 0.0], atol=1e-12)
    assert len(diag.maximal_states()) == 4


@settings(max_examples=60, deadline=None)
@given(st.integers(1, 6), st.integers(0, 2**32 - 1))
def test_diagonalize_matches_eigh(d, seed):
    rng = np.random.default_rng(seed)
    rho = random_state(QuantumReal(d), rng)
    diag = diagonalize(rho)
    np.testing.assert_allclose(diag.padded(d), np.linalg.eigvalsh(rho.coords)[::-1], atol=1e-10)
    assert diag.reconstruction_error <= 1e-10
    table = probability_table(diag)
    np.testing.assert_allclose(table, np.eye(diag.steps), atol=1e-8)


@settings(max_examples=60, deadline=None)
@given(st.integers(1, 8), st.integers(0, 2**32 - 1))
def test_diagonalize_classical_is_sorting(d, seed):
    rng = np.random.default_rng(seed)
    p = rng.dirichlet(np.ones(d))
    diag = diagonalize(State(Classical(d), p))
    np.testing.assert_allclose(diag.padded(d), np.sort(p)[::-1], atol=1e-12)


@settings(max_examples=40, deadline=None)
@given(st.integers(2, 5), st.integers(0, 2**32 - 1))
def test_spectrum_is_invariant_under_channels(d, seed):
    rng = np.random.default_rng(seed)
    rho = random_state(QuantumReal(d), rng)
    o = random_orthogonal(d, rng)
    moved = State(QuantumReal(d), o @ rho.coords @ o.T)
    np.testing.assert_allclose(spectrum(moved), spectrum(rho), atol=1e-10)


def test_degenerate_spectrum():
    rho = quantum_with_spectrum([0.4, 0.4, 0.2], seed=9)
    np.testing.assert_allclose(spectrum(rho), [0.4, 0.4, 0.2], atol=1e-12)


def test_diagonalize_gbit_edge_midpoint():
    # the edge effect is certain on this mixed state, so peeling stops after one
    # step with the wrong state
    with pytest.raises(NotDiagonalizable, match="misses the state"):
        diagonalize(State(Gbit(), [1.0, 1.0, 0.0]))
