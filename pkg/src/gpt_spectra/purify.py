"""Purification, complementary states and steering in real quantum theory.

A bipartite pure state on ``A (x) B`` is stored through its amplitude matrix
``W`` (``d_A x d_B``, unit Frobenius norm); the marginals are ``W W^T`` on A
and ``W^T W`` on B. Measuring an effect ``b`` on B leaves the unnormalized
state ``W b W^T`` on A.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .config import tol
from .errors import InvalidState, NotContained, UnsupportedTheory
from .gpt import Effect, QuantumReal, State, _require_normalized
from .spectral import eigensolve_symmetric, p_star


@dataclass(frozen=True, eq=False)
class BipartitePureState:
    amplitudes: np.ndarray

    def __post_init__(self):
        w = np.array(self.amplitudes, dtype=float)
        if w.ndim != 2:
            raise InvalidState("amplitude matrix must be two-dimensional")
        if abs(np.sum(w * w) - 1.0) > tol().normalization:
            raise InvalidState(f"amplitudes have squared norm {np.sum(w * w)!r}, not 1")
        w.setflags(write=False)
        object.__setattr__(self, "amplitudes", w)

    @property
    def system_dims(self) -> tuple[int, int]:
        return self.amplitudes.shape

    def marginal_a(self) -> State:
        w = self.amplitudes
        return State(QuantumReal(w.shape[0]), w @ w.T)

    def marginal_b(self) -> State:
        w = self.amplitudes
        return State(QuantumReal(w.shape[1]), w.T @ w)

    def conditional_a(self, b: Effect) -> np.ndarray:
        """Unnormalized state left on A after effect ``b`` occurs on B."""
        w = self.amplitudes
        return w @ b.coords.T @ w.T

    def conditional_b(self, a: Effect) -> np.ndarray:
        w = self.amplitudes
        return w.T @ a.coords @ w


_NOISE_FLOOR = 1e-13


def _require_quantum(rho: State):
    if not isinstance(rho.theory, QuantumReal):
        raise UnsupportedTheory(f"purification is only available for quantum_real, not {rho.theory.name}")


def purify(rho: State) -> BipartitePureState:
    """Minimal purification ``W = sum_i sqrt(p_i) v_i e_i^T``."""
    _require_quantum(rho)
    _require_normalized(rho)
    w, v = eigensolve_symmetric(rho.coords)
    # eigenvalues at rounding level are zero; their square roots would not be
    w = np.where(w > _NOISE_FLOOR, w, 0.0)
    amps = v * np.sqrt(w)
    amps = amps / np.linalg.norm(amps)
    return BipartitePureState(amps)


def complementary(psi: BipartitePureState) -> State:
    return psi.marginal_b()


def steer(psi: BipartitePureState, sigma: State, p: float) -> Effect:
    """Effect on B that prepares ``p * sigma`` on A.

    Requires ``p sigma <= rho`` in the positive-semidefinite order, with
    ``rho`` the A marginal of ``psi``. The effect is
    ``p W^+ sigma W^+^T``, supported on the range of ``W^T``.
    """
    _require_quantum(sigma)
    rho = psi.marginal_a()
    if sigma.theory != rho.theory:
        raise NotContained(f"sigma lives on {sigma.theory}, marginal on {rho.theory}")
    t = tol()
    if not 0.0 <= p <= 1.0:
        raise NotContained(f"weight {p!r} outside [0, 1]")
    gap = np.linalg.eigvalsh(rho.coords - p * sigma.coords)[0]
    if gap < -t.cone:
        raise NotContained(f"p*sigma exceeds rho (eigenvalue {gap:.3e})")
    w = psi.amplitudes
    # pseudo-inverse with singular values below the cutoff dropped
    u_, s_, vt_ = np.linalg.svd(w, full_matrices=False)
    keep = s_ > t.pinv_cutoff
    w_pinv = (vt_[keep].T / s_[keep]) @ u_[:, keep].T
    b = p * (w_pinv @ sigma.coords @ w_pinv.T).T
    b = 0.5 * (b + b.T)
    effect = Effect(QuantumReal(w.shape[1]), b)
    err = steering_error(psi, effect, sigma, p)
    if err > t.reconstruction:
        raise NotContained(f"sigma is not supported inside rho (reproduction error {err:.3e})")
    lo, hi = np.linalg.eigvalsh(b)[[0, -1]]
    if lo < -t.clamp or hi > 1.0 + t.clamp:
        raise NotContained(f"steering effect has eigenvalues outside [0, 1]: {lo:.3e}, {hi:.3e}")
    return effect


def steering_error(psi: BipartitePureState, b: Effect, sigma: State, p: float) -> float:
    return float(np.max(np.abs(psi.conditional_a(b) - p * sigma.coords)))


@dataclass(frozen=True)
class PStarReport:
    p_star_rho: float
    p_star_complement: float
    difference: float


def verify_pstar_equality(rho: State) -> PStarReport:
    a = p_star(rho)
    b = p_star(complementary(purify(rho)))
    return PStarReport(a, b, abs(a - b))


def steering_map(psi: BipartitePureState) -> np.ndarray:
    """Matrix of ``vec(b) -> vec(W b W^T)`` (row-major vec)."""
    w = psi.amplitudes
    return np.kron(w, w)


def is_faithful(psi: BipartitePureState) -> bool:
    """True when distinct effects on B steer to distinct states on A."""
    m = steering_map(psi)
    s = np.linalg.svd(m, compute_uv=False)
    rank = int(np.sum(s > tol().rank))
    return rank == m.shape[1]


def align_purifications(psi: BipartitePureState, other: BipartitePureState) -> np.ndarray:
    """Orthogonal ``O`` on B with ``other.W = psi.W O^T`` (purifications of one state)."""
    if psi.system_dims != other.system_dims:
        raise InvalidState("purifications must share system dimensions")
    m = other.amplitudes.T @ psi.amplitudes
    u, _, vt = np.linalg.svd(m)
    o = u @ vt
    err = np.max(np.abs(psi.amplitudes @ o.T - other.amplitudes))
    if err > tol().reconstruction:
        raise InvalidState(f"states have different A marginals (alignment error {err:.3e})")
    return o
