"""Operational diagonalization by iterative pure-effect peeling.

A normalized state is split as ``rho = p* alpha + (1 - p*) sigma`` where
``p*`` is the largest probability any pure effect assigns to ``rho`` and
``alpha`` is the pure state on which the maximizing effect is certain. The
residual ``sigma`` is peeled again until the accumulated weight exhausts the
state. The weights come out in non-increasing order.

``eigensolve_symmetric`` is a cyclic Jacobi solver kept independent from the
peeling route so the two can cross-check each other on the quantum model.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .config import tol
from .errors import (
    DaggerNotUnique,
    NoConvergence,
    NotDiagonalizable,
    NotDistinguishable,
    NotExtendable,
    NotPure,
    NotSymmetric,
    ResidualOutsideCone,
)
from .gpt import (
    Effect,
    State,
    _require_normalized,
    _same,
    complete_to_maximal,
    dagger,
    maximize_pure_effect,
    pair,
)


# ---------------------------------------------------------------------------
# Jacobi eigensolver


def _largest_magnitude_positive(v: np.ndarray) -> np.ndarray:
    k = int(np.argmax(np.abs(v)))
    return v if v[k] >= 0 else -v


def eigensolve_symmetric(m, max_sweeps: int = 100) -> tuple[np.ndarray, np.ndarray]:
    """Eigenvalues (descending) and orthonormal eigenvectors of a symmetric matrix.

    Cyclic Jacobi rotations, sweeping the strict upper triangle row by row.
    Each eigenvector is signed so that its largest-magnitude entry is positive.

    >>> w, v = eigensolve_symmetric([[0.0, 1.0], [1.0, 0.0]])
    >>> w.round(12).tolist()
    [1.0, -1.0]
    """
    a = np.array(m, dtype=float)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise NotSymmetric(f"expected a square matrix, got shape {a.shape}")
    n = a.shape[0]
    if np.max(np.abs(a - a.T), initial=0.0) > tol().symmetric * max(1.0, np.max(np.abs(a), initial=0.0)):
        raise NotSymmetric("matrix is not symmetric")
    a = 0.5 * (a + a.T)
    original = a.copy()
    v = np.eye(n)
    threshold = tol().jacobi_offdiag * max(1.0, float(np.linalg.norm(a)))

    def off(x):
        return float(np.sqrt(np.sum(np.triu(x, 1) ** 2) * 2.0))

    for _ in range(max_sweeps):
        if off(a) < threshold:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                if apq == 0.0:
                    continue
                theta = (a[q, q] - a[p, p]) / (2.0 * apq)
                t = np.copysign(1.0, theta) / (abs(theta) + np.sqrt(1.0 + theta * theta))
                c = 1.0 / np.sqrt(1.0 + t * t)
                s = t * c
                # A <- J^T A J with J the (p, q) plane rotation
                ap, aq = a[:, p].copy(), a[:, q].copy()
                a[:, p] = c * ap - s * aq
                a[:, q] = s * ap + c * aq
                ap, aq = a[p, :].copy(), a[q, :].copy()
                a[p, :] = c * ap - s * aq
                a[q, :] = s * ap + c * aq
                a[p, q] = a[q, p] = 0.0
                vp, vq = v[:, p].copy(), v[:, q].copy()
                v[:, p] = c * vp - s * vq
                v[:, q] = s * vp + c * vq
    else:
        if off(a) >= threshold:
            raise NoConvergence(f"Jacobi did not converge in {max_sweeps} sweeps")

    w = np.diag(a).copy()
    order = np.argsort(-w, kind="stable")
    w = w[order]
    v = v[:, order]
    for k in range(n):
        v[:, k] = _largest_magnitude_positive(v[:, k])
    err = np.max(np.abs(original - (v * w) @ v.T), initial=0.0)
    if err > tol().jacobi_reconstruction * max(1.0, float(np.max(np.abs(original), initial=0.0))):
        raise NoConvergence(f"Jacobi reconstruction error {err:.3e}")
    return w, v


# ---------------------------------------------------------------------------
# Peeling


@dataclass(frozen=True, eq=False)
class PeelStep:
    p_star: float
    alpha: State
    residual: State | None
    # max-norm distance between rho and p* alpha + (1 - p*) residual
    defect: float


def p_star(rho: State) -> float:
    return maximize_pure_effect(rho)[0]


def peel(rho: State, weight: float = 1.0) -> PeelStep:
    """Split off the pure component of largest weight.

    When ``p*`` reaches 1 no residual is returned. On theories where the unit
    face of the maximizing effect is not a single state (the gbit) ``rho`` may
    still be mixed; ``defect`` then reports the mismatch.

    ``weight`` is the share of ``rho`` inside the state being diagonalized;
    the cone clamp band is measured on that outer scale.
    """
    p, _, alpha = maximize_pure_effect(rho)
    th = rho.theory
    if p >= 1.0 - tol().peel_stop:
        defect = float(np.max(np.abs(rho.coords - alpha.coords)))
        return PeelStep(p, alpha, None, defect)
    raw = (rho.coords - p * alpha.coords) / (1.0 - p)
    clipped = th.clip_to_cone(raw, tol().clamp / (weight * (1.0 - p)))
    clipped = clipped / float(np.vdot(th.unit_coords(), clipped))
    sigma = State(th, clipped)
    defect = float(np.max(np.abs(rho.coords - p * alpha.coords - (1.0 - p) * sigma.coords)))
    return PeelStep(p, alpha, sigma, defect)


# ---------------------------------------------------------------------------
# Distinguishability


@dataclass(frozen=True, eq=False)
class Distinguishability:
    ok: bool
    effects: tuple[Effect, ...] = ()
    # first failing (i, j) index pair and the offending probability
    pair: tuple[int, int] | None = None
    value: float | None = None

    def __bool__(self):
        return self.ok


def verify_distinguishable(states: list[State]) -> Distinguishability:
    """Certificate that pure ``states`` are perfectly distinguishable.

    On success returns an observation-test (completed to a maximal set where
    applicable) whose first ``len(states)`` effects satisfy
    ``(a_j|rho_i) = delta_ij``.
    """
    if not states:
        raise NotPure("no states given")
    th = states[0].theory
    for s in states:
        _same(th, s.theory)
        if not s.is_pure():
            raise NotPure(f"{s!r} is not pure")
    t = tol().distinguish
    n = len(states)

    if th.has_unique_dagger:
        daggers = [dagger(s) for s in states]
        for i in range(n):
            for j in range(n):
                val = float(np.vdot(daggers[i].coords, states[j].coords))
                if abs(val - (1.0 if i == j else 0.0)) > t:
                    return Distinguishability(False, pair=(i, j), value=val)

    coords = th.distinguishing_test([s.coords for s in states])
    if coords is None:
        return Distinguishability(False, pair=None, value=None)
    effects = tuple(Effect(th, c) for c in coords)
    for i in range(n):
        for j in range(n):
            val = float(np.vdot(effects[j].coords, states[i].coords))
            if abs(val - (1.0 if i == j else 0.0)) > t:
                return Distinguishability(False, pair=(i, j), value=val)
    return Distinguishability(True, effects=effects)


# ---------------------------------------------------------------------------
# Diagonalization


@dataclass(frozen=True, eq=False)
class Diagonalization:
    eigenvalues: np.ndarray
    pure_states: tuple[State, ...]
    test_effects: tuple[Effect, ...]
    reconstruction_error: float
    steps: int

    def padded(self, d: int | None = None) -> np.ndarray:
        """Eigenvalues padded with exact zeros to length ``d``."""
        if d is None:
            d = self.pure_states[0].theory.dim_operational
        out = np.zeros(d)
        out[: len(self.eigenvalues)] = self.eigenvalues
        return out

    def maximal_states(self) -> list[State]:
        th = self.pure_states[0].theory
        return complete_to_maximal(list(self.pure_states), th)


def diagonalize(rho: State) -> Diagonalization:
    """Diagonalize ``rho`` by repeated peeling.

    The i-th eigenvalue is ``p*_i * prod_{j<i} (1 - p*_j)``. Stops when a step
    has ``p* = 1``, when the peeled weight exhausts the state, or after
    ``dim_operational`` steps. Raises ``NotDiagonalizable`` when the result is
    not a decomposition into perfectly distinguishable pure states.
    """
    _require_normalized(rho)
    th = rho.theory
    t = tol()
    eigenvalues: list[float] = []
    states: list[State] = []
    remaining = 1.0
    current = rho
    for _ in range(th.dim_operational):
        try:
            step = peel(current, remaining)
        except ResidualOutsideCone as exc:
            raise NotDiagonalizable(f"peeling left the state cone: {exc}") from exc
        eigenvalues.append(step.p_star * remaining)
        states.append(step.alpha)
        if step.residual is None:
            remaining = 0.0
            break
        remaining *= 1.0 - step.p_star
        if remaining <= t.peel_stop:
            break
        current = step.residual

    total = sum(eigenvalues)
    if abs(total - rho.norm) > t.test_sum:
        raise NotDiagonalizable(
            f"{len(states)} peeling steps account for weight {total!r} of {rho.norm!r}"
        )
    recon = np.sum([p * a.coords for p, a in zip(eigenvalues, states)], axis=0)
    err = float(np.max(np.abs(rho.coords - recon)))
    if err > t.reconstruction:
        raise NotDiagonalizable(
            f"peeled decomposition misses the state by {err:.3e}; the unit face of the "
            f"maximizing effect is not a single pure state"
        )

    try:
        daggers = [dagger(a) for a in states]
    except DaggerNotUnique as exc:
        raise NotDiagonalizable(f"pure component has no unique dagger effect: {exc}") from exc
    for i, di in enumerate(daggers):
        for j in range(i + 1, len(states)):
            val = float(np.vdot(di.coords, states[j].coords))
            if abs(val) > t.distinguish:
                raise NotDiagonalizable(f"(alpha_{i}^dagger|alpha_{j}) = {val:.3e}, expected 0")
    try:
        cert = verify_distinguishable(states)
    except (NotDistinguishable, NotExtendable) as exc:
        raise NotDiagonalizable(str(exc)) from exc
    if not cert:
        raise NotDiagonalizable(f"distinguishability certificate failed at {cert.pair}")

    return Diagonalization(
        eigenvalues=np.array(eigenvalues),
        pure_states=tuple(states),
        test_effects=cert.effects,
        reconstruction_error=err,
        steps=len(states),
    )


def spectrum(rho: State) -> np.ndarray:
    """Eigenvalues of ``rho`` padded to the operational dimension."""
    return diagonalize(rho).padded()


def probability_table(diag: Diagonalization) -> np.ndarray:
    """Matrix of probabilities ``(test_effects[j] | pure_states[i])``."""
    return np.array([[pair(a, s) for a in diag.test_effects] for s in diag.pure_states])
