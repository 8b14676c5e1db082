"""Random-reversible (RaRe) channels and the mixedness preorder.

``rho`` is more mixed than ``sigma`` when ``rho = sum_k w_k U_k(sigma)`` for
reversible channels ``U_k``. On models with Strong Symmetry this holds exactly
when the spectrum of ``rho`` is majorized by that of ``sigma``;
``synthesize_rare`` builds the mixture explicitly.
"""

from __future__ import annotations

import enum
import functools
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .config import tol
from .errors import (
    InvalidChannel,
    NotMajorized,
    StrongSymmetryViolated,
    SynthesisVerificationFailed,
)
from .gpt import ReversibleChannel, State, TheoryModel, _require_normalized, _same
from .majorize import birkhoff, first_violation, majorizes, transfer_matrix
from .spectral import diagonalize


@dataclass(frozen=True, eq=False)
class RaReChannel:
    weights: np.ndarray
    channels: tuple[ReversibleChannel, ...]

    def __post_init__(self):
        w = np.array(self.weights, dtype=float).reshape(-1)
        chans = tuple(self.channels)
        if w.size != len(chans) or not chans:
            raise InvalidChannel(f"{w.size} weights for {len(chans)} channels")
        if np.any(w < 0) or abs(w.sum() - 1.0) > 1e-12:
            raise InvalidChannel(f"weights {w.tolist()} are not a probability vector")
        th = chans[0].theory
        for c in chans:
            _same(th, c.theory)
        w.setflags(write=False)
        object.__setattr__(self, "weights", w)
        object.__setattr__(self, "channels", chans)

    @property
    def theory(self) -> TheoryModel:
        return self.channels[0].theory

    @classmethod
    def single(cls, channel: ReversibleChannel) -> "RaReChannel":
        return cls(np.ones(1), (channel,))

    def compose(self, first: "RaReChannel") -> "RaReChannel":
        """The RaRe channel applying ``first`` and then ``self``."""
        weights, chans = [], []
        for wa, a in zip(self.weights, self.channels):
            for wb, b in zip(first.weights, first.channels):
                weights.append(wa * wb)
                chans.append(a.compose(b))
        w = np.array(weights)
        return RaReChannel(w / w.sum(), tuple(chans))

    def __len__(self):
        return len(self.channels)

    def __call__(self, rho: State) -> State:
        return apply_rare(self, rho)


def apply_rare(r: RaReChannel, rho: State) -> State:
    _same(r.theory, rho.theory)
    th = rho.theory
    out = np.zeros_like(rho.coords)
    for w, c in zip(r.weights, r.channels):
        out = out + w * th.act(c.matrix, rho.coords)
    return State(th, out)


def random_rare(theory: TheoryModel, n_terms: int, seed) -> RaReChannel:
    """Seeded random mixture of ``n_terms`` reversible channels."""
    if n_terms < 1:
        raise InvalidChannel("n_terms must be at least 1")
    rng = np.random.default_rng(seed)
    w = rng.uniform(size=n_terms)
    w = w / w.sum()
    chans = tuple(ReversibleChannel(theory, theory.random_reversible(rng)) for _ in range(n_terms))
    return RaReChannel(w, chans)


# ---------------------------------------------------------------------------
# Convertibility


class Verdict(enum.Enum):
    MORE_MIXED = "MoreMixed"
    NOT_MORE_MIXED = "NotMoreMixed"
    EQUALLY_MIXED = "EquallyMixed"


@dataclass(frozen=True, eq=False)
class ConvertibilityCertificate:
    verdict: Verdict
    witness: RaReChannel | ReversibleChannel | int
    residual_error: float
    p: np.ndarray
    q: np.ndarray


@functools.lru_cache(maxsize=64)
def _strong_symmetry_holds(theory: TheoryModel) -> bool:
    from .axioms import check_strong_symmetry

    return check_strong_symmetry(theory, trials=10, seed=0).verdict == "pass"


def _require_strong_symmetry(theory: TheoryModel):
    if not _strong_symmetry_holds(theory):
        raise StrongSymmetryViolated(
            f"{theory.name} fails the Strong Symmetry check; mixedness is not decided by majorization"
        )


def basis_channel(src: Sequence[State], dst: Sequence[State]) -> ReversibleChannel:
    """Reversible channel sending ``src[i]`` to ``dst[i]`` for each i."""
    th = src[0].theory
    m = th.basis_change([s.coords for s in src], [s.coords for s in dst])
    if m is None:
        raise StrongSymmetryViolated("no reversible channel connects the two maximal sets")
    return ReversibleChannel(th, m)


def _max_error(a: State, b: State) -> float:
    return float(np.max(np.abs(a.coords - b.coords)))


def synthesize_rare(rho: State, sigma: State) -> RaReChannel:
    """A RaRe channel ``R`` with ``R(sigma) = rho``.

    Diagonalizes both states, completes their eigenbases ``psi`` (of rho) and
    ``phi`` (of sigma), finds a doubly stochastic ``P`` with ``p = P q`` and
    its Birkhoff terms ``Pi_k``, then returns the channels ``V_k U`` where
    ``U phi_j = psi_j`` and ``V_k psi_j = sum_i [Pi_k]_ij psi_i``.
    """
    _same(rho.theory, sigma.theory)
    _require_normalized(rho)
    _require_normalized(sigma)
    th = rho.theory
    _require_strong_symmetry(th)
    d = th.dim_operational
    drho, dsig = diagonalize(rho), diagonalize(sigma)
    p, q = drho.padded(d), dsig.padded(d)
    if not majorizes(q, p):
        raise NotMajorized(f"spectrum {p.tolist()} is not majorized by {q.tolist()}")
    psi, phi = drho.maximal_states(), dsig.maximal_states()
    u = basis_channel(phi, psi)
    decomposition = birkhoff(transfer_matrix(p, q))
    channels = []
    for perm in decomposition.permutations:
        # [Pi_k]_{i, perm[i]} = 1, so psi_j goes to psi_i with perm[i] = j
        image = [None] * d
        for i, j in enumerate(perm):
            image[j] = psi[i]
        v = basis_channel(psi, image)
        channels.append(v.compose(u))
    r = RaReChannel(decomposition.weights, tuple(channels))
    err = _max_error(apply_rare(r, sigma), rho)
    if err > tol().synthesis:
        raise SynthesisVerificationFailed(f"synthesized channel misses the target by {err:.3e}")
    return r


def is_more_mixed(rho: State, sigma: State) -> ConvertibilityCertificate:
    """Decide whether ``rho`` can be reached from ``sigma`` by a RaRe channel."""
    _same(rho.theory, sigma.theory)
    _require_normalized(rho)
    _require_normalized(sigma)
    th = rho.theory
    _require_strong_symmetry(th)
    d = th.dim_operational
    drho, dsig = diagonalize(rho), diagonalize(sigma)
    p, q = drho.padded(d), dsig.padded(d)

    if np.max(np.abs(p - q)) <= tol().spectrum_equal:
        u = basis_channel(dsig.maximal_states(), drho.maximal_states())
        err = _max_error(u(sigma), rho)
        if err > tol().synthesis:
            raise SynthesisVerificationFailed(f"basis-matching channel misses the target by {err:.3e}")
        return ConvertibilityCertificate(Verdict.EQUALLY_MIXED, u, err, p, q)

    k = first_violation(q, p)
    if k is not None:
        return ConvertibilityCertificate(Verdict.NOT_MORE_MIXED, k, float("nan"), p, q)
    r = synthesize_rare(rho, sigma)
    return ConvertibilityCertificate(Verdict.MORE_MIXED, r, _max_error(apply_rare(r, sigma), rho), p, q)


def identity_rare(theory: TheoryModel) -> RaReChannel:
    return RaReChannel.single(ReversibleChannel.identity(theory))

