"""Majorization, doubly stochastic matrices and Birkhoff decomposition."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .config import tol
from .errors import (
    DaggerNotUnique,
    LengthMismatch,
    NoPerfectMatching,
    NotDoublyStochastic,
    NotMajorized,
    NotMaximal,
    NotSorted,
    NotSquare,
)
from .gpt import State, dagger, pair
from .spectral import verify_distinguishable


@dataclass(frozen=True, eq=False)
class Spectrum:
    """A probability vector listed in non-increasing order."""

    values: np.ndarray

    def __post_init__(self):
        v = np.array(self.values, dtype=float).reshape(-1)
        if v.size == 0:
            raise LengthMismatch("empty spectrum")
        if np.any(np.diff(v) > 1e-12):
            raise NotSorted(f"spectrum {v.tolist()} is not non-increasing")
        if abs(v.sum() - 1.0) > tol().majorization:
            raise NotSorted(f"spectrum sums to {v.sum()!r}, not 1")
        if v.min() < -tol().majorization or v.max() > 1.0 + tol().majorization:
            raise NotSorted("spectrum entries must lie in [0, 1]")
        v.setflags(write=False)
        object.__setattr__(self, "values", v)

    @classmethod
    def from_unsorted(cls, values, length: int | None = None) -> "Spectrum":
        v = np.sort(np.asarray(values, dtype=float).reshape(-1))[::-1]
        if length is not None:
            v = pad(v, length)
        return cls(v)

    def __len__(self):
        return self.values.size


def pad(values, length: int) -> np.ndarray:
    v = np.asarray(values, dtype=float).reshape(-1)
    if v.size > length:
        raise LengthMismatch(f"cannot pad length {v.size} down to {length}")
    out = np.zeros(length)
    out[: v.size] = v
    return out


def _vec(x) -> np.ndarray:
    return x.values if isinstance(x, Spectrum) else np.asarray(x, dtype=float).reshape(-1)


def partial_sums(x) -> np.ndarray:
    return np.cumsum(_vec(x))


def first_violation(y, x) -> int | None:
    """Smallest k (1-based count of terms) where the k-th partial sum of x exceeds y's."""
    xs, ys = _vec(x), _vec(y)
    if xs.size != ys.size:
        raise LengthMismatch(f"spectra of lengths {xs.size} and {ys.size}")
    for v in (xs, ys):
        if np.any(np.diff(v) > 1e-12):
            raise NotSorted(f"{v.tolist()} is not non-increasing")
    t = tol().majorization
    cx, cy = np.cumsum(xs), np.cumsum(ys)
    for k in range(xs.size - 1):
        if cx[k] > cy[k] + t:
            return k + 1
    if abs(cx[-1] - cy[-1]) > t:
        return xs.size
    return None


def majorizes(y, x) -> bool:
    """True iff ``x`` is majorized by ``y`` (``x`` is more mixed)."""
    return first_violation(y, x) is None


def is_doubly_stochastic(m, tol_: float | None = None) -> bool:
    a = np.asarray(m, dtype=float)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise NotSquare(f"expected a square matrix, got shape {a.shape}")
    t = tol().doubly_stochastic if tol_ is None else tol_
    return bool(
        np.all(a >= -t)
        and np.all(np.abs(a.sum(axis=0) - 1.0) <= t)
        and np.all(np.abs(a.sum(axis=1) - 1.0) <= t)
    )


# ---------------------------------------------------------------------------
# Birkhoff


@dataclass(frozen=True, eq=False)
class BirkhoffDecomposition:
    weights: np.ndarray
    # permutations[k][i] is the column of the unit entry in row i of Pi_k
    permutations: tuple[tuple[int, ...], ...]

    def matrices(self) -> list[np.ndarray]:
        return [perm_to_matrix(p) for p in self.permutations]

    def reconstruct(self) -> np.ndarray:
        d = len(self.permutations[0])
        out = np.zeros((d, d))
        for w, p in zip(self.weights, self.permutations):
            out[np.arange(d), list(p)] += w
        return out

    def __len__(self):
        return len(self.permutations)


def perm_to_matrix(perm: Sequence[int]) -> np.ndarray:
    d = len(perm)
    m = np.zeros((d, d))
    m[np.arange(d), list(perm)] = 1.0
    return m


def _perfect_matching(support: np.ndarray) -> list[int] | None:
    """Kuhn's augmenting-path matching, rows and columns in index order."""
    n = support.shape[0]
    match_col = [-1] * n  # column -> row

    def try_row(r, seen):
        for c in range(n):
            if support[r, c] and not seen[c]:
                seen[c] = True
                if match_col[c] == -1 or try_row(match_col[c], seen):
                    match_col[c] = r
                    return True
        return False

    for r in range(n):
        if not try_row(r, [False] * n):
            return None
    perm = [0] * n
    for c, r in enumerate(match_col):
        perm[r] = c
    return perm


def birkhoff(m) -> BirkhoffDecomposition:
    """Greedy Birkhoff-von Neumann decomposition.

    Repeatedly finds a perfect matching on the positive entries, removes the
    smallest matched entry's worth of that permutation, and stops once every
    residual entry is below the stopping tolerance.
    """
    a = np.array(m, dtype=float)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise NotSquare(f"expected a square matrix, got shape {a.shape}")
    t = tol()
    if not is_doubly_stochastic(a, t.doubly_stochastic):
        raise NoPerfectMatching("input is not doubly stochastic")
    d = a.shape[0]
    rows = np.arange(d)
    weights: list[float] = []
    perms: list[tuple[int, ...]] = []
    while a.max() >= t.birkhoff_stop:
        perm = _perfect_matching(a > t.birkhoff_zero)
        if perm is None:
            raise NoPerfectMatching(f"no perfect matching on residual support after {len(perms)} terms")
        entries = a[rows, perm]
        k = int(np.argmin(entries))
        lam = float(entries[k])
        a[rows, perm] -= lam
        a[k, perm[k]] = 0.0
        weights.append(lam)
        perms.append(tuple(int(c) for c in perm))
    w = np.array(weights)
    w = w / w.sum()
    return BirkhoffDecomposition(w, tuple(perms))


# ---------------------------------------------------------------------------
# Hardy-Littlewood-Polya transfer


def transfer_matrix(p, q) -> np.ndarray:
    """Doubly stochastic ``P`` with ``p = P q``, built from T-transforms.

    Each step takes the first index ``j`` where the working copy of ``q``
    exceeds ``p`` and the first later index ``k`` where it falls short, and
    moves ``min(q_j - p_j, p_k - q_k)`` of weight from ``j`` to ``k`` with the
    transform ``(1 - t) I + t Q_jk``.
    """
    pv, qv = _vec(p), _vec(q)
    if not majorizes(qv, pv):
        raise NotMajorized(f"{pv.tolist()} is not majorized by {qv.tolist()}")
    d = pv.size
    eps = 1e-14
    work = qv.copy()
    P = np.eye(d)
    for _ in range(d):
        diff = work - pv
        over = np.nonzero(diff > eps)[0]
        if over.size == 0:
            break
        j = int(over[0])
        under = [k for k in range(j + 1, d) if diff[k] < -eps]
        if not under:
            break
        k = under[0]
        delta = min(diff[j], -diff[k])
        t = delta / (work[j] - work[k])
        T = np.eye(d)
        T[j, j] = T[k, k] = 1.0 - t
        T[j, k] = T[k, j] = t
        P = T @ P
        work = T @ work
        if diff[j] <= -diff[k]:
            work[j] = pv[j]
        if -diff[k] <= diff[j]:
            work[k] = pv[k]
    err = float(np.max(np.abs(P @ qv - pv)))
    if err > tol().majorization:
        raise NotMajorized(f"T-transform chain misses the target by {err:.3e}")
    return P


# ---------------------------------------------------------------------------
# Transition between maximal sets


def transition_matrix(psi: Sequence[State], phi: Sequence[State]) -> np.ndarray:
    """Matrix of probabilities ``(psi_i^dagger | phi_j)``."""
    if not psi or not phi:
        raise NotMaximal("empty set")
    th = psi[0].theory
    d = th.dim_operational
    if len(psi) != d or len(phi) != d:
        raise NotMaximal(f"maximal sets must have {d} elements, got {len(psi)} and {len(phi)}")
    if not th.has_unique_dagger:
        raise DaggerNotUnique(f"theory {th.name} has no unique dagger")
    for name, states in (("psi", psi), ("phi", phi)):
        cert = verify_distinguishable(list(states))
        if not cert:
            raise NotMaximal(f"{name} is not perfectly distinguishable (pair {cert.pair})")
    daggers = [dagger(s) for s in psi]
    m = np.array([[pair(a, f) for f in phi] for a in daggers])
    if not is_doubly_stochastic(m, tol().doubly_stochastic):
        raise NotDoublyStochastic(f"transition matrix is not doubly stochastic:\n{m}")
    return m
