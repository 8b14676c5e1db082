"""Finite-dimensional theory models: states, effects, reversible channels.

Three concrete models are provided:

* ``QuantumReal(d)``: real symmetric density matrices, effects paired by the
  trace inner product, reversible channels ``rho -> O rho O^T`` with ``O``
  orthogonal.
* ``Classical(d)``: probability vectors, effects in ``[0, 1]^d``, reversible
  channels are permutation matrices.
* ``Gbit()``: the square state space ``(1, x, y)`` with ``|x|, |y| <= 1``,
  reversible channels are the eight symmetries of the square.

Coordinates are plain numpy arrays (a ``(d, d)`` matrix for the quantum model,
a vector otherwise) and the pairing is always the Euclidean / Frobenius inner
product of the two coordinate arrays.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import ClassVar, Sequence

import numpy as np

from .config import tol
from .errors import (
    DaggerNotUnique,
    DimensionMismatch,
    InvalidChannel,
    InvalidState,
    NotDistinguishable,
    NotExtendable,
    NotNormalized,
    NotPure,
    OutOfRange,
    ResidualOutsideCone,
    UnsupportedTheory,
)


def _frozen(arr: np.ndarray) -> np.ndarray:
    arr = np.array(arr, dtype=float, copy=True)
    arr.setflags(write=False)
    return arr


def _sign_first_nonzero(v: np.ndarray, eps: float = 1e-12) -> np.ndarray:
    for c in v:
        if abs(c) > eps:
            return v if c > 0 else -v
    return v


@dataclass(frozen=True)
class TheoryModel:
    """Base class for a finite-dimensional probabilistic theory."""

    dim: int

    name: ClassVar[str] = ""
    has_unique_dagger: ClassVar[bool] = True
    has_purification: ClassVar[bool] = False
    pure_effects_finite: ClassVar[bool] = True

    def __post_init__(self):
        if not isinstance(self.dim, (int, np.integer)) or self.dim < 1:
            raise InvalidState(f"dimension must be a positive integer, got {self.dim!r}")

    @property
    def dim_operational(self) -> int:
        return self.dim

    @property
    def dim_linear(self) -> int:
        raise NotImplementedError

    @property
    def coord_shape(self) -> tuple[int, ...]:
        raise NotImplementedError

    # -- coordinates -------------------------------------------------------

    def coerce(self, coords) -> np.ndarray:
        arr = np.asarray(coords, dtype=float)
        if arr.shape != self.coord_shape:
            raise DimensionMismatch(
                f"{self.name}(dim={self.dim}) expects coordinates of shape "
                f"{self.coord_shape}, got {arr.shape}"
            )
        if not np.all(np.isfinite(arr)):
            raise InvalidState("coordinates must be finite")
        return _frozen(arr)

    def unit_coords(self) -> np.ndarray:
        raise NotImplementedError

    def invariant_coords(self) -> np.ndarray:
        raise NotImplementedError

    def cone_tolerance(self) -> float:
        return tol().cone

    def cone_violation(self, coords: np.ndarray) -> float:
        """Positive amount by which ``coords`` lies outside the state cone."""
        raise NotImplementedError

    def clip_to_cone(self, coords: np.ndarray, band: float) -> np.ndarray:
        raise NotImplementedError

    def effect_range(self, coords: np.ndarray) -> tuple[float, float]:
        """Min and max of the pairing of an effect over all normalized states."""
        raise NotImplementedError

    def purity_defect(self, coords: np.ndarray) -> float:
        raise NotImplementedError

    # -- pure effects ------------------------------------------------------

    def top_pure_effect(self, coords: np.ndarray) -> tuple[float, np.ndarray, np.ndarray]:
        raise NotImplementedError

    def dagger_coords(self, coords: np.ndarray) -> np.ndarray:
        raise NotImplementedError

    def completion(self, partial: list[np.ndarray]) -> list[np.ndarray]:
        raise NotImplementedError

    def distinguishing_test(self, states: list[np.ndarray]) -> list[np.ndarray] | None:
        """An observation-test with ``(a_j|rho_i) = delta_ij``, or None."""
        raise NotImplementedError

    # -- reversible group --------------------------------------------------

    def check_channel(self, matrix) -> np.ndarray:
        raise NotImplementedError

    def act(self, matrix: np.ndarray, coords: np.ndarray) -> np.ndarray:
        raise NotImplementedError

    def generators(self) -> list[np.ndarray]:
        raise NotImplementedError

    def random_reversible(self, rng: np.random.Generator) -> np.ndarray:
        raise NotImplementedError

    def basis_change(self, src: list[np.ndarray], dst: list[np.ndarray]) -> np.ndarray | None:
        """A group element mapping ``src[i]`` to ``dst[i]`` for every i, if any."""
        raise NotImplementedError

    # -- sampling ----------------------------------------------------------

    def random_state(self, rng: np.random.Generator) -> np.ndarray:
        raise NotImplementedError

    def random_pure(self, rng: np.random.Generator) -> np.ndarray:
        raise NotImplementedError

    def to_json_data(self, coords: np.ndarray):
        return np.asarray(coords).tolist()


# ---------------------------------------------------------------------------
# Real quantum theory


def _orthogonality_error(m: np.ndarray) -> float:
    return float(np.max(np.abs(m @ m.T - np.eye(m.shape[0]))))


def random_orthogonal(d: int, rng: np.random.Generator) -> np.ndarray:
    g = rng.standard_normal((d, d))
    q, r = np.linalg.qr(g)
    signs = np.sign(np.diag(r))
    signs[signs == 0] = 1.0
    return q * signs


@dataclass(frozen=True)
class QuantumReal(TheoryModel):
    name: ClassVar[str] = "quantum_real"
    has_unique_dagger: ClassVar[bool] = True
    has_purification: ClassVar[bool] = True
    pure_effects_finite: ClassVar[bool] = False

    @property
    def dim_linear(self) -> int:
        return self.dim * (self.dim + 1) // 2

    @property
    def coord_shape(self) -> tuple[int, ...]:
        return (self.dim, self.dim)

    def coerce(self, coords) -> np.ndarray:
        arr = np.asarray(super().coerce(coords))
        scale = max(1.0, float(np.max(np.abs(arr))))
        if np.max(np.abs(arr - arr.T)) > tol().symmetric * scale:
            raise InvalidState("quantum coordinates must be a symmetric matrix")
        return _frozen(0.5 * (arr + arr.T))

    def unit_coords(self) -> np.ndarray:
        return _frozen(np.eye(self.dim))

    def invariant_coords(self) -> np.ndarray:
        return _frozen(np.eye(self.dim) / self.dim)

    def cone_violation(self, coords):
        return float(-np.linalg.eigvalsh(coords)[0])

    def clip_to_cone(self, coords, band):
        w, v = np.linalg.eigh(coords)
        if w[0] < -band:
            raise ResidualOutsideCone(f"residual has eigenvalue {w[0]:.3e} below -{band:g}")
        if w[0] >= 0:
            return coords
        w = np.clip(w, 0.0, None)
        out = (v * w) @ v.T
        return 0.5 * (out + out.T)

    def effect_range(self, coords):
        w = np.linalg.eigvalsh(coords)
        return float(w[0]), float(w[-1])

    def purity_defect(self, coords):
        w = np.linalg.eigvalsh(coords)
        if self.dim == 1:
            return 0.0
        return float(max(w[-2], -w[0]))

    def pure_vector(self, coords: np.ndarray) -> np.ndarray:
        """Unit vector ``v`` with ``coords = v v^T`` (sign: first nonzero entry positive)."""
        w, v = np.linalg.eigh(coords)
        return _sign_first_nonzero(v[:, -1].copy())

    def top_pure_effect(self, coords):
        w, v = np.linalg.eigh(coords)
        vec = _sign_first_nonzero(v[:, -1].copy())
        proj = np.outer(vec, vec)
        p = float(vec @ coords @ vec)
        return p, proj, proj

    def dagger_coords(self, coords):
        return self.coerce(coords)

    def completion(self, partial):
        vecs = [self.pure_vector(s) for s in partial]
        t = tol().distinguish
        for (i, a), (j, b) in itertools.combinations(enumerate(vecs), 2):
            overlap = float(a @ b) ** 2
            if overlap > t:
                raise NotDistinguishable(f"states {i} and {j} overlap with probability {overlap:.3e}")
        if len(vecs) > self.dim:
            raise NotDistinguishable(f"{len(vecs)} states exceed dimension {self.dim}")
        basis = list(vecs)
        for k in range(self.dim):
            if len(basis) == self.dim:
                break
            w = np.zeros(self.dim)
            w[k] = 1.0
            for _ in range(2):
                for b in basis:
                    w = w - (b @ w) * b
            nrm = np.linalg.norm(w)
            if nrm > 1e-3:
                basis.append(_sign_first_nonzero(w / nrm))
        if len(basis) < self.dim:
            raise NotExtendable("Gram-Schmidt completion lost rank")
        return [np.outer(b, b) for b in basis]

    def distinguishing_test(self, states):
        try:
            full = self.completion(states)
        except NotDistinguishable:
            return None
        return [self.dagger_coords(s) for s in full]

    def check_channel(self, matrix):
        m = np.asarray(matrix, dtype=float)
        if m.shape != (self.dim, self.dim):
            raise DimensionMismatch(f"channel matrix must be {self.dim}x{self.dim}, got {m.shape}")
        if _orthogonality_error(m) > 1e-9:
            raise InvalidChannel("quantum reversible channel must be an orthogonal matrix")
        return _frozen(m)

    def act(self, matrix, coords):
        out = matrix @ coords @ matrix.T
        return 0.5 * (out + out.T)

    def generators(self):
        d = self.dim
        gens = []
        for i in range(d - 1):
            p = np.eye(d)
            p[[i, i + 1]] = p[[i + 1, i]]
            gens.append(p)
        flip = np.eye(d)
        flip[0, 0] = -1.0
        gens.append(flip)
        if d >= 2:
            rot = np.eye(d)
            c, s = np.cos(0.7), np.sin(0.7)
            rot[:2, :2] = [[c, -s], [s, c]]
            gens.append(rot)
        return gens

    def random_reversible(self, rng):
        return random_orthogonal(self.dim, rng)

    def basis_change(self, src, dst):
        if len(src) != self.dim or len(dst) != self.dim:
            return None
        a = np.column_stack([self.pure_vector(s) for s in src])
        b = np.column_stack([self.pure_vector(s) for s in dst])
        o = b @ a.T
        if _orthogonality_error(o) > 1e-8:
            return None
        return o

    def random_state(self, rng):
        g = rng.standard_normal((self.dim, self.dim))
        rho = g @ g.T
        return rho / np.trace(rho)

    def random_pure(self, rng):
        v = rng.standard_normal(self.dim)
        v /= np.linalg.norm(v)
        return np.outer(v, v)


# ---------------------------------------------------------------------------
# Classical probability theory


def permutation_matrix(perm: Sequence[int]) -> np.ndarray:
    """Matrix sending basis vector ``j`` to basis vector ``perm[j]``."""
    d = len(perm)
    m = np.zeros((d, d))
    m[list(perm), list(range(d))] = 1.0
    return m


@dataclass(frozen=True)
class Classical(TheoryModel):
    name: ClassVar[str] = "classical"
    has_unique_dagger: ClassVar[bool] = True
    has_purification: ClassVar[bool] = False
    pure_effects_finite: ClassVar[bool] = True

    @property
    def dim_linear(self) -> int:
        return self.dim

    @property
    def coord_shape(self):
        return (self.dim,)

    def unit_coords(self):
        return _frozen(np.ones(self.dim))

    def invariant_coords(self):
        return _frozen(np.full(self.dim, 1.0 / self.dim))

    def cone_tolerance(self):
        return tol().classical_cone

    def cone_violation(self, coords):
        return float(-np.min(coords))

    def clip_to_cone(self, coords, band):
        if np.min(coords) < -band:
            raise ResidualOutsideCone(f"residual has entry {np.min(coords):.3e} below -{band:g}")
        return np.clip(coords, 0.0, None)

    def effect_range(self, coords):
        return float(np.min(coords)), float(np.max(coords))

    def purity_defect(self, coords):
        s = float(np.sum(coords))
        return float(max(s - np.max(coords), -np.min(coords)))

    def vertex_index(self, coords) -> int:
        return int(np.argmax(coords))

    def top_pure_effect(self, coords):
        i = int(np.argmax(coords))
        e = np.zeros(self.dim)
        e[i] = 1.0
        return float(coords[i]), e, e.copy()

    def dagger_coords(self, coords):
        e = np.zeros(self.dim)
        e[self.vertex_index(coords)] = 1.0
        return e

    def completion(self, partial):
        idx = [self.vertex_index(s) for s in partial]
        if len(set(idx)) != len(idx):
            raise NotDistinguishable(f"repeated vertex among {idx}")
        rest = [k for k in range(self.dim) if k not in idx]
        out = [np.asarray(s, dtype=float) for s in partial]
        for k in rest:
            e = np.zeros(self.dim)
            e[k] = 1.0
            out.append(e)
        return out

    def distinguishing_test(self, states):
        try:
            full = self.completion(states)
        except NotDistinguishable:
            return None
        return [self.dagger_coords(s) for s in full]

    def check_channel(self, matrix):
        m = np.asarray(matrix, dtype=float)
        if m.shape != (self.dim, self.dim):
            raise DimensionMismatch(f"channel matrix must be {self.dim}x{self.dim}, got {m.shape}")
        is_perm = (
            np.all((m == 0.0) | (m == 1.0))
            and np.all(m.sum(axis=0) == 1.0)
            and np.all(m.sum(axis=1) == 1.0)
        )
        if not is_perm:
            raise InvalidChannel("classical reversible channel must be a permutation matrix")
        return _frozen(m)

    def act(self, matrix, coords):
        return matrix @ coords

    def generators(self):
        d = self.dim
        gens = []
        for i in range(d - 1):
            perm = list(range(d))
            perm[i], perm[i + 1] = perm[i + 1], perm[i]
            gens.append(permutation_matrix(perm))
        gens.append(permutation_matrix([(j + 1) % d for j in range(d)]))
        return gens

    def random_reversible(self, rng):
        return permutation_matrix(rng.permutation(self.dim))

    def basis_change(self, src, dst):
        if len(src) != self.dim or len(dst) != self.dim:
            return None
        perm = [0] * self.dim
        for s, t in zip(src, dst):
            perm[self.vertex_index(s)] = self.vertex_index(t)
        if sorted(perm) != list(range(self.dim)):
            return None
        return permutation_matrix(perm)

    def random_state(self, rng):
        return rng.dirichlet(np.ones(self.dim))

    def random_pure(self, rng):
        e = np.zeros(self.dim)
        e[rng.integers(self.dim)] = 1.0
        return e


# ---------------------------------------------------------------------------
# Boxworld gbit (square state space)

GBIT_CORNERS = np.array([[1.0, 1.0, 1.0], [1.0, 1.0, -1.0], [1.0, -1.0, 1.0], [1.0, -1.0, -1.0]])
GBIT_EDGE_EFFECTS = 0.5 * np.array(
    [[1.0, 1.0, 0.0], [1.0, -1.0, 0.0], [1.0, 0.0, 1.0], [1.0, 0.0, -1.0]]
)
# D4 acting on (x, y): rotations by k*90 degrees, then the same composed with y -> -y.
_ROT = np.array([[0.0, -1.0], [1.0, 0.0]])
_FLIP = np.array([[1.0, 0.0], [0.0, -1.0]])
GBIT_GROUP = [np.linalg.matrix_power(_ROT, k) for k in range(4)] + [
    np.linalg.matrix_power(_ROT, k) @ _FLIP for k in range(4)
]


@dataclass(frozen=True)
class Gbit(TheoryModel):
    dim: int = 2

    name: ClassVar[str] = "gbit"
    has_unique_dagger: ClassVar[bool] = False
    has_purification: ClassVar[bool] = False
    pure_effects_finite: ClassVar[bool] = True

    def __post_init__(self):
        if self.dim != 2:
            raise InvalidState(f"the gbit has operational dimension 2, got {self.dim}")

    @property
    def dim_linear(self):
        return 3

    @property
    def coord_shape(self):
        return (3,)

    def unit_coords(self):
        return _frozen([1.0, 0.0, 0.0])

    def invariant_coords(self):
        return _frozen([1.0, 0.0, 0.0])

    def cone_tolerance(self):
        return tol().gbit_cone

    def cone_violation(self, coords):
        n, x, y = coords
        return float(max(abs(x) - n, abs(y) - n))

    def clip_to_cone(self, coords, band):
        if self.cone_violation(coords) > band:
            raise ResidualOutsideCone(f"residual {coords.tolist()} leaves the square")
        n = coords[0]
        return np.array([n, np.clip(coords[1], -n, n), np.clip(coords[2], -n, n)])

    def effect_range(self, coords):
        vals = GBIT_CORNERS @ coords
        return float(vals.min()), float(vals.max())

    def purity_defect(self, coords):
        n, x, y = coords
        return float(max(n - abs(x), n - abs(y)))

    def corner_index(self, coords) -> int:
        d = np.max(np.abs(GBIT_CORNERS - np.asarray(coords)), axis=1)
        return int(np.argmin(d))

    def top_pure_effect(self, coords):
        vals = GBIT_EDGE_EFFECTS @ coords
        i = int(np.argmax(vals))
        eff = GBIT_EDGE_EFFECTS[i]
        # of the two corners on the edge, the one closest to the state (first on ties)
        face = [c for c in GBIT_CORNERS if abs(eff @ c - 1.0) < 1e-12]
        corner = min(face, key=lambda c: float(np.max(np.abs(c - coords))))
        return float(vals[i]), eff.copy(), corner.copy()

    def unit_effects_of(self, coords) -> list[np.ndarray]:
        return [e.copy() for e in GBIT_EDGE_EFFECTS if abs(e @ coords - 1.0) <= tol().clamp]

    def dagger_coords(self, coords):
        hits = self.unit_effects_of(coords)
        if len(hits) != 1:
            raise DaggerNotUnique(
                f"{len(hits)} extreme effects give probability 1 on {np.asarray(coords).tolist()}"
            )
        return hits[0]

    def completion(self, partial):
        idx = [self.corner_index(s) for s in partial]
        if len(set(idx)) != len(idx) or len(idx) > 2:
            raise NotDistinguishable(f"corners {idx} are not jointly distinguishable")
        if not idx:
            return [GBIT_CORNERS[0].copy(), GBIT_CORNERS[3].copy()]
        if len(idx) == 1:
            return [GBIT_CORNERS[idx[0]].copy(), GBIT_CORNERS[3 - idx[0]].copy()]
        return [GBIT_CORNERS[i].copy() for i in idx]

    def distinguishing_test(self, states):
        # Tests over {0, u, edge effects} suffice on the square: any perfectly
        # distinguishing effect for two corners can be taken to be an edge effect.
        n = len(states)
        if n == 0:
            return [self.unit_coords().copy()]
        candidates = [np.zeros(3), np.array([1.0, 0.0, 0.0])] + list(GBIT_EDGE_EFFECTS)
        u = np.array([1.0, 0.0, 0.0])
        t = tol().distinguish
        for combo in itertools.product(range(len(candidates)), repeat=n):
            effs = [candidates[k] for k in combo]
            if np.max(np.abs(sum(effs) - u)) > tol().test_sum:
                continue
            ok = all(
                abs(effs[j] @ states[i] - (1.0 if i == j else 0.0)) <= t
                for i in range(n)
                for j in range(n)
            )
            if ok:
                return [e.copy() for e in effs]
        return None

    def check_channel(self, matrix):
        m = np.asarray(matrix, dtype=float)
        if m.shape != (2, 2):
            raise DimensionMismatch(f"gbit channel must be a 2x2 symmetry of the square, got {m.shape}")
        if not any(np.array_equal(m, g) for g in GBIT_GROUP):
            raise InvalidChannel("gbit channel must be one of the eight symmetries of the square")
        return _frozen(m)

    def act(self, matrix, coords):
        out = np.empty(3)
        out[0] = coords[0]
        out[1:] = matrix @ coords[1:]
        return out

    def generators(self):
        return [_ROT.copy(), _FLIP.copy()]

    def random_reversible(self, rng):
        return GBIT_GROUP[int(rng.integers(8))].copy()

    def basis_change(self, src, dst):
        src = [np.asarray(s) for s in src]
        dst = [np.asarray(t) for t in dst]
        if len(src) != len(dst):
            return None
        for g in GBIT_GROUP:
            if all(np.max(np.abs(self.act(g, s) - t)) <= 1e-8 for s, t in zip(src, dst)):
                return g.copy()
        return None

    def random_state(self, rng):
        x, y = rng.uniform(-1.0, 1.0, size=2)
        return np.array([1.0, x, y])

    def random_pure(self, rng):
        return GBIT_CORNERS[int(rng.integers(4))].copy()


THEORIES = {"quantum_real": QuantumReal, "classical": Classical, "gbit": Gbit}


def make_theory(name: str, dim: int | None = None) -> TheoryModel:
    try:
        cls = THEORIES[name]
    except KeyError:
        raise UnsupportedTheory(f"unknown theory {name!r}; expected one of {sorted(THEORIES)}") from None
    if cls is Gbit:
        return Gbit() if dim is None else Gbit(dim)
    if dim is None:
        raise InvalidState(f"theory {name!r} requires a dimension")
    return cls(int(dim))


# ---------------------------------------------------------------------------
# Value types


@dataclass(frozen=True, eq=False)
class State:
    theory: TheoryModel
    coords: np.ndarray

    def __post_init__(self):
        arr = self.theory.coerce(self.coords)
        object.__setattr__(self, "coords", arr)
        viol = self.theory.cone_violation(arr)
        if viol > self.theory.cone_tolerance():
            raise InvalidState(f"coordinates lie outside the {self.theory.name} state cone by {viol:.3e}")
        n = self.norm
        if n > 1.0 + tol().normalization:
            raise InvalidState(f"state norm {n!r} exceeds 1")

    @property
    def norm(self) -> float:
        return float(np.vdot(self.theory.unit_coords(), self.coords))

    def is_normalized(self) -> bool:
        return abs(self.norm - 1.0) <= tol().normalization

    def is_pure(self) -> bool:
        return self.is_normalized() and self.theory.purity_defect(self.coords) <= tol().purity

    def distance(self, other: "State") -> float:
        _same(self.theory, other.theory)
        return float(np.max(np.abs(self.coords - other.coords)))

    def __repr__(self):
        return f"State({self.theory.name}, dim={self.theory.dim}, {self.coords.tolist()})"


@dataclass(frozen=True, eq=False)
class Effect:
    theory: TheoryModel
    coords: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "coords", self.theory.coerce(self.coords))

    def distance(self, other: "Effect") -> float:
        _same(self.theory, other.theory)
        return float(np.max(np.abs(self.coords - other.coords)))

    def __repr__(self):
        return f"Effect({self.theory.name}, dim={self.theory.dim}, {self.coords.tolist()})"


@dataclass(frozen=True, eq=False)
class ReversibleChannel:
    theory: TheoryModel
    matrix: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "matrix", self.theory.check_channel(self.matrix))

    @classmethod
    def identity(cls, theory: TheoryModel) -> "ReversibleChannel":
        n = 2 if isinstance(theory, Gbit) else theory.dim
        return cls(theory, np.eye(n))

    def inverse(self) -> "ReversibleChannel":
        return ReversibleChannel(self.theory, self.matrix.T)

    def compose(self, first: "ReversibleChannel") -> "ReversibleChannel":
        """The channel applying ``first`` and then ``self``."""
        _same(self.theory, first.theory)
        m = self.matrix @ first.matrix
        if not isinstance(self.theory, QuantumReal):
            m = np.rint(m)
        return ReversibleChannel(self.theory, m)

    def __call__(self, state: State) -> State:
        return apply_channel(self, state)


@dataclass(frozen=True, eq=False)
class ObservationTest:
    effects: tuple[Effect, ...] = field(default_factory=tuple)

    def __post_init__(self):
        effs = tuple(self.effects)
        object.__setattr__(self, "effects", effs)
        if not is_observation_test(list(effs)):
            raise OutOfRange("effects do not form an observation-test")

    def __len__(self):
        return len(self.effects)

    def probabilities(self, state: State) -> np.ndarray:
        return np.array([pair(a, state) for a in self.effects])


def _same(t1: TheoryModel, t2: TheoryModel):
    if t1 != t2:
        raise DimensionMismatch(f"theory mismatch: {t1} vs {t2}")


def _require_normalized(state: State):
    if not state.is_normalized():
        raise NotNormalized(f"state norm {state.norm!r} differs from 1")


# ---------------------------------------------------------------------------
# Operations


def pair(a: Effect, rho: State) -> float:
    """The probability ``(a|rho)``, clamped into [0, 1] within the clamp band."""
    _same(a.theory, rho.theory)
    value = float(np.vdot(a.coords, rho.coords))
    band = tol().clamp
    if value < -band or value > 1.0 + band:
        raise OutOfRange(f"pairing {value!r} outside [0, 1]")
    return min(max(value, 0.0), 1.0)


def deterministic_effect(theory: TheoryModel) -> Effect:
    return Effect(theory, theory.unit_coords())


def invariant_state(theory: TheoryModel) -> State:
    return State(theory, theory.invariant_coords())


def apply_channel(channel: ReversibleChannel, rho: State) -> State:
    _same(channel.theory, rho.theory)
    return State(rho.theory, rho.theory.act(channel.matrix, rho.coords))


def maximize_pure_effect(rho: State) -> tuple[float, Effect, State]:
    """Largest probability a normalized pure effect assigns to ``rho``.

    Returns ``(p_star, a_star, alpha_star)`` where ``alpha_star`` is a pure
    state on which ``a_star`` occurs with certainty. On the gbit the latter is
    not unique; the first corner in the fixed corner order is returned.
    """
    _require_normalized(rho)
    th = rho.theory
    p, eff, st = th.top_pure_effect(rho.coords)
    return min(max(p, 0.0), 1.0), Effect(th, eff), State(th, st)


def dagger(alpha: State) -> Effect:
    """The pure effect occurring with certainty on the pure state ``alpha``."""
    if not alpha.is_pure():
        raise NotPure(f"{alpha!r} is not a pure state")
    return Effect(alpha.theory, alpha.theory.dagger_coords(alpha.coords))


def is_observation_test(effects: Sequence[Effect]) -> bool:
    if not effects:
        raise DimensionMismatch("an observation-test needs at least one effect")
    th = effects[0].theory
    for a in effects:
        _same(th, a.theory)
    total = np.sum([a.coords for a in effects], axis=0)
    if np.max(np.abs(total - th.unit_coords())) > tol().test_sum:
        return False
    band = tol().clamp
    for a in effects:
        lo, hi = th.effect_range(a.coords)
        if lo < -band or hi > 1.0 + band:
            return False
    return True


def complete_to_maximal(partial: Sequence[State], theory: TheoryModel) -> list[State]:
    """Extend pairwise distinguishable pure states to a maximal set.

    Quantum completion runs Gram-Schmidt over the canonical basis in index
    order; classical completion appends the missing vertices in index order.
    """
    for s in partial:
        _same(theory, s.theory)
        if not s.is_pure():
            raise NotPure(f"{s!r} is not pure")
    full = theory.completion([s.coords for s in partial])
    return list(partial) + [State(theory, c) for c in full[len(partial):]]
