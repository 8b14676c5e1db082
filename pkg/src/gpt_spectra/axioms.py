"""Executable checks of the axioms' finite-dimensional consequences.

Each check returns a ``CheckResult`` with verdict ``"pass"``, ``"fail"`` or
``"inapplicable"`` plus JSON-friendly witness data. The gbit is expected to
fail some of them; those failures are negative controls, not bugs.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

import numpy as np

from .config import tol
from .errors import GPTError
from .gpt import (
    GBIT_CORNERS,
    GBIT_EDGE_EFFECTS,
    Classical,
    Effect,
    Gbit,
    QuantumReal,
    State,
    TheoryModel,
    dagger,
    deterministic_effect,
    invariant_state,
    pair,
    random_orthogonal,
)

PASS, FAIL, INAPPLICABLE = "pass", "fail", "inapplicable"


@dataclass(frozen=True)
class CheckResult:
    name: str
    verdict: str
    witness: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        return {"name": self.name, "verdict": self.verdict, "witness": self.witness}


@dataclass(frozen=True)
class AxiomReport:
    model: str
    dim: int
    seed: int
    checks: tuple[CheckResult, ...]

    @property
    def failures(self) -> list[CheckResult]:
        return [c for c in self.checks if c.verdict == FAIL]

    def __getitem__(self, name: str) -> CheckResult:
        for c in self.checks:
            if c.name == name:
                return c
        raise KeyError(name)

    def to_json(self) -> dict:
        return {
            "model": self.model,
            "dim": self.dim,
            "seed": self.seed,
            "checks": [c.to_json() for c in self.checks],
        }


def _canonical_pure(theory: TheoryModel) -> State:
    return State(theory, theory.completion([])[0])


def _random_maximal_set(theory: TheoryModel, rng: np.random.Generator) -> list[State]:
    if isinstance(theory, QuantumReal):
        o = random_orthogonal(theory.dim, rng)
        return [State(theory, np.outer(o[:, i], o[:, i])) for i in range(theory.dim)]
    if isinstance(theory, Classical):
        return [State(theory, np.eye(theory.dim)[i]) for i in rng.permutation(theory.dim)]
    sets = gbit_maximal_sets()
    a, b = sets[int(rng.integers(len(sets)))]
    return [State(theory, GBIT_CORNERS[a]), State(theory, GBIT_CORNERS[b])]


def gbit_maximal_sets() -> list[tuple[int, ...]]:
    """Ordered maximal perfectly distinguishable corner tuples of the square."""
    th = Gbit()
    distinguishable = []
    for r in range(1, 5):
        for subset in itertools.combinations(range(4), r):
            if th.distinguishing_test([GBIT_CORNERS[i] for i in subset]) is not None:
                distinguishable.append(set(subset))
    maximal = [s for s in distinguishable if not any(s < t for t in distinguishable)]
    out = []
    for s in maximal:
        out.extend(itertools.permutations(sorted(s)))
    return out


# ---------------------------------------------------------------------------


def check_causality(theory: TheoryModel, trials: int = 20, seed: int = 0) -> CheckResult:
    """The deterministic effect is 1 on every normalized state and is unique.

    Uniqueness follows when normalized states span the whole linear space.
    """
    rng = np.random.default_rng(seed)
    u = deterministic_effect(theory)
    samples = [State(theory, theory.random_state(rng)) for _ in range(max(trials, theory.dim_linear * 3))]
    samples += [State(theory, theory.random_pure(rng)) for _ in range(trials)]
    worst = max(abs(pair(u, s) - 1.0) for s in samples)
    flat = np.array([s.coords.reshape(-1) for s in samples])
    rank = int(np.linalg.matrix_rank(flat, tol=1e-8))
    ok = worst <= tol().normalization and rank == theory.dim_linear
    return CheckResult(
        "causality",
        PASS if ok else FAIL,
        {"max_deviation": worst, "span_rank": rank, "dim_linear": theory.dim_linear},
    )


def check_pure_sharpness(theory: TheoryModel) -> CheckResult:
    alpha = _canonical_pure(theory)
    p, eff, _ = theory.top_pure_effect(alpha.coords)
    a = Effect(theory, eff)
    value = pair(a, alpha)
    ok = abs(value - 1.0) <= tol().clamp
    return CheckResult(
        "pure_sharpness",
        PASS if ok else FAIL,
        {"effect": a.coords.tolist(), "state": alpha.coords.tolist(), "probability": value},
    )


def check_unit_state_uniqueness(theory: TheoryModel, trials: int = 10, seed: int = 0) -> CheckResult:
    """Every pure effect is certain on exactly one state (a single pure state)."""
    name = "unit_state_uniqueness"
    if isinstance(theory, Gbit):
        for eff in GBIT_EDGE_EFFECTS:
            corners = [c for c in GBIT_CORNERS if abs(eff @ c - 1.0) <= tol().clamp]
            if len(corners) != 1:
                return CheckResult(
                    name,
                    FAIL,
                    {
                        "effect": eff.tolist(),
                        "unit_states": [c.tolist() for c in corners],
                        "face": "edge {(1, x, y) : " + _edge_text(eff) + "}",
                    },
                )
        return CheckResult(name, PASS, {})

    if isinstance(theory, Classical):
        for i in range(theory.dim):
            eff = np.eye(theory.dim)[i]
            hits = [j for j in range(theory.dim) if abs(eff[j] - 1.0) <= tol().clamp]
            if len(hits) != 1:
                return CheckResult(name, FAIL, {"effect": eff.tolist(), "unit_vertices": hits})
        return CheckResult(name, PASS, {"effects_checked": theory.dim})

    rng = np.random.default_rng(seed)
    effects = [np.outer(e, e) for e in np.eye(theory.dim)]
    for _ in range(trials):
        v = rng.standard_normal(theory.dim)
        v /= np.linalg.norm(v)
        effects.append(np.outer(v, v))
    for eff in effects:
        w, vecs = np.linalg.eigh(eff)
        unit = vecs[:, np.abs(w - 1.0) <= 1e-10]
        k = unit.shape[1]
        face_dim = k * (k + 1) // 2 - 1
        if face_dim != 0:
            return CheckResult(name, FAIL, {"effect": eff.tolist(), "face_dimension": face_dim})
        state = np.outer(unit[:, 0], unit[:, 0])
        if np.max(np.abs(state - eff)) > tol().purity:
            return CheckResult(name, FAIL, {"effect": eff.tolist(), "unit_state": state.tolist()})
    return CheckResult(name, PASS, {"effects_checked": len(effects)})


def _edge_text(eff: np.ndarray) -> str:
    if eff[1] != 0:
        return f"x = {int(np.sign(eff[1]))}, y in [-1, 1]"
    return f"y = {int(np.sign(eff[2]))}, x in [-1, 1]"


def check_invariant_spectrum(theory: TheoryModel) -> CheckResult:
    from .spectral import diagonalize

    name = "invariant_spectrum"
    if not theory.has_unique_dagger:
        return CheckResult(name, INAPPLICABLE, {"reason": "diagonalization undefined without a unique dagger"})
    try:
        diag = diagonalize(invariant_state(theory))
    except GPTError as exc:
        return CheckResult(name, FAIL, {"error": exc.code, "message": str(exc)})
    p = diag.padded(theory.dim_operational)
    worst = float(np.max(np.abs(p - 1.0 / theory.dim_operational)))
    ok = worst <= 1e-10 and diag.steps == theory.dim_operational
    return CheckResult(name, PASS if ok else FAIL, {"eigenvalues": p.tolist(), "max_deviation": worst})


def check_strong_symmetry(theory: TheoryModel, trials: int = 20, seed: int = 0) -> CheckResult:
    """Reversible channels act transitively on maximal pure distinguishable sets."""
    name = "strong_symmetry"
    t = tol().distinguish
    if isinstance(theory, Gbit):
        sets = gbit_maximal_sets()
        for a, b in itertools.product(sets, repeat=2):
            src = [GBIT_CORNERS[i] for i in a]
            dst = [GBIT_CORNERS[i] for i in b]
            if theory.basis_change(src, dst) is None:
                return CheckResult(
                    name,
                    FAIL,
                    {
                        "from": [c.tolist() for c in src],
                        "to": [c.tolist() for c in dst],
                        "maximal_sets": len(sets),
                    },
                )
        return CheckResult(name, PASS, {"maximal_sets": len(sets)})

    rng = np.random.default_rng(seed)
    worst = 0.0
    for _ in range(trials):
        psi = _random_maximal_set(theory, rng)
        phi = _random_maximal_set(theory, rng)
        m = theory.basis_change([s.coords for s in phi], [s.coords for s in psi])
        if m is None:
            return CheckResult(name, FAIL, {"from": [s.coords.tolist() for s in phi]})
        for f, s in zip(phi, psi):
            worst = max(worst, float(np.max(np.abs(theory.act(m, f.coords) - s.coords))))
    return CheckResult(name, PASS if worst <= t else FAIL, {"trials": trials, "max_error": worst})


def check_maximal_test_purity(theory: TheoryModel, trials: int = 20, seed: int = 0) -> CheckResult:
    """Daggers of a maximal set sum to u and distinguish it perfectly."""
    name = "maximal_test_purity"
    if not theory.has_unique_dagger:
        return CheckResult(name, INAPPLICABLE, {"reason": "no unique dagger"})
    rng = np.random.default_rng(seed)
    canonical = [State(theory, c) for c in theory.completion([])]
    sets = [canonical] + [_random_maximal_set(theory, rng) for _ in range(trials)]
    u = theory.unit_coords()
    worst_sum = worst_delta = 0.0
    for states in sets:
        daggers = [dagger(s) for s in states]
        total = np.sum([a.coords for a in daggers], axis=0)
        worst_sum = max(worst_sum, float(np.max(np.abs(total - u))))
        for i, a in enumerate(daggers):
            for j, s in enumerate(states):
                worst_delta = max(worst_delta, abs(float(np.vdot(a.coords, s.coords)) - (i == j)))
    ok = worst_sum <= tol().test_sum and worst_delta <= tol().distinguish
    return CheckResult(
        name,
        PASS if ok else FAIL,
        {"sets": len(sets), "max_sum_error": worst_sum, "max_delta_error": worst_delta},
    )


def check_purification(theory: TheoryModel, trials: int = 20, seed: int = 0) -> CheckResult:
    name = "purification"
    if not theory.has_purification:
        return CheckResult(name, INAPPLICABLE, {"reason": "not checked: known absent"})
    from .purify import purify

    rng = np.random.default_rng(seed)
    worst = 0.0
    for _ in range(trials):
        rho = State(theory, theory.random_state(rng))
        worst = max(worst, float(np.max(np.abs(purify(rho).marginal_a().coords - rho.coords))))
    return CheckResult(name, PASS if worst <= tol().cone else FAIL, {"trials": trials, "max_marginal_error": worst})


def check_purity_preservation(theory: TheoryModel) -> CheckResult:
    return CheckResult("purity_preservation", INAPPLICABLE, {"reason": "assumed by model construction"})


def build_report(theory: TheoryModel, trials: int = 20, seed: int = 0) -> AxiomReport:
    checks = (
        check_causality(theory, trials, seed),
        check_purity_preservation(theory),
        check_purification(theory, trials, seed),
        check_pure_sharpness(theory),
        check_unit_state_uniqueness(theory, trials, seed),
        check_invariant_spectrum(theory),
        check_strong_symmetry(theory, trials, seed),
        check_maximal_test_purity(theory, trials, seed),
    )
    return AxiomReport(theory.name, theory.dim, seed, checks)
