"""Operational diagonalization and majorization in finite probabilistic theories."""

from .config import Tolerances, tol, use_tolerances
from .gpt import (
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
from .majorize import (
    BirkhoffDecomposition,
    Spectrum,
    birkhoff,
    is_doubly_stochastic,
    majorizes,
    transfer_matrix,
    transition_matrix,
)
from .purity import (
    ConvertibilityCertificate,
    RaReChannel,
    Verdict,
    apply_rare,
    is_more_mixed,
    random_rare,
    synthesize_rare,
)
from .spectral import Diagonalization, diagonalize, eigensolve_symmetric, p_star, peel, verify_distinguishable

__version__ = "0.1.0"
