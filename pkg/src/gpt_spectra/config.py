"""Numerical tolerances shared by every module.

All thresholds live in one frozen record. The active record is read from a
context variable, so a caller can scope an override without touching global
state. ``GPT_SPECTRA_TOL_SCALE`` multiplies every default at import time.
"""

from __future__ import annotations

import contextlib
import contextvars
import dataclasses
import os
from dataclasses import dataclass


@dataclass(frozen=True)
class Tolerances:
    # state cone membership (quantum eigenvalues, gbit coordinates)
    cone: float = 1e-10
    classical_cone: float = 1e-12
    gbit_cone: float = 1e-12
    # effect sums in an observation-test
    test_sum: float = 1e-9
    # pairing clamp band around [0, 1]
    clamp: float = 1e-10
    # second eigenvalue bound for a pure quantum state
    purity: float = 1e-8
    normalization: float = 1e-9
    distinguish: float = 1e-8
    reconstruction: float = 1e-8
    peel_stop: float = 1e-12
    jacobi_offdiag: float = 1e-12
    jacobi_reconstruction: float = 1e-10
    birkhoff_zero: float = 1e-10
    birkhoff_stop: float = 1e-9
    doubly_stochastic: float = 1e-9
    majorization: float = 1e-9
    spectrum_equal: float = 1e-9
    synthesis: float = 1e-8
    pinv_cutoff: float = 1e-10
    rank: float = 1e-10
    symmetric: float = 1e-12

    def scaled(self, factor: float) -> "Tolerances":
        if not factor > 0:
            raise ValueError(f"tolerance scale must be positive, got {factor}")
        return dataclasses.replace(
            self, **{f.name: getattr(self, f.name) * factor for f in dataclasses.fields(self)}
        )


def _from_env() -> Tolerances:
    raw = os.environ.get("GPT_SPECTRA_TOL_SCALE")
    if not raw:
        return Tolerances()
    return Tolerances().scaled(float(raw))


DEFAULT = _from_env()
_active: contextvars.ContextVar[Tolerances] = contextvars.ContextVar("gpt_spectra_tol", default=DEFAULT)


def tol() -> Tolerances:
    """Return the tolerance record in effect for the current context."""
    return _active.get()


@contextlib.contextmanager
def use_tolerances(record: Tolerances):
    token = _active.set(record)
    try:
        yield record
    finally:
        _active.reset(token)
