import itertools
from fractions import Fraction

import numpy as np
import pytest
from scipy.optimize import nnls

from gpt_spectra import Classical, Gbit, QuantumReal, State
from gpt_spectra.gpt import random_orthogonal


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


def random_state(theory, rng):
    return State(theory, theory.random_state(rng))


def quantum_with_spectrum(values, seed):
    d = len(values)
    o = random_orthogonal(d, np.random.default_rng(seed))
    return State(QuantumReal(d), o @ np.diag(values) @ o.T)


def rational_spectra(d, max_den=6):
    """All non-increasing probability vectors of length d with denominator <= max_den."""
    seen = set()
    for den in range(1, max_den + 1):
        for parts in itertools.combinations_with_replacement(range(den + 1), d):
            if sum(parts) == den:
                seen.add(tuple(sorted((Fraction(k, den) for k in parts), reverse=True)))
    return sorted(seen)


def rational_vectors(d, max_den=6):
    """All probability vectors (any order) of length d with denominator <= max_den."""
    seen = set()
    for den in range(1, max_den + 1):
        for parts in itertools.product(range(den + 1), repeat=d):
            if sum(parts) == den:
                seen.add(tuple(Fraction(k, den) for k in parts))
    return sorted(seen)


def in_permutation_hull(p, q, tol=1e-9):
    """Brute force: is p a convex combination of the d! rearrangements of q?

    Solves the feasibility problem with nonnegative least squares over all
    permutations, with the weights constrained to sum to one.
    """
    p = np.asarray(p, dtype=float)
    q = np.asarray(q, dtype=float)
    cols = [q[list(perm)] for perm in itertools.permutations(range(q.size))]
    a = np.vstack([np.column_stack(cols), np.ones(len(cols))])
    b = np.concatenate([p, [1.0]])
    _, residual = nnls(a, b)
    return residual <= tol


def random_doubly_stochastic(d, rng, n_perms=None):
    n = n_perms or int(rng.integers(1, 2 * d + 2))
    w = rng.uniform(size=n)
    m = np.zeros((d, d))
    for wk in w:
        m[np.arange(d), rng.permutation(d)] += wk
    return m / w.sum()


THEORIES = [QuantumReal(1), QuantumReal(2), QuantumReal(3), QuantumReal(5), Classical(1), Classical(2), Classical(4), Gbit()]
