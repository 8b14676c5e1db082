#!/usr/bin/env python3
"""Run the square-state-space (gbit) negative controls and print what fires.

The gbit is a model where pure effects are certain on whole edges, so the
diagonalization machinery has no unique dagger to work with. This script shows
the axiom report, the peeling of (1, 0.5, 0.5) and the resulting error.

    python scripts/gbit_controls.py
"""

from __future__ import annotations

import json

from gpt_spectra import Gbit, State, diagonalize, peel
from gpt_spectra.axioms import build_report, gbit_maximal_sets
from gpt_spectra.errors import GPTError


def main():
    g = Gbit()
    report = build_report(g, trials=10, seed=0)
    print("axiom report")
    for c in report.checks:
        print(f"  {c.name:24s} {c.verdict:13s} {json.dumps(c.witness)}")

    print(f"\nmaximal distinguishable corner pairs: {sorted({tuple(sorted(s)) for s in gbit_maximal_sets()})}")

    rho = State(g, [1.0, 0.5, 0.5])
    step = peel(rho)
    print(f"\npeel of {rho.coords.tolist()}: p* = {step.p_star}, alpha = {step.alpha.coords.tolist()}, "
          f"residual = {None if step.residual is None else step.residual.coords.tolist()}")
    try:
        diagonalize(rho)
        print("diagonalize: unexpectedly succeeded")
    except GPTError as exc:
        print(f"diagonalize: {exc.code}: {exc}")


if __name__ == "__main__":
    main()
