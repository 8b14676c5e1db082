#!/usr/bin/env python3
"""Sweep random RaRe channels and record how much each one mixes its input.

For every trial a random state and a random mixture of reversible channels are
drawn; the script records the smallest slack between the partial sums of the
input spectrum and those of the output spectrum. A negative slack would be a
counterexample to majorization; the summary reports the minimum per dimension.

    python scripts/necessity_sweep.py --model quantum_real --max-dim 5 --trials 200 --seed 0
"""

from __future__ import annotations

import argparse
import json
from dataclasses import asdict, dataclass

import numpy as np

from gpt_spectra import State, make_theory, random_rare
from gpt_spectra.majorize import partial_sums
from gpt_spectra.spectral import spectrum


@dataclass
class SweepConfig:
    model: str = "quantum_real"
    max_dim: int = 5
    trials: int = 200
    max_terms: int = 5
    seed: int = 0


def run(cfg: SweepConfig) -> dict:
    rng = np.random.default_rng(cfg.seed)
    rows = []
    for d in range(1, cfg.max_dim + 1):
        th = make_theory(cfg.model, d)
        slacks = []
        for _ in range(cfg.trials):
            sigma = State(th, th.random_state(rng))
            r = random_rare(th, int(rng.integers(1, cfg.max_terms + 1)), int(rng.integers(2**32)))
            q, p = spectrum(sigma), spectrum(r(sigma))
            # the last partial sums are both 1; the slack lives in the first d - 1
            gap = (partial_sums(q) - partial_sums(p))[:-1]
            slacks.append(float(gap.min()) if gap.size else 0.0)
        rows.append(
            {
                "dim": d,
                "min_slack": min(slacks),
                "median_slack": float(np.median(slacks)),
                "counterexamples": sum(s < -1e-9 for s in slacks),
            }
        )
    return {"config": asdict(cfg), "rows": rows}


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--model", choices=["quantum_real", "classical"], default="quantum_real")
    ap.add_argument("--max-dim", type=int, default=5)
    ap.add_argument("--trials", type=int, default=200)
    ap.add_argument("--max-terms", type=int, default=5)
    ap.add_argument("--seed", type=int, required=True)
    args = ap.parse_args()
    cfg = SweepConfig(args.model, args.max_dim, args.trials, args.max_terms, args.seed)
    print(json.dumps(run(cfg), indent=2))


if __name__ == "__main__":
    main()
