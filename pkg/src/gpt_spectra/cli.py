"""Command-line front end.

Exit codes: 0 success or positive verdict, 1 negative verdict, 2 input
error, 3 numerical failure. Errors are reported on stderr as
``error[<Code>]: <message>``.
"""

from __future__ import annotations

import argparse
import sys

import numpy as np

from . import io
from .axioms import FAIL, build_report
from .config import tol, use_tolerances
from .errors import GPTError, InputError, NumericalFailure
from .gpt import make_theory
from .majorize import Spectrum, birkhoff, first_violation, partial_sums
from .purify import purify, steer, steering_error
from .purity import RaReChannel, Verdict, apply_rare, is_more_mixed
from .spectral import diagonalize

EXIT_OK, EXIT_NEGATIVE, EXIT_INPUT, EXIT_NUMERICAL = 0, 1, 2, 3


def cmd_diagonalize(args) -> int:
    rho = io.state_from_json(io.read_json(args.inp))
    io.write_json(io.diagonalization_to_json(diagonalize(rho)), args.out)
    return EXIT_OK


def cmd_majorize(args) -> int:
    p = io.values_from_json(io.read_json(args.p))
    q = io.values_from_json(io.read_json(args.q))
    d = max(p.size, q.size)
    ps, qs = Spectrum.from_unsorted(p, d), Spectrum.from_unsorted(q, d)
    k = first_violation(qs, ps)
    out = {
        "schema": io.SCHEMA,
        "q_majorizes_p": k is None,
        "partial_sums": {"p": partial_sums(ps).tolist(), "q": partial_sums(qs).tolist()},
        "violating_index": k,
    }
    io.write_json(out, args.out)
    return EXIT_OK if k is None else EXIT_NEGATIVE


def cmd_convert(args) -> int:
    sigma = io.state_from_json(io.read_json(args.src))
    rho = io.state_from_json(io.read_json(args.dst))
    cert = is_more_mixed(rho, sigma)
    base = {"schema": io.SCHEMA, "verdict": cert.verdict.value, "p": cert.p.tolist(), "q": cert.q.tolist()}
    if cert.verdict is Verdict.NOT_MORE_MIXED:
        base["violating_index"] = cert.witness
        io.write_json(base, args.out)
        return EXIT_NEGATIVE
    r = cert.witness if isinstance(cert.witness, RaReChannel) else RaReChannel.single(cert.witness)
    out = io.rare_to_json(r)
    out.update(base)
    out["residual_error"] = float(np.max(np.abs(apply_rare(r, sigma).coords - rho.coords)))
    io.write_json(out, args.out)
    return EXIT_OK


def cmd_birkhoff(args) -> int:
    m = io.matrix_from_json(io.read_json(args.inp))
    dec = birkhoff(m)
    out = {
        "schema": io.SCHEMA,
        "weights": dec.weights.tolist(),
        "permutations": [list(p) for p in dec.permutations],
        "reconstruction_error": float(np.max(np.abs(dec.reconstruct() - m))),
    }
    io.write_json(out, args.out)
    return EXIT_OK


def cmd_check(args) -> int:
    theory = make_theory(args.theory, args.dim)
    report = build_report(theory, trials=args.trials, seed=args.seed)
    out = {"schema": io.SCHEMA, **report.to_json()}
    io.write_json(out, args.out)
    return EXIT_NEGATIVE if any(c.verdict == FAIL for c in report.checks) else EXIT_OK


def cmd_steer(args) -> int:
    rho = io.state_from_json(io.read_json(args.state))
    sigma = io.state_from_json(io.read_json(args.component))
    psi = purify(rho)
    b = steer(psi, sigma, args.weight)
    out = io.effect_to_json(b)
    out["reproduction_error"] = steering_error(psi, b, sigma, args.weight)
    out["weight"] = args.weight
    io.write_json(out, args.out)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--out", default=None, help="output JSON path (stdout if omitted)")
    common.add_argument(
        "--tol", type=float, default=None, help="multiply every numerical tolerance by this factor"
    )

    ap = argparse.ArgumentParser(prog="gpt-spectra", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("diagonalize", parents=[common], help="diagonalize a state by pure-effect peeling")
    p.add_argument("--in", dest="inp", required=True)
    p.set_defaults(func=cmd_diagonalize)

    p = sub.add_parser("majorize", parents=[common], help="test whether spectrum q majorizes spectrum p")
    p.add_argument("--p", required=True)
    p.add_argument("--q", required=True)
    p.set_defaults(func=cmd_majorize)

    p = sub.add_parser("convert", parents=[common], help="decide and certify sigma -> rho under RaRe channels")
    p.add_argument("--from", dest="src", required=True)
    p.add_argument("--to", dest="dst", required=True)
    p.set_defaults(func=cmd_convert)

    p = sub.add_parser("birkhoff", parents=[common], help="Birkhoff decomposition of a doubly stochastic matrix")
    p.add_argument("--in", dest="inp", required=True)
    p.set_defaults(func=cmd_birkhoff)

    p = sub.add_parser("check", parents=[common], help="run the axiom checks on a theory model")
    p.add_argument("--theory", required=True, choices=["quantum_real", "classical", "gbit"])
    p.add_argument("--dim", type=int, default=None)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--trials", type=int, default=20)
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("steer", parents=[common], help="steering effect preparing weight*component from a state")
    p.add_argument("--state", required=True)
    p.add_argument("--component", required=True)
    p.add_argument("--weight", type=float, required=True)
    p.set_defaults(func=cmd_steer)
    return ap


def run(argv=None) -> int:
    args = build_parser().parse_args(argv)
    record = tol() if args.tol is None else tol().scaled(args.tol)
    try:
        with use_tolerances(record):
            return args.func(args)
    except GPTError as exc:
        print(f"error[{exc.code}]: {exc}", file=sys.stderr)
        if isinstance(exc, NumericalFailure):
            return EXIT_NUMERICAL
        if isinstance(exc, InputError):
            return EXIT_INPUT
        return EXIT_NUMERICAL
    except (ValueError, TypeError, KeyError) as exc:
        print(f"error[InvalidInput]: {exc}", file=sys.stderr)
        return EXIT_INPUT


def main(argv=None):
    sys.exit(run(argv))


if __name__ == "__main__":
    main()
