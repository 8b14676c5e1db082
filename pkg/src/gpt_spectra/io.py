"""JSON encoding of states, channels and results.

State files look like ``{"theory": "quantum_real", "dim": 2, "data": [[...]]}``.
Every file written here also carries ``"schema": 1``. Floats are written with
Python's shortest round-trip repr, so re-parsing recovers the exact double.
"""

from __future__ import annotations

import json
from pathlib import Path

import numpy as np

from .errors import InputError
from .gpt import Effect, ReversibleChannel, State, TheoryModel, make_theory
from .purity import RaReChannel
from .spectral import Diagonalization

SCHEMA = 1


class InvalidInput(InputError):
    pass


def dumps(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True, allow_nan=False) + "\n"


def write_json(obj, path: str | Path | None) -> str:
    text = dumps(obj)
    if path is None:
        print(text, end="")
    else:
        Path(path).write_text(text, encoding="utf-8")
    return text


def read_json(path: str | Path):
    try:
        return json.loads(Path(path).read_text(encoding="utf-8"))
    except FileNotFoundError:
        raise InvalidInput(f"no such file: {path}") from None
    except json.JSONDecodeError as exc:
        raise InvalidInput(f"{path}: invalid JSON ({exc})") from None


def _theory_of(obj: dict) -> TheoryModel:
    try:
        return make_theory(obj["theory"], obj.get("dim"))
    except KeyError as exc:
        raise InvalidInput(f"missing key {exc}") from None


def state_to_json(state: State) -> dict:
    th = state.theory
    return {"schema": SCHEMA, "theory": th.name, "dim": th.dim, "data": th.to_json_data(state.coords)}


def state_from_json(obj) -> State:
    if not isinstance(obj, dict) or "data" not in obj:
        raise InvalidInput("state file needs 'theory', 'dim' and 'data'")
    return State(_theory_of(obj), np.asarray(obj["data"], dtype=float))


def effect_to_json(effect: Effect) -> dict:
    th = effect.theory
    return {"schema": SCHEMA, "theory": th.name, "dim": th.dim, "data": th.to_json_data(effect.coords)}


def effect_from_json(obj) -> Effect:
    return Effect(_theory_of(obj), np.asarray(obj["data"], dtype=float))


def channel_to_json(channel: ReversibleChannel) -> dict:
    return {"orthogonal": channel.matrix.tolist()}


def rare_to_json(r: RaReChannel) -> dict:
    th = r.theory
    return {
        "schema": SCHEMA,
        "theory": th.name,
        "dim": th.dim,
        "weights": r.weights.tolist(),
        "channels": [channel_to_json(c) for c in r.channels],
    }


def rare_from_json(obj) -> RaReChannel:
    th = _theory_of(obj)
    try:
        chans = tuple(ReversibleChannel(th, np.asarray(c["orthogonal"], dtype=float)) for c in obj["channels"])
        return RaReChannel(np.asarray(obj["weights"], dtype=float), chans)
    except (KeyError, TypeError) as exc:
        raise InvalidInput(f"malformed channel file: {exc}") from None


def diagonalization_to_json(diag: Diagonalization) -> dict:
    th = diag.pure_states[0].theory
    return {
        "schema": SCHEMA,
        "theory": th.name,
        "dim": th.dim,
        "eigenvalues": diag.eigenvalues.tolist(),
        "pure_states": [th.to_json_data(s.coords) for s in diag.pure_states],
        "test_effects": [th.to_json_data(e.coords) for e in diag.test_effects],
        "reconstruction_error": diag.reconstruction_error,
        "steps": diag.steps,
    }


def matrix_from_json(obj) -> np.ndarray:
    if isinstance(obj, dict):
        obj = obj.get("matrix", obj.get("data"))
    m = np.asarray(obj, dtype=float)
    if m.ndim != 2:
        raise InvalidInput("expected a matrix (nested list or {'matrix': ...})")
    return m


def values_from_json(obj) -> np.ndarray:
    if isinstance(obj, dict):
        for key in ("values", "eigenvalues", "spectrum", "data"):
            if key in obj:
                obj = obj[key]
                break
        else:
            raise InvalidInput("spectrum file needs 'values'")
    v = np.asarray(obj, dtype=float)
    if v.ndim != 1:
        raise InvalidInput("spectrum must be a flat list of numbers")
    return v
