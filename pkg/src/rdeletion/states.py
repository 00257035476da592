"""Qubit conventions, standard-state families and their sampling."""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass
from pathlib import Path
from typing import Sequence

import numpy as np

from .errors import ParameterError, ShapeError
from .linalg import NORM_TOL, DensityMatrix, StateVector, basis_state
from .rng import RngStream

H = basis_state(0, 2)
V = basis_state(1, 2)
PLUS = StateVector(np.array([1, 1]) / np.sqrt(2))
MINUS = StateVector(np.array([1, -1]) / np.sqrt(2))

ANCILLA_DIM = 3
A_READY = basis_state(0, ANCILLA_DIM)
A_H = basis_state(1, ANCILLA_DIM)
A_V = basis_state(2, ANCILLA_DIM)


def qubit(alpha: complex, beta: complex) -> StateVector:
    return StateVector([alpha, beta])


@dataclass(frozen=True)
class FamilyMember:
    label: str
    state: StateVector
    prob: float


@dataclass(frozen=True)
class StateFamily:
    """Either a finite list of labeled pure qubit states or the Haar family."""

    kind: str
    members: tuple[FamilyMember, ...] = ()

    def __post_init__(self):
        if self.kind not in ("discrete", "haar"):
            raise ParameterError(f"unknown family kind {self.kind!r}")
        if self.kind == "haar":
            if self.members:
                raise ParameterError("haar family takes no members")
            return
        if not self.members:
            raise ParameterError("discrete family needs at least one member")
        labels = [m.label for m in self.members]
        if len(set(labels)) != len(labels):
            raise ParameterError(f"duplicate family labels in {labels}")
        for m in self.members:
            if m.state.dims != (2,):
                raise ShapeError(f"member {m.label!r} is not a qubit state")
            if not m.state.is_normalized(NORM_TOL):
                raise ParameterError(f"member {m.label!r} is not normalized (norm {m.state.norm()!r})")
            if m.prob < 0:
                raise ParameterError(f"member {m.label!r} has negative probability")
        total = sum(m.prob for m in self.members)
        if abs(total - 1.0) > NORM_TOL:
            raise ParameterError(f"family probabilities sum to {total!r}, not 1")

    @classmethod
    def discrete(cls, states: Sequence[tuple[str, StateVector]], probs: Sequence[float] | None = None) -> "StateFamily":
        """Build a discrete family; uniform probabilities when ``probs`` is omitted."""
        if probs is None:
            probs = [1.0 / len(states)] * len(states) if states else []
        if len(probs) != len(states):
            raise ParameterError("one probability per member required")
        return cls("discrete", tuple(FamilyMember(lbl, s, float(p)) for (lbl, s), p in zip(states, probs)))

    @classmethod
    def haar(cls) -> "StateFamily":
        return cls("haar")

    @classmethod
    def singleton(cls, state: StateVector, label: str = "Sigma") -> "StateFamily":
        return cls.discrete([(label, state)], [1.0])

    @property
    def is_discrete(self) -> bool:
        return self.kind == "discrete"

    @property
    def size(self) -> int | None:
        return len(self.members) if self.is_discrete else None

    def probabilities(self) -> np.ndarray:
        return np.array([m.prob for m in self.members])

    def descriptor(self) -> dict:
        return family_to_json(self)


def hv_family() -> StateFamily:
    return StateFamily.discrete([("H", H), ("V", V)])


def zero_plus_family() -> StateFamily:
    return StateFamily.discrete([("0", H), ("+", PLUS)])


def haar_state(rng: RngStream) -> StateVector:
    """Haar-random qubit: two standard complex Gaussians, normalized."""
    z = rng.complex_normal(2)
    return StateVector(z / np.linalg.norm(z))


def _haar_label(state: StateVector) -> str:
    return "haar:" + hashlib.blake2b(state.amps.tobytes(), digest_size=4).hexdigest()


def sample_standard_state(family: StateFamily, rng: RngStream) -> tuple[str, StateVector]:
    if family.is_discrete:
        if len(family.members) == 1:
            m = family.members[0]
        else:
            m = family.members[rng.choice(family.probabilities())]
        return m.label, m.state
    s = haar_state(rng)
    return _haar_label(s), s


def family_average(family: StateFamily) -> DensityMatrix:
    """sum_i p_i |S_i><S_i|; the Haar family averages to I/2 exactly."""
    if not family.is_discrete:
        return DensityMatrix.maximally_mixed(2)
    data = sum(m.prob * np.outer(m.state.amps, m.state.amps.conj()) for m in family.members)
    return DensityMatrix(data)


# -- JSON family format ------------------------------------------------------

def _amps_to_json(amps: np.ndarray) -> list[list[float]]:
    return [[float(a.real), float(a.imag)] for a in amps]


def _amps_from_json(raw) -> np.ndarray:
    try:
        return np.array([complex(float(re), float(im)) for re, im in raw])
    except (TypeError, ValueError) as exc:
        raise ParameterError(f"amplitudes must be [[re, im], ...], got {raw!r}") from exc


def family_to_json(family: StateFamily) -> dict:
    if not family.is_discrete:
        return {"kind": "haar"}
    return {
        "kind": "discrete",
        "members": [{"label": m.label, "amps": _amps_to_json(m.state.amps), "prob": m.prob} for m in family.members],
    }


def family_from_json(obj: dict) -> StateFamily:
    if not isinstance(obj, dict) or "kind" not in obj:
        raise ParameterError("family JSON must be an object with a 'kind' field")
    if obj["kind"] == "haar":
        return StateFamily.haar()
    if obj["kind"] != "discrete":
        raise ParameterError(f"unknown family kind {obj['kind']!r}")
    members = obj.get("members") or []
    if not isinstance(members, list) or not members:
        raise ParameterError("discrete family needs a non-empty 'members' list")
    states = []
    probs = []
    for i, m in enumerate(members):
        states.append((str(m.get("label", f"s{i + 1}")), StateVector(_amps_from_json(m["amps"]))))
        probs.append(m.get("prob"))
    if all(p is None for p in probs):
        return StateFamily.discrete(states)
    if any(p is None for p in probs):
        raise ParameterError("give a 'prob' for every member or for none")
    return StateFamily.discrete(states, [float(p) for p in probs])


PRESETS = {
    "hv": hv_family,
    "haar": StateFamily.haar,
    "zero-plus": zero_plus_family,
    "singleton": lambda: StateFamily.singleton(H, "H"),
}


def load_family(spec: str | None) -> StateFamily:
    """Resolve a preset name, inline JSON, or a path to a JSON file."""
    if spec is None:
        return hv_family()
    if spec in PRESETS:
        return PRESETS[spec]()
    text = spec
    if not spec.lstrip().startswith("{"):
        path = Path(spec)
        if not path.is_file():
            raise ParameterError(f"family {spec!r} is neither a preset ({', '.join(PRESETS)}), inline JSON, nor a file")
        text = path.read_text()
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParameterError(f"invalid family JSON: {exc}") from exc
    return family_from_json(obj)
