"""Quantum C-not, randomized deletion isometries and their averaged channel.

Output space layout is ``qubit (kept) ⊗ qubit (deleted slot) ⊗ ancilla(3)``
with ancilla basis ``|A>, |A_H>, |A_V>``. An isometry acts on the two-qubit
input with the ancilla fixed in the ready state ``|A>``; its 12x4 matrix has
one column per computational input ``|HH>, |HV>, |VH>, |VV>``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

from .errors import DomainError, ParameterError, ShapeError
from .linalg import (
    NORM_TOL,
    DensityMatrix,
    StateVector,
    eigendecompose,
    partial_trace,
    tensor,
)
from .rng import RngStream
from .states import A_H, A_V, ANCILLA_DIM, H, V, StateFamily, sample_standard_state

IN_DIMS = (2, 2)
OUT_DIMS = (2, 2, ANCILLA_DIM)
D_IN = 4
D_OUT = 12
MAX_EXACT_FAMILY = 8

CNOT = np.array(
    [[1, 0, 0, 0],
     [0, 1, 0, 0],
     [0, 0, 0, 1],
     [0, 0, 1, 0]],
    dtype=complex,
)


def cnot_quantum(s: StateVector) -> StateVector:
    if s.dims != IN_DIMS:
        raise ShapeError(f"C-not acts on two qubits, got dims {s.dims}")
    return StateVector(CNOT @ s.amps, IN_DIMS)


@dataclass(frozen=True)
class DeletionDraw:
    """Standard states used on inputs |HH>, |VV>, |HV>, |VH> respectively."""

    sigma2: tuple[str, StateVector]
    sigma3: tuple[str, StateVector]
    sigma4: tuple[str, StateVector]
    sigma5: tuple[str, StateVector]

    def labels(self) -> dict[str, str]:
        return {k: getattr(self, k)[0] for k in ("sigma2", "sigma3", "sigma4", "sigma5")}

    def states(self) -> tuple[StateVector, StateVector, StateVector, StateVector]:
        return self.sigma2[1], self.sigma3[1], self.sigma4[1], self.sigma5[1]


def _isometry_matrix(draw: DeletionDraw) -> np.ndarray:
    s2, s3, s4, s5 = draw.states()
    cols = {
        (0, 0): tensor(H, s2, A_H),
        (0, 1): tensor(H, s4, A_V),
        (1, 0): tensor(V, s5, A_H),
        (1, 1): tensor(V, s3, A_V),
    }
    m = np.zeros((D_OUT, D_IN), dtype=complex)
    for (a, b), col in cols.items():
        m[:, 2 * a + b] = col.amps
    return m


@dataclass(frozen=True, eq=False)
class DeletionIsometry:
    draw: DeletionDraw
    matrix: np.ndarray

    @classmethod
    def from_draw(cls, draw: DeletionDraw) -> "DeletionIsometry":
        m = _isometry_matrix(draw)
        m.setflags(write=False)
        return cls(draw, m)

    def apply(self, state: StateVector) -> StateVector:
        """Image of a two-qubit state, or of ``x ⊗ |A>`` given on the full input space."""
        if state.dims == IN_DIMS:
            x = state.amps
        elif state.dims == OUT_DIMS:
            t = state.amps.reshape(D_IN, ANCILLA_DIM)
            if np.max(np.abs(t[:, 1:]), initial=0.0) > NORM_TOL:
                raise DomainError("ancilla must start in the ready state |A>")
            x = t[:, 0]
        else:
            raise ShapeError(f"expected dims {IN_DIMS} or {OUT_DIMS}, got {state.dims}")
        return StateVector(self.matrix @ x, OUT_DIMS)

    def image(self, a: int, b: int) -> StateVector:
        """Image of the computational input |a>|b>|A> (0 = H, 1 = V)."""
        return StateVector(self.matrix[:, 2 * a + b], OUT_DIMS)

    def isometry_defect(self) -> float:
        g = self.matrix.conj().T @ self.matrix
        return float(np.max(np.abs(g - np.eye(D_IN))))


def draw_standard_states(family: StateFamily, rng: RngStream) -> DeletionDraw:
    s2 = sample_standard_state(family, rng)
    s3 = sample_standard_state(family, rng)
    s4 = sample_standard_state(family, rng)
    s5 = sample_standard_state(family, rng)
    return DeletionDraw(s2, s3, s4, s5)


def build_r_deletion(family: StateFamily, rng: RngStream) -> DeletionIsometry:
    """Sample four standard states and return the linearly extended R-deletion map.

    |HH>|A> -> |H>|S2>|A_H>,  |VV>|A> -> |V>|S3>|A_V>,
    |HV>|A> -> |H>|S4>|A_V>,  |VH>|A> -> |V>|S5>|A_H>.
    """
    return DeletionIsometry.from_draw(draw_standard_states(family, rng))


def ordinary_deletion(sigma: StateVector, label: str = "Sigma") -> DeletionIsometry:
    """Deletion against one fixed blank state, i.e. R-deletion over a singleton family."""
    if sigma.dims != (2,) or not sigma.is_normalized():
        raise DomainError("blank state must be a normalized qubit")
    return build_r_deletion(StateFamily.singleton(sigma, label), RngStream(0))


def phi_state(iso: DeletionIsometry) -> StateVector:
    """R-deletion image of (|HV> + |VH>)/sqrt(2) with the ready ancilla."""
    return (iso.image(0, 1) + iso.image(1, 0)) * (1 / np.sqrt(2))


@dataclass(frozen=True, eq=False)
class QuantumChannel:
    """Choi form J = sum_ij |i><j| ⊗ E(|i><j|), input factor first."""

    choi: np.ndarray
    d_in: int = D_IN
    d_out: int = D_OUT
    out_dims: tuple[int, ...] = OUT_DIMS

    def apply(self, rho_in: DensityMatrix | np.ndarray) -> DensityMatrix:
        r = rho_in.data if isinstance(rho_in, DensityMatrix) else np.asarray(rho_in, dtype=complex)
        if r.shape != (self.d_in, self.d_in):
            raise ShapeError(f"channel input must be {self.d_in}x{self.d_in}")
        j = self.choi.reshape(self.d_in, self.d_out, self.d_in, self.d_out)
        return DensityMatrix(np.einsum("ij,iajb->ab", r, j), self.out_dims, validate=False)

    def apply_pure(self, state: StateVector) -> DensityMatrix:
        return self.apply(np.outer(state.amps, state.amps.conj()))

    def min_choi_eigenvalue(self) -> float:
        return float(np.linalg.eigvalsh(0.5 * (self.choi + self.choi.conj().T))[0])

    def tp_defect(self) -> float:
        """max |Tr_out J - I|."""
        j = self.choi.reshape(self.d_in, self.d_out, self.d_in, self.d_out)
        reduced = np.einsum("iaja->ij", j)
        return float(np.max(np.abs(reduced - np.eye(self.d_in))))

    def is_cptp(self, tol: float = 1e-10) -> bool:
        return self.min_choi_eigenvalue() >= -tol and self.tp_defect() < tol


def _choi_vector(matrix: np.ndarray) -> np.ndarray:
    # sum_i |i> ⊗ V|i>, input index major
    return matrix.T.reshape(-1)


def enumerate_draws(family: StateFamily):
    """Every (S2, S3, S4, S5) tuple with its product probability."""
    for combo in itertools.product(family.members, repeat=4):
        p = float(np.prod([m.prob for m in combo]))
        yield p, DeletionDraw(*((m.label, m.state) for m in combo))


def averaged_channel(family: StateFamily, mode: str = "exact", n_samples: int | None = None,
                     rng: RngStream | None = None) -> QuantumChannel:
    """Average of R-deletion isometries over their random draws.

    ``exact`` enumerates all |F|^4 draw tuples of a discrete family (|F| <= 8);
    ``monte_carlo`` averages ``n_samples`` isometries sampled from ``rng``.
    """
    choi = np.zeros((D_IN * D_OUT, D_IN * D_OUT), dtype=complex)
    if mode == "exact":
        if not family.is_discrete:
            raise ParameterError("exact averaging needs a discrete family; use monte_carlo")
        if len(family.members) > MAX_EXACT_FAMILY:
            raise ParameterError(f"exact averaging is capped at {MAX_EXACT_FAMILY} members")
        for p, draw in enumerate_draws(family):
            if p == 0.0:
                continue
            v = _choi_vector(_isometry_matrix(draw))
            choi += p * np.outer(v, v.conj())
    elif mode in ("monte_carlo", "monte-carlo"):
        if not n_samples or n_samples < 1:
            raise ParameterError("monte_carlo mode needs n_samples >= 1")
        if rng is None:
            raise ParameterError("monte_carlo mode needs an RngStream")
        for i in range(n_samples):
            v = _choi_vector(build_r_deletion(family, rng.split(i)).matrix)
            choi += np.outer(v, v.conj())
        choi /= n_samples
    else:
        raise ParameterError(f"unknown averaging mode {mode!r}")
    choi.setflags(write=False)
    return QuantumChannel(choi)


def deleted_slot_marginal(rho_out: DensityMatrix) -> DensityMatrix:
    """Reduced state of slot 1 (the deleted copy)."""
    return partial_trace(rho_out, [1])


def _basis_index(first: StateVector) -> int | None:
    for idx, b in enumerate((H, V)):
        if abs(abs(np.vdot(b.amps, first.amps)) - 1.0) <= NORM_TOL:
            return idx
    return None


def r_clone_quantum(first: StateVector, second: StateVector | None = None) -> StateVector:
    """Overwrite the second slot with the first; only basis states can be cloned."""
    if first.dims != (2,):
        raise ShapeError("first slot must be a qubit")
    if second is not None and second.dims != (2,):
        raise ShapeError("second slot must be a qubit")
    if _basis_index(first) is None:
        raise DomainError("R-cloning is defined only for |H> or |V>: arbitrary states cannot be cloned (no-cloning theorem)")
    return tensor(first, first)


def reuse_prepare(rho_bar: DensityMatrix) -> StateVector:
    """Pure state for reuse: the dominant eigenvector of the randomized slot state."""
    if rho_bar.dims != (2,):
        raise ShapeError("reuse preparation takes a qubit density matrix")
    _, vec = eigendecompose(rho_bar)[0]
    return vec.normalized()
