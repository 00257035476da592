"""Exact simulation of C-not and randomized (R-)deletion for bits and qubits."""

from .analysis import (
    ancilla_linear_hypothesis_error,
    entropy_account,
    eq9_residual,
    holevo_leak,
    residual_statistics,
)
from .classical import (
    BitPair,
    LabeledRegister,
    clone_sequence,
    cnot_delete_sequence,
    cnot_pair,
    r_clone_classical,
    r_delete_classical,
)
from .deletion import (
    DeletionDraw,
    DeletionIsometry,
    QuantumChannel,
    averaged_channel,
    build_r_deletion,
    cnot_quantum,
    ordinary_deletion,
    phi_state,
    r_clone_quantum,
    reuse_prepare,
)
from .linalg import (
    DensityMatrix,
    StateVector,
    eigendecompose,
    inner,
    partial_trace,
    tensor,
    trace_distance,
    von_neumann_entropy,
)
from .rng import RngStream
from .states import StateFamily, family_average, sample_standard_state

__version__ = "0.1.0"

__all__ = [
    "BitPair",
    "DeletionDraw",
    "DeletionIsometry",
    "DensityMatrix",
    "LabeledRegister",
    "QuantumChannel",
    "RngStream",
    "StateFamily",
    "family_average",
    "sample_standard_state",
    "StateVector",
    "ancilla_linear_hypothesis_error",
    "averaged_channel",
    "build_r_deletion",
    "clone_sequence",
    "cnot_delete_sequence",
    "cnot_pair",
    "cnot_quantum",
    "eigendecompose",
    "entropy_account",
    "eq9_residual",
    "holevo_leak",
    "inner",
    "ordinary_deletion",
    "partial_trace",
    "phi_state",
    "r_clone_classical",
    "r_clone_quantum",
    "r_delete_classical",
    "residual_statistics",
    "reuse_prepare",
    "tensor",
    "trace_distance",
    "von_neumann_entropy",
]
