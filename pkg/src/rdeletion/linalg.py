"""Dense complex linear algebra at small, fixed dimensions.

States and density matrices carry their subsystem dimensions so that tensor
products and partial traces stay well defined. Subsystems are indexed from
zero, leftmost factor first.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .errors import CapacityError, DomainError, ShapeError

NORM_TOL = 1e-12
HERMITIAN_TOL = 1e-10
PSD_TOL = 1e-10
TRACE_TOL = 1e-12
EIG_TIE_TOL = 1e-10

MAX_DIM = 4096


def _frozen(arr: np.ndarray) -> np.ndarray:
    arr = np.array(arr, dtype=complex)
    arr.setflags(write=False)
    return arr


def _check_dims(dims: Iterable[int]) -> tuple[int, ...]:
    dims = tuple(int(d) for d in dims)
    if not dims or any(d < 1 for d in dims):
        raise ShapeError(f"invalid subsystem dimensions {dims}")
    return dims


@dataclass(frozen=True, eq=False)
class StateVector:
    """Complex amplitude vector over a tensor-product basis."""

    amps: np.ndarray
    dims: tuple[int, ...]

    def __init__(self, amps, dims: Sequence[int] | None = None):
        amps = np.asarray(amps, dtype=complex).reshape(-1)
        dims = _check_dims(dims if dims is not None else (amps.size,))
        if int(np.prod(dims)) != amps.size:
            raise ShapeError(f"{amps.size} amplitudes do not match dims {dims}")
        if int(np.prod(dims)) > MAX_DIM:
            raise CapacityError(f"total dimension {amps.size} exceeds cap {MAX_DIM}")
        if not np.all(np.isfinite(amps)):
            raise DomainError("amplitudes must be finite")
        object.__setattr__(self, "amps", _frozen(amps))
        object.__setattr__(self, "dims", dims)

    @property
    def dim(self) -> int:
        return self.amps.size

    def norm(self) -> float:
        return float(np.linalg.norm(self.amps))

    def is_normalized(self, tol: float = NORM_TOL) -> bool:
        return abs(self.norm() - 1.0) <= tol

    def normalized(self) -> "StateVector":
        n = self.norm()
        if n == 0.0:
            raise DomainError("cannot normalize the zero vector")
        return StateVector(self.amps / n, self.dims)

    def density(self) -> "DensityMatrix":
        """Projector |v><v| (requires a normalized vector)."""
        return DensityMatrix(np.outer(self.amps, self.amps.conj()), self.dims)

    def __add__(self, other: "StateVector") -> "StateVector":
        _same_dims(self.dims, other.dims)
        return StateVector(self.amps + other.amps, self.dims)

    def __sub__(self, other: "StateVector") -> "StateVector":
        _same_dims(self.dims, other.dims)
        return StateVector(self.amps - other.amps, self.dims)

    def __mul__(self, scalar) -> "StateVector":
        return StateVector(complex(scalar) * self.amps, self.dims)

    __rmul__ = __mul__

    def allclose(self, other: "StateVector", atol: float = NORM_TOL) -> bool:
        return self.dims == other.dims and bool(np.max(np.abs(self.amps - other.amps), initial=0.0) <= atol)

    def __repr__(self) -> str:
        return f"StateVector(dims={self.dims}, amps={np.array2string(self.amps, precision=6)})"


@dataclass(frozen=True, eq=False)
class DensityMatrix:
    """Hermitian, positive semidefinite, unit-trace matrix.

    Validation runs at construction; pass ``validate=False`` only for
    intermediate results whose invariants are checked elsewhere.
    """

    data: np.ndarray
    dims: tuple[int, ...]

    def __init__(self, data, dims: Sequence[int] | None = None, validate: bool = True):
        data = np.asarray(data, dtype=complex)
        if data.ndim != 2 or data.shape[0] != data.shape[1]:
            raise ShapeError(f"density matrix must be square, got shape {data.shape}")
        dims = _check_dims(dims if dims is not None else (data.shape[0],))
        if int(np.prod(dims)) != data.shape[0]:
            raise ShapeError(f"matrix side {data.shape[0]} does not match dims {dims}")
        if data.shape[0] > MAX_DIM:
            raise CapacityError(f"total dimension {data.shape[0]} exceeds cap {MAX_DIM}")
        if not np.all(np.isfinite(data)):
            raise DomainError("entries must be finite")
        if validate:
            _check_hermitian(data)
            tr = np.trace(data)
            if abs(tr - 1.0) > TRACE_TOL:
                raise DomainError(f"trace {tr} differs from 1")
            lo = float(np.linalg.eigvalsh(_hermitian_part(data))[0])
            if lo < -PSD_TOL:
                raise DomainError(f"minimum eigenvalue {lo} is negative")
        object.__setattr__(self, "data", _frozen(data))
        object.__setattr__(self, "dims", dims)

    @property
    def dim(self) -> int:
        return self.data.shape[0]

    @classmethod
    def maximally_mixed(cls, dim: int = 2) -> "DensityMatrix":
        return cls(np.eye(dim) / dim)

    def expectation(self, phi: StateVector) -> float:
        """<phi|rho|phi> (the fidelity with a pure state)."""
        if phi.dim != self.dim:
            raise ShapeError("state and density matrix dimensions differ")
        return float(np.real(np.vdot(phi.amps, self.data @ phi.amps)))

    def __repr__(self) -> str:
        return f"DensityMatrix(dims={self.dims}, data=\n{np.array2string(self.data, precision=6)})"


def _same_dims(a: tuple[int, ...], b: tuple[int, ...]) -> None:
    if a != b:
        raise ShapeError(f"dimension mismatch: {a} vs {b}")


def _hermitian_part(m: np.ndarray) -> np.ndarray:
    return 0.5 * (m + m.conj().T)


def _check_hermitian(m: np.ndarray) -> None:
    dev = float(np.max(np.abs(m - m.conj().T), initial=0.0))
    if dev > HERMITIAN_TOL:
        raise DomainError(f"matrix is not Hermitian (deviation {dev:.3e})")


def basis_state(index: int, dims: Sequence[int] | int = 2) -> StateVector:
    dims = (dims,) if isinstance(dims, int) else tuple(dims)
    amps = np.zeros(int(np.prod(dims)), dtype=complex)
    amps[index] = 1.0
    return StateVector(amps, dims)


def tensor(*states: StateVector) -> StateVector:
    """Kronecker product; subsystem dimensions are concatenated."""
    if not states:
        raise ShapeError("tensor of no factors")
    amps = np.ones(1, dtype=complex)
    dims: tuple[int, ...] = ()
    for s in states:
        if amps.size * s.dim > MAX_DIM:
            raise CapacityError(f"total dimension {amps.size * s.dim} exceeds cap {MAX_DIM}")
        amps = np.kron(amps, s.amps)
        dims = dims + s.dims
    return StateVector(amps, dims)


def inner(a: StateVector, b: StateVector) -> complex:
    """<a|b>, conjugate-linear in ``a``."""
    _same_dims(a.dims, b.dims)
    return complex(np.vdot(a.amps, b.amps))


def partial_trace(rho: DensityMatrix, keep: Iterable[int]) -> DensityMatrix:
    """Reduced state on the subsystems in ``keep`` (kept in ascending order)."""
    n = len(rho.dims)
    keep = sorted(set(int(k) for k in keep))
    if not keep or any(k < 0 or k >= n for k in keep):
        raise ShapeError(f"invalid subsystem indices {keep} for dims {rho.dims}")
    drop = [i for i in range(n) if i not in keep]
    t = rho.data.reshape(rho.dims + rho.dims)
    # Contract dropped row/column index pairs, highest first so positions stay valid.
    cur = n
    for i in reversed(drop):
        t = np.trace(t, axis1=i, axis2=i + cur)
        cur -= 1
    kept_dims = tuple(rho.dims[k] for k in keep)
    side = int(np.prod(kept_dims))
    return DensityMatrix(t.reshape(side, side), kept_dims, validate=False)


def reduced_state(state: StateVector, keep: Iterable[int]) -> DensityMatrix:
    return partial_trace(DensityMatrix(np.outer(state.amps, state.amps.conj()), state.dims, validate=False), keep)


def _canonical_phase(v: np.ndarray) -> np.ndarray:
    k = int(np.argmax(np.abs(v) > np.max(np.abs(v)) - 1e-12))
    return v * (abs(v[k]) / v[k])


def _canonical_eigenspace(vecs: np.ndarray) -> list[np.ndarray]:
    """Deterministic orthonormal basis of span(vecs), built from projected unit vectors."""
    k = vecs.shape[1]
    proj = vecs @ vecs.conj().T
    chosen: list[np.ndarray] = []
    for i in range(proj.shape[0]):
        v = proj[:, i].copy()
        for u in chosen:
            v -= np.vdot(u, v) * u
        nv = np.linalg.norm(v)
        if nv > 1e-6:
            chosen.append(v / nv)
        if len(chosen) == k:
            break
    return chosen


def eigendecompose(rho: DensityMatrix | np.ndarray) -> list[tuple[float, StateVector]]:
    """Eigenpairs of a Hermitian matrix, eigenvalues descending.

    Within a degenerate cluster (eigenvalues equal to 1e-10) the basis is
    canonicalized from projected standard basis vectors and ordered by the
    lowest index of each vector's largest-magnitude amplitude. Each vector's
    phase makes that amplitude real and positive.
    """
    if isinstance(rho, DensityMatrix):
        m, dims = rho.data, rho.dims
    else:
        m = np.asarray(rho, dtype=complex)
        if m.ndim != 2 or m.shape[0] != m.shape[1]:
            raise ShapeError(f"expected a square matrix, got shape {m.shape}")
        dims = (m.shape[0],)
    _check_hermitian(m)
    w, v = np.linalg.eigh(_hermitian_part(m))
    order = np.argsort(-w, kind="stable")
    w, v = w[order], v[:, order]

    pairs: list[tuple[float, StateVector]] = []
    i = 0
    while i < len(w):
        j = i + 1
        while j < len(w) and abs(w[j] - w[i]) <= EIG_TIE_TOL:
            j += 1
        lam = float(np.mean(w[i:j]))
        block = _canonical_eigenspace(v[:, i:j]) if j - i > 1 else [v[:, i]]
        block = [_canonical_phase(b) for b in block]
        block.sort(key=lambda b: int(np.argmax(np.abs(b) > np.max(np.abs(b)) - 1e-12)))
        pairs.extend((lam, StateVector(b, dims)) for b in block)
        i = j
    return pairs


def _entropy_of(eigs: np.ndarray) -> float:
    eigs = np.clip(np.real(eigs), 0.0, None)
    nz = eigs[eigs > 1e-15]
    return float(-np.sum(nz * np.log2(nz))) + 0.0


def von_neumann_entropy(rho: DensityMatrix) -> float:
    """Entropy in bits; 0 log 0 is taken as 0."""
    s = _entropy_of(np.linalg.eigvalsh(_hermitian_part(rho.data)))
    return min(max(s, 0.0), float(np.log2(rho.dim)))


def trace_distance(a: DensityMatrix, b: DensityMatrix) -> float:
    _same_dims(a.dims, b.dims)
    diff = _hermitian_part(a.data - b.data)
    return float(0.5 * np.sum(np.abs(np.linalg.eigvalsh(diff))))


def fidelity_with_pure(rho: DensityMatrix, phi: StateVector) -> float:
    """F(rho, |phi>) = <phi|rho|phi>."""
    return rho.expectation(phi)


def schmidt_coefficients(state: StateVector, split: int) -> np.ndarray:
    """Singular values across the cut between subsystems ``< split`` and ``>= split``."""
    if not 0 < split < len(state.dims):
        raise ShapeError(f"invalid cut {split} for dims {state.dims}")
    left = int(np.prod(state.dims[:split]))
    return np.linalg.svd(state.amps.reshape(left, -1), compute_uv=False)


def mixture(weights: Sequence[float], rhos: Sequence[DensityMatrix]) -> DensityMatrix:
    if len(weights) != len(rhos) or not rhos:
        raise ShapeError("weights and states must be non-empty and of equal length")
    data = sum(w * r.data for w, r in zip(weights, rhos))
    return DensityMatrix(data, rhos[0].dims)
