import numpy as np
import pytest
from hypothesis import strategies as st

from rdeletion.linalg import DensityMatrix, StateVector


def random_state(rng: np.random.Generator, dim: int = 2, dims=None) -> StateVector:
    z = rng.standard_normal(dim) + 1j * rng.standard_normal(dim)
    return StateVector(z / np.linalg.norm(z), dims)


def random_density(rng: np.random.Generator, dim: int, dims=None) -> DensityMatrix:
    a = rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))
    m = a @ a.conj().T
    return DensityMatrix(m / np.trace(m), dims)


def random_amplitudes(rng: np.random.Generator) -> tuple[complex, complex]:
    s = random_state(rng)
    return complex(s.amps[0]), complex(s.amps[1])


@pytest.fixture
def nprng():
    return np.random.default_rng(20001007)


finite = st.floats(min_value=-1.0, max_value=1.0, allow_nan=False, allow_infinity=False)


@st.composite
def qubit_amplitudes(draw):
    """Normalized (alpha, beta) drawn from four bounded reals."""
    xs = [draw(finite) for _ in range(4)]
    v = np.array([complex(xs[0], xs[1]), complex(xs[2], xs[3])])
    n = np.linalg.norm(v)
    if n < 1e-3:
        v, n = np.array([1.0 + 0j, 0j]), 1.0
    v = v / n
    return complex(v[0]), complex(v[1])
