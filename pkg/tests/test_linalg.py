import math

import numpy as np
import pytest

from rdeletion.errors import CapacityError, DomainError, ShapeError
from rdeletion.linalg import (
    DensityMatrix,
    StateVector,
    basis_state,
    eigendecompose,
    inner,
    partial_trace,
    reduced_state,
    schmidt_coefficients,
    tensor,
    trace_distance,
    von_neumann_entropy,
)

from conftest import random_density, random_state

ZERO = basis_state(0)
ONE = basis_state(1)
PLUS = StateVector(np.array([1, 1]) / np.sqrt(2))


def test_tensor_basis():
    out = tensor(ZERO, ZERO)
    assert out.dims == (2, 2)
    np.testing.assert_array_equal(out.amps, [1, 0, 0, 0])


def test_tensor_superposition_with_zero():
    a, b = 0.6, 0.8j
    out = tensor(StateVector([a, b]), ZERO)
    np.testing.assert_allclose(out.amps, [a, 0, b, 0])


def test_tensor_plus_plus():
    np.testing.assert_allclose(tensor(PLUS, PLUS).amps, [0.5] * 4, atol=1e-15)


def test_tensor_norm_multiplies(nprng):
    a = StateVector(nprng.standard_normal(3) * 2)
    b = StateVector(nprng.standard_normal(4))
    assert tensor(a, b).norm() == pytest.approx(a.norm() * b.norm(), rel=1e-12)


def test_tensor_capacity():
    big = StateVector(np.ones(64) / 8)
    with pytest.raises(CapacityError):
        tensor(big, big, big)


def test_non_finite_rejected():
    with pytest.raises(DomainError):
        StateVector([np.nan, 1])


def test_inner_examples():
    assert inner(ZERO, ZERO) == 1
    assert inner(ZERO, ONE) == 0
    assert inner(PLUS, ONE) == pytest.approx(1 / math.sqrt(2), abs=1e-15)


def test_inner_conjugate_linear_first(nprng):
    a, b = random_state(nprng), random_state(nprng)
    c = 0.3 - 0.7j
    assert inner(c * a, b) == pytest.approx(np.conj(c) * inner(a, b), abs=1e-14)
    assert inner(a, a).imag == pytest.approx(0, abs=1e-15)
    assert inner(a, a).real >= 0


def test_inner_dims_mismatch():
    with pytest.raises(ShapeError):
        inner(ZERO, tensor(ZERO, ZERO))


def test_partial_trace_product_basis():
    rho = tensor(ZERO, ZERO).density()
    np.testing.assert_array_equal(partial_trace(rho, [0]).data, [[1, 0], [0, 0]])


def test_partial_trace_bell():
    bell = StateVector(np.array([1, 0, 0, 1]) / np.sqrt(2), (2, 2))
    np.testing.assert_allclose(reduced_state(bell, [0]).data, np.eye(2) / 2, atol=1e-15)


def test_partial_trace_product_of_mixed(nprng):
    r = random_density(nprng, 2)
    t = random_density(nprng, 3)
    prod = DensityMatrix(np.kron(r.data, t.data), (2, 3))
    np.testing.assert_allclose(partial_trace(prod, [0]).data, r.data, atol=1e-14)
    np.testing.assert_allclose(partial_trace(prod, [1]).data, t.data, atol=1e-14)


def test_partial_trace_matches_einsum_oracle(nprng):
    rho = random_density(nprng, 12, (2, 2, 3))
    t = rho.data.reshape(2, 2, 3, 2, 2, 3)
    np.testing.assert_allclose(partial_trace(rho, [1]).data, np.einsum("aibajb->ij", t), atol=1e-14)
    keep02 = np.einsum("aibcid->abcd", t).reshape(6, 6)
    np.testing.assert_allclose(partial_trace(rho, [0, 2]).data, keep02, atol=1e-14)


def test_partial_trace_order_independent(nprng):
    for _ in range(20):
        rho = random_density(nprng, 12, (2, 2, 3))
        one_shot = partial_trace(rho, [1])
        a = partial_trace(partial_trace(rho, [0, 1]), [1])
        b = partial_trace(partial_trace(rho, [1, 2]), [0])
        np.testing.assert_allclose(a.data, one_shot.data, atol=1e-12)
        np.testing.assert_allclose(b.data, one_shot.data, atol=1e-12)


def test_partial_trace_preserves_trace_and_hermiticity(nprng):
    rho = random_density(nprng, 12, (2, 2, 3))
    for keep in ([0], [1], [2], [0, 2], [1, 2]):
        red = partial_trace(rho, keep)
        assert np.trace(red.data) == pytest.approx(1, abs=1e-12)
        np.testing.assert_allclose(red.data, red.data.conj().T, atol=1e-14)


@pytest.mark.parametrize("keep", [[], [3], [-1]])
def test_partial_trace_invalid(keep):
    with pytest.raises(ShapeError):
        partial_trace(tensor(ZERO, ZERO, ZERO).density(), keep)


def test_eigendecompose_examples():
    assert [l for l, _ in eigendecompose(DensityMatrix(np.eye(2) / 2))] == pytest.approx([0.5, 0.5])
    assert [l for l, _ in eigendecompose(ZERO.density())] == pytest.approx([1, 0])
    mixed = DensityMatrix(np.diag([0.75, 0.25]))
    pairs = eigendecompose(mixed)
    assert [l for l, _ in pairs] == pytest.approx([0.75, 0.25])
    np.testing.assert_allclose(pairs[0][1].amps, [1, 0])


def test_eigendecompose_tie_break_is_canonical():
    # I/2 expressed in a rotated basis must still give |0>, |1> in order
    u = np.array([[1, 1j], [1j, 1]]) / np.sqrt(2)
    rho = DensityMatrix(u @ (np.eye(2) / 2) @ u.conj().T)
    vecs = [v.amps for _, v in eigendecompose(rho)]
    np.testing.assert_allclose(vecs[0], [1, 0], atol=1e-12)
    np.testing.assert_allclose(vecs[1], [0, 1], atol=1e-12)


def test_eigendecompose_reconstruction(nprng):
    for dim in [2, 3, 4, 12] * 25:
        rho = random_density(nprng, dim)
        pairs = eigendecompose(rho)
        lams = [l for l, _ in pairs]
        assert lams == sorted(lams, reverse=True)
        vecs = np.column_stack([v.amps for _, v in pairs])
        np.testing.assert_allclose(vecs.conj().T @ vecs, np.eye(dim), atol=1e-10)
        recon = sum(l * np.outer(v.amps, v.amps.conj()) for l, v in pairs)
        assert np.linalg.norm(rho.data - recon) < 1e-10


def test_eigendecompose_rejects_non_hermitian():
    with pytest.raises(DomainError):
        eigendecompose(np.array([[0.5, 1.0], [0.0, 0.5]]))


def test_density_validation():
    with pytest.raises(DomainError):
        DensityMatrix(np.diag([0.5, 0.6]))
    with pytest.raises(DomainError):
        DensityMatrix(np.diag([1.5, -0.5]))
    with pytest.raises(DomainError):
        DensityMatrix(np.array([[0.5, 0.1], [0.2, 0.5]]))


def _entropy_oracle_2x2(m):
    # closed-form 2x2 Hermitian eigenvalues, then -sum l log2 l
    a, d, b = m[0][0].real, m[1][1].real, abs(m[0][1])
    mid, rad = (a + d) / 2, math.sqrt(((a - d) / 2) ** 2 + b ** 2)
    return -sum(l * math.log2(l) for l in (mid + rad, mid - rad) if l > 0)


def test_entropy_examples():
    assert von_neumann_entropy(PLUS.density()) == pytest.approx(0, abs=1e-12)
    assert von_neumann_entropy(DensityMatrix(np.eye(2) / 2)) == pytest.approx(1, abs=1e-12)
    avg = DensityMatrix(0.5 * ZERO.density().data + 0.5 * PLUS.density().data)
    oracle = _entropy_oracle_2x2(avg.data)
    lp, lm = (2 + math.sqrt(2)) / 4, (2 - math.sqrt(2)) / 4
    assert oracle == pytest.approx(-(lp * math.log2(lp) + lm * math.log2(lm)), abs=1e-14)
    assert oracle == pytest.approx(0.6009, abs=1e-4)
    assert von_neumann_entropy(avg) == pytest.approx(oracle, abs=1e-12)


def test_entropy_bounds(nprng):
    for dim in (2, 3, 4, 12) * 25:
        s = von_neumann_entropy(random_density(nprng, dim))
        assert 0 <= s <= math.log2(dim) + 1e-12


def test_trace_distance_examples(nprng):
    r = random_density(nprng, 3)
    assert trace_distance(r, r) == pytest.approx(0, abs=1e-14)
    assert trace_distance(ZERO.density(), ONE.density()) == pytest.approx(1)
    assert trace_distance(ZERO.density(), DensityMatrix(np.eye(2) / 2)) == pytest.approx(0.5)


def test_trace_distance_symmetric_bounded(nprng):
    for _ in range(30):
        a, b = random_density(nprng, 4), random_density(nprng, 4)
        d = trace_distance(a, b)
        assert 0 <= d <= 1
        assert d == pytest.approx(trace_distance(b, a), abs=1e-14)


def test_trace_distance_dims_mismatch():
    with pytest.raises(ShapeError):
        trace_distance(ZERO.density(), tensor(ZERO, ZERO).density())


def test_schmidt_product_and_bell():
    assert schmidt_coefficients(tensor(PLUS, ZERO), 1) == pytest.approx([1, 0], abs=1e-15)
    bell = StateVector(np.array([1, 0, 0, 1]) / np.sqrt(2), (2, 2))
    assert schmidt_coefficients(bell, 1) == pytest.approx([1 / math.sqrt(2)] * 2)


def test_values_are_immutable():
    s = StateVector([1, 0])
    with pytest.raises(ValueError):
        s.amps[0] = 2
