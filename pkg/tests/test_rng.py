import numpy as np
import pytest

from rdeletion.rng import ALGORITHM, RngStream


def test_same_seed_same_stream():
    assert np.array_equal(RngStream(42).bits(1000), RngStream(42).bits(1000))


def test_split_streams_differ_and_reproduce():
    root = RngStream(42)
    a, b = root.split(0).uniform(8), root.split(1).uniform(8)
    assert not np.array_equal(a, b)
    assert np.array_equal(a, RngStream(42).split(0).uniform(8))


def test_split_does_not_consume_parent():
    r1, r2 = RngStream(5), RngStream(5)
    r1.split(3).uniform(10)
    assert np.array_equal(r1.uniform(4), r2.uniform(4))


def test_seed_range():
    RngStream(2**64 - 1)
    with pytest.raises(ValueError):
        RngStream(-1)
    with pytest.raises(ValueError):
        RngStream(2**64)


def test_algorithm_identifier():
    assert RngStream(0).algorithm == ALGORITHM


def test_complex_normal_unit_variance():
    z = RngStream(1).complex_normal(200_000)
    assert np.mean(np.abs(z) ** 2) == pytest.approx(1, abs=0.01)
