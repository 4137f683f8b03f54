import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from hypothesis.extra.numpy import arrays

from dhtrand.errors import InvalidInputError, InvalidSizeError
from dhtrand.transform import (
    DhtKernel,
    dht,
    dht_fast,
    dht_matrix,
    format_real_sequence,
    inverse_dht,
    measure_weights,
    parse_real_sequence,
)
from oracles import dht_bruteforce

KERNELS = list(DhtKernel)
TWO_PI = 2 / math.pi


def test_matrix_n2():
    assert np.array_equal(dht_matrix(2), TWO_PI * np.array([[0.0, -1.0], [1.0, 0.0]]))
    assert dht_matrix(2)[0, 1] == pytest.approx(-0.636620, abs=1e-6)


def test_matrix_n1():
    assert np.array_equal(dht_matrix(1), [[0.0]])


def test_matrix_first_rows():
    m = dht_matrix(8)
    assert m[3, 0] == pytest.approx(0.212207, abs=1e-6)
    expected_row0 = [0, -1, 0, -1 / 3, 0, -1 / 5, 0, -1 / 7]
    assert m[0] == pytest.approx(TWO_PI * np.array(expected_row0), abs=1e-15)
    assert m[5, :5] == pytest.approx(TWO_PI * np.array([1 / 5, 0, 1 / 3, 0, 1]), abs=1e-15)


@pytest.mark.parametrize("n", [1, 2, 3, 5, 17, 64])
def test_matrix_structure(n):
    m = dht_matrix(n)
    k, j = np.indices((n, n))
    assert np.all(m[(k - j) % 2 == 0] == 0.0)
    assert np.all(m[(k - j) % 2 == 1] != 0.0)
    assert np.array_equal(m + m.T, np.zeros((n, n)))


@pytest.mark.parametrize("bad", [0, -3, 2.5, True])
def test_matrix_invalid_size(bad):
    with pytest.raises(InvalidSizeError):
        dht_matrix(bad)


@pytest.mark.parametrize("kernel", KERNELS)
def test_two_point_values(kernel):
    assert dht([1.0, 0.0], kernel) == pytest.approx([0.0, TWO_PI], abs=1e-12)
    assert dht([1.0, 1.0], kernel) == pytest.approx([-0.636620, 0.636620], abs=1e-6)


@pytest.mark.parametrize("kernel", KERNELS)
@pytest.mark.parametrize("n", [1, 4, 33])
def test_zero_input(kernel, n):
    assert np.array_equal(dht(np.zeros(n), kernel), np.zeros(n))


@pytest.mark.parametrize("kernel", KERNELS)
def test_matches_bruteforce_oracle(kernel, rng):
    f = rng.normal(size=41)
    assert dht(f, kernel) == pytest.approx(dht_bruteforce(f.tolist()), abs=1e-12)


@pytest.mark.parametrize("n", [1, 2, 3, 17, 64, 100, 1024])
def test_kernel_equivalence(n, rng):
    for _ in range(3):
        f = rng.uniform(-1, 1, size=n)
        ref = dht(f, DhtKernel.MATRIX)
        for kernel in (DhtKernel.DIRECT, DhtKernel.FAST):
            assert np.max(np.abs(dht(f, kernel) - ref)) < 1e-9


def test_impulse_gives_matrix_column():
    n = 64
    m = dht_matrix(n)
    for j in (0, 1, 31, 63):
        e = np.zeros(n)
        e[j] = 1.0
        assert np.array_equal(dht(e, DhtKernel.MATRIX), m[:, j])
        assert np.max(np.abs(dht_fast(e) - m[:, j])) < 1e-9


def test_fast_large_random(rng):
    f = rng.normal(size=1024)
    assert np.max(np.abs(dht_fast(f) - dht(f, DhtKernel.MATRIX))) < 1e-9


@pytest.mark.parametrize("bad", [[], [1.0, np.nan], [np.inf], [[1.0, 2.0]]])
@pytest.mark.parametrize("kernel", KERNELS)
def test_invalid_input(bad, kernel):
    with pytest.raises(InvalidInputError):
        dht(bad, kernel)


def test_kernel_parse():
    assert DhtKernel.parse("FAST") is DhtKernel.FAST
    with pytest.raises(InvalidInputError):
        DhtKernel.parse("fft")
    assert DhtKernel.auto(64) is DhtKernel.MATRIX
    assert DhtKernel.auto(65) is DhtKernel.FAST


@settings(max_examples=60, deadline=None)
@given(
    n=st.integers(1, 80),
    a=st.floats(-10, 10),
    b=st.floats(-10, 10),
    seed=st.integers(0, 2**32 - 1),
)
def test_linearity(n, a, b, seed):
    r = np.random.default_rng(seed)
    f, h = r.uniform(-1, 1, n), r.uniform(-1, 1, n)
    for kernel in KERNELS:
        lhs = dht(a * f + b * h, kernel)
        rhs = a * dht(f, kernel) + b * dht(h, kernel)
        assert np.max(np.abs(lhs - rhs)) < 1e-9


@settings(max_examples=40, deadline=None)
@given(arrays(np.float64, st.integers(1, 200), elements=st.floats(-1e3, 1e3)))
def test_kernels_agree_property(f):
    ref = dht(f, DhtKernel.MATRIX)
    scale = max(1.0, float(np.max(np.abs(f))))
    assert np.max(np.abs(dht(f, DhtKernel.FAST) - ref)) < 1e-9 * scale
    assert np.max(np.abs(dht(f, DhtKernel.DIRECT) - ref)) < 1e-9 * scale


# -- inverse ----------------------------------------------------------------------

def _sine(n):
    return np.sin(2 * np.pi * 4 * np.arange(n) / n)


def _interior_error(n, kernel):
    f = _sine(n)
    rec = inverse_dht(dht(f, kernel), kernel)
    mid = slice(n // 4, 3 * n // 4)
    return np.linalg.norm(rec[mid] - f[mid]) / np.linalg.norm(f[mid])


def test_inverse_zero():
    assert np.array_equal(inverse_dht(np.zeros(7)), np.zeros(7))


def test_inverse_two_point_round_trip():
    rec = inverse_dht(dht([1.0, 0.0], DhtKernel.MATRIX), DhtKernel.MATRIX)
    assert rec == pytest.approx([4 / math.pi**2, 0.0], abs=1e-15)
    assert rec[0] == pytest.approx(0.405285, abs=1e-6)


def test_inverse_is_transpose():
    m = dht_matrix(9)
    g = np.arange(9.0)
    assert inverse_dht(g, DhtKernel.MATRIX) == pytest.approx(m.T @ g, abs=1e-13)


# Pinned from the dense-matrix round trip: 0.015074 at n=256.
ROUND_TRIP_256 = 0.016


@pytest.mark.parametrize("kernel", KERNELS)
def test_round_trip_interior_error(kernel):
    assert _interior_error(256, kernel) < ROUND_TRIP_256


def test_round_trip_kernels_consistent():
    ref = _interior_error(256, DhtKernel.MATRIX)
    assert _interior_error(256, DhtKernel.FAST) == pytest.approx(ref, abs=1e-9)


# -- weights --------------------------------------------------------------------

def test_weights_n2():
    assert measure_weights(2) == pytest.approx([TWO_PI, -TWO_PI], abs=1e-15)


@pytest.mark.parametrize("n", [1, 2, 3, 10, 101, 500])
def test_weights_are_column_sums(n):
    w = measure_weights(n)
    assert math.fsum(w) == 0.0
    assert w == pytest.approx(dht_matrix(n).sum(axis=0), abs=1e-12)


def test_weights_path_matches_transform(rng):
    f = rng.integers(0, 2, 100).astype(float)
    r_full = dht(f, DhtKernel.MATRIX).sum() / 100
    assert abs(measure_weights(100) @ f / 100 - r_full) < 1e-9


def test_real_sequence_roundtrip(rng):
    values = rng.normal(size=20)
    text = format_real_sequence(values)
    assert text.endswith("\n") and text.count("\n") == 20
    assert np.array_equal(parse_real_sequence(text), values)
    with pytest.raises(InvalidInputError):
        parse_real_sequence("1.0\nabc\n")
