import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from dhtrand.errors import InvalidInputError
from dhtrand.measure import RandomnessReport, measure, measure_fast_r
from dhtrand.sequences import BitSequence, dsequence
from dhtrand.transform import DhtKernel
from oracles import measure_bruteforce

KERNELS = list(DhtKernel)
bit_lists = st.lists(st.integers(0, 1), min_size=1, max_size=300)


@pytest.mark.parametrize("n", [1, 2, 10, 65, 300])
@pytest.mark.parametrize("kernel", KERNELS)
def test_all_zero(n, kernel):
    rep = measure(BitSequence(np.zeros(n)), kernel)
    assert (rep.r, rep.R, rep.r_prime, rep.R_prime) == (0.0, 1.0, 0.0, 1.0)
    assert rep.n == n and rep.kernel is kernel


@pytest.mark.parametrize("kernel", KERNELS)
def test_two_point_one_zero(kernel):
    rep = measure([1, 0], kernel)
    assert rep.r == pytest.approx(1 / math.pi, abs=1e-12)
    assert rep.R == pytest.approx(0.681690, abs=1e-6)
    assert rep.r_prime == pytest.approx(0.318310, abs=1e-6)
    assert rep.R_prime == pytest.approx(0.681690, abs=1e-6)


@pytest.mark.parametrize("kernel", KERNELS)
def test_two_point_ones(kernel):
    rep = measure([1, 1], kernel)
    assert rep.r == pytest.approx(0.0, abs=1e-15)
    assert rep.R == pytest.approx(1.0, abs=1e-15)
    assert rep.r_prime == pytest.approx(2 / math.pi, abs=1e-12)
    assert rep.R_prime == pytest.approx(0.363380, abs=1e-6)
    assert rep.R > rep.R_prime


def test_matches_bruteforce(rng):
    bits = rng.integers(0, 2, 57).tolist()
    r, R, rp, Rp = measure_bruteforce(bits)
    rep = measure(bits)
    assert (rep.r, rep.R, rep.r_prime, rep.R_prime) == pytest.approx((r, R, rp, Rp), abs=1e-12)


def test_one_over_13_value():
    # full-period 0/1 encoding; the reference table lists 0.7054 under its own conventions
    r, R, rp, Rp = measure_bruteforce(str(dsequence(13)))
    rep = measure(dsequence(13))
    assert rep.R == pytest.approx(R, abs=1e-12)
    assert rep.R == pytest.approx(0.840401, abs=1e-6)


def test_default_kernel_choice():
    assert measure(np.zeros(64, int)).kernel is DhtKernel.MATRIX
    assert measure(np.zeros(65, int)).kernel is DhtKernel.FAST


@pytest.mark.parametrize("bad", [[], [0, 2], [0.5]])
def test_invalid(bad):
    with pytest.raises(InvalidInputError):
        measure(bad)
    with pytest.raises(InvalidInputError):
        measure_fast_r(bad)


@settings(max_examples=300, deadline=None)
@given(bit_lists)
def test_R_at_least_R_prime(bits):
    rep = measure(bits)
    assert rep.r_prime >= 0
    assert rep.R >= rep.R_prime
    assert rep.R == 1 - abs(rep.r)
    assert rep.R_prime == 1 - rep.r_prime


@settings(max_examples=100, deadline=None)
@given(bit_lists)
def test_complement_symmetry(bits):
    f = np.array(bits)
    ones = measure(np.ones_like(f)).r
    assert measure(f).r + measure(1 - f).r == pytest.approx(ones, abs=1e-9)


@settings(max_examples=60, deadline=None)
@given(bit_lists)
def test_kernel_independence(bits):
    reps = [measure(bits, k) for k in KERNELS]
    for rep in reps[1:]:
        for key in ("r", "R", "r_prime", "R_prime"):
            assert getattr(rep, key) == pytest.approx(getattr(reps[0], key), abs=1e-9)


def test_fast_r_examples(rng):
    assert measure_fast_r([1, 0]) == pytest.approx(1 / math.pi, abs=1e-15)
    for n in (1, 7, 300):
        assert measure_fast_r(np.ones(n, int)) == pytest.approx(0.0, abs=1e-12)
    f = rng.integers(0, 2, 300)
    assert abs(measure_fast_r(f) - measure(f, DhtKernel.MATRIX).r) < 1e-9


@settings(max_examples=100, deadline=None)
@given(bit_lists)
def test_fast_r_property(bits):
    assert abs(measure_fast_r(bits) - measure(bits, DhtKernel.MATRIX).r) < 1e-9


def test_report_format_round_trip():
    rep = measure(dsequence(19))
    human = rep.format()
    assert [line.split("=")[0] for line in human.splitlines()] == [
        "n", "r", "R", "r_prime", "R_prime", "kernel"]
    assert "R=" in human and human.splitlines()[2] == f"R={rep.R:.6f}"
    assert RandomnessReport.parse(rep.format(machine=True)) == rep


def test_report_parse_missing_key():
    with pytest.raises(InvalidInputError):
        RandomnessReport.parse("n=3\nr=0\n")
