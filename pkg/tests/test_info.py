import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from oracles import f_mp, f_partials_fd, mi_direct

from capbound.core import INV_E, Channel, Distribution
from capbound.errors import AlphaOutOfRange, LengthMismatch, SingularAtZero
from capbound.info import (
    FArgs,
    d_mutual_info_binary,
    f_eval,
    f_partials,
    kl_divergence,
    mixture,
    mutual_information,
)

# f(1/e; 1, 1/2) from a 50-digit mpmath evaluation
F_AT_1_HALF = 0.0365163368008339
# d^2 f / d p1^2 at (1, 1/2), high-precision central differences
F2_AT_1_HALF = 0.06889329077704605


def test_kl_self_is_zero(rng):
    for _ in range(20):
        p = rng.dirichlet(np.ones(5))
        assert kl_divergence(p, p) == 0.0


def test_kl_single_term():
    assert kl_divergence(Distribution([1, 0]), Distribution([0.5, 0.5])) == pytest.approx(math.log(2), abs=1e-15)


def test_kl_infinite_flag():
    assert kl_divergence(Distribution([0.5, 0.5]), Distribution([1, 0])) == math.inf


def test_kl_length_mismatch():
    with pytest.raises(LengthMismatch):
        kl_divergence(Distribution([1, 0]), Distribution([1, 0, 0]))


def test_kl_nonnegative(rng):
    for _ in range(200):
        p, q = rng.dirichlet(np.ones(4), size=2)
        assert kl_divergence(p, q) > 0


def test_mi_independent_channel():
    ch = Channel([[0.2, 0.8]] * 2)
    assert mutual_information(Distribution([0.5, 0.5]), ch) == 0.0


def test_mi_noiseless_binary():
    assert mutual_information(Distribution([0.5, 0.5]), Channel(np.eye(2))) == pytest.approx(math.log(2), abs=1e-15)


def test_mi_bsc():
    ch = Channel([[0.9, 0.1], [0.1, 0.9]])
    value = mutual_information(Distribution([0.5, 0.5]), ch)
    closed = math.log(2) - (-0.1 * math.log(0.1) - 0.9 * math.log(0.9))
    assert value == pytest.approx(0.368064, abs=1e-6)
    assert value == pytest.approx(closed, abs=1e-15)
    assert value == pytest.approx(mi_direct([0.5, 0.5], ch.tolist()), abs=1e-15)


def test_mi_matches_double_sum(rng):
    for _ in range(50):
        W = rng.dirichlet(np.ones(4), size=3)
        p = rng.dirichlet(np.ones(3))
        assert mutual_information(p, Channel(W)) == pytest.approx(mi_direct(p, W.tolist()), abs=1e-13)


def test_mixture_endpoints_and_value():
    P1, P2 = Distribution([1, 0]), Distribution([0.5, 0.5])
    assert mixture(0, P1, P2) == P2
    assert mixture(1, P1, P2) == P1
    got = mixture(INV_E, P1, P2)
    expected = [INV_E * 1 + (1 - INV_E) * 0.5, INV_E * 0 + (1 - INV_E) * 0.5]
    np.testing.assert_allclose(got.p, expected, atol=1e-15)
    assert got[0] == pytest.approx(0.683939, abs=1e-6)
    with pytest.raises(AlphaOutOfRange):
        mixture(1.2, P1, P2)


@pytest.mark.parametrize("c", [0.0, 0.1, 0.5, 0.9, 1.0])
def test_f_zero_on_diagonal(c):
    assert f_eval(INV_E, c, c) == pytest.approx(0.0, abs=1e-15)


@pytest.mark.parametrize("p", [0.0, 0.2, 0.7, 1.0])
def test_f_zero_when_p2_vanishes(p):
    assert f_eval(INV_E, p, 0.0) == pytest.approx(0.0, abs=1e-15)


def test_f_value():
    assert float(f_mp(1 / math.e, 1, 0.5)) == pytest.approx(F_AT_1_HALF, abs=1e-15)
    assert f_eval(*FArgs(INV_E, 1.0, 0.5)) == pytest.approx(F_AT_1_HALF, abs=1e-15)


def test_f_rejects_out_of_range():
    with pytest.raises(ValueError):
        f_eval(0.5, 1.1, 0.2)


def test_d_mi_identical_rows():
    P = Distribution([0.3, 0.3, 0.4])
    for a in (0.1, 0.5, 0.9):
        assert d_mutual_info_binary(a, P, P) == 0.0


def test_d_mi_positive_at_inv_e(rng):
    for _ in range(200):
        P1, P2 = rng.dirichlet(np.ones(3), size=2)
        assert d_mutual_info_binary(INV_E, P1, P2) > 0


def test_d_mi_root_at_z_optimum():
    assert d_mutual_info_binary(0.6, [1, 0], [0.5, 0.5]) == pytest.approx(0.0, abs=1e-15)


def test_d_mi_endpoint_infinities():
    assert d_mutual_info_binary(0.0, [1, 0], [0, 1]) == math.inf
    assert d_mutual_info_binary(1.0, [1, 0], [0, 1]) == -math.inf


def test_d_mi_equals_sum_of_f(rng):
    for _ in range(500):
        n = int(rng.integers(2, 9))
        P1, P2 = rng.dirichlet(np.ones(n), size=2)
        a = float(rng.uniform())
        assert abs(d_mutual_info_binary(a, P1, P2) - np.sum(f_eval(a, P1, P2))) < 1e-12


def test_d_mi_non_increasing(rng):
    alphas = np.linspace(0.01, 0.99, 99)
    for _ in range(100):
        P1, P2 = rng.dirichlet(np.ones(4), size=2)
        g = np.array([d_mutual_info_binary(a, P1, P2) for a in alphas])
        assert np.all(np.diff(g) <= 1e-12)


def test_f_partials_on_diagonal():
    for c in (0.05, 0.3, 0.7, 1.0):
        first, second = f_partials(c, c)
        assert first == pytest.approx(0.0, abs=1e-15)
        assert second >= 0


def test_f_partials_value():
    first, second = f_partials(1.0, 0.5)
    fd_first, fd_second = f_partials_fd(1.0, 0.5)
    assert second == pytest.approx(F2_AT_1_HALF, rel=1e-12)
    assert second == pytest.approx(fd_second, rel=1e-6)
    assert first == pytest.approx(fd_first, rel=1e-6)


def test_f_partials_double_precision_fd():
    # plain double-precision central differences at step 1e-5, at a benign point
    h, x, y = 1e-5, 0.6, 0.3
    f = lambda t: f_eval(INV_E, t, y)  # noqa: E731
    first, second = f_partials(x, y)
    assert first == pytest.approx((f(x + h) - f(x - h)) / (2 * h), rel=1e-6)
    assert second == pytest.approx((f(x + h) - 2 * f(x) + f(x - h)) / h**2, rel=1e-4)


def test_f_partials_singular():
    with pytest.raises(SingularAtZero):
        f_partials(0.0, 0.5)


@pytest.mark.parametrize("c", [0.01, 0.1, 0.3])
def test_convexity_switch(c):
    pivot = (math.e - 1) ** 2 * c
    grid = np.linspace(0.001, 1.0, 1000)
    grid = grid[np.abs(grid - pivot) > 1e-9]
    _, second = f_partials(grid, np.full_like(grid, c))
    assert np.all(second[grid < pivot] > 0)
    assert np.all(second[grid > pivot] < 0)


@settings(max_examples=200, deadline=None)
@given(st.floats(0.0, 1.0), st.floats(0.0, 1.0))
def test_f_nonnegative_at_inv_e(p1, p2):
    assert f_eval(INV_E, p1, p2) >= -1e-12
