import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from capbound.core import Channel, Distribution, validate_channel, validate_distribution
from capbound.errors import (
    EmptyInput,
    NegativeEntry,
    RaggedMatrix,
    RowNotDistribution,
    SumNotOne,
    TooFewColumns,
    TooFewRows,
)


def test_uniform_binary():
    d = validate_distribution([0.5, 0.5])
    assert d.tolist() == [0.5, 0.5]


def test_sum_not_one_reports_deviation():
    with pytest.raises(SumNotOne) as exc:
        validate_distribution([0.5, 0.6])
    assert exc.value.details["deviation"] == pytest.approx(0.1)
    assert exc.value.kind == "SumNotOne"


def test_inverse_e_pair():
    d = validate_distribution([1 / math.e, 1 - 1 / math.e])
    assert d[0] == pytest.approx(0.367879, abs=1e-6)
    assert d[1] == pytest.approx(0.632120, abs=1e-6)


def test_negative_and_empty():
    with pytest.raises(NegativeEntry):
        validate_distribution([1.5, -0.5])
    with pytest.raises(EmptyInput):
        validate_distribution([])


def test_no_silent_renormalization():
    with pytest.raises(SumNotOne):
        validate_distribution([0.5, 0.5 + 1e-10])
    validate_distribution([0.5, 0.5 + 1e-13])


def test_distribution_is_read_only():
    d = Distribution([0.25, 0.75])
    with pytest.raises(ValueError):
        d.p[0] = 0.5
    assert np.asarray(d) is d.p


def test_identity_channel():
    ch = validate_channel([[1, 0], [0, 1]])
    assert (ch.m, ch.n) == (2, 2)
    np.testing.assert_array_equal(ch.matrix, np.eye(2))


def test_z_channel_rows():
    ch = validate_channel([[1, 0], [0.5, 0.5]])
    assert ch.rows[1] == Distribution([0.5, 0.5])


def test_row_not_distribution():
    with pytest.raises(RowNotDistribution) as exc:
        validate_channel([[0.9, 0.2], [0.1, 0.8]])
    assert exc.value.details["row"] == 0
    assert exc.value.details["cause"] == "SumNotOne"


@pytest.mark.parametrize(
    "raw, err",
    [
        ([[1, 0], [1]], RaggedMatrix),
        ([[1, 0]], TooFewRows),
        ([[1], [1]], TooFewColumns),
        ([], TooFewRows),
    ],
)
def test_shape_errors(raw, err):
    with pytest.raises(err):
        validate_channel(raw)


def test_trivial_channel_accepted():
    ch = validate_channel([[0.3, 0.7]] * 3)
    assert ch.is_trivial()
    assert not validate_channel([[1, 0], [0, 1]]).is_trivial()


simplex = st.lists(st.floats(0.0, 1.0), min_size=1, max_size=12).filter(lambda v: sum(v) > 0)


@given(simplex)
def test_round_trip_bit_exact(raw):
    p = np.array(raw) / np.sum(raw)
    if abs(math.fsum(p) - 1) > 1e-12:
        return
    d = validate_distribution(p)
    again = validate_distribution(d.p)
    assert again.p.tobytes() == d.p.tobytes()
    assert again == d
