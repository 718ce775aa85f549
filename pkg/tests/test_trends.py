import numpy as np
import pytest

from btmimic.hexsim.rng import Xorshift64Star
from btmimic.similarity import (
    InvalidTrendSeries,
    Trend,
    best_trend_series,
    brute_force_trend_series,
    trend_series_value,
    trend_value,
    validate_trend_series,
)


def random_matrix(rng, m, n):
    return np.array([[rng.random() for _ in range(n)] for _ in range(m)])


def test_trend_value_frozen_cases():
    mat = np.array([[0.7, 0.0], [0.0, 0.0]])
    assert trend_value(Trend(0, 0, 1), mat) == pytest.approx(0.7)
    mat2 = np.array([[0.5, 0.0], [0.0, 0.5]])
    assert trend_value(Trend(0, 0, 2), mat2) == pytest.approx(4.0)  # 1.0 * 2^2
    ones = np.ones((3, 3))
    assert trend_value(Trend(0, 0, 3), ones) == pytest.approx(27.0)  # 3 * 3^2


def test_series_value_frozen_cases():
    ones = np.ones((4, 4))
    full = [Trend(0, 0, 4)]
    assert trend_series_value(full, ones) == pytest.approx(1.0)  # (4*16)/64
    # fragmentation penalty: v = 2*4 = 8 per trend, (8+8)/64
    split = [Trend(0, 0, 2), Trend(0, 2, 2)]
    assert trend_series_value(split, ones) == pytest.approx(0.25)
    single = np.array([[0.5]])
    assert trend_series_value([Trend(0, 0, 1)], single) == pytest.approx(0.5)


def test_series_validation_rejects_bad_series():
    ones = np.ones((4, 4))
    with pytest.raises(InvalidTrendSeries):
        validate_trend_series([Trend(0, 0, 2)], ones)  # columns 2,3 uncovered
    with pytest.raises(InvalidTrendSeries):
        validate_trend_series([Trend(0, 0, 2), Trend(0, 1, 3)], ones)  # overlap
    with pytest.raises(InvalidTrendSeries):
        # second trend continues the first's diagonal: mergeable
        validate_trend_series([Trend(0, 0, 2), Trend(2, 2, 2)], ones)
    # same split but on a different row is fine
    validate_trend_series([Trend(0, 0, 2), Trend(0, 2, 2)], ones)


def test_brute_force_one_by_one():
    assert brute_force_trend_series(np.array([[0.37]]))[0] == pytest.approx(0.37)


def test_brute_force_dominant_diagonal():
    value, series = brute_force_trend_series(np.eye(2))
    assert value == pytest.approx(1.0)
    assert series == [Trend(0, 0, 2)]


def test_brute_force_refuses_large():
    with pytest.raises(ValueError):
        brute_force_trend_series(np.ones((9, 4)))


def test_brute_force_respects_no_merge():
    # strong diagonal, but a poisoned middle cell: the best split must not
    # reconnect into the same diagonal
    mat = np.array([
        [1.0, 0.0, 0.0],
        [0.0, 0.0, 0.0],
        [0.0, 0.0, 1.0],
    ])
    value, series = brute_force_trend_series(mat)
    validate_trend_series(series, mat)
    for a, b in zip(series, series[1:]):
        assert b.row != a.end_row + 1


def test_dp_equals_oracle_on_random_matrices():
    rng = Xorshift64Star(2024)
    for _ in range(300):
        m = 1 + rng.randrange(6)
        n = 1 + rng.randrange(6)
        mat = random_matrix(rng, m, n)
        expect, _ = brute_force_trend_series(mat)
        got, witness = best_trend_series(mat)
        assert abs(got - expect) <= 1e-12
        validate_trend_series(witness, mat)
        assert trend_series_value(witness, mat) == pytest.approx(got, abs=1e-12)


def test_dp_bounds_and_witness_on_random_matrices():
    rng = Xorshift64Star(7)
    for _ in range(300):
        m = 1 + rng.randrange(12)
        n = 1 + rng.randrange(12)
        mat = random_matrix(rng, m, n)
        value, witness = best_trend_series(mat)
        assert 0.0 <= value <= 1.0
        validate_trend_series(witness, mat)


def test_dp_identity_matrix_is_one():
    for n in (1, 2, 5, 17):
        mat = np.ones((n, n))
        value, witness = best_trend_series(mat)
        assert value == 1.0
        assert witness == [Trend(0, 0, n)]


def test_dp_backends_agree():
    from btmimic.similarity import get_kernel
    try:
        cy = get_kernel("cython")
    except RuntimeError:
        pytest.skip("compiled kernel not built")
    py = get_kernel("python")
    rng = Xorshift64Star(55)
    for _ in range(120):
        m = 1 + rng.randrange(10)
        n = 1 + rng.randrange(10)
        mat = np.ascontiguousarray(random_matrix(rng, m, n))
        rc, ec, blc, prc = cy(mat)
        rp, ep, blp, prp = py(mat)
        assert rc == rp  # bit-identical arithmetic
        assert ec == ep
        assert np.array_equal(blc, blp)
        assert np.array_equal(prc, prp)


def test_extending_a_trend_increases_value():
    rng = Xorshift64Star(12)
    mat = random_matrix(rng, 6, 6)
    for length in range(1, 5):
        v_short = trend_value(Trend(0, 0, length), mat)
        v_long = trend_value(Trend(0, 0, length + 1), mat)
        assert v_long > v_short  # cells >= 0 and the l^2 factor grows
