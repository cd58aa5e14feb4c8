import numpy as np
import pytest

from stieltjes_lab.coeffs import CHUNK, Constant, CoefficientStream, GammaParams, gamma_sample, make_stream
from stieltjes_lab.errors import ParameterError

N = 10 ** 6


def draws(a, b, seed=0):
    return make_stream(GammaParams(a, b), seed).take(N)


def test_unit_mean_gamma_has_mean_one():
    x = draws(8, 1 / 8)
    se = x.std() / np.sqrt(N)
    assert abs(x.mean() - 1.0) < 3 * se


def test_exponential_tail_fraction():
    x = draws(1, 2, seed=1)
    frac = np.mean(x > 2)
    p = np.exp(-1)
    assert abs(frac - p) < 3 * np.sqrt(p * (1 - p) / N)


def test_small_shape_mean():
    x = draws(0.5, 1, seed=2)
    assert abs(x.mean() - 0.5) < 3 * x.std() / np.sqrt(N)


@pytest.mark.parametrize("a,b", [(1, 1), (8, 1 / 8), (0.5, 2)])
def test_mean_and_variance_within_four_se(a, b):
    x = draws(a, b, seed=3)
    mean, var = a * b, a * b * b
    assert abs(x.mean() - mean) < 4 * np.sqrt(var / N)
    # fourth central moment of the gamma law is var^2 (3 + 6/a)
    se_var = np.sqrt((var ** 2 * (3 + 6 / a) - var ** 2) / N)
    assert abs(x.var() - var) < 4 * se_var


def test_all_draws_positive():
    for a in (0.05, 0.5, 1.0, 30.0):
        assert np.all(draws(a, 1.0)[:50000] > 0)


def test_constant_stream():
    s = make_stream(1.0)
    assert np.array_equal(s.take(7), np.ones(7))
    assert list(zip(range(5), s)) == [(i, 1.0) for i in range(5)]
    assert make_stream(Constant(2.5)).take(3).tolist() == [2.5, 2.5, 2.5]


def test_replay_is_identical():
    kind = GammaParams(2.0, 0.5)
    a = make_stream(kind, 42).take(10 ** 4)
    b = make_stream(kind, 42).take(10 ** 4)
    assert a.tobytes() == b.tobytes()


def test_prefix_does_not_depend_on_request_size():
    s = make_stream(GammaParams(3.0, 1.0), 7, 2)
    long = s.take(3 * CHUNK + 11)
    assert np.array_equal(s.take(5), long[:5])
    assert np.array_equal(s.take(CHUNK + 1), long[:CHUNK + 1])
    it = iter(s)
    assert [next(it) for _ in range(20)] == long[:20].tolist()


def test_stream_indices_are_uncorrelated():
    kind = GammaParams(1.0, 1.0)
    x = make_stream(kind, 5, 0).take(10 ** 5)
    y = make_stream(kind, 5, 1).take(10 ** 5)
    r = np.corrcoef(x, y)[0, 1]
    assert abs(r) < 3 / np.sqrt(len(x))
    assert not np.array_equal(x[:10], y[:10])


def test_gamma_sample_uses_given_generator():
    rng1, rng2 = np.random.default_rng(9), np.random.default_rng(9)
    p = GammaParams(4.0, 0.25)
    assert np.array_equal(gamma_sample(p, rng1, 10), gamma_sample(p, rng2, 10))


@pytest.mark.parametrize("a,b", [(0, 1), (-1, 1), (1, 0), (1, -2), (np.nan, 1), (1, np.inf)])
def test_invalid_gamma_params(a, b):
    with pytest.raises(ParameterError):
        GammaParams(a, b)


def test_invalid_stream_arguments():
    with pytest.raises(ParameterError):
        Constant(0.0)
    with pytest.raises(ParameterError):
        CoefficientStream(GammaParams(1, 1), 0, -1)
    with pytest.raises(ParameterError):
        make_stream(1.0).take(-1)
