import numpy as np
import pytest

from hermgeo import fiber, sampling
from hermgeo.oracle import discrete_length, distance_oracle

I2 = np.eye(2, dtype=complex)


def test_equal_endpoints():
    p = np.diag([2.0, 3.0])
    assert distance_oracle(p, p, 0.0, segments=8, iterations=20) \
        == pytest.approx(0.0, abs=1e-6)


def test_conformal_pair():
    d = distance_oracle(I2, np.exp(2.0) * I2, 0.0, segments=64, iterations=500,
                        seed=3)
    assert d == pytest.approx(2.0 * np.sqrt(2.0), rel=0.01)


def test_random_pairs_match_closed_form():
    rng = sampling.make_rng(40)
    for alpha in (0.0, 0.5):
        p = sampling.random_posdef(rng, 2, spread=1.2)
        q = sampling.random_posdef(rng, 2, spread=1.2)
        d = fiber.fiber_distance(p, q, alpha)
        o = distance_oracle(p, q, alpha, segments=64, iterations=500, seed=41)
        assert abs(o - d) / d < 0.01
        assert o >= d - 1e-6


def test_deterministic_given_seed():
    rng = sampling.make_rng(42)
    p = sampling.random_posdef(rng, 2)
    q = sampling.random_posdef(rng, 2)
    a = distance_oracle(p, q, 0.0, segments=16, iterations=50, seed=9)
    b = distance_oracle(p, q, 0.0, segments=16, iterations=50, seed=9)
    assert a == b


def test_segment_floor():
    with pytest.raises(ValueError):
        distance_oracle(I2, 2.0 * I2, 0.0, segments=4)


def test_discrete_length_straight_commuting():
    # for commuting (scalar) metrics in rank 1, any monotone path has the
    # same length, so even the unoptimized straight path is near-exact
    path = np.linspace(1.0, np.exp(2.0), 65)[:, None, None].astype(complex)
    assert discrete_length(path, 0.0) == pytest.approx(2.0, rel=1e-4)
