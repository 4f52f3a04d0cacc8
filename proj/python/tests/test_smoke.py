import math

import numpy as np
import pytest

import bppdist


def test_linear_means():
    for n in range(1, 6):
        assert bppdist.moment(1, 2.0, 5, n, 1.0) == pytest.approx(2.0 * n / 6, rel=1e-13)


def test_infinite_moment_branch():
    assert math.isinf(bppdist.moment(2, 1.0, 10, 1, -2.0))
    assert math.isfinite(bppdist.moment(2, 1.0, 10, 1, -1.9))


def test_cdf_complement():
    for r in np.linspace(0.0, 1.0, 11):
        total = bppdist.cdf(3, 1.0, 10, 4, r) + bppdist.ccdf(3, 1.0, 10, 4, r)
        assert total == pytest.approx(1.0, abs=1e-15)


def test_quantile_inverts_cdf():
    r = bppdist.quantile(2, 1.0, 10, 3, 0.3)
    assert bppdist.cdf(2, 1.0, 10, 3, r) == pytest.approx(0.3, abs=1e-10)


def test_interference_closed_form():
    assert bppdist.mean_interference(3, 1.0, 10, 0.5, 2.0) == pytest.approx(15.0)
    assert math.isinf(bppdist.mean_interference(2, 1.0, 10, 0.5, 2.0))


def test_density():
    assert bppdist.density(2, 1.0, 10) == pytest.approx(3.18, abs=0.005)


def test_domain_errors_are_value_errors():
    with pytest.raises(ValueError):
        bppdist.pdf(2, 1.0, 10, 11, 0.5)
    with pytest.raises(bppdist.DomainError):
        bppdist.cdf(2, 1.0, 10, 1, 1.5)


def test_samples_sorted_and_reproducible():
    a = bppdist.sample_distances(2, 1.0, 10, seed=3, trials=500, workers=2)
    b = bppdist.sample_distances(2, 1.0, 10, seed=3, trials=500, workers=2)
    assert a.shape == (500, 10)
    assert np.array_equal(a, b)
    assert np.all(np.diff(a, axis=1) >= 0.0)
    assert np.all((a >= 0.0) & (a <= 1.0))


def test_conditional_inner_branch_matches_reduced_law():
    for r in (0.1, 0.3, 0.5):
        assert bppdist.cond_cdf(2, 1.0, 10, 6, 0.55, 2, r) == pytest.approx(
            bppdist.cdf(2, 0.55, 5, 2, r), abs=1e-12)


def test_validate_returns_rows():
    passed, rows = bppdist.validate("cond-ppp", seed=1, trials=2000)
    assert isinstance(passed, bool)
    assert rows and {"check", "statistic", "threshold", "passed"} <= set(rows[0])
