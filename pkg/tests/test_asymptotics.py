from __future__ import annotations

import math

import numpy as np
import pytest
from scipy.stats import norm

from src.asymptotics import (
    DomainError,
    LimitSpec,
    huber_centering,
    mills_tail,
    norming,
    order_stat_limit_cdf,
    phi_xn_asymptotic,
    poisson_pmf,
    poisson_pmf_array,
    poisson_support_limit,
    poisson_tv,
    predicted_lambda,
    predicted_pair_cov,
    rate_envelope,
    x_n,
)


def test_norming_constants_at_one_hundred():
    constants = norming(100)
    root = math.sqrt(2 * math.log(100))
    assert constants.a_n == pytest.approx(0.3295063, abs=1e-7)
    assert constants.b_n == pytest.approx(
        root - (math.log(math.log(100)) + math.log(4 * math.pi)) / (2 * root), abs=1e-14
    )
    assert constants.b_n == pytest.approx(2.36620, abs=1e-4)


def test_norming_at_one_million_and_product_limit():
    assert norming(10**6).a_n == pytest.approx(1 / math.sqrt(2 * math.log(10**6)), abs=1e-15)
    assert norming(10**6).a_n == pytest.approx(0.19024, abs=1e-5)
    constants = norming(10**8)
    assert abs(constants.a_n * constants.b_n - 1) < 0.09


def test_norming_monotone_in_n():
    ns = [3, 4, 10, 100, 10**4, 10**8]
    a_values = [norming(n).a_n for n in ns]
    b_values = [norming(n).b_n for n in ns]
    assert all(x > y for x, y in zip(a_values, a_values[1:]))
    assert all(x < y for x, y in zip(b_values, b_values[1:]))


@pytest.mark.parametrize("func", [norming, huber_centering])
def test_small_n_is_rejected(func):
    with pytest.raises(DomainError):
        func(2)


def test_x_n_is_affine_in_t():
    constants = norming(100)
    assert x_n(100, 0) == pytest.approx(constants.b_n, abs=1e-15)
    assert x_n(100, 1) == pytest.approx(constants.b_n + constants.a_n, abs=1e-14)
    assert x_n(100, -1) == pytest.approx(constants.b_n - constants.a_n, abs=1e-14)


def test_order_stat_limit_cdf_values():
    assert order_stat_limit_cdf(LimitSpec(t=0, j=0)) == pytest.approx(math.exp(-1), abs=1e-15)
    assert order_stat_limit_cdf(LimitSpec(t=0, j=1)) == pytest.approx(2 * math.exp(-1), abs=1e-15)
    assert order_stat_limit_cdf(LimitSpec(t=50, j=0)) == pytest.approx(1.0, abs=1e-15)
    assert order_stat_limit_cdf(LimitSpec(t=-800, j=3)) == 0.0


def test_order_stat_limit_increments_are_poisson_masses():
    t = 0.7
    lam = math.exp(-t)
    for j in range(1, 6):
        step = order_stat_limit_cdf(LimitSpec(t=t, j=j)) - order_stat_limit_cdf(LimitSpec(t=t, j=j - 1))
        assert step == pytest.approx(poisson_pmf(lam, j), abs=1e-15)


def test_order_stat_limit_monotone_in_t():
    values = [order_stat_limit_cdf(LimitSpec(t=t, j=2)) for t in np.linspace(-3, 5, 40)]
    assert all(x < y for x, y in zip(values, values[1:]))


def test_limit_spec_rejects_negative_depth():
    with pytest.raises(ValueError):
        LimitSpec(t=0, j=-1)


def test_poisson_pmf_values():
    assert poisson_pmf(1, 0) == pytest.approx(math.exp(-1), rel=1e-14)
    assert poisson_pmf(0, 0) == 1.0
    assert poisson_pmf(2, 2) == pytest.approx(2 * math.exp(-2), rel=1e-14)
    with pytest.raises(DomainError):
        poisson_pmf(-1, 0)
    with pytest.raises(DomainError):
        poisson_pmf(1, -1)


@pytest.mark.parametrize("lam", [0.1, 1.0, 7.5, 30.0])
def test_poisson_support_limit_captures_the_mass(lam):
    limit = poisson_support_limit(lam)
    assert abs(1.0 - math.fsum(poisson_pmf_array(lam, limit))) < 1e-12


def test_mills_tail_is_the_two_term_expansion():
    assert mills_tail(3) == pytest.approx(0.0013131, abs=1e-7)
    assert mills_tail(5) == pytest.approx(norm.pdf(5) / 5 * (1 - 1 / 25), rel=1e-14)
    exact = norm.sf(10)
    assert abs(mills_tail(10) - exact) / exact < 1e-3
    with pytest.raises(DomainError):
        mills_tail(0)


def test_predicted_lambda_and_pair_cov():
    assert predicted_lambda(0) == 1.0
    assert predicted_lambda(math.log(2)) == pytest.approx(0.5, rel=1e-15)
    assert predicted_lambda(-1) == pytest.approx(math.e, rel=1e-15)
    assert predicted_pair_cov(100, 0) == pytest.approx(-9.2103e-6, rel=1e-4)
    assert predicted_pair_cov(1000, 0) == pytest.approx(-1.38155e-8, rel=1e-5)
    for n in (3, 50, 10**5):
        for t in (-2.0, 0.0, 3.0):
            assert predicted_pair_cov(n, t) < 0


def test_predictions_saturate_instead_of_overflowing():
    assert predicted_lambda(-800.0) == math.inf
    assert predicted_pair_cov(100, -800.0) == -math.inf
    assert phi_xn_asymptotic(100, -800.0) == math.inf
    assert predicted_lambda(800.0) == 0.0
    assert poisson_tv(math.inf, 1.0) == 1.0
    assert poisson_tv(math.inf, math.inf) == 0.0


def test_rate_envelope():
    assert rate_envelope(10**6) == pytest.approx(0.49906, abs=1e-4)
    assert rate_envelope(10**12) == pytest.approx(0.39866, abs=1e-4)
    n = 10**9
    assert rate_envelope(n) * math.log(n) == pytest.approx(math.log(math.log(n)) ** 2, rel=1e-14)
    grid = [int(math.exp(math.e**2)) * 2**p for p in range(1, 12)]
    values = [rate_envelope(n) for n in grid]
    assert all(x > y for x, y in zip(values, values[1:]))
    with pytest.raises(DomainError):
        rate_envelope(15)


def test_huber_centering():
    assert huber_centering(101) == pytest.approx(3.03485, abs=1e-5)
    assert huber_centering(3) == pytest.approx(1.17741, abs=1e-5)
    values = [huber_centering(n) for n in (3, 10, 100, 1000)]
    assert all(x < y for x, y in zip(values, values[1:]))


def test_phi_xn_asymptotic():
    assert phi_xn_asymptotic(100, 0) == pytest.approx(0.0303485, abs=1e-7)
    assert phi_xn_asymptotic(100, math.log(2)) == pytest.approx(0.0303485 / 2, abs=1e-7)
    n = 10**6
    ratio = norm.pdf(x_n(n, 0)) / phi_xn_asymptotic(n, 0)
    assert 0.8 <= ratio <= 1.2


def test_poisson_tv_is_bounded_by_mean_gap():
    assert poisson_tv(1.0, 1.0) == pytest.approx(0.0, abs=1e-15)
    for lam, mu in [(1.0, 1.2), (0.3, 0.5), (5.0, 4.0)]:
        assert 0 < poisson_tv(lam, mu) <= abs(lam - mu) + 1e-15
    with pytest.raises(DomainError):
        poisson_tv(-1, 1)
