"""Oracle machinery: seeded MC estimators, enumeration, digamma/trigamma."""

import math

import numpy as np
import pytest

from logint.coding import DmsModel, kt_redundancy
from logint.errors import DomainError
from logint.oracles import (BudgetExceededError, McConfig, constant_sampler,
                            digamma, enumerate_empirical_entropy,
                            exponential_sampler, mc_expect_ln,
                            mc_kt_redundancy, mc_simo, trigamma,
                            uniform_sampler)
from logint.simo import capacity_closed_form_example
from logint.special import EULER_GAMMA, exp_integral_e1_scaled

BSS = DmsModel((0.5, 0.5))
LN2 = math.log(2.0)


class TestMcExpectLn:
    def test_constant_e(self):
        est = mc_expect_ln(constant_sampler(math.e), np.log,
                           McConfig(trials=1000, seed=1))
        assert est.mean == pytest.approx(1.0, abs=1e-14)
        assert est.std_error == 0.0

    def test_exponential_minus_gamma(self):
        est = mc_expect_ln(exponential_sampler(), np.log,
                           McConfig(trials=10_000_000, seed=5150))
        assert abs(est.mean + EULER_GAMMA) <= 3.0 * est.std_error

    def test_uniform_ln1p(self):
        est = mc_expect_ln(uniform_sampler(), np.log1p,
                           McConfig(trials=2_000_000, seed=61))
        assert abs(est.mean - (2.0 * LN2 - 1.0)) <= 3.0 * est.std_error

    def test_seed_determinism(self):
        cfg = McConfig(trials=100_000, seed=314159)
        a = mc_expect_ln(exponential_sampler(), np.log, cfg)
        b = mc_expect_ln(exponential_sampler(), np.log, cfg)
        assert a == b

    def test_std_error_scaling(self):
        small = mc_expect_ln(exponential_sampler(), np.log,
                             McConfig(trials=250_000, seed=2))
        large = mc_expect_ln(exponential_sampler(), np.log,
                             McConfig(trials=1_000_000, seed=2))
        ratio = large.std_error / small.std_error
        assert 0.4 <= ratio <= 0.6

    def test_config_validation(self):
        with pytest.raises(DomainError):
            McConfig(trials=0)


class TestEnumeration:
    def test_bss_n2_hand_values(self):
        mean, var = enumerate_empirical_entropy(BSS, 2)
        assert mean == pytest.approx(0.5 * LN2, rel=1e-13)
        assert var == pytest.approx(LN2 * LN2 / 4.0, rel=1e-13)

    def test_n1_degenerate(self):
        mean, var = enumerate_empirical_entropy(DmsModel((0.3, 0.7)), 1)
        assert mean == 0.0
        assert var == 0.0

    def test_budget_guard(self):
        with pytest.raises(BudgetExceededError):
            enumerate_empirical_entropy(DmsModel((0.25,) * 4), 1000)


class TestMcKt:
    def test_n1_bss_deterministic_lengths(self):
        est = mc_kt_redundancy(BSS, 1, 0.5, McConfig(trials=5000, seed=9))
        assert est.mean == pytest.approx(0.0, abs=1e-14)
        assert est.std_error == pytest.approx(0.0, abs=1e-14)

    def test_matches_integral(self):
        est = mc_kt_redundancy(BSS, 64, 0.5, McConfig(trials=300_000, seed=43))
        assert abs(est.mean - kt_redundancy(BSS, 64, 0.5)) <= 3.0 * est.std_error

    def test_nonnegative_within_noise(self):
        est = mc_kt_redundancy(BSS, 32, 0.5, McConfig(trials=50_000, seed=44))
        assert est.mean >= -3.0 * est.std_error


class TestMcSimo:
    def test_zero_snr(self):
        mean_est, var_est = mc_simo((0.5, 1.0), 0.0, McConfig(trials=10_000, seed=3))
        assert mean_est.mean == 0.0
        assert var_est.mean == 0.0

    def test_example_channel_mean(self):
        mean_est, _ = mc_simo((0.5, 1.0), 1.0, McConfig(trials=1_000_000, seed=55))
        assert abs(mean_est.mean - capacity_closed_form_example(1.0)) \
            <= 3.0 * mean_est.std_error

    def test_single_antenna_e1_identity(self):
        # |h|^2 exponential: E ln(1+rho X) = e^{1/rho} E1(1/rho)
        rho = 2.0
        mean_est, _ = mc_simo((1.0,), rho, McConfig(trials=1_000_000, seed=66))
        assert abs(mean_est.mean - exp_integral_e1_scaled(1.0 / rho)) \
            <= 3.0 * mean_est.std_error


class TestPolygamma:
    def test_digamma_identities(self):
        assert abs(digamma(1.0) + EULER_GAMMA) <= 1e-12
        assert abs(digamma(0.5) + EULER_GAMMA + 2.0 * LN2) <= 1e-12
        assert abs(digamma(2.0) - (1.0 - EULER_GAMMA)) <= 1e-12

    def test_trigamma_identities(self):
        assert abs(trigamma(1.0) - math.pi ** 2 / 6.0) <= 1e-12
        assert abs(trigamma(0.5) - math.pi ** 2 / 2.0) <= 1e-12

    def test_recurrences(self):
        for x in (0.3, 1.7, 5.5):
            assert abs(digamma(x + 1.0) - digamma(x) - 1.0 / x) <= 1e-12
            assert abs(trigamma(x + 1.0) - trigamma(x) + 1.0 / (x * x)) <= 1e-12

    def test_domain(self):
        with pytest.raises(DomainError):
            digamma(0.0)
        with pytest.raises(DomainError):
            trigamma(-1.0)
