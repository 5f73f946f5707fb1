"""Seeded randomized cross-checks against independent closed forms.

Hyperexponential mixtures make sharp fuzz targets: a mixture's log
moments are mixture-linear, and each exponential component has
E{ln X} = -gamma - ln rate and E{ln^2 X} = psi'(1) + (gamma + ln rate)^2,
so expect_ln and var_ln can be checked in closed form for arbitrary
random mixtures.  Random generalized Cauchy models similarly admit
h = q (psi(q) - psi(q - n/theta)) - ln C_n, derived independently of
the quadrature path, and random small DMS models are enumerable.
"""

import math

import numpy as np
import pytest

from logint.cauchy import GenCauchyModel, diff_entropy, normalizer_cn
from logint.coding import (DmsModel, empirical_entropy_mean,
                           empirical_entropy_var, kt_redundancy)
from logint.logmoments import expect_ln, expect_ln1p, var_ln, var_ln1p
from logint.mgf import MgfSpec
from logint.oracles import (McConfig, digamma, enumerate_empirical_entropy,
                            mc_expect_ln, trigamma)
from logint.quadrature import QuadConfig
from logint.special import EULER_GAMMA


def hyperexponential(weights, rates):
    weights = np.asarray(weights, dtype=float)
    rates = np.asarray(rates, dtype=float)

    def m(t):
        t = np.asarray(t, dtype=float)[..., None]
        return np.sum(weights * rates / (rates - t), axis=-1)

    def m1(t):
        t = np.asarray(t, dtype=float)[..., None]
        return np.sum(weights * rates / (rates - t) ** 2, axis=-1)

    def m2(t):
        t = np.asarray(t, dtype=float)[..., None]
        return np.sum(weights * 2.0 * rates / (rates - t) ** 3, axis=-1)

    return MgfSpec(m, m1, m2, domain_upper=float(np.min(rates)),
                   label=f"hyperexp({len(weights)})")


def random_mixture(rng):
    k = int(rng.integers(2, 5))
    w = rng.dirichlet(np.ones(k))
    rates = rng.uniform(0.2, 5.0, k)
    return w, rates


@pytest.mark.parametrize("seed", [11, 22, 33, 44])
def test_expect_ln_hyperexponential(seed):
    rng = np.random.default_rng(seed)
    w, rates = random_mixture(rng)
    spec = hyperexponential(w, rates)
    closed = float(np.sum(w * (-EULER_GAMMA - np.log(rates))))
    assert abs(expect_ln(spec) - closed) <= 1e-9


@pytest.mark.parametrize("seed", [55, 66])
def test_var_ln_hyperexponential(seed):
    rng = np.random.default_rng(seed)
    w, rates = random_mixture(rng)
    spec = hyperexponential(w, rates)
    first = float(np.sum(w * (-EULER_GAMMA - np.log(rates))))
    second = float(np.sum(w * (trigamma(1.0) + (EULER_GAMMA + np.log(rates)) ** 2)))
    closed = second - first * first
    assert abs(var_ln(spec, 1.0) - closed) <= 1e-7


@pytest.mark.parametrize("seed", [77, 88])
def test_ln1p_hyperexponential_vs_mc(seed):
    rng = np.random.default_rng(seed)
    w, rates = random_mixture(rng)
    spec = hyperexponential(w, rates)

    def sampler(gen, size):
        comp = gen.choice(len(w), size=size, p=w)
        return gen.exponential(1.0, size) / np.asarray(rates)[comp]

    mean_val = expect_ln1p(spec)
    var_val = var_ln1p(spec)
    est = mc_expect_ln(sampler, np.log1p, McConfig(trials=2_000_000, seed=seed))
    est2 = mc_expect_ln(sampler, lambda x: np.log1p(x) ** 2,
                        McConfig(trials=2_000_000, seed=seed))
    assert abs(mean_val - est.mean) <= 3.0 * est.std_error
    assert abs((var_val + mean_val ** 2) - est2.mean) <= 3.0 * est2.std_error


@pytest.mark.parametrize("seed", [1, 2, 3, 4, 5])
def test_cauchy_entropy_vs_digamma_closed_form(seed):
    rng = np.random.default_rng(seed)
    theta = float(rng.uniform(0.5, 3.0))
    n = int(rng.integers(1, 5))
    q = n / theta + float(rng.uniform(0.2, 3.0))
    model = GenCauchyModel(theta, q, n)
    closed = q * (digamma(q) - digamma(q - n / theta)) \
        - math.log(normalizer_cn(model))
    assert abs(diff_entropy(model) - closed) <= 1e-8 * max(1.0, abs(closed))


@pytest.mark.parametrize("seed", [6, 7, 8])
def test_empirical_entropy_vs_enumeration_random_dms(seed):
    rng = np.random.default_rng(seed)
    k = int(rng.integers(2, 5))
    probs = rng.dirichlet(np.ones(k) * 2.0)
    dms = DmsModel(tuple(probs / probs.sum()))
    n = int(rng.integers(2, 9))
    mean, var = enumerate_empirical_entropy(dms, n)
    assert abs(empirical_entropy_mean(dms, n) - mean) <= 1e-9
    assert abs(empirical_entropy_var(dms, n) - var) <= 1e-9


@pytest.mark.parametrize("seed", [9, 10])
def test_kt_redundancy_small_n_exact_enumeration(seed):
    # for tiny n, enumerate all |A|^n sequences and average the code length
    rng = np.random.default_rng(seed)
    k = int(rng.integers(2, 4))
    probs = rng.dirichlet(np.ones(k) * 3.0)
    dms = DmsModel(tuple(probs / probs.sum()))
    n = int(rng.integers(2, 6))
    s = 0.5
    total = 0.0
    for digits in np.ndindex(*([k] * n)):
        p_seq = 1.0
        length = 0.0
        counts = [0] * k
        for t, x in enumerate(digits):
            length -= math.log((counts[x] + s) / (t + s * k))
            counts[x] += 1
            p_seq *= dms.probs[x]
        total += p_seq * length
    exact = total / n - dms.entropy()
    assert abs(kt_redundancy(dms, n, s) - exact) <= 1e-9
