"""Independent validation machinery: Monte Carlo, enumeration, digamma.

Nothing in here is used by the computation paths; these are the oracles
the tests and the validate command hold the integral representations
against.  Monte Carlo runs on a counter-based Philox generator, so a
seed fully determines the estimate, and batch partial sums are combined
with exact (fsum) summation to keep results independent of accumulation
order up to the fixed batch layout.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import combinations_with_replacement
from typing import Callable

import numpy as np

from .coding import DmsModel
from .errors import DomainError

__all__ = [
    "McConfig",
    "McEstimate",
    "BudgetExceededError",
    "mc_expect_ln",
    "exponential_sampler",
    "uniform_sampler",
    "constant_sampler",
    "enumerate_empirical_entropy",
    "mc_kt_redundancy",
    "mc_simo",
    "digamma",
    "trigamma",
]


class BudgetExceededError(RuntimeError):
    """Exact enumeration would visit too many outcomes."""


@dataclass(frozen=True)
class McConfig:
    trials: int = 1_000_000
    seed: int = 20200151
    batch: int = 262_144

    def __post_init__(self):
        if self.trials < 1:
            raise DomainError(f"trials must be >= 1, got {self.trials}")
        if self.batch < 1:
            raise DomainError(f"batch must be >= 1, got {self.batch}")


@dataclass(frozen=True)
class McEstimate:
    mean: float
    std_error: float
    trials: int


def _rng(seed: int) -> np.random.Generator:
    return np.random.Generator(np.random.Philox(seed))


def exponential_sampler(rate: float = 1.0) -> Callable:
    def draw(rng, size):
        return rng.exponential(1.0 / rate, size)
    return draw


def uniform_sampler() -> Callable:
    def draw(rng, size):
        return rng.random(size)
    return draw


def constant_sampler(c: float) -> Callable:
    def draw(rng, size):
        return np.full(size, c)
    return draw


def mc_expect_ln(sampler: Callable, f: Callable, mc: McConfig) -> McEstimate:
    """Sample mean and standard error of f(X) with X drawn by the sampler."""
    rng = _rng(mc.seed)
    sums = []
    sq_sums = []
    left = mc.trials
    while left > 0:
        k = min(mc.batch, left)
        y = f(sampler(rng, k))
        sums.append(float(np.sum(y)))
        sq_sums.append(float(np.sum(y * y)))
        left -= k
    mean = math.fsum(sums) / mc.trials
    var = max(math.fsum(sq_sums) / mc.trials - mean * mean, 0.0)
    return McEstimate(mean, math.sqrt(var / mc.trials), mc.trials)


def enumerate_empirical_entropy(dms: DmsModel, n: int, budget: int = 1_000_000):
    """Exact (mean, variance) of the plug-in entropy over all type classes.

    Walks the C(n+K-1, K-1) compositions of n with multinomial weights in
    log space; raises BudgetExceededError beyond the outcome budget.
    """
    if n < 1 or n != int(n):
        raise DomainError(f"n must be a positive integer, got {n!r}")
    k_letters = dms.alphabet_size
    count = math.comb(n + k_letters - 1, k_letters - 1)
    if count > budget:
        raise BudgetExceededError(
            f"{count} type classes exceed the enumeration budget {budget}")
    log_p = [math.log(p) for p in dms.probs]
    lgn = math.lgamma(n + 1)
    mean_terms = []
    sq_terms = []
    weight_terms = []
    # compositions of n into k parts, generated as multisets of letter slots
    for cuts in combinations_with_replacement(range(k_letters), n):
        counts = [0] * k_letters
        for c in cuts:
            counts[c] += 1
        lw = lgn + math.fsum(k * log_p[i] - math.lgamma(k + 1)
                             for i, k in enumerate(counts))
        w = math.exp(lw)
        h = -math.fsum((k / n) * math.log(k / n) for k in counts if k > 0)
        weight_terms.append(w)
        mean_terms.append(w * h)
        sq_terms.append(w * h * h)
    norm = math.fsum(weight_terms)
    mean = math.fsum(mean_terms) / norm
    second = math.fsum(sq_terms) / norm
    return mean, max(second - mean * mean, 0.0)


def mc_kt_redundancy(dms: DmsModel, n: int, s_bias: float, mc: McConfig) -> McEstimate:
    """Simulate the sequential code Q(x|past) = (N(x)+s)/(t+sK) literally and
    average L(x^n)/n - H over sampled source sequences."""
    if n < 1 or n != int(n):
        raise DomainError(f"n must be a positive integer, got {n!r}")
    rng = _rng(mc.seed)
    k_letters = dms.alphabet_size
    cdf = np.cumsum(dms.probs)
    h_src = dms.entropy()
    sums = []
    sq_sums = []
    left = mc.trials
    while left > 0:
        b = min(mc.batch, left)
        x = np.searchsorted(cdf, rng.random((b, n)), side="right")
        x[x == k_letters] = k_letters - 1  # guard the p=1.0 edge of searchsorted
        counts = np.zeros((b, k_letters))
        rows = np.arange(b)
        code_len = np.zeros(b)
        for t in range(n):
            xt = x[:, t]
            q = (counts[rows, xt] + s_bias) / (t + s_bias * k_letters)
            code_len -= np.log(q)
            counts[rows, xt] += 1.0
        r = code_len / n - h_src
        sums.append(float(np.sum(r)))
        sq_sums.append(float(np.sum(r * r)))
        left -= b
    mean = math.fsum(sums) / mc.trials
    var = max(math.fsum(sq_sums) / mc.trials - mean * mean, 0.0)
    return McEstimate(mean, math.sqrt(var / mc.trials), mc.trials)


def mc_simo(sigma_sq, rho: float, mc: McConfig):
    """MC estimates of E and Var of ln(1 + rho sum (f_l^2 + g_l^2)).

    f_l, g_l are drawn N(0, sigma_l^2/2) so that E|h_l|^2 = sigma_l^2,
    matching the MGF convention 1/(1 + u rho sigma_l^2).  Returns a pair
    of McEstimate: (mean, variance); the variance's standard error comes
    from the fourth central moment.
    """
    if rho < 0.0:
        raise DomainError(f"rho must be >= 0, got {rho}")
    rng = _rng(mc.seed)
    scale = np.sqrt(np.asarray(sigma_sq, dtype=float) / 2.0)
    raw = [[], [], [], []]
    left = mc.trials
    while left > 0:
        b = min(mc.batch, left)
        f = rng.normal(0.0, 1.0, (b, scale.size)) * scale
        g = rng.normal(0.0, 1.0, (b, scale.size)) * scale
        v = np.log1p(rho * np.sum(f * f + g * g, axis=1))
        acc = v.copy()
        for store in raw:
            store.append(float(np.sum(acc)))
            acc = acc * v
        left -= b
    m1, m2, m3, m4 = (math.fsum(s) / mc.trials for s in raw)
    var = max(m2 - m1 * m1, 0.0)
    m4c = m4 - 4.0 * m1 * m3 + 6.0 * m1 * m1 * m2 - 3.0 * m1 ** 4
    mean_est = McEstimate(m1, math.sqrt(var / mc.trials), mc.trials)
    var_se = math.sqrt(max(m4c - var * var, 0.0) / mc.trials)
    var_est = McEstimate(var, var_se, mc.trials)
    return mean_est, var_est


# Asymptotic (de Moivre) series coefficients: B_2k/(2k) for psi, B_2k for psi'
_PSI_TAIL = (1.0 / 12.0, -1.0 / 120.0, 1.0 / 252.0, -1.0 / 240.0, 1.0 / 132.0)
_PSI1_TAIL = (1.0 / 6.0, -1.0 / 30.0, 1.0 / 42.0, -1.0 / 30.0, 5.0 / 66.0)


def digamma(x: float) -> float:
    """psi(x) by upward recurrence into the asymptotic series, x > 0."""
    if not (x > 0.0):
        raise DomainError(f"digamma requires x > 0, got {x}")
    acc = 0.0
    while x < 12.0:
        acc -= 1.0 / x
        x += 1.0
    r = 1.0 / (x * x)
    tail = 0.0
    for c in reversed(_PSI_TAIL):
        tail = r * (c + tail)
    return acc + math.log(x) - 0.5 / x - tail


def trigamma(x: float) -> float:
    """psi'(x) by upward recurrence into the asymptotic series, x > 0."""
    if not (x > 0.0):
        raise DomainError(f"trigamma requires x > 0, got {x}")
    acc = 0.0
    while x < 12.0:
        acc += 1.0 / (x * x)
        x += 1.0
    r = 1.0 / (x * x)
    tail = 0.0
    for c in reversed(_PSI1_TAIL):
        tail = r * (c + tail)
    return acc + 1.0 / x + 0.5 * r + tail / x