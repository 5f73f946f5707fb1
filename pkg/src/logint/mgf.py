"""Distributions represented by their moment generating functions.

An MgfSpec bundles t -> E{e^{tX}} with its first two derivatives and the
upper edge of the finiteness domain.  Derivatives are analytic, not
finite differences: several downstream integrands place M' inside a
quadrature whose error estimate would otherwise be polluted.

For distributions supported on [0, 1] the optional scaled evaluators
e^{-t} M(t) and e^{-t} M'(t) (t >= 0) matter: the binary-entropy
integrands contain M(t) e^{-t}-type reflections that stay bounded
analytically but overflow when the factors are formed separately.  A
default fallback multiplies the plain evaluators by e^{-t}, which is
fine up to t ~ 700; the stock instances supply exact stable forms.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Optional, Sequence

import numpy as np

from .errors import DomainError

__all__ = [
    "MgfSpec",
    "JointMgfSpec",
    "uniform01_mgf",
    "gaussian_square_mgf",
    "simo_gain_mgf",
    "product_mgf",
    "constant_mgf",
    "exponential_mgf",
    "scale_mgf",
]


@dataclass(frozen=True)
class MgfSpec:
    """A positive random variable seen through its MGF.

    m, m1, m2 evaluate E{e^{tX}} and its first two t-derivatives for
    t <= domain_upper; all accept numpy arrays.
    """

    m: Callable
    m1: Callable
    m2: Callable
    domain_upper: float
    label: str
    m_scaled: Optional[Callable] = None
    m1_scaled: Optional[Callable] = None

    def scaled_m(self, t):
        """e^{-t} m(t) for t >= 0, overflow-safe when an exact form exists."""
        if self.m_scaled is not None:
            return self.m_scaled(t)
        return self.m(t) * np.exp(-t)

    def scaled_m1(self, t):
        """e^{-t} m1(t) for t >= 0."""
        if self.m1_scaled is not None:
            return self.m1_scaled(t)
        return self.m1(t) * np.exp(-t)


@dataclass(frozen=True)
class JointMgfSpec:
    """Joint MGF (s, t) -> E{e^{sX + tY}} of a pair of positive variables."""

    m: Callable
    label: str


def uniform01_mgf() -> MgfSpec:
    """X uniform on [0, 1]: M(t) = (e^t - 1)/t.

    The closed forms of the derivatives cancel catastrophically near
    t = 0 (their numerators are O(t^2) differences of O(1) terms), so
    below |t| = 1e-2 they switch to their power series, carried far
    enough that the truncation error is below 1e-18 at the branch
    point.  A 1e-4 switch would leave ~1e-8 relative noise on the
    closed-form side of the seam, which integrands that raise these
    values to large powers turn into visible roughness.
    """

    def m(t):
        # expm1 keeps this exact at small t; the t = 0 hole is the only case
        t = np.asarray(t, dtype=float)
        ts = np.where(t == 0.0, 1.0, t)
        return np.where(t == 0.0, 1.0, np.expm1(ts) / ts)

    def m1(t):
        # E{X e^{tX}} = sum t^k / (k! (k+2))
        t = np.asarray(t, dtype=float)
        small = np.abs(t) < 1e-2
        ts = np.where(small, 1.0, t)
        direct = (np.exp(ts) * (ts - 1.0) + 1.0) / (ts * ts)
        acc = np.zeros_like(t)
        term = np.full_like(t, 0.5)
        for k in range(12):
            acc = acc + term
            term = term * t * (k + 2.0) / ((k + 1.0) * (k + 3.0))
        return np.where(small, acc, direct)

    def m2(t):
        # E{X^2 e^{tX}} = sum t^k / (k! (k+3))
        t = np.asarray(t, dtype=float)
        small = np.abs(t) < 1e-2
        ts = np.where(small, 1.0, t)
        direct = (np.exp(ts) * (ts * ts - 2.0 * ts + 2.0) - 2.0) / (ts ** 3)
        acc = np.zeros_like(t)
        term = np.full_like(t, 1.0 / 3.0)
        for k in range(12):
            acc = acc + term
            term = term * t * (k + 3.0) / ((k + 1.0) * (k + 4.0))
        return np.where(small, acc, direct)

    def m_scaled(t):
        # e^{-t} M(t) = (1 - e^{-t})/t, stable for every t > 0
        t = np.asarray(t, dtype=float)
        ts = np.where(t == 0.0, 1.0, t)
        return np.where(t == 0.0, 1.0, -np.expm1(-ts) / ts)

    def m1_scaled(t):
        # e^{-t} M'(t) = ((t-1) + e^{-t})/t^2 = sum (-t)^k / (k! (k+1)(k+2))
        t = np.asarray(t, dtype=float)
        small = np.abs(t) < 1e-2
        ts = np.where(small, 1.0, t)
        direct = ((ts - 1.0) + np.exp(-ts)) / (ts * ts)
        acc = np.zeros_like(t)
        term = np.full_like(t, 0.5)
        for k in range(0, 12):
            acc = acc + term
            term = term * (-t) / (k + 3.0)
        return np.where(small, acc, direct)

    return MgfSpec(m, m1, m2, domain_upper=np.inf, label="uniform[0,1]",
                   m_scaled=m_scaled, m1_scaled=m1_scaled)


def gaussian_square_mgf() -> MgfSpec:
    """X = Z^2 for standard normal Z: M(t) = (1 - 2t)^{-1/2}, t < 1/2."""

    def m(t):
        return 1.0 / np.sqrt(1.0 - 2.0 * np.asarray(t, dtype=float))

    def m1(t):
        return (1.0 - 2.0 * np.asarray(t, dtype=float)) ** -1.5

    def m2(t):
        return 3.0 * (1.0 - 2.0 * np.asarray(t, dtype=float)) ** -2.5

    return MgfSpec(m, m1, m2, domain_upper=0.5, label="standard-normal squared")


def simo_gain_mgf(sigma_sq: float, rho: float) -> MgfSpec:
    """rho*(f^2+g^2) for one complex Gaussian channel coefficient.

    f, g are independent N(0, sigma_sq/2), so the gain is exponential
    with mean rho*sigma_sq and M(-u) = 1/(1 + u rho sigma_sq).
    """
    if not (sigma_sq > 0.0):
        raise DomainError(f"sigma_sq must be > 0, got {sigma_sq}")
    if not (rho > 0.0):
        raise DomainError(f"rho must be > 0, got {rho}")
    a = rho * sigma_sq

    def m(t):
        return 1.0 / (1.0 - a * np.asarray(t, dtype=float))

    def m1(t):
        return a / (1.0 - a * np.asarray(t, dtype=float)) ** 2

    def m2(t):
        return 2.0 * a * a / (1.0 - a * np.asarray(t, dtype=float)) ** 3

    return MgfSpec(m, m1, m2, domain_upper=1.0 / a,
                   label=f"simo-gain(sigma_sq={sigma_sq}, rho={rho})")


def constant_mgf(c: float) -> MgfSpec:
    """Deterministic X = c >= 0: M(t) = e^{ct}."""
    if c < 0.0:
        raise DomainError(f"constant_mgf requires c >= 0, got {c}")

    def m(t):
        return np.exp(c * np.asarray(t, dtype=float))

    def m1(t):
        return c * np.exp(c * np.asarray(t, dtype=float))

    def m2(t):
        return c * c * np.exp(c * np.asarray(t, dtype=float))

    def m_scaled(t):
        return np.exp((c - 1.0) * np.asarray(t, dtype=float))

    def m1_scaled(t):
        return c * np.exp((c - 1.0) * np.asarray(t, dtype=float))

    return MgfSpec(m, m1, m2, domain_upper=np.inf, label=f"constant({c})",
                   m_scaled=m_scaled, m1_scaled=m1_scaled)


def exponential_mgf(rate: float = 1.0) -> MgfSpec:
    """Exponential with the given rate: M(t) = rate/(rate - t), t < rate."""
    if not (rate > 0.0):
        raise DomainError(f"rate must be > 0, got {rate}")

    def m(t):
        return rate / (rate - np.asarray(t, dtype=float))

    def m1(t):
        return rate / (rate - np.asarray(t, dtype=float)) ** 2

    def m2(t):
        return 2.0 * rate / (rate - np.asarray(t, dtype=float)) ** 3

    return MgfSpec(m, m1, m2, domain_upper=rate, label=f"exponential(rate={rate})")


def scale_mgf(spec: MgfSpec, c: float) -> MgfSpec:
    """MGF of cX from the MGF of X (c > 0): t -> m(ct)."""
    if not (c > 0.0):
        raise DomainError(f"scale factor must be > 0, got {c}")
    return MgfSpec(
        m=lambda t: spec.m(c * np.asarray(t, dtype=float)),
        m1=lambda t: c * spec.m1(c * np.asarray(t, dtype=float)),
        m2=lambda t: c * c * spec.m2(c * np.asarray(t, dtype=float)),
        domain_upper=spec.domain_upper / c,
        label=f"{c}*({spec.label})",
    )


def product_mgf(parts: Sequence[MgfSpec]) -> MgfSpec:
    """MGF of an independent sum: the pointwise product of component MGFs.

    Derivatives follow the product rule, assembled with leave-one-out
    products so no component is ever divided out.
    """
    parts = list(parts)
    if not parts:
        raise DomainError("product_mgf requires at least one component")
    if len(parts) == 1:
        return parts[0]
    upper = min(p.domain_upper for p in parts)
    label = " + ".join(p.label for p in parts)

    def m(t):
        out = parts[0].m(t)
        for p in parts[1:]:
            out = out * p.m(t)
        return out

    def _all_m(t):
        return [np.asarray(p.m(t), dtype=float) for p in parts]

    def _loo(ms, skip):
        out = None
        for j, mj in enumerate(ms):
            if j == skip:
                continue
            out = mj if out is None else out * mj
        return out if out is not None else 1.0

    def m1(t):
        ms = _all_m(t)
        total = 0.0
        for i, p in enumerate(parts):
            total = total + p.m1(t) * _loo(ms, i)
        return total

    def m2(t):
        ms = _all_m(t)
        d1 = [np.asarray(p.m1(t), dtype=float) for p in parts]
        total = 0.0
        for i, p in enumerate(parts):
            total = total + p.m2(t) * _loo(ms, i)
        for i in range(len(parts)):
            for j in range(len(parts)):
                if i == j:
                    continue
                pair = None
                for k, mk in enumerate(ms):
                    if k in (i, j):
                        continue
                    pair = mk if pair is None else pair * mk
                cross = d1[i] * d1[j]
                total = total + (cross if pair is None else cross * pair)
        return total

    return MgfSpec(m, m1, m2, domain_upper=upper, label=f"sum[{label}]")
