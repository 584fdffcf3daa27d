"""Large-lambda / large-D asymptotics.

If f(lam) = lam^-1 (g1 lam^(1-theta) + g2 + g3 lam^(theta-1) + ...), then
V(D) = g1 S D^(1-theta) + g2/theta - c3 D^(theta-1) + ..., with
S = theta^-theta (1-theta)^-(1-theta).
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import green
from .green import ProblemSpec
from .specfun import DomainError

__all__ = [
    "UnsupportedSpec",
    "ExpansionCoeffs",
    "TorusConstants",
    "coeffs_for",
    "v_two_term",
    "v_three_term",
    "lambda_asymptotic",
    "torus_constants",
    "em_direct",
    "em_expansion",
    "bg_bound",
    "BG_L",
]

BG_L = 2.15627


class UnsupportedSpec(ValueError):
    """No power-law expansion is available for this problem."""


def s_factor(theta: float) -> float:
    return 1.0 / (theta ** theta * (1.0 - theta) ** (1.0 - theta))


@dataclass(frozen=True)
class ExpansionCoeffs:
    g1: float
    g2: float
    g3: float
    theta: float

    def __post_init__(self):
        if not self.g1 > 0:
            raise ValueError("g1 must be positive")
        if not 0.0 < self.theta < 1.0:
            raise ValueError("theta must lie in (0, 1)")

    @property
    def S(self) -> float:
        return s_factor(self.theta)

    @property
    def third(self) -> float:
        # coefficient c3 of -c3 D^(theta-1) in the V(D) expansion
        a, b, c, th = self.g1, self.g2, self.g3, self.theta
        return 0.5 / self.S * (b * b * (1.0 - th) - 2.0 * th * a * c) / (th ** 3 * a)


def coeffs_for(spec: ProblemSpec) -> ExpansionCoeffs:
    """Expansion coefficients (g1, g2, g3, theta) for the supported problems."""
    k = spec.kind
    if k == "rn":
        theta, c = green._rn_coeff(spec.n, spec.l, spec.m)
        return ExpansionCoeffs(c, 0.0, 0.0, theta)
    if k == "torus":
        n, l, m = spec.n, spec.l, spec.m
        if l == 0:
            theta = 1.0 - n / (2.0 * m)
            g1 = math.pi * green._sigma(n) / (2.0 * m * math.sin(math.pi * n / (2.0 * m))) / (2.0 * math.pi) ** n
            return ExpansionCoeffs(g1, -((2.0 * math.pi) ** -n), 0.0, theta)
        if (n, l, m) == (3, 1.0, 2.0):
            p = 8.0 * math.pi ** 3
            return ExpansionCoeffs(2.0 * math.pi ** 2 / p, green.beta3_constant() / p, 1.0 / p, 0.5)
        raise UnsupportedSpec(f"no expansion tabulated for {spec.label()}")
    if k == "sphere2":
        theta = (spec.m - 1.0) / spec.m
        return ExpansionCoeffs((1.0 - theta) / (4.0 * math.sin(theta * math.pi)), -1.0 / (6.0 * math.pi), 0.0, theta)
    if k == "sphere3":
        return ExpansionCoeffs(1.0 / (4.0 * math.pi), -3.0 / (8.0 * math.pi ** 2), -1.0 / (8.0 * math.pi), 0.5)
    raise UnsupportedSpec(f"no power-law expansion for {spec.label()}")


def v_two_term(c: ExpansionCoeffs, D):
    """g1 S D^(1-theta) + g2/theta, the bound without the third term."""
    D = np.asarray(D, dtype=float)
    out = c.g1 * c.S * D ** (1.0 - c.theta) + c.g2 / c.theta
    return float(out) if out.ndim == 0 else out


def v_three_term(c: ExpansionCoeffs, D):
    """g1 S D^(1-theta) + g2/theta - c3 D^(theta-1)."""
    D = np.asarray(D, dtype=float)
    th = c.theta
    out = c.g1 * c.S * D ** (1.0 - th) + c.g2 / th - c.third * D ** (th - 1.0)
    return float(out) if out.ndim == 0 else out


def lambda_asymptotic(c: ExpansionCoeffs, D):
    """Large-D minimiser lam(D) = r D + s D^theta + t D^(2 theta - 1)."""
    D = np.asarray(D, dtype=float)
    a, b, g, th = c.g1, c.g2, c.g3, c.theta
    r = th / (1.0 - th)
    s = b / a / (th ** (1.0 - th) * (1.0 - th) ** th)
    t = (2.0 * a * g * th - (1.0 - th) * b * b) / (a * a * th ** (3.0 - 2.0 * th) * (1.0 - th) ** (2.0 * th - 1.0))
    out = r * D + s * D ** th + t * D ** (2.0 * th - 1.0)
    return float(out) if out.ndim == 0 else out


@dataclass(frozen=True)
class TorusConstants:
    c: float
    k: float
    l: float


def torus_constants(n: int, m: float) -> TorusConstants:
    """Coefficients of V(D) = c D^(n/2m) - k - l D^(-n/2m) + ... on the n-torus (l = 0).

    ``l`` carries the factor (2m - n)^(2 + n/2m); it agrees with the
    generic third-order coefficient of the expansion.
    """
    if not 2.0 * m > n:
        raise DomainError("need 2m > n")
    sig = green._sigma(n)
    tp = (2.0 * math.pi) ** n
    e = n / (2.0 * m)
    sn = math.sin(math.pi * e)
    c = math.pi * sig / (tp * n ** e * (2.0 * m - n) ** (1.0 - e) * sn)
    k = 2.0 * m / (tp * (2.0 * m - n))
    l = 2.0 * n ** (1.0 + e) * m * m * sn / (tp * math.pi * sig * (2.0 * m - n) ** (2.0 + e))
    return TorusConstants(c, k, l)


# ------------------------------------------------------------------ Euler-Maclaurin


def em_direct(f, mu: float, max_terms: int = 10_000_000) -> float:
    """sum_{n>=1} (2n+1) f(mu n(n+1)), summed until a term drops below 1e-16 of the total."""
    if not mu > 0:
        raise ValueError("mu must be positive")
    total = 0.0
    start = 1
    chunk = 4096
    while start <= max_terms:
        n = np.arange(start, start + chunk, dtype=float)
        terms = (2.0 * n + 1.0) * np.asarray(f(mu * n * (n + 1.0)), dtype=float)
        total += float(np.sum(terms))
        small = np.abs(terms) < 1e-16 * abs(total)
        if small[-1] and total != 0.0 or not np.any(terms):
            return total
        start += chunk
        chunk = min(2 * chunk, 1 << 20)
    raise RuntimeError(f"em_direct did not converge within {max_terms} terms")


def em_expansion(F0: float, f0: float, fp0: float, mu: float) -> float:
    """F0/mu - (2/3) f(0) - (1/15) mu f'(0), with F0 = integral of f over (0, inf)."""
    return F0 / mu - 2.0 / 3.0 * f0 - mu * fp0 / 15.0


def bg_bound(D, L: float = BG_L):
    """(1/4 pi)(log D + log(1 + log D) + L), the borderline 2-D torus bound."""
    D = np.asarray(D, dtype=float)
    if np.any(D < 1.0):
        raise DomainError("bg_bound needs D >= 1")
    lg = np.log(D)
    out = (lg + np.log1p(lg) + L) / (4.0 * math.pi)
    return float(out) if out.ndim == 0 else out
