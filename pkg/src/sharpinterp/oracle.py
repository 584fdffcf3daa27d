"""Brute-force checks in Fourier space.

Random real zero-mean trigonometric polynomials on the 2 pi-periodic
torus, their norms (exact, by Parseval), a lower bound for the sup norm
and the margins of the torus inequalities. Nothing here touches the
Green's function machinery except ``truncated_green_poly``, which builds
near-extremal test functions.

Norm convention: ||u||^2 = integral over [0, 2 pi]^n of |u|^2.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from functools import cached_property

import numpy as np

from . import green
from .green import ProblemSpec

__all__ = [
    "TrigPoly",
    "Norms",
    "INEQUALITIES",
    "sample_trig_poly",
    "poly_norms",
    "poly_sup",
    "truncated_green_poly",
    "inequality_margin",
    "carlson_margins",
    "carlson_as_poly",
    "sample_carlson",
]

INEQUALITIES = ("T1_m1", "T1_m2", "T2_m2", "T3_l1m2")
_DIM = {"T1_m1": 1, "T1_m2": 1, "T2_m2": 2, "T3_l1m2": 3}
C_T1M2 = math.sqrt(2.0) / 27.0 ** 0.25


@dataclass(frozen=True)
class TrigPoly:
    """u(x) = sum c_k exp(i k.x) over |k|_inf <= N; coeffs[k + N] holds c_k."""

    dim: int
    max_freq: int
    coeffs: np.ndarray

    def __post_init__(self):
        shape = (2 * self.max_freq + 1,) * self.dim
        if self.coeffs.shape != shape:
            raise ValueError(f"coeffs must have shape {shape}")

    def k_squared(self):
        ax = np.arange(-self.max_freq, self.max_freq + 1, dtype=float)
        grids = np.meshgrid(*([ax] * self.dim), indexing="ij")
        return sum(g * g for g in grids)

    @cached_property
    def _kt(self):
        ax = np.arange(-self.max_freq, self.max_freq + 1, dtype=float)
        grids = np.meshgrid(*([ax] * self.dim), indexing="ij")
        kt = np.stack([g.ravel() for g in grids], axis=0)
        keep = np.abs(self.coeffs.ravel()) > 0
        return kt[:, keep], self.coeffs.ravel()[keep]

    def __call__(self, x):
        """Evaluate at points x of shape (P, dim); a 1-D array is read as P points on T^1."""
        x = np.asarray(x, dtype=float)
        if x.ndim == 1 and self.dim == 1:
            x = x[:, None]
        x = np.atleast_2d(x)
        kt, c = self._kt
        return (np.exp(1j * (x @ kt)) @ c).real

    def scaled(self, c):
        return TrigPoly(self.dim, self.max_freq, c * self.coeffs)


def _hermitian(c):
    # c_{-k} = conj(c_k); flipping every axis maps k to -k
    return 0.5 * (c + np.conj(np.flip(c)))


def sample_trig_poly(n: int, N: int, seed) -> TrigPoly:
    """Gaussian coefficients with variance |k|^-(n+1), Hermitian-symmetrised, c_0 = 0.

    Uses a Philox counter-based generator, so a seed gives the same
    polynomial on every platform.
    """
    if n not in (1, 2, 3):
        raise ValueError("n must be 1, 2 or 3")
    if N < 1:
        raise ValueError("N must be >= 1")
    rng = np.random.Generator(np.random.Philox(seed))
    shape = (2 * N + 1,) * n
    z = rng.standard_normal(shape) + 1j * rng.standard_normal(shape)
    p = TrigPoly(n, N, np.zeros(shape, dtype=complex))
    k2 = p.k_squared()
    k2[(N,) * n] = 1.0
    sd = k2 ** (-(n + 1) / 4.0) / math.sqrt(2.0)
    c = _hermitian(z * sd)
    c[(N,) * n] = 0.0
    return TrigPoly(n, N, c)


@dataclass(frozen=True)
class Norms:
    B_norm: float
    A_norm: float


def poly_norms(p: TrigPoly, l: float, m: float) -> Norms:
    """||u||_B and ||u||_A with ||u||_B^2 = (2 pi)^n sum |k|^2l |c_k|^2 (A likewise with m)."""
    k2 = p.k_squared()
    w = np.abs(p.coeffs) ** 2
    nz = k2 > 0
    vol = (2.0 * math.pi) ** p.dim
    b = vol * np.sum(k2[nz] ** l * w[nz])
    a = vol * np.sum(k2[nz] ** m * w[nz])
    return Norms(math.sqrt(b), math.sqrt(a))


def _grid_values(p: TrigPoly, M: int):
    # u on the uniform M^n grid x_j = 2 pi j / M via an inverse FFT
    N = p.max_freq
    buf = np.zeros((M,) * p.dim, dtype=complex)
    idx = np.arange(-N, N + 1) % M
    buf[np.ix_(*([idx] * p.dim))] = p.coeffs
    return (np.fft.ifftn(buf) * M ** p.dim).real


def poly_sup(p: TrigPoly, levels: int = 3, sweeps: int = 2, ternary_steps: int = 40, return_point: bool = False):
    """Lower bound for max |u|: grid maximum refined by coordinate ternary search.

    Every returned value is an actual evaluation of |u|, so it never
    overestimates the sup norm.
    """
    if levels < 1:
        raise ValueError("levels must be >= 1")
    M = 2 ** levels * (2 * p.max_freq + 1)
    vals = np.abs(_grid_values(p, M))
    j = np.unravel_index(int(np.argmax(vals)), vals.shape)
    h = 2.0 * math.pi / M
    x = np.array(j, dtype=float) * h
    best = float(vals[j])

    for _ in range(sweeps):
        for d in range(p.dim):
            lo, hi = x[d] - h, x[d] + h
            y = np.tile(x, (2, 1))
            # ternary search; the bracket shrinks by 2/3 per step
            for _ in range(ternary_steps):
                y[0, d] = lo + (hi - lo) / 3.0
                y[1, d] = hi - (hi - lo) / 3.0
                va, vb = np.abs(p(y))
                if va < vb:
                    lo = y[0, d]
                else:
                    hi = y[1, d]
            y = x.copy()
            y[d] = 0.5 * (lo + hi)
            v = abs(float(p(y[None, :])[0]))
            if v > best:
                best, x = v, y
    return (best, x) if return_point else best


def truncated_green_poly(spec: ProblemSpec, lam: float, xi, N: int) -> TrigPoly:
    """The Green's function G_lam(., xi) cut to |k|_inf <= N."""
    if spec.kind != "torus":
        raise ValueError("truncated_green_poly needs a torus spec")
    if not lam > -1.0:
        raise ValueError("need lam > -1")
    n = spec.n
    xi = np.broadcast_to(np.asarray(xi, dtype=float), (n,))
    p = TrigPoly(n, N, np.zeros((2 * N + 1,) * n, dtype=complex))
    k2 = p.k_squared()
    ax = np.arange(-N, N + 1, dtype=float)
    grids = np.meshgrid(*([ax] * n), indexing="ij")
    phase = sum(g * x for g, x in zip(grids, xi))
    nz = k2 > 0
    c = np.zeros_like(k2, dtype=complex)
    c[nz] = np.exp(-1j * phase[nz]) / ((2.0 * math.pi) ** n * (k2[nz] ** spec.m + lam * k2[nz] ** spec.l))
    return TrigPoly(n, N, c)


def inequality_margin(p: TrigPoly, ineq: str, at=None, levels: int = 3) -> float:
    """RHS minus ||u||_inf^2 for one of the torus inequalities.

    ||u||_inf comes from ``poly_sup`` (a lower bound), so a nonnegative
    margin is conservative. With ``at`` given, |u(at)| is used instead.
    """
    if ineq not in INEQUALITIES:
        raise ValueError(f"unknown inequality {ineq!r}; expected one of {INEQUALITIES}")
    if p.dim != _DIM[ineq]:
        raise ValueError(f"{ineq} lives on T^{_DIM[ineq]}, got a polynomial on T^{p.dim}")
    if at is None:
        sup = poly_sup(p, levels)
    else:
        at = np.broadcast_to(np.asarray(at, dtype=float), (p.dim,))
        sup = abs(float(p(at[None, :])[0]))
    if ineq == "T1_m1":
        nb = poly_norms(p, 0, 1)
        rhs = nb.B_norm * nb.A_norm - nb.B_norm ** 2 / math.pi
    elif ineq == "T1_m2":
        nb = poly_norms(p, 0, 2)
        rhs = C_T1M2 * nb.B_norm ** 1.5 * nb.A_norm ** 0.5 - 2.0 / (3.0 * math.pi) * nb.B_norm ** 2
    elif ineq == "T2_m2":
        nb = poly_norms(p, 0, 2)
        rhs = 0.25 * nb.B_norm * nb.A_norm - nb.B_norm ** 2 / (2.0 * math.pi ** 2)
    else:
        nb = poly_norms(p, 1, 2)
        rhs = nb.B_norm * nb.A_norm / (2.0 * math.pi) + green.beta3_constant() / (4.0 * math.pi ** 3) * nb.B_norm ** 2
    return rhs - sup * sup


# ------------------------------------------------------------------ Carlson


def carlson_margins(a):
    """Both improved Carlson inequalities, as (margin1, margin2); a_k is indexed from k = 1."""
    a = np.asarray(a, dtype=float)
    if np.any(a < 0):
        raise ValueError("Carlson sequences must be nonnegative")
    # both margins are 2-homogeneous; normalise so products of sums cannot under/overflow
    scale = float(np.max(a)) if a.size else 0.0
    if scale == 0.0:
        return 0.0, 0.0
    a = a / scale
    k = np.arange(1, a.size + 1, dtype=float)
    s2 = float(np.sum(a * a))
    s1 = float(np.sum(a))
    m1 = math.pi * math.sqrt(s2 * float(np.sum(k * k * a * a))) - s2 - s1 * s1
    m2 = math.sqrt(2.0) * math.pi / 27.0 ** 0.25 * s2 ** 0.75 * float(np.sum(k ** 4 * a * a)) ** 0.25
    m2 -= 2.0 / 3.0 * s2 + s1 * s1
    return m1 * scale * scale, m2 * scale * scale


def carlson_as_poly(a) -> TrigPoly:
    """The even function u(x) = sum_{k != 0} a_|k| e^(ikx); its sup is u(0) = 2 sum a_k."""
    a = np.asarray(a, dtype=float)
    M = a.size
    c = np.concatenate([a[::-1], [0.0], a]).astype(complex)
    return TrigPoly(1, M, c)


def sample_carlson(seed, count: int, max_len: int = 64):
    """Random nonnegative sequences (not all zero) with random lengths and decay."""
    rng = np.random.Generator(np.random.Philox(seed))
    out = []
    for _ in range(count):
        L = int(rng.integers(1, max_len + 1))
        decay = rng.uniform(0.0, 3.0)
        a = rng.exponential(size=L) * np.arange(1, L + 1) ** -decay
        a[rng.random(L) < 0.3] = 0.0
        if not np.any(a):
            a[int(rng.integers(0, L))] = rng.exponential()
        out.append(a)
    return out
