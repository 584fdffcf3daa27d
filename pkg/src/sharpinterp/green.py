"""Diagonal Green's functions f(lam) = G_lam(xi, xi) for the model problems.

Every evaluator works on arrays of lam and can also return the derivative
f'(lam), computed termwise or from the closed form (never by differencing).

Conventions: tori have period 2*pi and the Fourier normalisation
(2 pi)^-n sum over k != 0; spheres are unit spheres; the Laplacian is
taken with the positive sign.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from . import _kernels, specfun
from .specfun import DomainError, EULER_GAMMA

__all__ = [
    "ProblemSpec",
    "GreenValue",
    "ConvergenceError",
    "SERIES_CAPS",
    "green_rn",
    "green_torus_series",
    "green_torus_closed",
    "beta2_constant",
    "beta3_constant",
    "green_sphere2_series",
    "green_sphere3_closed",
    "green_interval_dirichlet",
    "green_halfline_dirichlet",
    "green_bessel_halfline",
    "green_interval4",
    "s_function",
    "evaluate",
]

TWO_PI = 2.0 * math.pi

# per-axis truncation caps for the torus lattice sums, indexed by dimension
SERIES_CAPS = {1: 4096, 2: 1024, 3: 256}

KINDS = (
    "rn",
    "torus",
    "sphere2",
    "sphere3",
    "interval_dirichlet",
    "halfline_dirichlet",
    "halfline_bessel",
    "interval4",
)

# torus cases with a closed form: (n, l, m) -> name
TORUS_CLOSED = {(1, 0, 1): "T1_m1", (1, 0, 2): "T1_m2", (2, 1, 2): "T2_l1m2", (3, 1, 2): "T3_l1m2"}

# closed forms are used for lam >= this, the lattice series below it
CLOSED_FORM_FROM = 1.0


class ConvergenceError(RuntimeError):
    """A series would need more terms than its configured cap."""


@dataclass(frozen=True)
class ProblemSpec:
    """Which manifold / operator pair is analysed.

    ``n`` is the dimension, ``l < n/2 < m`` the operator half-orders
    (B = (-Delta)^l, A = (-Delta)^m) and ``L`` the interval length.
    """

    kind: str
    n: int = 1
    l: float = 0.0
    m: float = 1.0
    L: float = 1.0

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown problem kind {self.kind!r}")
        if self.kind in ("rn", "torus"):
            if not (self.l < self.n / 2.0 < self.m):
                if not self.logarithmic:
                    raise DomainError(f"need l < n/2 < m, got n={self.n}, l={self.l}, m={self.m}")
        if self.kind == "torus" and self.n not in (1, 2, 3):
            raise DomainError("torus series implemented for n in {1, 2, 3}")
        if self.kind == "sphere2" and not self.m > 1:
            raise DomainError("sphere2 needs m > 1")
        if self.kind == "interval_dirichlet" and not self.L > 0:
            raise DomainError("interval length must be positive")

    # constructors
    @classmethod
    def rn(cls, n, l, m):
        return cls("rn", n, float(l), float(m))

    @classmethod
    def torus(cls, n, l, m):
        return cls("torus", n, float(l), float(m))

    @classmethod
    def sphere2(cls, m):
        return cls("sphere2", 2, 0.0, float(m))

    @classmethod
    def sphere3(cls):
        return cls("sphere3", 3, 1.0, 2.0)

    @classmethod
    def interval_dirichlet(cls, L=1.0):
        return cls("interval_dirichlet", 1, 0.0, 1.0, float(L))

    @classmethod
    def halfline_dirichlet(cls):
        return cls("halfline_dirichlet", 1, 0.0, 1.0)

    @classmethod
    def halfline_bessel(cls):
        return cls("halfline_bessel", 1, 0.0, 1.0)

    @classmethod
    def interval4(cls):
        return cls("interval4", 1, 0.0, 2.0)

    @property
    def logarithmic(self) -> bool:
        # Brezis-Gallouet borderline case: theta degenerates to 1
        return self.kind in ("rn", "torus") and (self.n, self.l, self.m) == (2, 1.0, 2.0)

    @property
    def theta(self) -> float:
        if self.logarithmic:
            raise DomainError("theta is not defined in the logarithmic case")
        return (2.0 * self.m - self.n) / (2.0 * (self.m - self.l))

    @property
    def lambda0(self) -> float:
        return {
            "rn": 0.0,
            "torus": 1.0,
            "sphere2": 2.0 ** self.m,
            "sphere3": 3.0,
            "interval_dirichlet": math.pi ** 2 / self.L ** 2,
            "halfline_dirichlet": 0.0,
            "halfline_bessel": 0.0,
            "interval4": math.pi ** 4,
        }[self.kind]

    @property
    def needs_xi(self) -> bool:
        return self.kind in ("interval_dirichlet", "halfline_dirichlet", "halfline_bessel", "interval4")

    def default_xi(self):
        return {
            "interval_dirichlet": self.L / 2.0,
            "halfline_dirichlet": 1.0,
            "halfline_bessel": 1.0,
            "interval4": 0.5,
        }.get(self.kind)

    def label(self) -> str:
        if self.kind in ("rn", "torus"):
            return f"{self.kind}(n={self.n}, l={self.l:g}, m={self.m:g})"
        if self.kind == "sphere2":
            return f"sphere2(m={self.m:g})"
        if self.kind == "interval_dirichlet":
            return f"interval_dirichlet(L={self.L:g})"
        return self.kind


@dataclass(frozen=True)
class GreenValue:
    value: float
    err_bound: float = 0.0


def _arr(lam):
    return np.atleast_1d(np.asarray(lam, dtype=float))


def _check_above(lam, bound, what):
    if np.any(~(lam > bound)):
        raise DomainError(f"{what} needs lam > {bound:g}, got min {lam.min():g}")


# ------------------------------------------------------------------ R^n


def _sigma(n):
    return 2.0 * math.pi ** (n / 2.0) / specfun.gamma_fn(n / 2.0)


def _rn_coeff(n, l, m):
    theta = (2.0 * m - n) / (2.0 * (m - l))
    if not 0.0 < theta < 1.0:
        raise DomainError(f"theta = {theta} outside (0, 1)")
    return theta, _sigma(n) * math.pi / (TWO_PI ** n * 2.0 * (m - l) * math.sin(math.pi * theta))


def green_rn(n, l, m, lam) -> GreenValue:
    """Whole-space diagonal lam^-theta sigma(n) pi / ((2 pi)^n 2(m-l) sin(pi theta))."""
    if not lam > 0:
        raise DomainError("green_rn needs lam > 0")
    theta, c = _rn_coeff(n, l, m)
    return GreenValue(c * lam ** (-theta), 0.0)


def _rn_fg(spec, lam):
    _check_above(lam, 0.0, "R^n Green's function")
    theta, c = _rn_coeff(spec.n, spec.l, spec.m)
    f = c * lam ** (-theta)
    return f, -theta * f / lam


# ------------------------------------------------------------------ torus series


@lru_cache(maxsize=32)
def _lattice(n, N):
    cnt = _kernels.lattice_counts(n, N)
    u = np.nonzero(cnt)[0]
    u = u[u > 0]
    return u.astype(float), cnt[u].astype(float)


@lru_cache(maxsize=32)
def _lattice_powers(n, N, m, l):
    u, cnt = _lattice(n, N)
    return u ** m, u ** l, cnt


@lru_cache(maxsize=256)
def _cube_c(n, q):
    # integral over [-1,1]^(n-1) of (1+|s|^2)^(-q/2)
    if n == 1:
        return 1.0
    x, w = np.polynomial.legendre.leggauss(80)
    if n == 2:
        return float(np.sum(w * (1.0 + x * x) ** (-q / 2.0)))
    X, Y = np.meshgrid(x, x)
    W = np.outer(w, w)
    return float(np.sum(W * (1.0 + X * X + Y * Y) ** (-q / 2.0)))


def _cube_j(n, q, a):
    # integral of |x|^-q over the outside of the cube |x|_inf > a
    return 2.0 * n * a ** (n - q) / (q - n) * _cube_c(n, round(q, 12))


def _torus_tail(n, p0, qx, s, lam, a):
    """Sum over |k|_inf > N of |k|^-p0 (1 + lam |k|^-qx)^-s.

    The unit cells centred on those lattice points tile the outside of the
    cube of half-side a = N + 1/2, so the sum is the integral there minus
    (1/24) of the integral of the Laplacian (midpoint rule). Each power
    |x|^-p is integrated exactly; the binomial series in lam converges
    because lam < a^qx / 4 by the choice of N.
    Returns (tail, error estimate).
    """
    tail = np.zeros_like(lam)
    err = np.zeros_like(lam)
    c = np.ones_like(lam)
    for j in range(400):
        p = p0 + j * qx
        term = c * (_cube_j(n, p, a) - p * (p + 2 - n) / 24.0 * _cube_j(n, p + 2, a))
        tail += term
        err += np.abs(c) * p * (p + 2 - n) * (p + 2) * (p + 4 - n) / 576.0 * _cube_j(n, p + 4, a)
        if j > 0 and np.all(np.abs(term) <= 1e-18 * np.abs(tail)):
            break
        c = c * (-lam) * (s + j) / (j + 1.0)
    return tail, 10.0 * err


def _torus_pick_n(n, l, m, lam_abs_max, tol):
    qx = 2.0 * (m - l)
    cap = SERIES_CAPS[n]
    N = 4
    while (N + 0.5) ** qx < 4.0 * lam_abs_max:
        N *= 2
    while True:
        if N > cap:
            raise ConvergenceError(f"torus series needs N > {cap} (n={n}, lam={lam_abs_max:g}, tol={tol:g})")
        a = N + 0.5
        p = 2.0 * m
        est = 10.0 * (4.0 / 3.0) * p * (p + 2 - n) * (p + 2) * (p + 4 - n) / 576.0 * _cube_j(n, p + 4, a)
        if est / TWO_PI ** n <= tol:
            return N
        N *= 2


def _torus_series_fg(n, l, m, lam, tol=1e-12, need_g=True):
    _check_above(lam, -1.0, "torus Green's function")
    N = _torus_pick_n(n, l, m, float(np.max(np.abs(lam))), tol)
    um, ul, cnt = _lattice_powers(n, N, m, l)
    a = N + 0.5
    qx = 2.0 * (m - l)
    norm = TWO_PI ** (-n)
    part, part_g = _kernels.radial_sum(um, ul, cnt, lam, need_g)
    tail, err = _torus_tail(n, 2.0 * m, qx, 1, lam, a)
    f = norm * (part + tail)
    ferr = norm * err
    if not need_g:
        return f, None, ferr
    tail_g, _ = _torus_tail(n, 4.0 * m - 2.0 * l, qx, 2, lam, a)
    return f, -norm * (part_g + tail_g), ferr


def green_torus_series(n, l, m, lam, tol=1e-12) -> GreenValue:
    """(2 pi)^-n sum over 0 != k in Z^n of 1/(|k|^2m + lam |k|^2l).

    The sum is taken over the cube |k|_inf <= N plus a midpoint-rule
    estimate of the remaining tail; ``err_bound`` bounds what is left.
    """
    if n not in SERIES_CAPS:
        raise DomainError("torus series implemented for n in {1, 2, 3}")
    if not lam > -1.0:
        raise DomainError("torus Green's function needs lam > -1")
    if not tol > 0:
        raise ValueError("tol must be positive")
    f, _, err = _torus_series_fg(n, float(l), float(m), _arr(lam), tol, need_g=False)
    return GreenValue(float(f[0]), float(err[0]))


# ------------------------------------------------------------------ torus closed forms


def _exp_ratio(x):
    # (coth x, x / sinh^2 x) for x > 0 without overflow
    e = np.exp(-2.0 * x)
    den = -np.expm1(-2.0 * x)
    return (1.0 + e) / den, 4.0 * x * e / (den * den)


def _t1m1_fg(lam):
    x = math.pi * np.sqrt(lam)
    coth, xs = _exp_ratio(x)
    F = x * coth - 1.0
    Fp = coth - xs
    f = F / (TWO_PI * lam)
    fp = (0.5 * x * Fp - F) / (TWO_PI * lam * lam)
    return f, fp


def _t1m2_fg(lam):
    alpha = math.pi * math.sqrt(2.0) * lam ** 0.25
    e1 = np.exp(-alpha)
    e2 = e1 * e1
    den = 1.0 + e2 - 2.0 * np.cos(alpha) * e1
    phi = (1.0 - e2 + 2.0 * np.sin(alpha) * e1) / den
    dphi = -4.0 * np.sin(alpha) * e1 * (1.0 - e2) / (den * den)
    c = math.sqrt(2.0) / 4.0
    f = c * lam ** -0.75 * phi - 1.0 / (TWO_PI * lam)
    # d/dlam: alpha' = alpha / (4 lam)
    fp = c * (-0.75 * lam ** -1.75 * phi + lam ** -0.75 * dphi * alpha / (4.0 * lam)) + 1.0 / (TWO_PI * lam * lam)
    return f, fp


def _decay_n(rate_min, power=1.0):
    # smallest N with exp(-rate (N+1)^power) below 1e-19
    return max(1, int(math.ceil((44.0 / rate_min) ** (1.0 / power))))


def _t2_fg(lam):
    lam_min = float(np.min(lam))
    N = _decay_n(TWO_PI * math.sqrt(lam_min))
    if N > SERIES_CAPS[2]:
        raise ConvergenceError("Bessel lattice sum too long; lam too small for the closed form")
    u, cnt = _lattice(2, N)
    s0, s1 = _kernels.k0_lattice(u, cnt, lam)
    beta = beta2_constant()
    lg = np.log(lam)
    f = (math.pi * lg + beta + 1.0 / lam - TWO_PI * s0) / (4.0 * math.pi ** 2 * lam)
    fp = (math.pi * (1.0 - lg) - beta - 2.0 / lam + TWO_PI * s1) / (4.0 * math.pi ** 2 * lam * lam)
    return f, fp


T3_EXPONENTS = ("linear", "sqrt")


def _t3_fg(lam, exponent="linear"):
    if exponent not in T3_EXPONENTS:
        raise ValueError(f"exponent must be one of {T3_EXPONENTS}")
    power = 1.0 if exponent == "linear" else 0.5
    lam_min = float(np.min(lam))
    N = _decay_n(TWO_PI * math.sqrt(lam_min), power)
    if N > SERIES_CAPS[3]:
        raise ConvergenceError("exponential lattice sum too long; lam too small for the closed form")
    u, cnt = _lattice(3, N)
    rho = u ** (0.5 * power)
    b3 = beta3_constant()
    f = np.empty_like(lam)
    fp = np.empty_like(lam)
    for i, t in enumerate(lam):
        z = TWO_PI * math.sqrt(t) * rho
        w = cnt * np.exp(-z) / rho
        s0 = np.sum(w[::-1])
        s1 = np.sum((w * (1.0 + 0.5 * z))[::-1])
        f[i] = (2.0 * math.pi ** 2 * math.sqrt(t) + b3 + 1.0 / t - math.pi * s0) / (8.0 * math.pi ** 3 * t)
        fp[i] = (-math.pi ** 2 * t ** -1.5 - b3 / t ** 2 - 2.0 / t ** 3 + math.pi * s1 / t ** 2) / (8.0 * math.pi ** 3)
    return f, fp


def _torus_closed_fg(case, lam, t3_exponent="linear"):
    _check_above(lam, 0.0, f"closed form {case}")
    if case == "T1_m1":
        return _t1m1_fg(lam)
    if case == "T1_m2":
        return _t1m2_fg(lam)
    if case == "T2_l1m2":
        return _t2_fg(lam)
    if case == "T3_l1m2":
        return _t3_fg(lam, t3_exponent)
    raise ValueError(f"unknown closed-form case {case!r}")


def green_torus_closed(case, lam, t3_exponent="linear") -> GreenValue:
    """Closed-form torus Green's functions, valid for lam > 0.

    ``t3_exponent`` selects the exponent in the T3_l1m2 lattice sum:
    "linear" uses exp(-2 pi sqrt(lam) |k|)/|k| (the Poisson-summation
    result), "sqrt" the variant with |k|^(1/2) in both places.
    """
    if not lam > 0:
        raise DomainError("closed forms need lam > 0")
    f, _ = _torus_closed_fg(case, _arr(lam), t3_exponent)
    return GreenValue(float(f[0]), 0.0)


def _torus_fg(spec, lam, tol=1e-12):
    _check_above(lam, -1.0, "torus Green's function")
    key = (spec.n, spec.l, spec.m)
    case = TORUS_CLOSED.get(key)
    if case is None:
        f, g, _ = _torus_series_fg(spec.n, spec.l, spec.m, lam, tol)
        return f, g
    f = np.empty_like(lam)
    fp = np.empty_like(lam)
    hi = lam >= CLOSED_FORM_FROM
    if np.any(hi):
        f[hi], fp[hi] = _torus_closed_fg(case, lam[hi])
    if np.any(~hi):
        f[~hi], fp[~hi], _ = _torus_series_fg(spec.n, spec.l, spec.m, lam[~hi], tol)
    return f, fp


@lru_cache(maxsize=1)
def beta2_constant() -> float:
    """pi (2 gamma + 2 log 2 + 3 log pi - 4 log Gamma(1/4))."""
    return math.pi * (
        2.0 * EULER_GAMMA + 2.0 * math.log(2.0) + 3.0 * math.log(math.pi) - 4.0 * math.log(specfun.gamma_fn(0.25))
    )


@lru_cache(maxsize=8)
def _beta3(N):
    u, cnt = _lattice(3, N)
    return -1.0 - 2.0 * math.pi ** 1.5 + _kernels.beta3_sum(u, cnt)


def beta3_constant(tol: float = 1e-15) -> float:
    """Integration constant of the 3-D torus (l=1, m=2) Green's function.

    -1 - 2 pi^(3/2) + sum over k != 0 of exp(-|k|^2)/|k|^2 + pi erfc(pi|k|)/|k|,
    summed over |k|_inf <= 7; the omitted terms are below 1e-20.
    """
    if not tol >= 1e-15:
        raise ValueError("tol must be >= 1e-15")
    return _beta3(7)


# ------------------------------------------------------------------ spheres


def _sphere2_tail(m, lam, N, s):
    # sum_{n>N} (2n+1)/((n(n+1))^m + lam)^s: midpoint integral + h'(a)/24
    a = N + 0.5
    Y = a * (a + 1.0)
    tail = np.zeros_like(lam)
    c = np.ones_like(lam)
    for j in range(400):
        e = m * (s + j)
        term = c * Y ** (1.0 - e) / (e - 1.0)
        tail += term
        if j > 0 and np.all(np.abs(term) <= 1e-18 * np.abs(tail)):
            break
        c = c * (-lam) * (s + j) / (j + 1.0)
    P = Y ** m + lam
    w = 2.0 * a + 1.0
    hp = 2.0 / P ** s - s * w * w * m * Y ** (m - 1.0) / P ** (s + 1)
    return tail + hp / 24.0


def _sphere2_pick_n(m, lam_abs_max, tol):
    N = 16
    while ((N + 0.5) * (N + 1.5)) ** m < 4.0 * lam_abs_max:
        N *= 2
    p = 2.0 * m - 1.0
    while 10.0 * 7.0 / 5760.0 * 2.0 * p * (p + 1) * (p + 2) * (N + 0.5) ** (-p - 3) / (4 * math.pi) > tol:
        N *= 2
    return N


def _sphere2_fg(m, lam, tol=1e-13):
    _check_above(lam, -(2.0 ** m), "sphere2 Green's function")
    N = _sphere2_pick_n(m, float(np.max(np.abs(lam))), tol)
    f = (_kernels.sphere2_partial(m, lam, N, 1) + _sphere2_tail(m, lam, N, 1)) / (4.0 * math.pi)
    g = (_kernels.sphere2_partial(m, lam, N, 2) + _sphere2_tail(m, lam, N, 2)) / (4.0 * math.pi)
    return f, -g


def green_sphere2_series(m, lam, tol=1e-13) -> GreenValue:
    """(1/4 pi) sum_{n>=1} (2n+1)/((n(n+1))^m + lam) on the unit 2-sphere."""
    if not m > 1:
        raise DomainError("sphere2 needs m > 1")
    if not lam > -(2.0 ** m):
        raise DomainError(f"sphere2 needs lam > -2^m = {-(2.0 ** m):g}")
    f, _ = _sphere2_fg(float(m), _arr(lam), tol)
    N = _sphere2_pick_n(float(m), abs(lam), tol)
    p = 2.0 * m - 1.0
    err = 10.0 * 7.0 / 5760.0 * 2.0 * p * (p + 1) * (p + 2) * (N + 0.5) ** (-p - 3) / (4 * math.pi)
    return GreenValue(float(f[0]), err)


def _power_tail(p, a):
    # sum_{j > a - 1/2} j^-p by the midpoint Euler-Maclaurin expansion
    return a ** (1.0 - p) / (p - 1.0) - p * a ** (-p - 1.0) / 24.0 + 7.0 * p * (p + 1) * (p + 2) * a ** (-p - 3.0) / 5760.0


def _sphere3_series_fg(lam):
    # (1/2 pi^2) sum_{j>=2} j^2/((j^2-1)(j^2-1+lam)), truncated at J plus tail
    J = 64
    a = J + 0.5
    out = []
    for s in (1, 2):
        part = _kernels.sphere3_partial(lam, J, s)
        # j^2/((j^2-1)(j^2-1+lam)^s) = sum_k c_k j^(-2s-2k)
        tail = np.zeros_like(lam)
        b = np.ones_like(lam)  # binomial coefficients times (lam-1)^i
        c = np.zeros_like(lam)
        for k in range(60):
            c = c + b
            tail += c * _power_tail(2.0 * s + 2.0 * k, a)
            b = b * (-(lam - 1.0)) * (s + k) / (k + 1.0)
        out.append((part + tail) / (2.0 * math.pi ** 2))
    return out[0], -out[1]


def _sphere3_closed_fg(lam):
    s = np.sqrt(lam - 1.0)
    x = math.pi * s
    coth, xs = _exp_ratio(x)
    A = 0.5 * math.pi * s / lam * coth
    Ap = 0.5 * math.pi * ((coth - xs) / (2.0 * s * lam) - s * coth / lam ** 2)
    f = (A - (lam - 1.0) / lam ** 2 + 0.25 / lam) / (2.0 * math.pi ** 2)
    fp = (Ap + (lam - 2.0) / lam ** 3 - 0.25 / lam ** 2) / (2.0 * math.pi ** 2)
    return f, fp


def _sphere3_fg(lam):
    _check_above(lam, -3.0, "sphere3 Green's function")
    f = np.empty_like(lam)
    fp = np.empty_like(lam)
    hi = lam > 2.0
    if np.any(hi):
        f[hi], fp[hi] = _sphere3_closed_fg(lam[hi])
    if np.any(~hi):
        f[~hi], fp[~hi] = _sphere3_series_fg(lam[~hi])
    return f, fp


def green_sphere3_closed(lam) -> GreenValue:
    """Unit 3-sphere, B = -Delta, A = Delta^2.

    Closed form for lam > 2; the series is used on (-3, 2] where the
    closed form suffers from the removable singularity at lam = 1.
    """
    if not lam > -3.0:
        raise DomainError("sphere3 needs lam > -3")
    f, _ = _sphere3_fg(_arr(lam))
    return GreenValue(float(f[0]), 0.0)


# ------------------------------------------------------------------ boundaries


def _interval_dirichlet_fg(L, xi, lam):
    if not 0.0 < xi < L:
        raise DomainError(f"need 0 < xi < L, got xi={xi}, L={L}")
    _check_above(lam, -(math.pi / L) ** 2, "interval Dirichlet Green's function")
    b = L - xi
    f = np.empty_like(lam)
    fp = np.empty_like(lam)
    small = np.abs(lam) * L * L < 1e-6
    pos = (lam > 0) & ~small
    neg = (lam < 0) & ~small
    if np.any(small):
        g0 = xi * b / L
        g1 = -(xi * b) ** 2 / (3.0 * L)
        f[small] = g0 + g1 * lam[small]
        fp[small] = g1
    if np.any(pos):
        s = np.sqrt(lam[pos])
        ea, eb, eL = np.exp(-2 * s * xi), np.exp(-2 * s * b), np.exp(-2 * s * L)
        phi = -np.expm1(-2 * s * xi) * -np.expm1(-2 * s * b) / (2.0 * -np.expm1(-2 * s * L))
        # coth via exponentials
        cth = lambda e, d: (1.0 + e) / d
        logd = xi * cth(ea, -np.expm1(-2 * s * xi)) + b * cth(eb, -np.expm1(-2 * s * b)) - L * cth(eL, -np.expm1(-2 * s * L))
        f[pos] = phi / s
        fp[pos] = (phi * logd / s - phi / s ** 2) / (2.0 * s)
    if np.any(neg):
        w = np.sqrt(-lam[neg])
        psi = np.sin(w * xi) * np.sin(w * b) / np.sin(w * L)
        logd = xi / np.tan(w * xi) + b / np.tan(w * b) - L / np.tan(w * L)
        f[neg] = psi / w
        fp[neg] = -(psi * logd / w - psi / w ** 2) / (2.0 * w)
    return f, fp


def green_interval_dirichlet(L, xi, lam) -> GreenValue:
    """sinh(s xi) sinh(s(L-xi)) / (s sinh(s L)) with s = sqrt(lam)."""
    f, _ = _interval_dirichlet_fg(float(L), float(xi), _arr(lam))
    return GreenValue(float(f[0]), 0.0)


def _halfline_dirichlet_fg(xi, lam):
    if not xi > 0:
        raise DomainError("need xi > 0")
    _check_above(lam, 0.0, "half-line Green's function")
    s = np.sqrt(lam)
    e = -np.expm1(-2.0 * s * xi)
    f = e / (2.0 * s)
    fp = (2.0 * s * xi * np.exp(-2.0 * s * xi) - e) / (2.0 * s * s) / (2.0 * s)
    return f, fp


def green_halfline_dirichlet(xi, lam) -> GreenValue:
    """(1 - exp(-2 sqrt(lam) xi)) / (2 sqrt(lam))."""
    f, _ = _halfline_dirichlet_fg(float(xi), _arr(lam))
    return GreenValue(float(f[0]), 0.0)


def _bessel_fg(xi, lam):
    if not xi > 0:
        raise DomainError("need xi > 0")
    _check_above(lam, 0.0, "Bessel half-line Green's function")
    f = np.empty_like(lam)
    fp = np.empty_like(lam)
    for i, t in enumerate(lam):
        s = math.sqrt(t)
        p, dp = specfun._k0i0_products(s * xi)
        f[i] = xi * p
        fp[i] = xi * xi / (2.0 * s) * dp
    return f, fp


def bessel_profile(r):
    """r K0(r) I0(r), the scale-free profile of the Bessel half-line problem."""
    return r * specfun._k0i0_products(float(r))[0]


def green_bessel_halfline(xi, lam) -> GreenValue:
    """xi K0(sqrt(lam) xi) I0(sqrt(lam) xi)."""
    f, _ = _bessel_fg(float(xi), _arr(lam))
    return GreenValue(float(f[0]), 0.0)


def _interval4_n(tol):
    # tail of 2 sum sin^2/(pi^4 n^4 + lam) <= (16/15) 2/(3 pi^4 N^3) for lam > -pi^4, N >= 2
    return max(2, int(math.ceil((2.0 * 16.0 / 15.0 / (3.0 * math.pi ** 4 * tol)) ** (1.0 / 3.0))))


def _interval4_fg(xi, lam, tol=1e-13):
    if not 0.0 < xi < 1.0:
        raise DomainError("need 0 < xi < 1")
    _check_above(lam, -(math.pi ** 4), "fourth-order interval Green's function")
    N = _interval4_n(tol)
    f = _kernels.interval4_partial(xi, lam, N, 1)
    g = _kernels.interval4_partial(xi, lam, N, 2)
    return f, -g


def green_interval4(xi, lam, tol=1e-13) -> GreenValue:
    """2 sum_{n>=1} sin^2(pi n xi) / (pi^4 n^4 + lam) on [0, 1]."""
    if not tol > 0:
        raise ValueError("tol must be positive")
    f, _ = _interval4_fg(float(xi), _arr(lam), tol)
    N = _interval4_n(tol)
    return GreenValue(float(f[0]), 2.0 * 16.0 / 15.0 / (3.0 * math.pi ** 4 * N ** 3))


def s_function(a, xi) -> float:
    """S(a, xi) = sum_n f0(2 pi a n) - sum_n f0(2 pi a (n + xi)), f0(x) = e^-|x| (cos|x| + sin|x|).

    With lam = 4 a^4 pi^4 one has lam^(3/4) G_lam(xi, xi) = (sqrt 2 / 4) S(a, xi).
    """
    if not a > 0:
        raise DomainError("need a > 0")
    xi = float(xi)
    N = int(math.ceil(44.0 / (2.0 * math.pi * a))) + 2
    return float(_kernels.s_function(float(a), xi, N))


# ------------------------------------------------------------------ dispatch


def evaluate(spec: ProblemSpec, lam, xi=None, tol=1e-12):
    """Return arrays (f, f') at lam for ``spec`` (at point ``xi`` if relevant)."""
    lam = _arr(lam)
    if spec.needs_xi and xi is None:
        xi = spec.default_xi()
    k = spec.kind
    if k == "rn":
        return _rn_fg(spec, lam)
    if k == "torus":
        return _torus_fg(spec, lam, tol)
    if k == "sphere2":
        return _sphere2_fg(spec.m, lam, min(tol, 1e-13))
    if k == "sphere3":
        return _sphere3_fg(lam)
    if k == "interval_dirichlet":
        return _interval_dirichlet_fg(spec.L, float(xi), lam)
    if k == "halfline_dirichlet":
        return _halfline_dirichlet_fg(float(xi), lam)
    if k == "halfline_bessel":
        return _bessel_fg(float(xi), lam)
    if k == "interval4":
        return _interval4_fg(float(xi), lam, min(tol, 1e-13))
    raise ValueError(k)
