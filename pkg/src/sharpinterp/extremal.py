"""Scalar variational problems built on the Green's function diagonal.

V(D) = inf over lam > -lam0 of (lam + D) f(lam), the sharp constant
K = S sup_lam lam^theta f(lam), the map D(lam) = (f + lam f') / (-f'),
and the explicit negativity checks used in the correction-term proofs.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from scipy.optimize import brentq, minimize

from . import asympt, green
from .green import ProblemSpec, evaluate
from .specfun import DomainError

__all__ = [
    "VPoint",
    "SharpConstant",
    "H2Sup",
    "ProofCheck",
    "BracketError",
    "d_of_lambda",
    "v_of_d",
    "v_curve",
    "sharp_constant",
    "sphere2_h",
    "sphere2_h_sup",
    "proof_check_negativity",
    "PROOF_CASES",
    "torus_kn",
]

GOLDEN = (math.sqrt(5.0) - 1.0) / 2.0
COARSE_POINTS = 200
PER_DECADE = 64
# distance kept from the pole at -lam0, relative to lam0
POLE_MARGIN = 1e-6


class BracketError(RuntimeError):
    """The coarse scan did not bracket a minimum; indicates an evaluator bug."""


@dataclass(frozen=True)
class VPoint:
    D: float
    lambda_star: float
    V: float


@dataclass(frozen=True)
class SharpConstant:
    K: float
    attained_at: float  # math.inf when the supremum is only reached as lam -> inf
    S: float
    theta: float
    sup_value: float  # sup of lam^theta f(lam)
    limit: float  # lam^theta f(lam) as lam -> inf
    xi: float | None = None

    @property
    def at_infinity(self) -> bool:
        return math.isinf(self.attained_at)


def _theta(spec):
    return spec.theta


def d_of_lambda(spec: ProblemSpec, xi, lam):
    """D(lam) = (f + lam f') / (-f'), with f' from the analytic derivative."""
    lam_a = np.atleast_1d(np.asarray(lam, dtype=float))
    f, fp = evaluate(spec, lam_a, xi)
    out = (f + lam_a * fp) / (-fp)
    return float(out[0]) if np.ndim(lam) == 0 else out


def _golden(fun, a, b, tol):
    # minimise fun on [a, b]
    c = b - GOLDEN * (b - a)
    d = a + GOLDEN * (b - a)
    fc, fd = fun(c), fun(d)
    while abs(b - a) > tol * max(1.0, abs(a) + abs(b)):
        if fc < fd:
            b, d, fd = d, c, fc
            c = b - GOLDEN * (b - a)
            fc = fun(c)
        else:
            a, c, fc = c, d, fd
            d = a + GOLDEN * (b - a)
            fd = fun(d)
    return 0.5 * (a + b)


def _t_range(spec, D):
    lam0 = spec.lambda0
    scale = max(lam0, D, 1.0)
    lo = POLE_MARGIN * lam0 if lam0 > 0 else 1e-12 * max(D, 1e-300)
    hi = lam0 + 1e3 * scale
    return math.log(lo), math.log(hi)


def v_of_d(spec: ProblemSpec, D: float, xi=None, tol: float = 1e-12) -> VPoint:
    """Minimise (lam + D) f(lam) over lam > -lam0.

    Coarse scan on t = log(lam + lam0). The minimiser is the root of the
    first-order condition D(lam) = D, and D(lam) is increasing, so the
    scan brackets it and a bracketed root solve finishes the job.
    Golden section on the objective is the fallback when rounding
    spoils the bracket.
    """
    lam0 = spec.lambda0
    D = float(D)
    if lam0 > 0 and D < lam0 * (1.0 - 1e-12) or not D > 0:
        raise DomainError(f"need D >= lambda0 = {lam0:g}, got {D:g}")
    t_lo, t_hi = _t_range(spec, D)
    t = np.linspace(t_lo, t_hi, COARSE_POINTS)
    lam = np.exp(t) - lam0
    f, fp = evaluate(spec, lam, xi)
    phi = (lam + D) * f
    i = int(np.argmin(phi))
    if i == 0:
        # minimum pressed against the pole: D is (numerically) lam0
        return VPoint(D, float(lam[0]), float(phi[0]))
    if i == COARSE_POINTS - 1:
        raise BracketError(f"no interior minimum for {spec.label()} at D={D:g}")
    d_grid = (f + lam * fp) / (-fp) - D
    a, b = float(lam[i - 1]), float(lam[i + 1])
    j = i - 1 if d_grid[i] > 0 else i
    if d_grid[j] < 0 < d_grid[j + 1]:
        rtol = max(tol, 1e-15)
        lam_s = brentq(lambda x: d_of_lambda(spec, xi, x) - D, lam[j], lam[j + 1], xtol=1e-300, rtol=rtol, maxiter=200)
    else:
        def obj(s):
            x = math.exp(s) - lam0
            return float((x + D) * evaluate(spec, x, xi)[0][0])

        lam_s = math.exp(_golden(obj, t[i - 1], t[i + 1], tol)) - lam0
        if not a < lam_s < b:
            raise BracketError(f"refinement left the bracket at D={D:g}")
    V = (lam_s + D) * float(evaluate(spec, lam_s, xi)[0][0])
    return VPoint(D, float(lam_s), float(V))


def v_curve(spec: ProblemSpec, Ds, xi=None, tol: float = 1e-12):
    """v_of_d over a grid; rows come back in grid order."""
    return [v_of_d(spec, float(D), xi, tol) for D in Ds]


# ------------------------------------------------------------------ sharp constant


def _aitken(x0, x1, x2):
    den = x2 - 2.0 * x1 + x0
    if den == 0.0 or not math.isfinite(den):
        return x2
    return x2 - (x2 - x1) ** 2 / den


def _increasing(y):
    # non-decreasing up to rounding noise
    return bool(np.all(np.diff(y) >= -1e-13 * np.abs(y[1:])))


def _limit_at_infinity(spec, xi, phi_of):
    try:
        c = asympt.coeffs_for(spec)
        return c.g1
    except asympt.UnsupportedSpec:
        pass
    vals = [phi_of(x) for x in (1e6, 1e7, 1e8)]
    return _aitken(*vals)


def sharp_constant(spec: ProblemSpec, xi=None, tol: float = 1e-12) -> SharpConstant:
    """K = S sup_{lam>0} lam^theta f(lam), with the point where it is attained.

    For the fourth-order interval with ``xi=None`` the supremum is also
    taken over the point xi in (0, 1).
    """
    if spec.logarithmic:
        raise DomainError("no sharp power-law constant in the logarithmic case")
    theta = spec.theta
    S = asympt.s_factor(theta)
    if spec.kind == "interval4" and xi is None:
        return _interval4_global(S, theta)
    if spec.needs_xi and xi is None:
        xi = spec.default_xi()

    def phi_of(x):
        x = np.atleast_1d(np.asarray(x, dtype=float))
        v = x ** theta * evaluate(spec, x, xi)[0]
        return float(v[0]) if v.size == 1 else v

    lo = 1e-3 * spec.lambda0 if spec.lambda0 > 0 else 1e-3
    hi = 1e8
    decades = math.log10(hi / lo)
    lam = np.logspace(math.log10(lo), math.log10(hi), int(round(decades * PER_DECADE)) + 1)
    phi = phi_of(lam)
    limit = _limit_at_infinity(spec, xi, phi_of)
    i = int(np.argmax(phi))
    increasing = _increasing(phi[-PER_DECADE - 1:])
    if i == len(lam) - 1 or (phi[i] <= limit * (1.0 + 1e-9) and increasing):
        sup = max(limit, float(phi[i]))
        return SharpConstant(S * sup, math.inf, S, theta, sup, limit, xi)
    if i == 0:
        raise BracketError("supremum pressed against the lower end of the scan")
    s_best = _golden(lambda s: -phi_of(math.exp(s)), math.log(lam[i - 1]), math.log(lam[i + 1]), tol)
    lam_best = math.exp(s_best)
    sup = phi_of(lam_best)
    return SharpConstant(S * sup, lam_best, S, theta, sup, limit, xi)


def _interval4_global(S, theta):
    # lam^(3/4) f = (sqrt 2 / 4) S(a, xi), lam = 4 a^4 pi^4; S is symmetric about xi = 1/2
    c = math.sqrt(2.0) / 4.0
    a_grid = np.linspace(0.3, 3.0, 55)
    x_grid = np.linspace(0.02, 0.5, 49)
    best = max((green.s_function(a, x), a, x) for a in a_grid for x in x_grid)
    res = minimize(
        lambda p: -green.s_function(p[0], min(p[1], 1.0 - p[1])),
        x0=[best[1], best[2]],
        method="Nelder-Mead",
        options={"xatol": 1e-10, "fatol": 1e-15, "maxiter": 4000},
    )
    a_s, x_s = float(res.x[0]), float(min(res.x[1], 1.0 - res.x[1]))
    smax = green.s_function(a_s, x_s)
    lam_s = 4.0 * a_s ** 4 * math.pi ** 4
    return SharpConstant(S * c * smax, lam_s, S, theta, c * smax, c, x_s)


# ------------------------------------------------------------------ sphere oscillations


@dataclass(frozen=True)
class H2Sup:
    m: float
    nu_star: float  # math.inf when the supremum is the limit
    H_star: float
    H_inf: float

    @property
    def at_infinity(self) -> bool:
        return math.isinf(self.nu_star)


def sphere2_h(m: float, nu):
    """H(nu) = nu^(2m-2) sum_{n>=1} (2n+1) / (nu^(2m) + (n(n+1))^m)."""
    nu_a = np.atleast_1d(np.asarray(nu, dtype=float))
    if not m > 1 or np.any(nu_a <= 0):
        raise DomainError("need m > 1 and nu > 0")
    with np.errstate(over="ignore", under="ignore"):
        f, _ = green._sphere2_fg(float(m), nu_a ** (2.0 * m))
    out = 4.0 * math.pi * nu_a ** (2.0 * m - 2.0) * f
    return float(out[0]) if np.ndim(nu) == 0 else out


def sphere2_h_sup(m: float) -> H2Sup:
    """Global supremum of H over nu > 0, compared with H(inf) = (pi/m)/sin(pi/m)."""
    h_inf = (math.pi / m) / math.sin(math.pi / m)
    nu = np.logspace(-1, 3, 4 * PER_DECADE + 1)
    h = sphere2_h(m, nu)
    i = int(np.argmax(h))
    increasing = _increasing(h[-PER_DECADE - 1:])
    if i == len(nu) - 1 or (h[i] <= h_inf * (1.0 + 1e-9) and increasing):
        return H2Sup(m, math.inf, h_inf, h_inf)
    s = _golden(lambda t: -sphere2_h(m, math.exp(t)), math.log(nu[i - 1]), math.log(nu[i + 1]), 1e-12)
    nu_s = math.exp(s)
    return H2Sup(m, nu_s, sphere2_h(m, nu_s), h_inf)


# ------------------------------------------------------------------ proof-step checks


@dataclass(frozen=True)
class ProofCheck:
    case: str
    max_value: float
    arg_max: float
    details: dict = field(default_factory=dict)

    @property
    def negative(self) -> bool:
        return self.max_value < 0


def _t1m1_bracket(D):
    return (
        64.0 * math.pi * D ** 2 / np.expm1(math.pi * np.sqrt(4.0 * D - 2.0))
        + 4.0 * math.pi / (1.0 + np.sqrt(1.0 - 0.5 / D))
        - math.pi
        - 8.0 * np.sqrt(D)
    )


def _r_of_x(x):
    p = x + 3.0 / (8.0 * x ** 3)
    e = 4.1 * np.exp(-math.pi * math.sqrt(2.0) * x)
    return 2.0 * math.pi * math.sqrt(2.0) * ((p - (x ** 4 + 1.5) ** 0.25) + p * e) - 1.5 / x ** 4


def _t3_bracket(D):
    b3 = green.beta3_constant()
    w = 4.0 * D - 2.0
    return math.pi ** 2 * np.sqrt(w) / (np.sqrt(4.0 * D * w) + 4.0 * D - 1.0) + b3 + 4.0 + 2.0 / (2.0 * D - 1.0)


def _s3_f1(D):
    x = math.pi * np.sqrt(D - 1.0)
    return D ** 2 * 2.0 * np.exp(-2.0 * x) / -np.expm1(-2.0 * x)  # D^2 (coth x - 1)


def _s3_f2(D):
    return D / 2.0 + 0.125 - 2.0 * np.sqrt(D) / math.pi


def _interval_f2(d):
    e = np.exp(-d)
    return 2 * d ** 2 * e + 4 * d ** 3 * e + 2 * d ** 2 * e ** 2 + 8 * d ** 4 * e ** 3 + 8 * d ** 6 * e ** 4


def _interval_f1(d):
    e = np.exp(-d)
    return (
        -d ** 2 + 2 * d ** 2 * e + 4 * d ** 3 * e + 1 - 2 * d * e + 2 * d ** 2 * e ** 2
        - 8 * d ** 3 * e ** 2 + 8 * d ** 4 * e ** 3 - 8 * d ** 5 * e ** 3 + 8 * d ** 6 * e ** 4
    )


PROOF_CASES = ("T1_m1", "T1_m2_Rx", "T3_bound", "S3_bound", "Interval_F1F2")


def proof_check_negativity(case: str, points: int = 20001) -> ProofCheck:
    """Evaluate the explicit function of a proof step on a dense grid; its max must be < 0.

    D-ranges are [D_min, 1e4] on a log grid (each function is monotone or
    dominated by a monotone negative term beyond); R(x) is checked on
    [(3/2)^(1/4), 5].
    """
    if case == "T1_m1":
        x = np.geomspace(1.0, 1e4, points)
        y = _t1m1_bracket(x)
        det = {"value_at_1": float(_t1m1_bracket(1.0))}
    elif case == "T1_m2_Rx":
        x = np.linspace(1.5 ** 0.25, 5.0, points)
        y = _r_of_x(x)
        det = {}
    elif case == "T3_bound":
        x = np.geomspace(1.0, 1e4, points)
        y = _t3_bracket(x)
        det = {"crude_bound": math.pi ** 2 / (2.0 + math.sqrt(2.0)) + green.beta3_constant() + 6.0}
    elif case == "S3_bound":
        x = np.geomspace(math.sqrt(3.0), 1e4, points)
        y = _s3_f1(x) - _s3_f2(x)
        det = {"F1_left": float(_s3_f1(math.sqrt(3.0))), "F2_left": float(_s3_f2(math.sqrt(3.0)))}
    elif case == "Interval_F1F2":
        x = np.geomspace(math.pi, 100.0, points)
        y = -x ** 2 + 1.0 + _interval_f2(x)
        det = {"F1_below_bound": bool(np.all(_interval_f1(x) <= y))}
    else:
        raise ValueError(f"unknown case {case!r}; expected one of {PROOF_CASES}")
    i = int(np.argmax(y))
    return ProofCheck(case, float(y[i]), float(x[i]), det)


# ------------------------------------------------------------------ torus K_n(m)


@dataclass(frozen=True)
class TorusKn:
    K: float
    K_scan: float
    D_at: float
    K_tail: float
    d_max: float


def torus_kn(n: int, m: float, points: int = 256, d_max: float = 1e6) -> TorusKn:
    """Best constant K in V(D) <= c D^(n/2m) - K for all D >= 1 (l = 0).

    K = inf over D of (c D^(n/2m) - V(D)). The scan covers [1, d_max];
    beyond it the three-term expansion gives c D^(n/2m) - V = k + l D^(-n/2m)
    which decreases to k, so the tail contributes k.
    """
    spec = ProblemSpec.torus(n, 0, m)
    tc = asympt.torus_constants(n, m)
    e = n / (2.0 * m)
    Ds = np.geomspace(1.0, d_max, points)
    gap = np.array([tc.c * p.D ** e - p.V for p in v_curve(spec, Ds)])
    j = int(np.argmin(gap))
    K = min(float(gap[j]), tc.k)
    return TorusKn(K, float(gap[j]), float(Ds[j]), tc.k, d_max)


# ------------------------------------------------------------------ corrected bounds

# eps_m in V(D) <= A D^(1-theta) - eps_m / (6 pi theta) on S^2, rounded down from
# 1 - 6 pi theta max(V - Vbar) (max 0.0048629 at D = 15.9, 0.0189051 at D = 22.1)
SPHERE2_EPS = {3: 0.938, 4: 0.732}


def corrected_bound(spec: ProblemSpec, D, xi=None):
    """Known upper bound for V(D), with a short label.

    Where a lower-order correction is known it is included; otherwise the
    bound is K D^(1 - theta) with the sharp K from ``sharp_constant``.
    """
    D = np.asarray(D, dtype=float)
    k, n, l, m = spec.kind, spec.n, spec.l, spec.m
    pi = math.pi
    if k == "torus":
        if (n, l, m) == (1, 0.0, 1.0):
            return np.sqrt(D) - 1.0 / pi, "sqrt(D) - 1/pi"
        if (n, l, m) == (1, 0.0, 2.0):
            return math.sqrt(2.0) / 27.0 ** 0.25 * D ** 0.25 - 2.0 / (3.0 * pi), "(sqrt2/27^(1/4)) D^(1/4) - 2/(3 pi)"
        if (n, l, m) == (2, 0.0, 2.0):
            return 0.25 * np.sqrt(D) - 0.5 / pi ** 2, "sqrt(D)/4 - 1/(2 pi^2)"
        if (n, l, m) == (3, 1.0, 2.0):
            return (4.0 * pi ** 2 * np.sqrt(D) + 2.0 * green.beta3_constant()) / (8.0 * pi ** 3), "(4 pi^2 sqrt(D) + 2 beta3)/(8 pi^3)"
        if spec.logarithmic:
            return asympt.bg_bound(D), "(log D + log(1 + log D) + L)/(4 pi)"
    if k == "sphere2":
        c = asympt.coeffs_for(spec)
        lead = c.g1 * c.S * D ** (1.0 - c.theta)
        if m == 2.0:
            return lead + c.g2 / c.theta, "sqrt(D)/4 - 1/(3 pi)"
        if m in SPHERE2_EPS:
            eps = SPHERE2_EPS[int(m)]
            return lead + eps * c.g2 / c.theta, f"two-term with eps_{int(m)} = {eps}"
    if k == "sphere3":
        return np.sqrt(D) / (2.0 * pi) - 3.0 / (4.0 * pi ** 2), "sqrt(D)/(2 pi) - 3/(4 pi^2)"
    if k == "interval_dirichlet":
        r = np.sqrt(D)
        return r * (1.0 - 2.0 * np.exp(-spec.L * r)), "sqrt(D)(1 - 2 exp(-L sqrt(D)))"
    sc = sharp_constant(spec, xi)
    return sc.K * D ** (1.0 - sc.theta), "K D^(1-theta)"
