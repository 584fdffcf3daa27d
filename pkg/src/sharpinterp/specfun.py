"""Special functions on real arguments: Gamma, erfc, I0/K0/K1 and theta_3.

Everything here is implemented from scratch so that the Green's function
formulas do not depend on which scipy build happens to be installed.
The private ``_*`` scalar kernels are numba-compilable and are reused by
the lattice sums in :mod:`sharpinterp._kernels`.
"""
import math

from ._accel import jit

__all__ = [
    "DomainError",
    "EULER_GAMMA",
    "gamma_fn",
    "erfc_fn",
    "modified_bessel",
    "theta3",
    "BESSEL_I0_CROSSOVER",
    "BESSEL_K_CROSSOVER",
]

EULER_GAMMA = 0.57721566490153286061

# I0: power series below, continued fraction + Wronskian above.
BESSEL_I0_CROSSOVER = 9.0
# K0/K1: the log series loses about x/ln(10) digits, so the Temme/Steed
# continued fraction takes over much earlier.
BESSEL_K_CROSSOVER = 2.0

_EPS = 1e-17


class DomainError(ValueError):
    """Argument outside the domain of a function."""


# Lanczos approximation, g = 7, n = 9.
_LANCZOS = (
    0.99999999999980993,
    676.5203681218851,
    -1259.1392167224028,
    771.32342877765313,
    -176.61502916214059,
    12.507343278686905,
    -0.13857109526572012,
    9.9843695780195716e-6,
    1.5056327351493116e-7,
)
_L0, _L1, _L2, _L3, _L4, _L5, _L6, _L7, _L8 = _LANCZOS


@jit
def _gamma_lanczos(x):
    # valid for x >= 0.5
    z = x - 1.0
    a = _L0
    a += _L1 / (z + 1.0)
    a += _L2 / (z + 2.0)
    a += _L3 / (z + 3.0)
    a += _L4 / (z + 4.0)
    a += _L5 / (z + 5.0)
    a += _L6 / (z + 6.0)
    a += _L7 / (z + 7.0)
    a += _L8 / (z + 8.0)
    t = z + 7.5
    return math.sqrt(2.0 * math.pi) * t ** (z + 0.5) * math.exp(-t) * a


@jit
def _gamma(x):
    if x < 0.5:
        # reflection keeps the rational part away from its poles
        return math.pi / (math.sin(math.pi * x) * _gamma_lanczos(1.0 - x))
    return _gamma_lanczos(x)


@jit
def _erfc(x):
    if x < 1.5:
        # erf via the all-positive series erf = 2/sqrt(pi) e^{-x^2} sum (2x^2)^n x / (2n+1)!!
        x2 = x * x
        term = x
        s = x
        n = 0
        while term > 1e-17 * s:
            n += 1
            term *= 2.0 * x2 / (2.0 * n + 1.0)
            s += term
        return 1.0 - 2.0 / math.sqrt(math.pi) * math.exp(-x2) * s
    # Laplace continued fraction x + (1/2)/(x + 1/(x + (3/2)/(x + ...))), modified Lentz
    tiny = 1e-300
    f = x
    c = x
    d = 0.0
    for k in range(1, 5000):
        a = 0.5 * k
        d = x + a * d
        if d == 0.0:
            d = tiny
        c = x + a / c
        if c == 0.0:
            c = tiny
        d = 1.0 / d
        delta = c * d
        f *= delta
        if abs(delta - 1.0) < 1e-16:
            break
    return math.exp(-x * x) / (math.sqrt(math.pi) * f)


@jit
def _i0_series(x):
    q = 0.25 * x * x
    term = 1.0
    s = 1.0
    k = 0
    while term > _EPS * s:
        k += 1
        term *= q / (k * k)
        s += term
    return s


@jit
def _i1_series(x):
    q = 0.25 * x * x
    term = 0.5 * x
    s = term
    k = 0
    while term > _EPS * s:
        k += 1
        term *= q / (k * (k + 1.0))
        s += term
    return s


@jit
def _k01_series(x):
    # K0 = -(ln(x/2)+gamma) I0 + sum q^k/(k!)^2 H_k
    # K1 = 1/x + ln(x/2) I1 - (x/4) sum q^k/(k!(k+1)!) (psi(k+1)+psi(k+2))
    q = 0.25 * x * x
    lg = math.log(0.5 * x)
    i0 = _i0_series(x)
    i1 = _i1_series(x)
    t0 = 1.0
    h = 0.0
    s0 = 0.0
    t1 = 1.0
    s1 = -2.0 * EULER_GAMMA + 1.0
    k = 0
    while True:
        k += 1
        h += 1.0 / k
        t0 *= q / (k * k)
        t1 *= q / (k * (k + 1.0))
        add0 = t0 * h
        add1 = t1 * (-2.0 * EULER_GAMMA + 2.0 * h + 1.0 / (k + 1.0))
        s0 += add0
        s1 += add1
        if add0 < _EPS * abs(s0) and abs(add1) < _EPS * abs(s1):
            break
        if k > 500:
            break
    k0 = -(lg + EULER_GAMMA) * i0 + s0
    k1 = 1.0 / x + lg * i1 - 0.25 * x * s1
    return k0, k1


@jit
def _k01_cf_scaled(x):
    # Temme's continued fraction (Steed's method) for order 0, x >= 2;
    # returns exp(x) K0(x), exp(x) K1(x)
    b = 2.0 * (1.0 + x)
    d = 1.0 / b
    h = d
    delh = d
    q1 = 0.0
    q2 = 1.0
    a1 = 0.25
    q = a1
    c = a1
    a = -a1
    s = 1.0 + q * delh
    for i in range(1, 100000):
        a -= 2.0 * i
        c = -a * c / (i + 1.0)
        qnew = (q1 - b * q2) / a
        q1 = q2
        q2 = qnew
        q += c * qnew
        b += 2.0
        d = 1.0 / (b + a * d)
        delh = (b * d - 1.0) * delh
        h += delh
        dels = q * delh
        s += dels
        if abs(dels / s) < 1e-17:
            break
    h = a1 * h
    k0 = math.sqrt(math.pi / (2.0 * x)) / s
    k1 = k0 * (x + 0.5 - h) / x
    return k0, k1


@jit
def _k01_cf(x):
    k0, k1 = _k01_cf_scaled(x)
    e = math.exp(-x)
    return k0 * e, k1 * e


@jit
def _k01(x):
    if x <= BESSEL_K_CROSSOVER:
        return _k01_series(x)
    return _k01_cf(x)


@jit
def _k0(x):
    return _k01(x)[0]


@jit
def _k1(x):
    return _k01(x)[1]


@jit
def _i1_over_i0(x):
    # I1/I0 = 1/(2/x + 1/(4/x + 1/(6/x + ...))), modified Lentz
    tiny = 1e-300
    f = tiny
    c = f
    d = 0.0
    for j in range(1, 100000):
        bj = 2.0 * j / x
        aj = 1.0
        d = bj + aj * d
        if d == 0.0:
            d = tiny
        c = bj + aj / c
        if c == 0.0:
            c = tiny
        d = 1.0 / d
        delta = c * d
        f *= delta
        if abs(delta - 1.0) < 1e-16:
            break
    return f


@jit
def _i0(x):
    if x < BESSEL_I0_CROSSOVER:
        return _i0_series(x)
    # Wronskian I0 K1 + I1 K0 = 1/x
    k0, k1 = _k01_cf(x)
    r = _i1_over_i0(x)
    return 1.0 / (x * (k1 + r * k0))


@jit
def _i1(x):
    if x < BESSEL_I0_CROSSOVER:
        return _i1_series(x)
    return _i0(x) * _i1_over_i0(x)


@jit
def _k0i0_products(x):
    # (K0 I0, K0 I1 - K1 I0) at x > 0 without overflow of the factors
    if x < BESSEL_I0_CROSSOVER:
        k0, k1 = _k01(x)
        i0 = _i0_series(x)
        i1 = _i1_series(x)
        return k0 * i0, k0 * i1 - k1 * i0
    k0, k1 = _k01_cf_scaled(x)
    r = _i1_over_i0(x)
    i0 = 1.0 / (x * (k1 + r * k0))  # exp(-x) I0
    return k0 * i0, (k0 * r - k1) * i0


@jit
def _theta3(q):
    if q == 0.0:
        return 1.0
    s = 1.0
    k = 1
    while True:
        term = 2.0 * q ** (k * k)
        s += term
        if term < 1e-17 * s:
            break
        k += 1
    return s


def gamma_fn(x: float) -> float:
    """Gamma function for x > 0 (Lanczos with reflection below 1/2)."""
    x = float(x)
    if not x > 0.0:
        raise DomainError(f"gamma_fn needs x > 0, got {x}")
    return _gamma(x)


def erfc_fn(x: float) -> float:
    """Complementary error function for x >= 0."""
    x = float(x)
    if not x >= 0.0:
        raise DomainError(f"erfc_fn needs x >= 0, got {x}")
    if x > 27.3:
        return 0.0  # below the smallest subnormal
    return _erfc(x)


def modified_bessel(kind: str, x: float) -> float:
    """Modified Bessel functions ``I0``, ``K0``, ``K1`` (also ``I1``).

    I0/I1 use the power series for x < 9 and the Temme continued fraction
    plus the Wronskian above. K0/K1 use the logarithmic series for x <= 2
    and the continued fraction beyond.
    """
    x = float(x)
    kind = kind.upper()
    if kind in ("I0", "I1"):
        if not x >= 0.0:
            raise DomainError(f"{kind} needs x >= 0, got {x}")
        if x == 0.0:
            return 1.0 if kind == "I0" else 0.0
        return _i0(x) if kind == "I0" else _i1(x)
    if kind in ("K0", "K1"):
        if not x > 0.0:
            raise DomainError(f"{kind} needs x > 0, got {x}")
        return _k0(x) if kind == "K0" else _k1(x)
    raise ValueError(f"unknown Bessel kind {kind!r}")


def theta3(q: float) -> float:
    """Jacobi theta_3(q) = sum over integers k of q^(k^2)."""
    q = float(q)
    if not 0.0 <= q < 1.0:
        raise DomainError(f"theta3 needs 0 <= q < 1, got {q}")
    return _theta3(q)
