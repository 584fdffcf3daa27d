import math

import numpy as np
import pytest

from sharpinterp import green
from sharpinterp.green import ProblemSpec, evaluate
from sharpinterp.specfun import DomainError

# [DERIVED] mpmath references (30 digits), frozen
T1M1 = {-0.5: 0.8565757435915177, 0.3: 0.4427455453037178, 1.0: 0.3427159935067653, 7.0: 0.16624583885845784, 250.0: 0.03098615682931621}
T1M2 = {-0.5: 0.6634932135121111, 0.3: 0.2706756198530572, 1.0: 0.18413513254372102, 7.0: 0.059584964688463714, 250.0: 0.004986793348580742}
S2M2 = {-3.0: 0.2597322995678228, 0.0: 0.07957747154594767, 5.0: 0.04491228464939223, 100.0: 0.011969287664569457}
S3 = {-2.0: 0.09321423687336713, 0.5: 0.04098380764888517, 10.0: 0.0205803033063531}
I4 = {-90.0: 0.2702429918024401, 0.0: 1.0 / 48.0, 4 * math.pi ** 4: 0.004395607629584086, 1e4: 0.0003527045750474761}
DIRICHLET = [(1.0, 0.5, -5.0, 0.4596550469414559), (1.0, 0.5, 0.0, 0.25), (1.0, 0.5, 400.0, 0.024999999896942317),
             (1.0, 0.3, 20.0, 0.10397760254829054), (2.0, 0.7, 3.0, 0.2604722192183577)]
BESSEL_PROFILE = {0.5: 0.4915521549233809, 3.0: 0.5086689463355317, 40.0: 0.5000391038337497}
BETA3 = -8.91363291758515127


def f_of(spec, lam, xi=None):
    return float(evaluate(spec, lam, xi)[0][0])


@pytest.mark.parametrize("lam,v", T1M1.items())
def test_t1m1_frozen(lam, v):
    assert f_of(ProblemSpec.torus(1, 0, 1), lam) == pytest.approx(v, rel=1e-13)


@pytest.mark.parametrize("lam,v", T1M2.items())
def test_t1m2_frozen(lam, v):
    assert f_of(ProblemSpec.torus(1, 0, 2), lam) == pytest.approx(v, rel=1e-13)


@pytest.mark.parametrize("lam,v", S2M2.items())
def test_sphere2_frozen(lam, v):
    assert f_of(ProblemSpec.sphere2(2), lam) == pytest.approx(v, rel=1e-12)


@pytest.mark.parametrize("lam,v", S3.items())
def test_sphere3_frozen(lam, v):
    assert f_of(ProblemSpec.sphere3(), lam) == pytest.approx(v, rel=1e-13)


@pytest.mark.parametrize("lam,v", I4.items())
def test_interval4_frozen(lam, v):
    assert f_of(ProblemSpec.interval4(), lam, 0.5) == pytest.approx(v, abs=1e-13)


@pytest.mark.parametrize("L,xi,lam,v", DIRICHLET)
def test_interval_dirichlet_frozen(L, xi, lam, v):
    assert green.green_interval_dirichlet(L, xi, lam).value == pytest.approx(v, rel=1e-13)


@pytest.mark.parametrize("r,v", BESSEL_PROFILE.items())
def test_bessel_profile_frozen(r, v):
    assert green.bessel_profile(r) == pytest.approx(v, rel=1e-13)


def test_t1m1_closed_form():
    # (2 pi)^-1 (pi coth(pi sqrt lam)/sqrt lam - 1/lam)
    for lam in (0.7, 3.0, 40.0):
        s = math.sqrt(lam)
        ref = (math.pi / (s * math.tanh(math.pi * s)) - 1.0 / lam) / (2 * math.pi)
        assert green.green_torus_closed("T1_m1", lam).value == pytest.approx(ref, rel=1e-13)


@pytest.mark.parametrize("key,case", sorted(green.TORUS_CLOSED.items()))
@pytest.mark.parametrize("lam", [0.5, 1.0, 2.0, 10.0, 100.0])
def test_series_matches_closed_form(key, case, lam):
    n, l, m = key
    s = green.green_torus_series(n, l, m, lam).value
    c = green.green_torus_closed(case, lam).value
    assert s == pytest.approx(c, rel=1e-12)


def test_t3_exponent_variants():
    ser = green.green_torus_series(3, 1, 2, 0.5).value
    lin = green.green_torus_closed("T3_l1m2", 0.5, t3_exponent="linear").value
    sq = green.green_torus_closed("T3_l1m2", 0.5, t3_exponent="sqrt").value
    assert lin == pytest.approx(ser, rel=1e-12)
    assert abs(sq / ser - 1) > 1e-2


def test_beta2_closed_form_and_fit():
    b2 = green.beta2_constant()
    assert b2 == pytest.approx(2.584981759579251, rel=1e-14)
    lam = 100.0
    g = green.green_torus_series(2, 1, 2, lam).value
    fit = 4 * math.pi ** 2 * lam * g - math.pi * math.log(lam) - 1.0 / lam
    assert fit == pytest.approx(b2, abs=1e-9)


def test_beta3_value_and_fit():
    b3 = green.beta3_constant()
    assert b3 == pytest.approx(BETA3, abs=1e-12)
    lam = 1e4
    g = green.green_torus_series(3, 1, 2, lam).value
    fit = 8 * math.pi ** 3 * lam * g - 2 * math.pi ** 2 * math.sqrt(lam) - 1.0 / lam
    assert fit == pytest.approx(b3, abs=1e-8)


def test_beta3_tol_validation():
    with pytest.raises(ValueError):
        green.beta3_constant(tol=1e-16)


def test_interval4_identity():
    # lam^(3/4) G(xi, xi) = (sqrt 2 / 4) S(a, xi) with lam = 4 a^4 pi^4
    for a, xi in ((1.0, 0.5), (0.6, 0.3), (2.3, 0.17)):
        lam = 4 * a ** 4 * math.pi ** 4
        lhs = lam ** 0.75 * green.green_interval4(xi, lam, tol=1e-16).value
        assert lhs == pytest.approx(math.sqrt(2) / 4 * green.s_function(a, xi), rel=1e-11)


def test_s_function_half():
    # at xi = 1/2, S(1, 1/2) = coth(pi/2)
    assert green.s_function(1.0, 0.5) == pytest.approx(1.0 / math.tanh(math.pi / 2), rel=1e-14)


def test_rn_closed_form():
    # n=1, l=0, m=1: 1/(2 sqrt lam)
    for lam in (0.1, 1.0, 50.0):
        assert green.green_rn(1, 0, 1, lam).value == pytest.approx(0.5 / math.sqrt(lam), rel=1e-14)


def test_halfline_limits():
    assert green.green_halfline_dirichlet(1.0, 1e4).value == pytest.approx(0.005, rel=1e-12)
    # Dirichlet on a long interval approaches the half-line
    assert green.green_interval_dirichlet(60.0, 1.0, 2.0).value == pytest.approx(green.green_halfline_dirichlet(1.0, 2.0).value, rel=1e-14)


def test_dirichlet_taylor_branch_continuous():
    # both sides of the |lam| L^2 = 1e-6 switch against the direct sinh formula
    for lam in (0.9e-6, 1.1e-6):
        s = math.sqrt(lam)
        ref = math.sinh(0.4 * s) * math.sinh(0.6 * s) / (s * math.sinh(s))
        assert green.green_interval_dirichlet(1.0, 0.4, lam).value == pytest.approx(ref, rel=1e-13)


DERIV_CASES = [
    (ProblemSpec.rn(3, 1, 2), None, [0.5, 4.0]),
    (ProblemSpec.torus(1, 0, 1), None, [-0.5, 0.4, 3.0]),
    (ProblemSpec.torus(1, 0, 2), None, [-0.5, 0.4, 3.0]),
    (ProblemSpec.torus(2, 1, 2), None, [0.4, 3.0]),
    (ProblemSpec.torus(3, 1, 2), None, [0.4, 3.0]),
    (ProblemSpec.torus(2, 0, 2), None, [0.4, 3.0]),
    (ProblemSpec.sphere2(3), None, [-5.0, 2.0, 40.0]),
    (ProblemSpec.sphere3(), None, [-2.0, 1.0, 2.0, 9.0]),
    (ProblemSpec.interval_dirichlet(), 0.3, [-5.0, 2.0, 300.0]),
    (ProblemSpec.halfline_dirichlet(), 1.0, [0.3, 9.0]),
    (ProblemSpec.halfline_bessel(), 1.0, [0.3, 9.0, 400.0]),
    (ProblemSpec.interval4(), 0.5, [-50.0, 10.0, 1e3]),
]


@pytest.mark.parametrize("spec,xi,lams", DERIV_CASES, ids=lambda v: v.label() if isinstance(v, ProblemSpec) else None)
def test_analytic_derivative_vs_difference(spec, xi, lams):
    for lam in lams:
        h = 1e-4 * max(1.0, abs(lam))
        fp = float(evaluate(spec, lam, xi)[1][0])
        lo, hi = (float(v) for v in evaluate(spec, np.array([lam - h, lam + h]), xi)[0])
        fd = (hi - lo) / (2 * h)
        assert fp == pytest.approx(fd, rel=1e-6, abs=1e-14), (spec.label(), lam)


@pytest.mark.parametrize(
    "spec,xi",
    [(ProblemSpec.torus(1, 0, 1), None), (ProblemSpec.sphere2(2), None), (ProblemSpec.sphere3(), None),
     (ProblemSpec.interval_dirichlet(), 0.5), (ProblemSpec.interval4(), 0.5), (ProblemSpec.rn(1, 0, 1), None)],
)
def test_below_lambda0_raises(spec, xi):
    with pytest.raises(DomainError):
        evaluate(spec, -spec.lambda0 - 1e-3, xi)


def test_spec_validation():
    with pytest.raises(DomainError):
        ProblemSpec.torus(2, 1, 1)
    with pytest.raises(DomainError):
        ProblemSpec.torus(4, 0, 3)
    with pytest.raises(ValueError):
        ProblemSpec("klein_bottle")
    with pytest.raises(DomainError):
        green.green_interval_dirichlet(1.0, 1.5, 1.0)
    assert ProblemSpec.torus(2, 1, 2).logarithmic


def test_theta_and_lambda0():
    s = ProblemSpec.torus(3, 1, 2)
    assert s.theta == pytest.approx(0.5)
    assert ProblemSpec.sphere2(3).lambda0 == 8.0
    assert ProblemSpec.interval_dirichlet(2.0).lambda0 == pytest.approx(math.pi ** 2 / 4)
    with pytest.raises(DomainError):
        ProblemSpec.torus(2, 1, 2).theta


def test_array_evaluation_matches_scalar():
    spec = ProblemSpec.torus(2, 0, 2)
    lams = np.array([-0.5, 0.2, 3.0, 80.0])
    f, _ = evaluate(spec, lams)
    for lam, v in zip(lams, f):
        assert v == pytest.approx(f_of(spec, lam), rel=1e-14)
