import math

import numpy as np
import pytest

from sharpinterp import asympt, extremal, green
from sharpinterp.green import ProblemSpec as P
from sharpinterp.specfun import DomainError

SPECS = [
    (P.torus(1, 0, 1), None),
    (P.torus(1, 0, 2), None),
    (P.torus(2, 1, 2), None),
    (P.torus(3, 1, 2), None),
    (P.sphere2(3), None),
    (P.sphere3(), None),
    (P.interval_dirichlet(), 0.3),
    (P.halfline_bessel(), 1.0),
    (P.interval4(), 0.5),
]
IDS = [f"{s.label()}-{xi}" for s, xi in SPECS]


@pytest.mark.parametrize("spec,xi", SPECS, ids=IDS)
def test_v_of_d_first_order_conditions(spec, xi):
    for D in (1.5 * max(spec.lambda0, 1.0), 40.0 + spec.lambda0, 3e3):
        p = extremal.v_of_d(spec, D, xi)
        f, fp = (float(a[0]) for a in green.evaluate(spec, p.lambda_star, xi))
        # at the minimiser D(lam*) = D and V = f^2 / (-f')
        assert extremal.d_of_lambda(spec, xi, p.lambda_star) == pytest.approx(D, rel=1e-6)
        assert p.V == pytest.approx(f * f / -fp, rel=1e-8)
        # and it is a minimum: nearby lam give larger objective
        for lam in (p.lambda_star * 0.9 + 0.1 * -spec.lambda0, p.lambda_star * 1.1 + 1.0):
            assert (lam + D) * float(green.evaluate(spec, lam, xi)[0][0]) >= p.V


@pytest.mark.parametrize("spec,xi", SPECS[:6], ids=IDS[:6])
def test_v_increasing_and_concave_in_d(spec, xi):
    Ds = np.geomspace(max(spec.lambda0, 1.0) * 1.01, 1e4, 40)
    V = np.array([p.V for p in extremal.v_curve(spec, Ds, xi)])
    assert np.all(np.diff(V) > 0)
    # V is an infimum of affine functions of D, hence concave
    slopes = np.diff(V) / np.diff(Ds)
    assert np.all(np.diff(slopes) <= 1e-12 * slopes[1:])


def test_v_of_d_domain():
    with pytest.raises(DomainError):
        extremal.v_of_d(P.sphere3(), 2.0)
    with pytest.raises(DomainError):
        extremal.v_of_d(P.rn(1, 0, 1), 0.0)


def test_v_of_d_edge_at_lambda0():
    p = extremal.v_of_d(P.torus(1, 0, 1), 1.0)
    assert p.lambda_star < -0.99
    assert math.isfinite(p.V)


def test_rn_exact():
    # n=1, l=0, m=1: f = 1/(2 sqrt lam), V(D) = sqrt(D)
    for D in (0.01, 1.0, 300.0):
        p = extremal.v_of_d(P.rn(1, 0, 1), D)
        assert p.V == pytest.approx(math.sqrt(D), rel=1e-12)
        assert p.lambda_star == pytest.approx(D, rel=1e-6)


def test_sharp_constant_whole_line():
    sc = extremal.sharp_constant(P.rn(1, 0, 1))
    assert sc.K == pytest.approx(1.0, rel=1e-12)
    assert sc.at_infinity


def test_sharp_constant_torus_at_infinity():
    sc = extremal.sharp_constant(P.torus(1, 0, 1))
    assert sc.at_infinity
    assert sc.K == pytest.approx(1.0, rel=1e-12)


def test_sharp_constant_bessel_attained():
    sc = extremal.sharp_constant(P.halfline_bessel())
    assert not sc.at_infinity
    assert sc.K == pytest.approx(1.066725, abs=2e-6)
    assert math.sqrt(sc.attained_at) * sc.xi == pytest.approx(1.07503, abs=1e-4)
    assert sc.sup_value > sc.limit


def test_tangency_at_finite_attainment():
    # V(D) = K D^(1-theta) exactly at D = (1-theta)/theta lam_att
    spec, xi = P.interval4(), 0.5
    sc = extremal.sharp_constant(spec, xi)
    th = sc.theta
    D = (1 - th) / th * sc.attained_at
    V = extremal.v_of_d(spec, D, xi).V
    assert V == pytest.approx(sc.K * D ** (1 - th), rel=1e-9)
    for Dn in (1.2 * D, 2 * D):
        assert extremal.v_of_d(spec, Dn, xi).V < sc.K * Dn ** (1 - th)


def test_logarithmic_has_no_constant():
    with pytest.raises(DomainError):
        extremal.sharp_constant(P.torus(2, 1, 2))


def test_sphere2_h_sup():
    h2 = extremal.sphere2_h_sup(2)
    assert h2.at_infinity
    assert h2.H_inf == pytest.approx(math.pi / 2)
    h10 = extremal.sphere2_h_sup(10)
    assert h10.nu_star == pytest.approx(1.5787, abs=1e-3)
    assert h10.H_star > h10.H_inf
    with pytest.raises(DomainError):
        extremal.sphere2_h(1.0, 1.0)


@pytest.mark.parametrize("case", extremal.PROOF_CASES)
def test_proof_checks_negative(case):
    pc = extremal.proof_check_negativity(case, points=2001)
    assert pc.negative, pc


def test_proof_check_unknown():
    with pytest.raises(ValueError):
        extremal.proof_check_negativity("nope")


@pytest.mark.parametrize("n,m,K", [(1, 1, 1 / math.pi), (1, 2, 2 / (3 * math.pi)), (2, 2, 1 / (2 * math.pi ** 2))])
def test_torus_kn_tail(n, m, K):
    r = extremal.torus_kn(n, m, points=48, d_max=1e5)
    assert r.K == pytest.approx(K, rel=1e-12)
    assert r.K_scan >= r.K_tail - 1e-9


@pytest.mark.slow
def test_torus_kn_interior_n3():
    # [DERIVED] interior minimum below the asymptotic k_3(2)
    r = extremal.torus_kn(3, 2, points=96)
    assert r.K == pytest.approx(0.0160539, abs=2e-6)
    assert r.K < r.K_tail


def test_corrected_bounds_hold():
    cases = [P.torus(1, 0, 1), P.torus(2, 0, 2), P.sphere2(2), P.sphere2(3), P.sphere2(4), P.sphere3(), P.interval_dirichlet(2.0)]
    for sp in cases:
        Ds = np.geomspace(max(sp.lambda0, 1.0), 1e4, 60)
        V = np.array([p.V for p in extremal.v_curve(sp, Ds)])
        bound, label = extremal.corrected_bound(sp, Ds)
        assert np.all(bound - V >= -4 * np.spacing(V)), (sp.label(), label)


def test_sphere2_m4_eps_0821_fails():
    # [DERIVED] with eps_4 = 0.821 the S^2 m=4 bound is violated near D = 22
    sp = P.sphere2(4)
    c = asympt.coeffs_for(sp)
    D = 22.1
    V = extremal.v_of_d(sp, D).V
    lead = c.g1 * c.S * D ** (1 - c.theta)
    assert V > lead + 0.821 * c.g2 / c.theta
    assert V <= lead + extremal.SPHERE2_EPS[4] * c.g2 / c.theta


def test_interval_margin_closed_form():
    # sqrt(D)(1 - 2 e^-sqrt D) - V ~ 2 sqrt(D) e^(-2 sqrt D)(D - 1): positive where resolvable
    sp = P.interval_dirichlet()
    for D in (100.0, 150.0, 200.0):
        V = extremal.v_of_d(sp, D).V
        r = math.sqrt(D)
        margin = r * (1 - 2 * math.exp(-r)) - V
        est = 2 * r * math.exp(-2 * r) * (D - 1)
        assert margin > 0
        assert margin == pytest.approx(est, rel=1e-2)


def test_corrected_fallback_uses_sharp_constant():
    b, label = extremal.corrected_bound(P.halfline_bessel(), 100.0, 1.0)
    assert label == "K D^(1-theta)"
    assert b == pytest.approx(1.066725 * 10.0, rel=1e-5)


@pytest.mark.parametrize("spec,xi", SPECS, ids=IDS)
def test_d_monotone_and_inverse_green_concave(spec, xi):
    # D' = (f f'' - 2 f'^2)/f'^2 and (1/f)'' = (2 f'^2 - f f'')/f^3 have opposite signs
    lam0 = spec.lambda0
    lam = np.exp(np.linspace(math.log(1e-2 * lam0 if lam0 > 0 else 1e-2), math.log(1e3 + lam0), 80)) - lam0
    f, fp = green.evaluate(spec, lam, xi)
    D = (f + lam * fp) / -fp
    assert np.all(np.diff(D) > 0)
    q = 1.0 / f
    d1 = np.diff(q) / np.diff(lam)
    assert np.all(np.diff(d1) < 0)
