import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from sharpinterp import extremal, green, oracle, specfun
from sharpinterp.green import ProblemSpec as P

FAST = settings(max_examples=40, deadline=None)

SPECS = [P.torus(1, 0, 1), P.torus(1, 0, 2), P.torus(2, 0, 2), P.sphere2(2), P.sphere2(3), P.sphere3(), P.interval_dirichlet()]
specs = st.sampled_from(SPECS)


@FAST
@given(specs, st.floats(1e-3, 1e4))
def test_green_positive_decreasing(spec, t):
    lam = spec.lambda0 * (-1 + 1e-3) + t
    f, fp = green.evaluate(spec, lam)
    assert f[0] > 0 and fp[0] < 0


@FAST
@given(specs, st.floats(0.0, 4.0), st.floats(0.01, 2.0))
def test_v_monotone_in_d(spec, a, b):
    D1 = max(spec.lambda0, 1.0) * 10 ** a
    D2 = D1 * (1 + b)
    assert extremal.v_of_d(spec, D1).V < extremal.v_of_d(spec, D2).V


@FAST
@given(specs, st.floats(0.0, 4.0), st.floats(-0.99, 1e3))
def test_v_is_infimum(spec, a, t):
    # every admissible lam gives an upper bound for V(D)
    D = max(spec.lambda0, 1.0) * 10 ** a
    lam = spec.lambda0 * t if spec.lambda0 > 0 else abs(t) + 1e-3
    val = (lam + D) * float(green.evaluate(spec, lam)[0][0])
    assert extremal.v_of_d(spec, D).V <= val * (1 + 1e-12)


@FAST
@given(st.floats(0.05, 1e4), st.floats(0.05, 0.95))
def test_interval_symmetry(lam, xi):
    a = green.green_interval_dirichlet(1.0, xi, lam).value
    b = green.green_interval_dirichlet(1.0, 1 - xi, lam).value
    assert a == pytest.approx(b, rel=1e-12)


@FAST
@given(st.floats(-90.0, 1e4), st.floats(0.02, 0.98))
def test_interval4_symmetry(lam, xi):
    a = green.green_interval4(xi, lam).value
    b = green.green_interval4(1 - xi, lam).value
    assert a == pytest.approx(b, abs=1e-13)


@FAST
@given(st.floats(0.05, 10.0), st.floats(0.01, 0.99))
def test_s_function_bounded_by_half(a, xi):
    # xi = 1/2 at a = 1 is the global maximiser
    assert green.s_function(a, xi) <= green.s_function(1.0, 0.5) + 1e-12


@FAST
@given(st.floats(0.01, 10.0), st.floats(0.1, 30.0))
def test_dirichlet_scaling(L, lam):
    # G on [0, L] at (t L, lam / L^2) equals L G on [0, 1] at (t, lam)
    a = green.green_interval_dirichlet(L, 0.3 * L, lam / L ** 2).value
    b = green.green_interval_dirichlet(1.0, 0.3, lam).value
    assert a == pytest.approx(L * b, rel=1e-11)


@FAST
@given(st.integers(1, 3), st.integers(0, 2 ** 32), st.floats(0.1, 10.0))
def test_margin_homogeneity(n, seed, c):
    ineq = {1: "T1_m1", 2: "T2_m2", 3: "T3_l1m2"}[n]
    p = oracle.sample_trig_poly(n, {1: 6, 2: 3, 3: 2}[n], seed)
    m = oracle.inequality_margin(p, ineq, levels=2)
    assert oracle.inequality_margin(p.scaled(c), ineq, levels=2) == pytest.approx(c * c * m, rel=1e-9, abs=1e-12)


@FAST
@given(st.integers(1, 3), st.integers(0, 2 ** 32))
def test_sup_lower_bound(n, seed):
    p = oracle.sample_trig_poly(n, 2, seed)
    s = oracle.poly_sup(p, levels=2)
    x = np.random.default_rng(seed).uniform(0, 2 * math.pi, (64, n))
    assert s >= 0.999 * np.max(np.abs(p(x)))
    # and it never exceeds the coefficient bound sum |c_k|
    assert s <= np.sum(np.abs(p.coeffs)) * (1 + 1e-12)


@FAST
@given(st.integers(0, 2 ** 32))
def test_random_t1_inequality(seed):
    p = oracle.sample_trig_poly(1, 8, seed)
    assert oracle.inequality_margin(p, "T1_m1") >= 0
    assert oracle.inequality_margin(p, "T1_m2") >= 0


@FAST
@given(st.lists(st.floats(0.0, 10.0), min_size=1, max_size=40).filter(any))
def test_carlson_nonnegative(a):
    m1, m2 = oracle.carlson_margins(a)
    s = sum(x * x for x in a) + sum(a) ** 2
    assert m1 >= -1e-12 * s and m2 >= -1e-12 * s


@FAST
@given(st.floats(0.05, 50.0))
def test_gamma_recurrence(x):
    assert specfun.gamma_fn(x + 1) == pytest.approx(x * specfun.gamma_fn(x), rel=1e-13)


@FAST
@given(st.floats(0.0, 25.0))
def test_erfc_complement(x):
    assert specfun.erfc_fn(x) == pytest.approx(math.erfc(x), rel=1e-13, abs=1e-300)


@FAST
@given(st.floats(1e-3, 500.0))
def test_bessel_wronskian(x):
    w = specfun.modified_bessel("I0", x) * specfun.modified_bessel("K1", x) + specfun.modified_bessel("I1", x) * specfun.modified_bessel("K0", x)
    assert w * x == pytest.approx(1.0, rel=1e-12)
