import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from riesz_sharp.constants import branch_objective
from riesz_sharp.params import ParamSpace
from riesz_sharp.testfam import (
    TestFamilyParams,
    build_test_function,
    closed_form_T,
    critical_gamma,
    empirical_ratio,
    eval_g_gamma,
    limit_ratio_check,
    refine,
)


def test_g_at_origin():
    for gamma in (0.1, 0.7, 1.5):
        assert eval_g_gamma(gamma, 0) == pytest.approx(1.0)


def test_g_quarter_angle_at_half():
    # (1+z)/(1-z) = 3, exponent 1/2
    assert eval_g_gamma(math.pi / 4, 0.5) == pytest.approx(math.sqrt(3), abs=1e-15)
    z = 0.3 + 0.4j
    oracle = complex(((1 + z) / (1 - z)) ** (2 * 0.6 / math.pi))
    assert eval_g_gamma(0.6, z) == pytest.approx(oracle, abs=1e-14)


def test_g_rejects_closed_disk():
    with pytest.raises(ValueError):
        eval_g_gamma(0.5, 1.0)
    with pytest.raises(ValueError):
        eval_g_gamma(0.5, np.array([0.1, 1j]))


@pytest.mark.parametrize("gamma", [math.pi / 4, 0.3, 1.2])
def test_boundary_phase_is_plus_minus_gamma(gamma):
    # near the circle arg g -> +-gamma, so |Re g| = cot(gamma) |Im g|
    theta = np.linspace(0.3, 2 * math.pi - 0.3, 50)
    g = eval_g_gamma(gamma, 0.999999 * np.exp(1j * theta))
    np.testing.assert_allclose(np.abs(g.real), np.abs(g.imag) / math.tan(gamma), rtol=1e-3)


def test_test_function_reassembles_g():
    tp = TestFamilyParams(1, 1, 0.5, 0.9)
    grid = build_test_function(tp, 64)
    g = eval_g_gamma(0.5, 0.9 * np.exp(1j * grid.theta))
    np.testing.assert_allclose(grid.samples, g, atol=1e-14)


def test_test_function_real_when_beta_zero():
    grid = build_test_function(TestFamilyParams(2.0, 0.0, 0.9, 0.9), 64)
    assert np.all(grid.samples.imag == 0)


def test_small_gamma_is_nearly_constant():
    grid = build_test_function(TestFamilyParams(1.5, 0.7, 1e-9, 0.9), 64)
    np.testing.assert_allclose(grid.samples, 1.5, atol=1e-7)


def test_params_validation():
    for bad in [(0, 0, 0.5, 0.5), (1, 0, 0.0, 0.5), (1, 0, math.pi / 2, 0.5), (1, 0, 0.5, 1.0)]:
        with pytest.raises(ValueError):
            TestFamilyParams(*bad)


def test_T_examples():
    assert closed_form_T(1, 0, ParamSpace(2, 2)) == pytest.approx(1.0, abs=1e-15)
    # alpha = beta: numerator (2^s)^(1/s) = 2, denominator 2 sqrt(cos^2 + sin^2) = 2
    for p, s in [(1.5, 1.5), (3, 0.7), (10, 10 / 9)]:
        assert closed_form_T(1, 1, ParamSpace(p, s)) == pytest.approx(1.0, abs=1e-15)


@given(st.floats(-10, 10), st.floats(-10, 10), st.floats(1e-3, 1e3), st.floats(1.05, 20), st.floats(0.2, 8))
@settings(max_examples=100, deadline=None)
def test_T_even_and_homogeneous(a, b, lam, p, s):
    if abs(a) + abs(b) < 1e-6:
        return
    ps = ParamSpace(p, s)
    t = closed_form_T(a, b, ps)
    assert closed_form_T(-a, b, ps) == pytest.approx(t, rel=1e-12)
    assert closed_form_T(a, -b, ps) == pytest.approx(t, rel=1e-12)
    assert closed_form_T(lam * a, lam * b, ps) == pytest.approx(t, rel=1e-12)
    assert closed_form_T(-lam * a, -lam * b, ps) == pytest.approx(t, rel=1e-12)


@pytest.mark.parametrize("p,s", [(1.5, 1.5), (1.2, 1.05), (1.9, 0.6), (4, 2), (10, 10 / 9), (2, 2)])
def test_T_infimum_equals_reduced_infimum(p, s):
    ps = ParamSpace(p, s)
    phi = np.linspace(0, math.pi, 10**6 + 1)
    two_d = min(closed_form_T(math.cos(x), math.sin(x), ps) for x in phi[::1000])
    # vectorised version of the same two-parameter family on the dense angle grid
    a, b = np.cos(phi), np.sin(phi)
    top = np.maximum(np.abs(a + b), np.abs(a - b))
    num = top * ((np.abs(a + b) / top) ** s + (np.abs(a - b) / top) ** s) ** (1 / s)
    ang = math.pi / (2 * p)
    den = 2 * np.sqrt(a**2 * math.cos(ang) ** 2 + b**2 * math.sin(ang) ** 2)
    two_d = min(two_d, float(np.min(num / den)))
    t = np.linspace(0, 1, 10**6)
    one_d = min(float(branch_objective(t, p, s, sign).min()) for sign in (-1, 1))
    assert two_d == pytest.approx(one_d, rel=1e-8)


def test_ratio_is_exact_for_p_equal_s_equal_two():
    tp = TestFamilyParams(1.0, 0.3, math.pi / 2 - 1e-3, 0.999)
    assert limit_ratio_check(tp, ParamSpace(2, 2), 2**14) < 1e-12


def test_far_from_critical_is_finite_and_positive():
    p = 1.5
    tp = TestFamilyParams(1.0, 0.0, math.pi / (2 * p) / 2, 0.99)
    dev = limit_ratio_check(tp, ParamSpace(p, p), 2**12)
    assert math.isfinite(dev) and dev > 0
    assert empirical_ratio(tp, ParamSpace(p, p), 2**12) > 0


def test_equal_coefficients_give_ratio_one():
    for p, s in [(1.5, 1.5), (10, 10 / 9)]:
        tp = TestFamilyParams(1.0, 1.0, critical_gamma(p) - 1e-3, 0.999)
        assert limit_ratio_check(tp, ParamSpace(p, s), 2**16) < 2e-2


@pytest.mark.parametrize("p,s,alpha,beta", [(1.5, 1.5, 1, 0), (1.5, 1.5, 0, 1), (10, 10 / 9, 1, 0), (10, 10 / 9, 0, 1)])
def test_deviation_decreases_toward_critical_angle(p, s, alpha, beta):
    ps = ParamSpace(p, s)
    target = critical_gamma(p)
    tp, size = TestFamilyParams(alpha, beta, target - 1e-3, 0.999), 2**15
    devs = []
    for _ in range(4):
        devs.append(limit_ratio_check(tp, ps, size))
        tp, size = refine(tp, size, target)
    assert all(b < a for a, b in zip(devs, devs[1:])), devs
