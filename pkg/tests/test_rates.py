import mpmath
import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from scipy import integrate

from largespin.exceptions import ConvergenceError
from largespin.quadrature import half_line_integral, pv_integral
from largespin.rates import (
    BathSpec,
    coth_half,
    compute_gamma,
    compute_gamma_c,
    compute_gamma_s,
    compute_rates,
    exp_integral_ei,
    pv_shift_difference,
    pv_shift_sum,
    spectral_density,
    thermal_spectral_density,
)
from largespin.spin import SpinSize, SystemParams

mpmath.mp.dps = 40


def test_bath_validation():
    with pytest.raises(ValueError, match="alpha"):
        BathSpec(-0.1, 50.0)
    with pytest.raises(ValueError, match="omega_c"):
        BathSpec(0.1, 0.0)
    with pytest.raises(ValueError, match="temperature"):
        BathSpec(0.1, 50.0, -1.0)
    assert not BathSpec(0.1, 50).beyond_weak_coupling
    assert BathSpec(0.2, 50).beyond_weak_coupling


def test_spectral_density():
    bath = BathSpec(0.05, 50.0)
    assert spectral_density(0.0, bath) == 0.0
    assert spectral_density(3.0, BathSpec(0.0, 50.0)) == 0.0
    assert spectral_density(2.0, bath) == pytest.approx(0.2 * np.exp(-0.04), rel=1e-15)
    assert spectral_density(2.0, bath) == pytest.approx(0.192158, abs=1e-6)
    with pytest.raises(ValueError):
        spectral_density(-1.0, bath)


def test_coth_branches():
    x = np.array([1e-7, 1e-3, 0.5, 3.0, 30.0, 300.0])
    got = coth_half(2 * x, 1.0)
    ref = [float(mpmath.coth(v)) for v in x]
    np.testing.assert_allclose(got, ref, rtol=1e-12)
    assert coth_half(5.0, 0.0) == 1.0


# -- exponential integral ----------------------------------------------------


def test_ei_reference_value():
    assert exp_integral_ei(1.0) == pytest.approx(1.895117816355937, rel=1e-15)
    assert exp_integral_ei(1.0) == pytest.approx(float(mpmath.ei(1)), rel=1e-14)


def test_ei_negative_is_minus_e1():
    from scipy.special import exp1

    assert exp_integral_ei(-0.04) == pytest.approx(-exp1(0.04), rel=1e-12)
    assert exp_integral_ei(-0.04) == pytest.approx(-float(mpmath.e1(0.04)), rel=1e-12)


def test_ei_small_argument_series():
    x = 1e-6
    assert abs(exp_integral_ei(x) - (np.log(x) + np.euler_gamma + x)) < 1e-9


def test_ei_rejects_zero():
    with pytest.raises(ValueError):
        exp_integral_ei(0.0)


@pytest.mark.parametrize("sign", [1, -1])
def test_ei_accuracy_over_range(sign):
    xs = sign * np.logspace(-6, np.log10(700), 200)
    got = exp_integral_ei(xs)
    ref = np.array([float(mpmath.ei(mpmath.mpf(float(x)))) for x in xs])
    # Ei has a simple root near 0.3725; compare there with absolute error
    err = np.abs(got - ref) / np.maximum(np.abs(ref), 1e-2)
    assert err.max() < 1e-12


# -- principal value quadrature ---------------------------------------------


def _pv_ohmic_reference(alpha, omega_c, pole):
    # PV int 2 a w e^{-w/wc} / (w - p) = 2 a (wc - p e^{-p/wc} Ei(p/wc)), in extended precision
    a, wc, p = (mpmath.mpf(v) for v in (alpha, omega_c, pole))
    return float(2 * a * (wc - p * mpmath.exp(-p / wc) * mpmath.ei(p / wc)))


def test_pv_integral_matches_closed_form():
    bath = BathSpec(0.05, 50.0)
    got = pv_integral(lambda w: spectral_density(w, bath), 2.0, 50.0)
    assert got == pytest.approx(_pv_ohmic_reference(0.05, 50.0, 2.0), abs=1e-8)


def test_pv_integral_zero_numerator():
    assert pv_integral(lambda w: 0.0 * w, 1.5, 10.0) == 0.0


def test_pv_integral_self_convergence():
    g = lambda w: 0.1 * w * np.exp(-w / 50.0)
    coarse = pv_integral(g, 2.0, 50.0, epsrel=1e-9)
    fine = pv_integral(g, 2.0, 50.0, epsrel=1e-13)
    assert abs(coarse - fine) < 1e-10 * abs(fine)


def test_pv_integral_against_qawc():
    g = lambda w: np.exp(-w / 7.0) * (1 + np.sin(w))
    got = pv_integral(g, 3.0, 7.0)
    cut = 50 * 7.0
    ref = integrate.quad(g, 0, cut, weight="cauchy", wvar=3.0, epsabs=0, epsrel=1e-13, limit=400)[0]
    assert got == pytest.approx(ref, rel=1e-10)


def test_pv_integral_errors():
    with pytest.raises(ValueError):
        pv_integral(np.exp, 0.0, 1.0)
    with pytest.raises(ConvergenceError):
        pv_integral(lambda w: np.ones_like(w), 1.0, 1.0)


def test_half_line_integral():
    assert half_line_integral(lambda w: np.exp(-w / 3.0), 3.0) == pytest.approx(3.0, rel=1e-13)


# -- rates ----------------------------------------------------------------------


def test_gamma_c_zero_temperature_and_zero_coupling():
    bath = BathSpec(0.05, 50.0, 0.0)
    gc = compute_gamma_c(2.0, bath)
    assert gc.real == 0.5 * np.pi * spectral_density(2.0, bath)
    assert compute_gamma_c(2.0, BathSpec(0.0, 50.0, 1.0)) == 0
    assert compute_gamma_s(2.0, BathSpec(0.0, 50.0, 1.0)) == 0
    assert compute_gamma(BathSpec(0.0, 50.0, 1.0)) == 0
    with pytest.raises(ValueError):
        compute_gamma_c(0.0, bath)
    with pytest.raises(ValueError):
        compute_gamma_s(-1.0, bath)


def test_gamma_c_dual_path_superradiance_point():
    bath = BathSpec(0.005, 50.0, 1.0)
    d = np.sqrt(104)
    a = compute_gamma_c(d, bath, "analytic")
    q = compute_gamma_c(d, bath, "quadrature")
    assert a.real == q.real
    assert abs(a.imag - q.imag) < 1e-8


def test_gamma_s_dual_path_zero_temperature():
    bath = BathSpec(0.0025, 50.0, 0.0)
    a = compute_gamma_s(2.0, bath, "analytic")
    q = compute_gamma_s(2.0, bath, "quadrature")
    assert abs(a.real - q.real) < 1e-8
    assert a.imag == q.imag == -0.5 * np.pi * spectral_density(2.0, bath)


def test_gamma_s_finite_temperature_against_qawc():
    bath = BathSpec(0.05, 50.0, 2.0)
    d = np.sqrt(5.0)
    g = lambda w: thermal_spectral_density(w, bath)
    cut = 50 * 50.0
    plus = integrate.quad(lambda w: g(w) / (w + d), 0, cut, epsabs=0, epsrel=1e-13, limit=400)[0]
    minus = integrate.quad(g, 0, cut, weight="cauchy", wvar=d, epsabs=0, epsrel=1e-13, limit=400)[0]
    assert compute_gamma_s(d, bath).real == pytest.approx(0.5 * (plus - minus), rel=1e-9)
    with pytest.raises(ValueError):
        compute_gamma_s(d, bath, "analytic")


def test_thermal_density_regular_at_zero():
    bath = BathSpec(0.03, 40.0, 0.7)
    limit = 4 * bath.alpha * bath.temperature
    assert thermal_spectral_density(0.0, bath) == pytest.approx(limit, rel=1e-15)
    assert abs(thermal_spectral_density(1e-12, bath) - limit) < 1e-8
    d = 1.3
    integrand = lambda w: 0.5 * thermal_spectral_density(w, bath) * (1 / (w + d) - 1 / (w - d))
    assert abs(integrand(1e-12) - 0.5 * limit * (1 / d + 1 / d)) < 1e-8
    w = np.array([5e-5, 2e-4])  # either side of the series switch
    ref = 2 * bath.alpha * w * np.exp(-w / bath.omega_c) / np.tanh(w / (2 * bath.temperature))
    np.testing.assert_allclose(thermal_spectral_density(w, bath), ref, rtol=1e-12)


def test_gamma_limits():
    b = BathSpec(0.01, 30.0, 1.5)
    assert compute_gamma(b) == pytest.approx(complex(2 * np.pi * 0.01 * 1.5, -2 * 0.01 * 30.0), rel=1e-15)
    assert abs(compute_gamma(b, "quadrature") - compute_gamma(b)) < 1e-12
    for bath in (b, BathSpec(0.01, 30.0, 0.0)):
        g, near = compute_gamma(bath), compute_gamma_c(1e-8, bath)
        assert abs(near - g) < 1e-6
        assert abs(compute_gamma_c(1e-6, bath) - g) < 1e-4
    assert compute_gamma(BathSpec(0.01, 30.0, 0.0)) == complex(0, -0.6)


def test_rates_fig1a_sane(fig1a):
    params, bath = fig1a
    r = compute_rates(params, bath)
    assert r.delta == params.delta
    assert np.all(np.isfinite(r.as_array().view(float)))
    assert r.gamma_c.real > 0
    assert r.gamma_s.imag == -0.5 * np.pi * spectral_density(params.delta, bath)


@pytest.mark.parametrize("temperature", [0.0, 1.0])
@pytest.mark.parametrize("method", ["analytic", "quadrature"])
def test_rates_linear_in_alpha(temperature, method):
    params = SystemParams(SpinSize(1), 1.0)
    r1 = compute_rates(params, BathSpec(0.01, 50.0, temperature), method).as_array()
    r2 = compute_rates(params, BathSpec(0.02, 50.0, temperature), method).as_array()
    np.testing.assert_allclose(r2, 2 * r1, rtol=1e-12, atol=0)


draws = dict(
    alpha=st.floats(1e-3, 0.1),
    omega_c=st.floats(10, 100),
    delta=st.floats(0.5, 20),
    temperature=st.one_of(st.just(0.0), st.floats(0.1, 5)),
)


@settings(max_examples=40, deadline=None)
@given(**draws)
def test_dual_path_and_signs(alpha, omega_c, delta, temperature):
    bath = BathSpec(alpha, omega_c, temperature)
    a, q = pv_shift_sum(delta, bath), pv_shift_sum(delta, bath, "quadrature")
    assert a == pytest.approx(q, rel=1e-7)
    if temperature == 0:
        a, q = pv_shift_difference(delta, bath), pv_shift_difference(delta, bath, "quadrature")
        assert a == pytest.approx(q, rel=1e-7)
    gc, gs = compute_gamma_c(delta, bath), compute_gamma_s(delta, bath)
    assert gc.real >= 0
    assert gs.imag <= 0


@pytest.mark.parametrize("temperature", [0.0, 1.5])
def test_quadrature_at_tiny_spacing(temperature):
    # the integrand varies on the scale delta near w = 0; needs geometric panels
    bath = BathSpec(0.01, 30.0, temperature)
    for delta in (1e-8, 1e-5):
        q = compute_gamma_c(delta, bath, "quadrature")
        assert abs(q - compute_gamma_c(delta, bath)) < 1e-12
        assert abs(q - compute_gamma(bath)) < 1e-5
