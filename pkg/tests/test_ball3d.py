import numpy as np
import pytest
from scipy.integrate import quad

from acuteprob.ball3d import (SignPatternError, a3_mass, a_n_mass, estimate_p_ball, harmonic_projection,
                              legendre_coeff, legendre_coeff_binomial, legendre_coeff_numeric, legendre_p,
                              reference_p_ball, sign_pattern_check, sin_power_moment)
from acuteprob.disk import P_DISK, a2_mass
from acuteprob.estimator import chunk_rng, sample_uniform
from acuteprob.geometry import Ball3

GRID = np.linspace(0.0, np.pi, 128)


def test_a_n_matches_disk_mass():
    assert np.allclose([a_n_mass(t, 2) for t in GRID], a2_mass(GRID), atol=1e-9, rtol=0)


def test_a_n_matches_three_ball_closed_form():
    assert np.allclose([a_n_mass(t, 3) for t in GRID], a3_mass(GRID), atol=1e-9, rtol=0)
    assert a3_mass(np.pi / 2) == pytest.approx(a_n_mass(np.pi / 2, 3), abs=1e-9)


def test_a_n_rejects_low_dimension():
    with pytest.raises(ValueError):
        a_n_mass(1.0, 1)


def test_a3_endpoints():
    assert a_n_mass(np.pi, 3) == pytest.approx(0.0, abs=1e-12)
    assert a3_mass(np.pi) == pytest.approx(0.0, abs=1e-12)
    assert np.isfinite(a3_mass(0.0)) and a3_mass(0.0) >= 0
    assert np.all(a3_mass(GRID) >= 0)


def test_a3_total_mass():
    val = quad(lambda t: a3_mass(t) * np.sin(t), 0, np.pi, epsabs=1e-13, epsrel=1e-13)[0]
    assert val == pytest.approx(4 * np.pi / 3, abs=1e-10)


@pytest.mark.parametrize("theta", [0.4, 1.2, 2.0, 2.8])
def test_a3_monte_carlo_oracle(theta):
    # two boundary points at angular separation theta; fraction of the ball that completes an acute triangle
    X = np.array([0.0, 0.0, 1.0])
    Y = np.array([np.sin(theta), 0.0, np.cos(theta)])
    Z = sample_uniform(Ball3(), chunk_rng(int(theta * 100), 0), 10**6)
    d = Y - X
    acute = ((Z - X) @ d > 0) & ((Z - Y) @ d < 0) & (np.einsum("ij,ij->i", X - Z, Y - Z) > 0)
    f = acute.mean()
    vol = 4 * np.pi / 3
    sigma = vol * np.sqrt(f * (1 - f) / Z.shape[0])
    assert abs(vol * f - a3_mass(theta)) < 4 * sigma


def test_legendre_recurrence():
    x = np.linspace(-1, 1, 11)
    assert np.allclose(legendre_p(2, x), (3 * x**2 - 1) / 2, atol=1e-15)
    assert np.allclose(legendre_p(3, x), (5 * x**3 - 3 * x) / 2, atol=1e-15)
    assert np.allclose(legendre_p(20, 1.0), 1.0)


def test_legendre_examples():
    assert legendre_coeff(0) == pytest.approx(4 * np.pi / 3, abs=1e-15)
    assert legendre_coeff(1) == pytest.approx(8 * np.pi / 105, abs=1e-15)
    assert legendre_coeff(2) == pytest.approx(-168 * np.pi / 945, abs=1e-15)
    assert legendre_coeff_numeric(0) == pytest.approx(4 * np.pi / 3, abs=1e-10)
    assert legendre_coeff_numeric(1) == pytest.approx(8 * np.pi / 105, abs=1e-8)
    assert legendre_coeff_numeric(5) < 0
    assert legendre_coeff_numeric(5) == pytest.approx(legendre_coeff(5), abs=1e-8)


def test_legendre_rejects_negative():
    with pytest.raises(ValueError):
        legendre_coeff(-1)


@pytest.mark.parametrize("m", range(21))
def test_dual_path(m):
    cf = legendre_coeff(m)
    assert abs(cf - legendre_coeff_numeric(m)) <= 1e-8 * max(1.0, abs(cf))


@pytest.mark.parametrize("m", range(9))
def test_binomial_path(m):
    assert legendre_coeff_binomial(m) == pytest.approx(legendre_coeff(m), abs=1e-8)


@pytest.mark.parametrize("k", range(7))
def test_intermediate_identity(k):
    val = quad(lambda t: a3_mass(t) * np.sin(t) * np.sin(t / 2) ** (2 * k), 0, np.pi,
               epsabs=1e-13, epsrel=1e-13)[0]
    assert sin_power_moment(k) == pytest.approx(val, abs=1e-8)


@pytest.mark.parametrize("l,m", [(1, 1), (1, -1), (2, 1), (2, -2), (3, 2), (4, -3), (5, 5)])
def test_zonality(l, m):
    assert abs(harmonic_projection(l, m)) <= 1e-9


def test_zonal_projection_matches_legendre():
    # Y_l0 = sqrt((2l+1)/(4pi)) P_l(cos), so the zonal projection is 2pi * that factor * legendre_coeff
    for l in range(4):
        expected = 2 * np.pi * np.sqrt((2 * l + 1) / (4 * np.pi)) * legendre_coeff(l)
        assert harmonic_projection(l, 0) == pytest.approx(expected, abs=1e-9)


def test_sign_pattern():
    rows = sign_pattern_check(20)
    assert len(rows) == 21 and all(r.sign_ok for r in rows)
    assert max(abs(r.closed_form - r.numeric) for r in rows) <= 1e-8
    assert len(sign_pattern_check(2)) == 3


def test_sign_pattern_rejects_small_M():
    with pytest.raises(ValueError):
        sign_pattern_check(1)


def test_sign_pattern_error_is_hard_failure():
    assert issubclass(SignPatternError, AssertionError)


def test_ball_estimates_consistent():
    a = estimate_p_ball(10**6, seed=1)
    b = estimate_p_ball(10**6, seed=2)
    c = estimate_p_ball(10**6, seed=1, radius=3.0)
    assert abs(a.value - b.value) < 4 * np.hypot(a.std_err, b.std_err)
    assert abs(c.value - a.value) < 4 * np.hypot(a.std_err, c.std_err)
    assert a.value > P_DISK


def test_reference_value_stored():
    ref = reference_p_ball()
    assert {"value", "std_err", "n", "seed"} <= set(ref)
    assert ref["n"] == 10**7
    assert ref["value"] - P_DISK > 5 * ref["std_err"]
