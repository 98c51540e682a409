"""Acceptance criteria 1-12, each at its stated tolerance; one PASS/FAIL line per criterion."""

import time
from functools import lru_cache

import numpy as np
import pytest
from conftest import record
from scipy.integrate import quad

from acuteprob.ball3d import a3_mass, estimate_p_ball, legendre_coeff, legendre_coeff_numeric
from acuteprob.disk import P_DISK, a2_fourier_coeff, a2_fourier_coeff_numeric, a2_mass
from acuteprob.estimator import DEFAULT_SEED, estimate_p, quadrature_p
from acuteprob.geometry import (Disk, Ellipse, Polygon, RadialRegion, Similarity, SimilarRegion,
                                hausdorff_distance_to_unit_disk)
from acuteprob.isoperimetric import THRESHOLD, decay_curve, iso_ratio, nonacute_lower_bound, partition_bound
from acuteprob.series import FourierSeries
from acuteprob.variation import (barrier_check, curvature_at_zero, homotopy_trace, normalize_embedding,
                                 second_variation_spectral)

pytestmark = pytest.mark.acceptance


def check(criterion, passed, detail):
    record(criterion, bool(passed), detail)
    assert passed, detail


def unit_mode(k):
    g = FourierSeries.mode(k)
    return g.scaled(1 / g.l2_norm())


@lru_cache(maxsize=None)
def fd_curvature(k):
    return curvature_at_zero(RadialRegion(unit_mode(k), 0.02), h=0.02)


def test_01_disk_monte_carlo():
    t0 = time.perf_counter()
    est = estimate_p(Disk(), 10**7, DEFAULT_SEED)
    wall = time.perf_counter() - t0
    dev = abs(est.value - P_DISK)
    check("1 disk MC", dev <= 4 * est.std_err and wall <= 60,
          f"p={est.value:.7f} sigma={est.std_err:.2e} |dev|={dev:.2e} (4 sigma={4 * est.std_err:.2e}) time={wall:.1f}s")


def test_02_quadrature():
    default = abs(quadrature_p(Disk()) - P_DISK)
    ladder = [abs(quadrature_p(Disk(), r) - P_DISK) for r in (4, 8, 16)]
    decreasing = all(b < a for a, b in zip(ladder, ladder[1:]))
    check("2 quadrature", default <= 1e-4 and decreasing,
          f"default err={default:.1e}, ladder r=4,8,16 errs={', '.join(f'{e:.1e}' for e in ladder)}")


def test_03_fourier_coefficients():
    diffs = [abs(a2_fourier_coeff(n) - a2_fourier_coeff_numeric(n)) for n in range(51)]
    a = [a2_fourier_coeff(n) for n in range(51)]
    signs = a[0] > 0 and a[1] > 0 and all(x < 0 for x in a[2:])
    check("3 A2 coefficients", max(diffs) <= 1e-9 and signs,
          f"max |closed - quad| over n=0..50 = {max(diffs):.1e}; signs (+,+,-...) {'ok' if signs else 'violated'}")


def test_04_L_identity():
    # independent 2D quadrature of the double integral over u, theta in [0, 2pi]
    inner = lambda th: quad(lambda u: np.cos(u) * np.cos(u + th), 0, 2 * np.pi, epsabs=1e-12)[0]
    val = 6 * quad(lambda th: inner(th) * a2_mass(th), 0, 2 * np.pi, epsabs=1e-13, epsrel=1e-13, limit=200)[0]
    target = 3 / (4 * np.pi) * (np.pi**2 - 8) * np.pi**2
    check("4 L identity", abs(val - target) <= 1e-8,
          f"6*integral={val:.10f} target={target:.10f} ratio={val / target:.12f}")


def test_05a_second_variation_sign():
    rows, ok = [], True
    for k in range(2, 7):
        fd, budget = fd_curvature(k)
        spectral = second_variation_spectral(unit_mode(k))
        good = fd < 0 and abs(fd) > budget and np.sign(fd) == np.sign(spectral)
        ok &= good
        rows.append(f"k={k}: fd={fd:.5f}+-{budget:.1e} spectral={spectral:.4f}")
    check("5a second variation sign", ok, "; ".join(rows))


def test_05b_second_variation_magnitude():
    fd = {k: fd_curvature(k)[0] for k in range(2, 7)}
    spectral = {k: second_variation_spectral(unit_mode(k)) for k in range(2, 7)}
    scale = fd[2] / spectral[2]  # one-point calibration at k = 2
    rel = {k: abs(scale * spectral[k] - fd[k]) / abs(fd[k]) for k in range(3, 7)}
    check("5b second variation magnitude", max(rel.values()) <= 0.10,
          f"calibration {scale:.4f}; relative misfit k=3..6: "
          + ", ".join(f"{rel[k]:.2f}" for k in range(3, 7)))


def _shifted_disk(t):
    return RadialRegion.from_function(lambda th: t * np.cos(th) + np.sqrt(1 - (t * np.sin(th)) ** 2), 64)


def test_06_congruence_null():
    translated = curvature_at_zero(_shifted_disk, h=0.02)
    dilated = curvature_at_zero(lambda t: RadialRegion(FourierSeries([1.0]), t), h=0.02)
    ell = Ellipse(1.0, 0.7)
    moved = SimilarRegion(ell, Similarity(2.5, 0.6, (1.5, -0.7)))
    cong = abs(quadrature_p(ell) - quadrature_p(moved))
    ok = abs(translated[0]) <= translated[1] and abs(dilated[0]) <= dilated[1] and cong <= 1e-6
    check("6 congruence null", ok,
          f"translated p''={translated[0]:.1e} (budget {translated[1]:.1e}); dilated p''={dilated[0]:.1e} "
          f"(budget {dilated[1]:.1e}); congruent copies differ by {cong:.1e}")


def test_07_barrier():
    rows, ok = [], True
    for k, amp in ((2, 0.05), (3, 0.04)):
        reg = RadialRegion(FourierSeries.mode(k).scaled(amp), 1.0)
        norm = reg.deviation.l2_norm()
        rep = barrier_check(homotopy_trace(reg, np.linspace(0, norm, 9)))
        good = rep.passes and rep.below_disk and rep.final_margin > 0
        ok &= good
        rows.append(f"{amp}cos{k}theta: min margin={rep.margin.min():.2e}, p(D)-p(end)={rep.final_margin:.2e}")
    check("7 barrier", ok, "; ".join(rows))


def test_08_isoperimetric_chain():
    rect = Polygon.rectangle(1.0, 0.005)
    ratio = iso_ratio(rect)
    rep = partition_bound(rect)
    est = estimate_p(rect, 10**6)
    rows, slope = decay_curve(n_samples=10**6)
    ok = (abs(ratio - 808.02) < 1e-6 and ratio > THRESHOLD and abs(rep.p_upper - 0.087424) < 1e-12
          and est.value <= rep.p_upper + 4 * est.std_err and slope <= -0.8)
    check("8 isoperimetric chain", ok,
          f"R={ratio:.2f} > {THRESHOLD:.3f}; p_upper={rep.p_upper:.6f}; p_mc={est.value:.5f}+-{est.std_err:.1e}; "
          f"ladder slope={slope:.3f}")


def test_09_pivot():
    lb30 = nonacute_lower_bound(30)
    lb29 = nonacute_lower_bound(29)
    need = 9 / 8 - 4 / np.pi**2
    ok = lb30 == 26 * 27 * 28 / 30**3 and abs(lb30 - 0.728) < 1e-15 and lb30 > need and lb29 < need
    check("9 N=30 pivot", ok, f"N=30: {lb30:.6f} > {need:.6f}; N=29: {lb29:.6f} below")


def test_10_legendre_signs():
    diffs = [abs(legendre_coeff(m) - legendre_coeff_numeric(m)) for m in range(21)]
    signs = (legendre_coeff(0) > 0 and legendre_coeff(1) > 0
             and abs(legendre_coeff(0) - 4 * np.pi / 3) < 1e-15 and abs(legendre_coeff(1) - 8 * np.pi / 105) < 1e-15
             and all(legendre_coeff(m) <= 0 and legendre_coeff_numeric(m) <= 1e-12 for m in range(2, 21)))
    total = quad(lambda t: a3_mass(t) * np.sin(t), 0, np.pi, epsabs=1e-13, epsrel=1e-13)[0]
    ok = max(diffs) <= 1e-8 and signs and abs(total - 4 * np.pi / 3) <= 1e-10
    check("10 3D sign pattern", ok,
          f"max |closed - numeric| m<=20 = {max(diffs):.1e}; signs {'ok' if signs else 'violated'}; "
          f"integral of A3 sin = {total:.12f}")


def test_11_dimension_monotonicity():
    est = estimate_p_ball(10**7)
    z = (est.value - P_DISK) / est.std_err
    check("11 dimension monotonicity", z >= 5, f"p_ball={est.value:.5f}+-{est.std_err:.1e}, {z:.0f} sigma above p(D)")


def test_12_lipschitz_modulus():
    rng = np.random.default_rng(12)
    worst, count = 0.0, 0
    while count < 30:
        K = int(rng.integers(2, 7))
        c = np.concatenate([[0.0, 0.0], rng.normal(size=K - 1)])
        d = np.concatenate([[0.0], rng.normal(size=K - 1)])
        g = FourierSeries(c, d)
        target = rng.uniform(0.005, 0.02)
        region = RadialRegion(g, target / g.sup_abs())
        region = normalize_embedding(region).region
        dh = hausdorff_distance_to_unit_disk(region)
        if not 0.005 <= dh <= 0.02:
            continue
        count += 1
        worst = max(worst, abs(quadrature_p(region) - P_DISK) / dh)
    check("12 Lipschitz modulus", worst <= 48 * 1.2,
          f"max |p(S)-p(D)|/d_H over 30 regions = {worst:.3f} (limit {48 * 1.2:.1f})")
