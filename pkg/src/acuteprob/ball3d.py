"""Acute mass in the n-ball and the Legendre coefficients of the 3-ball mass."""

from __future__ import annotations

import json
from dataclasses import dataclass
from importlib import resources
from math import comb

import numpy as np
from numpy.polynomial.legendre import leggauss
from scipy.integrate import quad
from scipy.special import gamma

from .errors import ConvergenceError
from .estimator import DEFAULT_SEED, Estimate, estimate_p
from .geometry.regions import Ball3, real_sph_harm


def a_n_mass(theta: float, n: int) -> float:
    """Volume of third vertices in the unit n-ball making an acute triangle with
    two boundary points at angular separation theta in [0, pi]."""
    if n < 2:
        raise ValueError("n must be >= 2")
    half = theta / 2
    opts = dict(epsabs=1e-13, epsrel=1e-13, limit=200)
    i_sin = quad(lambda s: np.sin(s) ** n, half, np.pi / 2, **opts)[0]
    i_cos = quad(lambda s: np.cos(s) ** n, 0, half, **opts)[0]
    slab = np.pi ** ((n - 1) / 2) * (i_sin + 2 * i_cos) / gamma((n + 1) / 2)
    balls = np.pi ** (n / 2) * (np.sin(half) ** n + 1) / (2 * gamma(n / 2 + 1))
    return float(max(slab - balls, 0.0))


def a3_mass(theta):
    """Closed form of the 3-ball acute mass."""
    t = np.asarray(theta, dtype=float)
    s, c = np.sin(t / 2), np.cos(t / 2)
    val = (-2 / 3 * np.pi * (1 + s ** 3)
           + np.pi * ((9 * c - np.cos(1.5 * t)) / 12 + (9 * s + np.sin(1.5 * t)) / 6))
    val = np.maximum(val, 0.0)
    return float(val) if val.ndim == 0 else val


def legendre_p(m: int, x):
    """P_m(x) by the three-term recurrence."""
    x = np.asarray(x, dtype=float)
    p0, p1 = np.ones_like(x), x
    if m == 0:
        return p0
    for k in range(1, m):
        p0, p1 = p1, ((2 * k + 1) * x * p1 - k * p0) / (k + 1)
    return p1


def legendre_coeff(m: int) -> float:
    """∫_0^pi A3(theta) P_m(cos theta) sin(theta) dtheta in closed form."""
    if m < 0:
        raise ValueError("m must be nonnegative")
    if m == 0:
        return 4 * np.pi / 3
    s = (-1) ** m
    num = -8 * (-9 - 6 * s + 4 * m + 2 * s * m + 4 * m * m + 2 * s * m * m) * np.pi
    den = (-3 + 2 * m) * (-1 + 2 * m) * (1 + 2 * m) * (3 + 2 * m) * (5 + 2 * m)
    return num / den


def legendre_coeff_numeric(m: int) -> float:
    val, err = quad(lambda t: a3_mass(t) * legendre_p(m, np.cos(t)) * np.sin(t), 0, np.pi,
                    epsabs=1e-13, epsrel=1e-13, limit=400)
    if err > 1e-10:
        raise ConvergenceError(f"Legendre projection m={m} did not converge (error {err:.2g})")
    return val


def sin_power_moment(k: int) -> float:
    """Closed form of ∫_0^pi A3(theta) sin(theta) sin^{2k}(theta/2) dtheta."""
    return ((4 + 8 * k) * np.pi / (15 + 31 * k + 20 * k * k + 4 * k ** 3)
            + (2 + k) * np.pi ** 1.5 * gamma(1 + k) / gamma(3.5 + k))


def legendre_coeff_binomial(m: int) -> float:
    """Third evaluation path: P_m(cos t) = sum_k C(m,k) C(-m-1,k) sin^{2k}(t/2),
    integrated term by term with sin_power_moment. Cancellation limits it to small m."""
    return float(sum(comb(m, k) * (-1) ** k * comb(m + k, k) * sin_power_moment(k) for k in range(m + 1)))


def harmonic_projection(l: int, m: int, n: int = 48) -> float:
    """∫_{S^2} A3(polar) Y_lm dS with the second boundary point at the north pole."""
    # Gauss nodes in the polar angle itself: A3 is smooth in theta but not in cos(theta)
    x, w = leggauss(n)
    polar = np.pi * (x + 1) / 2
    az = 2 * np.pi * np.arange(2 * n) / (2 * n)
    P, A = np.meshgrid(polar, az, indexing="ij")
    W = np.outer(np.pi / 2 * w * np.sin(polar), np.full(az.size, 2 * np.pi / az.size))
    return float(np.sum(W * a3_mass(P) * real_sph_harm(l, m, P, A)))


@dataclass(frozen=True)
class LegendreCoeffTable:
    m: int
    closed_form: float
    numeric: float
    sign_ok: bool


class SignPatternError(AssertionError):
    pass


def sign_pattern_check(M: int) -> list[LegendreCoeffTable]:
    """Rows m = 0..M; positive expected at m = 0, 1 and non-positive beyond."""
    if M < 2:
        raise ValueError("M must be >= 2")
    rows = []
    for m in range(M + 1):
        cf = legendre_coeff(m)
        num = legendre_coeff_numeric(m)
        ok = (cf > 0 and num > 0) if m <= 1 else (cf <= 0 and num <= 1e-12)
        rows.append(LegendreCoeffTable(m, cf, num, bool(ok)))
    bad = [r.m for r in rows if not r.sign_ok]
    if bad:
        raise SignPatternError(f"sign pattern violated at m = {bad}")
    return rows


def estimate_p_ball(n_samples: int, seed: int = DEFAULT_SEED, radius: float = 1.0,
                    threads: int | None = None) -> Estimate:
    return estimate_p(Ball3(radius), n_samples, seed, threads)


def reference_p_ball() -> dict:
    """Stored Monte Carlo reference for the 3-ball (value, std_err, n, seed)."""
    text = resources.files("acuteprob").joinpath("data/expected_values.json").read_text()
    return json.loads(text)["p_ball3"]
