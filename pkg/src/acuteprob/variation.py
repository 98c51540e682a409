"""Boundary perturbations of the disk: spectra, re-embedding, homotopy, barrier."""

from __future__ import annotations

import warnings
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Callable, Union

import numpy as np

from .disk import L_CONST, P_DISK, a2_fourier_coeff
from .errors import ConvergenceError, InvalidRegionError
from .estimator import DEFAULT_RESOLUTION, DEFAULT_SEED, Estimate, estimate_p, quadrature_p
from .geometry.metrics import hausdorff_distance_to_unit_disk
from .geometry.regions import PlanarRegion, RadialRegion
from .series import FourierSeries, fourier_decompose

LOW_MODE_TOL = 1e-10
EMBED_SAMPLES = 1024
NORMALIZE_LIMIT = 1 / (8 * np.sqrt(2 * np.pi))

__all__ = [
    "FourierSeries", "fourier_decompose", "autocorrelation_spectrum", "autocorrelation_direct",
    "second_variation_spectral", "probability_curvature", "normalize_embedding", "Embedding",
    "canonical_homotopy", "homotopy_trace", "HomotopyTrace", "curvature_at_zero",
    "barrier", "barrier_check", "BarrierReport", "low_modes",
]


# ---------------------------------------------------------------- spectra

def autocorrelation_direct(mu: FourierSeries, n_max: int | None = None, n_grid: int | None = None) -> np.ndarray:
    """Spectrum of R(theta) = ∫ mu(u) mu(u+theta) du by direct quadrature.

    Returns ∫∫ mu(u) mu(u+theta) cos(n theta) du dtheta divided by pi^2
    (4 pi^2 for n = 0), which is the normalization under which it equals
    c_n^2 + d_n^2.
    """
    n_max = mu.K if n_max is None else n_max
    N = n_grid or 4 * (max(mu.K, n_max) + 1) + 8
    th = 2 * np.pi * np.arange(N) / N
    m = mu.evaluate(th)
    # R(theta_j) by the trapezoid rule over u (exact for trig polynomials)
    R = np.array([np.sum(m * np.roll(m, -j)) for j in range(N)]) * (2 * np.pi / N)
    n = np.arange(n_max + 1)
    proj = (np.cos(np.outer(n, th)) @ R) * (2 * np.pi / N)
    norm = np.full(n.size, np.pi ** 2)
    norm[0] = 4 * np.pi ** 2
    return proj / norm


def autocorrelation_spectrum(mu: FourierSeries, verify: bool = False) -> np.ndarray:
    """c_n^2 + d_n^2 for n = 0..K; optionally cross-checked against direct quadrature."""
    power = mu.power()
    if verify:
        direct = autocorrelation_direct(mu)
        if not np.allclose(power, direct, rtol=0, atol=1e-9 * max(1.0, float(np.max(power)))):
            raise ConvergenceError("autocorrelation spectrum disagrees with direct quadrature")
    return power


def low_modes(g: FourierSeries) -> np.ndarray:
    """(c_0, c_1, d_1): the dilation and translation modes."""
    return np.array([g.cos[0], g.cos[1] if g.K >= 1 else 0.0, g.sin[0] if g.K >= 1 else 0.0])


def _require_admissible(mu: FourierSeries, tol: float = LOW_MODE_TOL):
    if np.any(np.abs(low_modes(mu)) > tol):
        raise ValueError("perturbation has dilation/translation modes; use normalize_embedding first")


def second_variation_spectral(mu: FourierSeries) -> float:
    """sum_{k>=2} (a_k - L)(c_k^2 + d_k^2) for an admissible perturbation."""
    _require_admissible(mu)
    power = mu.power()
    a = np.array([a2_fourier_coeff(k) for k in range(power.size)])
    return float(np.sum((a[2:] - L_CONST) * power[2:]))


def probability_curvature(mu: FourierSeries) -> float:
    """Exact d^2/dt^2 p(S_t) at t = 0 for r = 1 + t mu(theta).

    Equals (12/pi) sum_{k>=2} (a_k - a_1)(c_k^2 + d_k^2); the dilation and
    translation modes contribute nothing.
    """
    power = mu.power()
    a = np.array([a2_fourier_coeff(k) for k in range(power.size)])
    return float(12 / np.pi * np.sum((a[2:] - a[1]) * power[2:]))


# ---------------------------------------------------------------- re-embedding

@dataclass(frozen=True, eq=False)
class Embedding:
    region: RadialRegion
    translation: np.ndarray
    scale: float
    residual: float
    iterations: int


def _embedded_deviation(region: PlanarRegion, x, theta) -> np.ndarray:
    """Radial deviation of s*S + w sampled at theta, for x = (w_x, w_y, s)."""
    w = np.asarray(x[:2])
    s = x[2]
    rho = region.ray_exit(np.broadcast_to(-w / s, theta.shape + (2,)), theta)
    if np.any(~np.isfinite(rho)):
        raise ConvergenceError("embedding moved the origin outside the region")
    return s * rho - 1.0


def _moments(g: np.ndarray, theta: np.ndarray) -> np.ndarray:
    h = 2 * np.pi / g.size
    return h * np.array([g.sum(), (g * np.cos(theta)).sum(), (g * np.sin(theta)).sum()])


def normalize_embedding(region: PlanarRegion, n_samples: int = EMBED_SAMPLES,
                        tol: float = 1e-12, max_iter: int = 50) -> Embedding:
    """Translate and dilate a near-disk region so its radial deviation has no
    dilation or translation modes.

    Damped Newton on (w, s) -> (∫g, ∫g cos, ∫g sin) for the region s*S + w,
    started from (0, 0, 1), Jacobian by central differences, steps capped at
    three times the Hausdorff distance to the unit disk.
    """
    eps = hausdorff_distance_to_unit_disk(region)
    if eps >= NORMALIZE_LIMIT:
        raise InvalidRegionError(
            f"region is too far from the unit disk (Hausdorff distance {eps:.4g} >= {NORMALIZE_LIMIT:.4g})")
    theta = 2 * np.pi * np.arange(n_samples) / n_samples
    cap = max(3 * eps, 1e-12)

    def T(x):
        return _moments(_embedded_deviation(region, x, theta), theta)

    x = np.array([0.0, 0.0, 1.0])
    F = T(x)
    it = 0
    while np.max(np.abs(F)) > tol:
        if it >= max_iter:
            raise ConvergenceError(f"re-embedding did not converge (residual {np.max(np.abs(F)):.3g})")
        h = 1e-6
        J = np.empty((3, 3))
        for j in range(3):
            e = np.zeros(3)
            e[j] = h
            J[:, j] = (T(x + e) - T(x - e)) / (2 * h)
        step = np.linalg.solve(J, -F)
        size = np.max(np.abs(step))
        if size > cap:
            step *= cap / size
        x_new = x + step
        F_new = T(x_new)
        if np.max(np.abs(F_new)) >= np.max(np.abs(F)) and size <= 1e-15:
            break  # stagnated at round-off
        x, F = x_new, F_new
        it += 1
    g = _embedded_deviation(region, x, theta)
    out = RadialRegion.from_samples(g)
    return Embedding(out, x[:2].copy(), float(x[2]), float(np.max(np.abs(F))), it)


# ---------------------------------------------------------------- homotopy

def _deviation(region: RadialRegion) -> FourierSeries:
    return region.deviation


def canonical_homotopy(region: RadialRegion, t: float, strict: bool = True, warn: bool = True) -> RadialRegion:
    """S(t): r = 1 + t * g / ||g||_2, from the disk (t = 0) to the region (t = ||g||_2).

    Construction validates convexity; t beyond ||g||_2 is allowed but warned about.
    """
    g = _deviation(region)
    if strict:
        _require_admissible(g)
    norm = g.l2_norm()
    if norm < 1e-9:
        return RadialRegion(FourierSeries([0.0]), 0.0)
    if warn and t > norm * (1 + 1e-12):
        warnings.warn(f"t={t:.6g} exceeds ||g||_2={norm:.6g}; convexity is not guaranteed", stacklevel=2)
    return RadialRegion(g.scaled(1 / norm), float(t))


Family = Union[RadialRegion, Callable[[float], PlanarRegion]]


def _family(source: Family):
    if callable(source) and not isinstance(source, PlanarRegion):
        return source, 0.0, False
    g = _deviation(source)
    normalized = bool(np.all(np.abs(low_modes(g)) <= LOW_MODE_TOL))
    return (lambda t: canonical_homotopy(source, t, strict=False, warn=False)), g.l2_norm(), normalized


def _quad_with_error(region: PlanarRegion, resolution: int) -> Estimate:
    p = quadrature_p(region, resolution)
    coarse = quadrature_p(region, max(resolution // 2, 8))
    return Estimate(p, abs(p - coarse), 0, 0)


def _evaluate(family, ts, method: str, resolution: int, n_samples: int, seed: int, threads):
    if method == "quad":
        regions = [family(t) for t in ts]
        if threads and threads > 1:
            with ThreadPoolExecutor(threads) as pool:
                return list(pool.map(lambda r: _quad_with_error(r, resolution), regions))
        return [_quad_with_error(r, resolution) for r in regions]
    if method == "mc":
        return [estimate_p(family(t), n_samples, seed, threads) for t in ts]
    raise ValueError(f"unknown method {method!r}")


@dataclass(frozen=True, eq=False)
class HomotopyTrace:
    t: np.ndarray
    p: tuple  # Estimate per grid point
    dp: np.ndarray  # at interior points t[1:-1]
    d2p: np.ndarray
    d2p_err: np.ndarray
    g_norm: float
    normalized: bool
    method: str

    @property
    def values(self) -> np.ndarray:
        return np.array([e.value for e in self.p])

    @property
    def errors(self) -> np.ndarray:
        return np.array([e.std_err for e in self.p])


def homotopy_trace(source: Family, t_grid, method: str = "quad", resolution: int = DEFAULT_RESOLUTION,
                   n_samples: int = 10**6, seed: int = DEFAULT_SEED, threads: int | None = None) -> HomotopyTrace:
    """p(t) along the canonical homotopy of a radial region (or any callable family).

    Quadrature errors are estimated from a half-resolution rerun and
    propagated with absolute coefficients; Monte Carlo runs share one seed.
    """
    t = np.asarray(t_grid, dtype=float)
    if t.size < 3:
        raise ValueError("need at least 3 grid points for second differences")
    if np.any(np.diff(t) <= 0):
        raise ValueError("t grid must be strictly increasing")
    family, g_norm, normalized = _family(source)
    est = _evaluate(family, t, method, resolution, n_samples, seed, threads)
    p = np.array([e.value for e in est])
    err = np.array([e.std_err for e in est])
    h1 = t[1:-1] - t[:-2]
    h2 = t[2:] - t[1:-1]
    c1 = np.stack([-h2 / (h1 * (h1 + h2)), (h2 - h1) / (h1 * h2), h1 / (h2 * (h1 + h2))])
    c2 = np.stack([2 / (h1 * (h1 + h2)), -2 / (h1 * h2), 2 / (h2 * (h1 + h2))])
    P = np.stack([p[:-2], p[1:-1], p[2:]])
    E = np.stack([err[:-2], err[1:-1], err[2:]])
    dp = np.sum(c1 * P, axis=0)
    d2p = np.sum(c2 * P, axis=0)
    if method == "quad":
        d2p_err = np.sum(np.abs(c2) * E, axis=0)
    else:
        d2p_err = np.sqrt(np.sum((c2 * E) ** 2, axis=0))
    return HomotopyTrace(t, tuple(est), dp, d2p, d2p_err, float(g_norm), normalized, method)


_STENCIL = np.array([-1.0, 16.0, -30.0, 16.0, -1.0]) / 12.0


def curvature_at_zero(source: Family, h: float = 0.02, method: str = "quad",
                      resolution: int = DEFAULT_RESOLUTION, n_samples: int = 10**6,
                      seed: int = DEFAULT_SEED, threads: int | None = None):
    """Five-point central second difference of p(t) at t = 0.

    Returns (value, error_budget). The budget adds the truncation estimate
    |D(h) - D(h/2)| to the propagated evaluation error at step h/2.
    """
    family, _, _ = _family(source)
    offsets = np.array([-2, -1, 0, 1, 2], dtype=float)

    def D(step):
        est = _evaluate(family, offsets * step, method, resolution, n_samples, seed, threads)
        p = np.array([e.value for e in est])
        err = np.array([e.std_err for e in est])
        val = float(_STENCIL @ p) / step ** 2
        if method == "quad":
            noise = float(np.abs(_STENCIL) @ err) / step ** 2
        else:
            noise = float(np.sqrt(((_STENCIL * err) ** 2).sum())) / step ** 2
        return val, noise

    d1, _ = D(h)
    d2, noise2 = D(h / 2)
    return d1, abs(d1 - d2) + noise2


# ---------------------------------------------------------------- barrier

def barrier(t) -> np.ndarray:
    """p(D) - L t^2 / (12 pi^3)."""
    t = np.asarray(t, dtype=float)
    return P_DISK - L_CONST * t ** 2 / (12 * np.pi ** 3)


@dataclass(frozen=True, eq=False)
class BarrierReport:
    t: np.ndarray
    p: np.ndarray
    pbar: np.ndarray
    margin: np.ndarray  # pbar + tol - p, nonnegative where the barrier holds
    passes: bool
    below_disk: bool
    final_margin: float  # p(D) - p at the last grid point


def barrier_check(trace: HomotopyTrace, eps0: float = 0.2, tol: float = 2e-4) -> BarrierReport:
    """Compare a canonical-homotopy trace against the parabola barrier."""
    if not trace.normalized:
        raise ValueError("barrier check needs a normalized region (run normalize_embedding)")
    if trace.g_norm > eps0:
        raise ValueError(f"||g||_2 = {trace.g_norm:.4g} exceeds eps0 = {eps0}")
    p = trace.values
    pbar = barrier(trace.t)
    margin = pbar + tol - p
    inside = (trace.t > 0) & (trace.t <= trace.g_norm * (1 + 1e-12))
    below = bool(np.all(p[inside] < P_DISK)) if np.any(inside) else True
    return BarrierReport(trace.t, p, pbar, margin, bool(np.all(margin >= 0)), below,
                         float(P_DISK - p[-1]))
