"""Closed forms for the unit disk."""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np
from scipy.integrate import quad

P_DISK = 4 / np.pi**2 - 1 / 8
L_CONST = 0.75 * np.pi * (np.pi**2 - 8)


def a2_mass(theta):
    """Area of third vertices in the unit disk giving an acute triangle with two
    boundary points at angular separation theta."""
    t = np.mod(np.asarray(theta, dtype=float), 2 * np.pi)
    t = np.where(t > np.pi, 2 * np.pi - t, t)
    val = t / 2 + 1.5 * np.sin(t) - np.pi / 4 + np.pi / 4 * np.cos(t)
    val = np.maximum(val, 0.0)  # clip -1e-16 rounding at the endpoints
    return float(val) if val.ndim == 0 else val


def a2_fourier_coeff(n: int) -> float:
    """(1/2π) ∫_0^{2π} A2(θ) cos(nθ) dθ."""
    n = int(n)
    if n < 0:
        raise ValueError("n must be nonnegative")
    if n == 0:
        return 3 / np.pi
    if n == 1:
        return (np.pi**2 - 8) / (8 * np.pi)
    s = (-1) ** n
    return s * (-2 - 4 * n * n + (2 - 8 * n * n) * s) / (2 * n * n * (n * n - 1)) / (2 * np.pi)


def a2_fourier_coeff_numeric(n: int) -> float:
    """Quadrature projection used as an independent check of a2_fourier_coeff."""
    val, _ = quad(lambda t: a2_mass(t) * np.cos(n * t), 0, np.pi,
                  epsabs=1e-14, epsrel=1e-13, limit=400)
    return 2 * val / (2 * np.pi)  # A2 is even about π


def L_constant() -> float:
    return L_CONST


def translation_double_integral() -> float:
    """∫∫ cos(u) cos(u+θ) A2(θ) du dθ over [0,2π]^2.

    The u-integral is π cos θ in closed form; the θ-integral is done by
    adaptive quadrature.
    """
    val, _ = quad(lambda t: np.cos(t) * a2_mass(t), 0, np.pi, epsabs=1e-14, epsrel=1e-13, limit=400)
    return np.pi * 2 * val


@dataclass(frozen=True)
class DiskConstants:
    p_disk: float = P_DISK
    L: float = L_CONST
    a_n: tuple = field(default_factory=lambda: tuple(a2_fourier_coeff(n) for n in range(65)))


def _lens_area(d, r):
    """Area of the unit disk intersected with a disk of radius r at center distance d."""
    d, r = np.broadcast_arrays(np.asarray(d, dtype=float), np.asarray(r, dtype=float))
    guard = 1e-14
    out = np.zeros(d.shape)
    inner = d <= np.abs(1 - r) + guard
    out = np.where(inner, np.pi * np.minimum(r, 1.0) ** 2, out)
    lens = ~inner & (d < 1 + r - guard)
    if np.any(lens):
        dd, rr = d[lens], r[lens]
        c1 = np.clip((dd * dd + rr * rr - 1) / (2 * dd * rr), -1, 1)
        c2 = np.clip((dd * dd + 1 - rr * rr) / (2 * dd), -1, 1)
        rad = (-dd + rr + 1) * (dd + rr - 1) * (dd - rr + 1) * (dd + rr + 1)
        out[lens] = rr * rr * np.arccos(c1) + np.arccos(c2) - 0.5 * np.sqrt(np.maximum(rad, 0.0))
    return out


def _disk_below(x):
    """Area of the unit disk with first coordinate <= x."""
    x = np.clip(x, -1.0, 1.0)
    return x * np.sqrt(1 - x * x) + np.arcsin(x) + np.pi / 2


def acute_locus_area_in_disk(X, Y):
    """Area of {z in unit disk : triangle XYz is acute}.

    The acute locus is the open strip between the perpendiculars to XY at X
    and Y, minus the closed disk with diameter XY (which lies in the strip).
    Vectorized over leading axes of X and Y.
    """
    X = np.asarray(X, dtype=float)
    Y = np.asarray(Y, dtype=float)
    diff = Y - X
    length = np.linalg.norm(diff, axis=-1)
    if np.any(length < 1e-12):
        raise ValueError("X and Y must be distinct")
    u = diff / length[..., None]
    a = np.einsum("...i,...i->...", X, u)
    b = np.einsum("...i,...i->...", Y, u)
    strip = _disk_below(b) - _disk_below(a)
    m = 0.5 * (X + Y)
    val = strip - _lens_area(np.linalg.norm(m, axis=-1), 0.5 * length)
    val = np.clip(val, 0.0, np.pi)
    return float(val) if val.ndim == 0 else val


@lru_cache(maxsize=None)
def _a2_table_cached(n_theta: int, n_max: int):
    theta = np.linspace(0, 2 * np.pi, n_theta)
    return theta, a2_mass(theta), np.arange(n_max + 1), np.array([a2_fourier_coeff(n) for n in range(n_max + 1)])


def a2_table(n_theta: int = 65, n_max: int = 20):
    """Rows (theta, A2, n, a_n); the shorter column is padded with None."""
    theta, A2, ns, an = _a2_table_cached(n_theta, n_max)
    rows = []
    for i in range(max(n_theta, n_max + 1)):
        rows.append((float(theta[i]) if i < n_theta else None,
                     float(A2[i]) if i < n_theta else None,
                     int(ns[i]) if i <= n_max else None,
                     float(an[i]) if i <= n_max else None))
    return rows
