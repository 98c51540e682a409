"""Truncated real Fourier series on the circle."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np


def _frozen(a) -> np.ndarray:
    arr = np.array(a, dtype=float).ravel()
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True, eq=False)
class FourierSeries:
    """mu(theta) = sum_k c_k cos(k theta) + sum_k d_k sin(k theta).

    ``cos`` holds c_0..c_K and ``sin`` holds d_1..d_K. Shorter inputs are
    zero-padded to a common cutoff K.
    """

    cos: np.ndarray
    sin: np.ndarray = field(default_factory=lambda: np.zeros(0))
    residual: float = 0.0

    def __post_init__(self):
        c = np.asarray(self.cos, dtype=float).ravel()
        d = np.asarray(self.sin, dtype=float).ravel()
        if c.size == 0:
            c = np.zeros(1)
        K = max(c.size - 1, d.size)
        c = np.pad(c, (0, K + 1 - c.size))
        d = np.pad(d, (0, K - d.size))
        if not (np.all(np.isfinite(c)) and np.all(np.isfinite(d))):
            raise ValueError("Fourier coefficients must be finite")
        object.__setattr__(self, "cos", _frozen(c))
        object.__setattr__(self, "sin", _frozen(d))

    @property
    def K(self) -> int:
        return self.cos.size - 1

    @classmethod
    def mode(cls, k: int, kind: str = "cos", coeff: float = 1.0) -> "FourierSeries":
        c = np.zeros(k + 1)
        d = np.zeros(max(k, 0))
        if kind == "cos":
            c[k] = coeff
        elif kind == "sin" and k >= 1:
            d[k - 1] = coeff
        else:
            raise ValueError(f"bad mode {kind!r} {k}")
        return cls(c, d)

    def __call__(self, theta, deriv: int = 0):
        return self.evaluate(theta, deriv)

    def evaluate(self, theta, deriv: int = 0):
        """Value (or derivative of order ``deriv``) at ``theta``."""
        theta = np.asarray(theta, dtype=float)
        # d^j/dθ^j of cos(kθ) is k^j cos(kθ + jπ/2); only nonzero modes are summed
        shift = deriv * np.pi / 2
        val = np.zeros(theta.shape)
        kc = np.flatnonzero(self.cos)
        for k in kc:
            val = val + self.cos[k] * float(k) ** deriv * np.cos(k * theta + shift)
        for j in np.flatnonzero(self.sin):
            k = j + 1
            val = val + self.sin[j] * float(k) ** deriv * np.sin(k * theta + shift)
        return val

    def l2_norm(self) -> float:
        """sqrt(∫_0^{2π} mu^2)."""
        return float(np.sqrt(2 * np.pi * self.cos[0] ** 2
                             + np.pi * (np.sum(self.cos[1:] ** 2) + np.sum(self.sin ** 2))))

    def power(self) -> np.ndarray:
        """c_n^2 + d_n^2 for n = 0..K (d_0 = 0)."""
        return self.cos ** 2 + np.concatenate([[0.0], self.sin ** 2])

    def scaled(self, s: float) -> "FourierSeries":
        return FourierSeries(s * self.cos, s * self.sin)

    def __add__(self, other: "FourierSeries") -> "FourierSeries":
        K = max(self.K, other.K)
        c = np.zeros(K + 1)
        d = np.zeros(K)
        c[: self.K + 1] += self.cos
        c[: other.K + 1] += other.cos
        d[: self.K] += self.sin
        d[: other.K] += other.sin
        return FourierSeries(c, d)

    def sup_abs(self, n: int = 4096) -> float:
        th = 2 * np.pi * np.arange(n) / n
        return float(np.max(np.abs(self.evaluate(th))))


def fourier_decompose(samples, K: int) -> FourierSeries:
    """Project equally spaced samples on [0, 2π) onto modes 0..K.

    Requires at least 4K samples. The reconstruction L2 residual is stored on
    the returned series.
    """
    g = np.asarray(samples, dtype=float).ravel()
    N = g.size
    if K < 0:
        raise ValueError("K must be nonnegative")
    if N < 4 * K or N < 1:
        raise ValueError(f"{N} samples cannot resolve K={K} (need >= 4K)")
    F = np.fft.rfft(g) / N
    c = 2 * F.real[: K + 1]
    c[0] = F.real[0]
    d = -2 * F.imag[1: K + 1]
    series = FourierSeries(c, d)
    th = 2 * np.pi * np.arange(N) / N
    resid = float(np.sqrt(2 * np.pi * np.mean((g - series.evaluate(th)) ** 2)))
    return FourierSeries(series.cos, series.sin, residual=resid)
