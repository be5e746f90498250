"""Real orthonormal circular harmonics and discrete angular coefficients.

The basis on the unit circle is

    Y(0,1) = 1/sqrt(2 pi),  Y(k,1) = cos(k phi)/sqrt(pi),  Y(k,2) = sin(k phi)/sqrt(pi)

and angular samples are always taken on the shifted grid phi_s = 2 pi s / M,
s = 1..M (the last node sits at 2 pi rather than 0).
"""
import math
from dataclasses import dataclass

import numpy as np

from .exceptions import DomainError

SQRT_PI = math.sqrt(math.pi)
SQRT_2PI = math.sqrt(2.0 * math.pi)


@dataclass(frozen=True, order=True)
class ModeIndex:
    """Index (k, l) of a circular harmonic; l = 2 only exists for k >= 1."""

    k: int
    l: int

    def __post_init__(self):
        if not isinstance(self.k, (int, np.integer)) or not isinstance(self.l, (int, np.integer)):
            raise DomainError(f"mode indices must be integers, got ({self.k!r}, {self.l!r})")
        if self.k < 0:
            raise DomainError(f"mode order k must be non-negative, got {self.k}")
        if self.l not in (1, 2) or (self.k == 0 and self.l != 1):
            raise DomainError(f"invalid branch l={self.l} for k={self.k}")

    def __str__(self):
        return f"({self.k},{self.l})"


def branch_count(k):
    """Number of harmonics of order k: 1 for k = 0, else 2."""
    if k < 0:
        raise DomainError(f"k must be non-negative, got {k}")
    return 1 if k == 0 else 2


def modes_up_to(K):
    """All mode indices with k <= K in k-major, l-minor order."""
    out = [ModeIndex(0, 1)]
    for k in range(1, K + 1):
        out += [ModeIndex(k, 1), ModeIndex(k, 2)]
    return out


def eval_harmonic(mode, phi):
    """Evaluate Y(k,l) at angle(s) phi (radians); vectorised over phi."""
    phi = np.asarray(phi, dtype=float)
    if mode.k == 0:
        return np.full_like(phi, 1.0 / SQRT_2PI)
    if mode.l == 1:
        return np.cos(mode.k * phi) / SQRT_PI
    return np.sin(mode.k * phi) / SQRT_PI


def harmonic_sup(mode):
    """Maximum of |Y(k,l)| over the circle."""
    return 1.0 / SQRT_2PI if mode.k == 0 else 1.0 / SQRT_PI


def angular_grid(M, shift=0.0):
    """Nodes 2 pi (s + shift) / M for s = 1..M."""
    if M < 1:
        raise DomainError(f"M must be a positive integer, got {M}")
    return 2.0 * math.pi * (np.arange(1, M + 1) + shift) / M


@dataclass(frozen=True)
class AngularSamples:
    """Values f(r cos phi_s, r sin phi_s) on the grid phi_s = 2 pi s / M."""

    values: np.ndarray
    radius: float

    @property
    def M(self):
        return len(self.values)


def sample_on_circle(f, r, M):
    """Sample a planar function f(x, y) on the circle of radius r."""
    phi = angular_grid(M)
    vals = np.asarray(f(r * np.cos(phi), r * np.sin(phi)), dtype=float)
    return AngularSamples(np.broadcast_to(vals, phi.shape).copy(), float(r))


def _values(samples):
    v = samples.values if isinstance(samples, AngularSamples) else np.asarray(samples, dtype=float)
    if v.ndim != 1 or v.size == 0:
        raise DomainError("angular samples must be a non-empty 1-D array")
    return v


def trapezoidal_sum(samples):
    """(2 pi / M) times the sum of the samples of a periodic function."""
    v = _values(samples)
    return 2.0 * math.pi / v.size * math.fsum(v)


def discrete_fourier_coefficient(samples, mode):
    """Trapezoidal approximation of the (k,l) Fourier coefficient.

    Equals (2 pi / M) * sum_s f(phi_s) Y(k,l)(phi_s).
    """
    v = _values(samples)
    M = v.size
    return 2.0 * math.pi / M * math.fsum(v * eval_harmonic(mode, angular_grid(M)))


def complex_coefficient(samples, k):
    """Direct O(M) evaluation of (1/M) sum_s f(phi_s) exp(-i k phi_s)."""
    v = _values(samples)
    phi = angular_grid(v.size)
    return complex(np.sum(v * np.exp(-1j * k * phi)) / v.size)


def real_from_complex(c, k):
    """Convert a complex DFT coefficient of order k to the real (k,1), (k,2) pair."""
    if k == 0:
        return SQRT_2PI * c.real, 0.0
    return 2.0 * SQRT_PI * c.real, -2.0 * SQRT_PI * c.imag


def fft_coefficients(samples, K):
    """All real discrete coefficients for k = 0..K via one FFT per row.

    ``samples`` is (M,) or (n, M). Returns an array of shape (..., K+1, 2)
    holding the (k,1) and (k,2) values; column 2 is zero for k = 0.
    """
    v = np.asarray(samples.values if isinstance(samples, AngularSamples) else samples, dtype=float)
    M = v.shape[-1]
    if K < 0:
        raise DomainError("K must be non-negative")
    # grid starts at s = 1, so sample s = M is the FFT's index 0
    spec = np.fft.fft(np.roll(v, 1, axis=-1), axis=-1) / M
    ks = np.arange(K + 1)
    c = spec[..., ks % M]
    out = np.empty(v.shape[:-1] + (K + 1, 2))
    out[..., :, 0] = 2.0 * SQRT_PI * c.real
    out[..., :, 1] = -2.0 * SQRT_PI * c.imag
    out[..., 0, 0] = SQRT_2PI * c[..., 0].real
    out[..., 0, 1] = 0.0
    return out
