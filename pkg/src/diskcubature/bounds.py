"""A-priori error bounds for the three approximation steps of the rule.

* ``dft_error_bound``: replacing exact angular coefficients by M-point sums.
* ``tail_bound``: discarding weight modes above K.
* ``gauss_error_bound``: replacing radial integrals by N-point Gauss rules.

Smoothness constants are supplied by the caller.
"""
import math
from dataclasses import dataclass, field

import numpy as np

from .exceptions import DomainError
from .gauss_jacobi import leading_coefficient_kappa
from .harmonics import ModeIndex, eval_harmonic
from .weights import summability_norm


@dataclass
class SmoothnessData:
    mode_sups: dict = field(default_factory=dict)
    angular_second_sup: float = 0.0
    radial_sups: dict = field(default_factory=dict)
    D: int = 1
    p: int = 1

    def __post_init__(self):
        for name, table in (("mode_sups", self.mode_sups), ("radial_sups", self.radial_sups)):
            for idx, v in table.items():
                if not (v >= 0):
                    raise DomainError(f"{name}[{idx}] must be non-negative, got {v}")
        if not (self.angular_second_sup >= 0):
            raise DomainError("angular_second_sup must be non-negative")
        if self.D < 1 or self.p < 1:
            raise DomainError("D and p must be positive integers")


def zeta(s):
    """Riemann zeta function for real s > 1.

    Direct sum of the first terms plus an Euler-Maclaurin tail.
    """
    if not s > 1:
        raise DomainError(f"zeta(s) needs s > 1, got {s}")
    n = 20
    head = math.fsum(j ** -s for j in range(1, n))
    # Euler-Maclaurin remainder for sum_{j >= n} j^-s with Bernoulli terms up to B_8
    tail = n ** (1 - s) / (s - 1) + 0.5 * n ** -s
    coeffs = (1 / 6, -1 / 30, 1 / 42, -1 / 30)
    rising = s
    for i, b in enumerate(coeffs):
        m = 2 * i + 2
        tail += b / math.factorial(m) * rising * n ** (-s - m + 1)
        rising *= (s + m - 1) * (s + m)
    return head + tail


def _require(table, idx, what):
    if idx not in table:
        raise DomainError(f"missing {what} for retained mode {idx}")
    return table[idx]


def dft_error_bound(w, data, K, M):
    """(2 pi zeta(2D+1) / M^(2D+1)) * sum_kl M_kl * int |w_kl| r dr.

    The constant 2 pi is the published one; with the normalisation used by
    the cubature here, the trapezoidal error argument gives 4 pi.
    """
    if M < 1:
        raise DomainError("M must be positive")
    q = 2 * data.D + 1
    acc = [_require(data.mode_sups, m.mode, "angular derivative sup") * m.radial_norm
           for m in w.retained(K)]
    return 2 * math.pi * zeta(q) / M ** q * math.fsum(acc)


def tail_bound(w, angular_second_sup, K, p):
    """sqrt(2 pi) * sup|d^2 f/d phi^2| * ||w|| / K^(2p).

    Only the second angular derivative enters, as in the published
    statement; for p > 1 the underlying argument needs the 2p-th.
    """
    if K < 1:
        raise DomainError("K must be at least 1")
    if angular_second_sup < 0:
        raise DomainError("sup must be non-negative")
    norm = summability_norm(w)
    if norm.divergent:
        raise DomainError(f"weight {w.name!r} violates the summability condition (norm diverges)")
    return math.sqrt(2 * math.pi) * angular_second_sup * norm.total / K ** (2 * p)


def gauss_error_bound(w, data, N, K):
    """sum_kl sup|g_kl^(2N)| / ((2N)! kappa_N^2), with kappa from |mu_kl|."""
    if N < 1:
        raise DomainError("N must be positive")
    acc = []
    for m in w.retained(K):
        sup = _require(data.radial_sups, m.mode, "radial derivative sup")
        if sup == 0:
            continue
        _, log_kappa = leading_coefficient_kappa(m, N)
        acc.append(math.exp(math.log(sup) - math.lgamma(2 * N + 1) - 2 * log_kappa))
    return math.fsum(acc)


def estimate_angular_sup(f, mode, order, R=1.0, n_radii=64, n_phi=512):
    """Grid estimate of sup |d^order/dphi^order (f * Y_kl)| (not certified).

    Angular derivatives are taken spectrally on each sampled circle.
    """
    phi = 2 * math.pi * np.arange(n_phi) / n_phi
    r = R * (np.arange(1, n_radii + 1) / n_radii)
    g = np.asarray(f(np.outer(r, np.cos(phi)), np.outer(r, np.sin(phi))), dtype=float)
    g = g * eval_harmonic(mode, phi)[None, :]
    freq = np.fft.fftfreq(n_phi, d=1.0 / n_phi)
    deriv = np.fft.ifft((1j * freq) ** order * np.fft.fft(g, axis=1), axis=1).real
    return float(np.max(np.abs(deriv)))


def all_bounds(w, data, N, M, K):
    """The three bounds and their sum; the tail term is inf for divergent weights."""
    out = {"dft": dft_error_bound(w, data, K, M),
           "gauss": gauss_error_bound(w, data, N, K)}
    try:
        out["tail"] = tail_bound(w, data.angular_second_sup, K, data.p)
    except DomainError:
        out["tail"] = math.inf
    out["total"] = math.fsum(out.values()) if math.isfinite(out["tail"]) else math.inf
    return out


def parse_mode_key(key):
    k, l = (int(v) for v in str(key).replace("(", "").replace(")", "").split(","))
    return ModeIndex(k, l)
