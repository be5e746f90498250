"""Classical product rules on the disk used for comparison."""
import math

import numpy as np

from .exceptions import DomainError, NumericError
from .gauss_jacobi import gauss_rule
from .harmonics import ModeIndex, angular_grid
from .weights import ModeMeasure


def _check(N, M, R):
    for name, v in (("N", N), ("M", M)):
        if not isinstance(v, (int, np.integer)) or v < 1:
            raise DomainError(f"{name} must be a positive integer, got {v!r}")
    if not (R > 0 and math.isfinite(R)):
        raise DomainError(f"radius must be positive, got {R!r}")


def _weighted_sum(g, r, phi, radial_w, prefactor):
    x = np.outer(r, np.cos(phi))
    y = np.outer(r, np.sin(phi))
    vals = np.broadcast_to(np.asarray(g(x, y), dtype=float), x.shape)
    if not np.all(np.isfinite(vals)):
        i, s = np.argwhere(~np.isfinite(vals))[0]
        raise NumericError("integrand is not finite", (float(x[i, s]), float(y[i, s])))
    return prefactor * math.fsum((radial_w[:, None] * vals).ravel())


def midpoint_rule(g, N, M, R=1.0):
    """Polar midpoint rule with radial nodes at the centroids of the rings.

    Ring j covers [(j-1)R/N, jR/N]; its node sits at
    r_j = (j^2 - j + 1/3) / (j - 1/2) * R / N and angles are half-shifted.
    """
    _check(N, M, R)
    j = np.arange(1, N + 1, dtype=float)
    r = (j * j - j + 1.0 / 3.0) / (j - 0.5) * R / N
    phi = angular_grid(M, shift=-0.5)
    return _weighted_sum(g, r, phi, j - 0.5, 2.0 * math.pi * R * R / (M * N * N))


def peirce_rule(g, N, M, R=1.0, alpha=0.0):
    """Gauss-Legendre in rho = r^2 times an M-point trapezoid rule in angle."""
    _check(N, M, R)
    if not math.isfinite(alpha):
        raise DomainError("angular shift must be finite")
    unit = ModeMeasure(ModeIndex(0, 1), ((1.0, 0.0, 0.0),), R)
    rule = gauss_rule(unit, N)
    phi = angular_grid(M, shift=alpha)
    return _weighted_sum(g, np.sqrt(rule.nodes), phi, rule.weights, math.pi / M)
