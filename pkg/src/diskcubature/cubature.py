"""Polyharmonic cubature on the disk.

For a weight with retained modes k <= K the rule is

    I ~ (2 pi / M) sum_{k,l} sum_j sum_s lam_j t_j^(-k/2) Y_kl(phi_s) f(sqrt(t_j) e^{i phi_s})

where (t_j, lam_j) is the N-point Gauss rule of the mode measure and
phi_s = 2 pi s / M.  It is exact for polynomials of degree 2N - 1 in r^2
times harmonics of order k, provided k + k' <= M - 1.
"""
import math
import time
from dataclasses import dataclass, field

import numpy as np

from .exceptions import DomainError, NumericError
from .gauss_jacobi import gauss_rule
from .harmonics import angular_grid, eval_harmonic, fft_coefficients


@dataclass(frozen=True)
class CubatureParams:
    """Gauss order N, angular resolution M, mode truncation K, disk radius R.

    Odd M is customary but not required.
    """

    N: int
    M: int
    K: int
    R: float = 1.0

    def __post_init__(self):
        for name, lo in (("N", 1), ("M", 1), ("K", 0)):
            v = getattr(self, name)
            if not isinstance(v, (int, np.integer)) or isinstance(v, bool) or v < lo:
                raise DomainError(f"{name} must be an integer >= {lo}, got {v!r}")
        if not (isinstance(self.R, (int, float)) and math.isfinite(self.R) and self.R > 0):
            raise DomainError(f"R must be positive and finite, got {self.R!r}")


@dataclass
class CubatureResult:
    value: float
    evaluations: int
    stability: float
    elapsed: float
    params: CubatureParams


@dataclass
class PlanarCubature:
    """Flattened cubature: points, weights, and the (mode, j, s) each came from."""

    points: np.ndarray
    weights: np.ndarray
    provenance: list = field(default_factory=list)
    nodes: np.ndarray = None
    gauss_weights: np.ndarray = None

    def __len__(self):
        return len(self.weights)

    def integrate(self, f):
        vals = np.asarray(f(self.points[:, 0], self.points[:, 1]), dtype=float)
        vals = np.broadcast_to(vals, self.weights.shape)
        if not np.all(np.isfinite(vals)):
            bad = int(np.flatnonzero(~np.isfinite(vals))[0])
            raise NumericError("integrand is not finite", tuple(self.points[bad]))
        return math.fsum(self.weights * vals)

    @property
    def abs_weight_sum(self):
        return math.fsum(np.abs(self.weights))

    def merged(self):
        """Combine coincident points by summing their weights."""
        keys, inverse = np.unique(self.points, axis=0, return_inverse=True)
        w = np.zeros(len(keys))
        np.add.at(w, inverse.ravel(), self.weights)
        return PlanarCubature(keys, w)


def _mode_rules(w, params):
    if not math.isclose(w.R, params.R, rel_tol=1e-15):
        raise DomainError(f"weight radius {w.R} differs from R={params.R}")
    modes = w.retained(params.K)
    if not modes:
        raise DomainError(f"weight {w.name!r} has no modes with k <= {params.K}")
    return [(m.mode, gauss_rule(m, params.N)) for m in modes]


def _mode_factors(rule, k):
    return rule.weights * rule.nodes ** (-k / 2.0)


def _sample_grid(f, radii, phi):
    x = radii[:, None] * np.cos(phi)[None, :]
    y = radii[:, None] * np.sin(phi)[None, :]
    vals = np.asarray(f(x, y), dtype=float)
    vals = np.broadcast_to(vals, x.shape)
    if not np.all(np.isfinite(vals)):
        i, s = np.argwhere(~np.isfinite(vals))[0]
        raise NumericError("integrand is not finite", (float(x[i, s]), float(y[i, s])))
    return vals


def polyharmonic_cubature(f, w, params, full=False):
    """Approximate the integral of f * w over the disk.

    ``f`` is a vectorised callable f(x, y).  The integrand is sampled once
    per distinct node radius and the samples are shared across modes.
    With ``full=True`` a :class:`CubatureResult` is returned.
    """
    t0 = time.perf_counter()
    rules = _mode_rules(w, params)
    M = params.M
    phi = angular_grid(M)
    radii_sq = np.unique(np.concatenate([r.nodes for _, r in rules]))
    samples = _sample_grid(f, np.sqrt(radii_sq), phi)
    pos = {float(t): i for i, t in enumerate(radii_sq)}
    terms = []
    scale = 2.0 * math.pi / M
    for mode, rule in rules:
        rows = samples[[pos[float(t)] for t in rule.nodes]]
        coef = scale * _mode_factors(rule, mode.k)
        terms.append((coef[:, None] * eval_harmonic(mode, phi)[None, :] * rows).ravel())
    value = math.fsum(np.concatenate(terms))
    if not full:
        return value
    return CubatureResult(value, samples.size, stability_sum(w, params),
                          time.perf_counter() - t0, params)


def polyharmonic_cubature_fft(f, w, params):
    """Same rule with the angular sums done by one FFT per radius."""
    rules = _mode_rules(w, params)
    phi = angular_grid(params.M)
    radii_sq = np.unique(np.concatenate([r.nodes for _, r in rules]))
    coeffs = fft_coefficients(_sample_grid(f, np.sqrt(radii_sq), phi), params.K)
    pos = {float(t): i for i, t in enumerate(radii_sq)}
    terms = []
    for mode, rule in rules:
        c = coeffs[[pos[float(t)] for t in rule.nodes], mode.k, mode.l - 1]
        terms.append(_mode_factors(rule, mode.k) * c)
    return math.fsum(np.concatenate(terms))


def semidiscrete_cubature(coefficients, w, N, K, R=None):
    """Gauss quadrature applied to exact angular coefficients.

    ``coefficients`` maps a ModeIndex to a vectorised f_kl(r), or is a
    callable ``(mode, r)``.  The result is
    sum_kl sum_j lam_j t_j^(-k/2) f_kl(sqrt(t_j)).
    """
    params = CubatureParams(N, 1, K, w.R if R is None else R)
    terms = []
    for mode, rule in _mode_rules(w, params):
        r = np.sqrt(rule.nodes)
        if callable(coefficients):
            vals = coefficients(mode, r)
        elif mode in coefficients:
            vals = coefficients[mode](r)
        else:
            raise DomainError(f"no radial coefficient supplied for mode {mode}")
        vals = np.broadcast_to(np.asarray(vals, dtype=float), r.shape)
        terms.append(_mode_factors(rule, mode.k) * vals)
    return math.fsum(np.concatenate(terms))


def flatten_cubature(w, params):
    """Expand the rule into explicit planar points and weights.

    Points are ordered k-major, then l, node j, angle s; integrating with
    the result reproduces :func:`polyharmonic_cubature` exactly.
    """
    M = params.M
    phi = angular_grid(M)
    pts, wts, prov, nodes, gws = [], [], [], [], []
    for mode, rule in _mode_rules(w, params):
        coef = 2.0 * math.pi / M * _mode_factors(rule, mode.k)
        Y = eval_harmonic(mode, phi)
        r = np.sqrt(rule.nodes)
        pts.append(np.stack([np.outer(r, np.cos(phi)).ravel(), np.outer(r, np.sin(phi)).ravel()], axis=1))
        wts.append(np.outer(coef, Y).ravel())
        nodes.append(np.repeat(rule.nodes, M))
        gws.append(np.repeat(rule.weights, M))
        prov += [(mode, j, s) for j in range(1, rule.N + 1) for s in range(1, M + 1)]
    return PlanarCubature(np.concatenate(pts), np.concatenate(wts), prov,
                          np.concatenate(nodes), np.concatenate(gws))


def stability_sum(w, params):
    """(pi / M) sum_{k,l,j,s} |lam_j t_j^(-k/2) Y_kl(phi_s)|.

    This is half the absolute weight sum of the flattened rule; it is
    bounded by sqrt(pi) times the summability norm of w.
    """
    M = params.M
    phi = angular_grid(M)
    parts = []
    for mode, rule in _mode_rules(w, params):
        parts.append(np.abs(np.outer(_mode_factors(rule, mode.k), eval_harmonic(mode, phi))).ravel())
    return math.pi / M * math.fsum(np.concatenate(parts))


FLAT_HEADER = ["k", "l", "j", "s", "node", "weight", "sign", "x", "y", "point_weight"]


def flattened_to_csv(pc):
    """CSV text of a flattened rule; ``weight`` is the Gauss weight, ``point_weight`` the planar one."""
    import csv
    import io
    g = lambda v: format(float(v), ".17g")
    buf = io.StringIO()
    wr = csv.writer(buf, lineterminator="\n")
    wr.writerow(FLAT_HEADER)
    for (mode, j, s), t, lam, (x, y), pw in zip(pc.provenance, pc.nodes, pc.gauss_weights, pc.points, pc.weights):
        wr.writerow([mode.k, mode.l, j, s, g(t), g(lam), 1 if lam > 0 else -1, g(x), g(y), g(pw)])
    return buf.getvalue()


def flattened_from_csv(text):
    import csv
    import io
    rows = list(csv.DictReader(io.StringIO(text)))
    if not rows or list(rows[0].keys()) != FLAT_HEADER:
        raise DomainError(f"flattened CSV must have header {','.join(FLAT_HEADER)}")
    from .harmonics import ModeIndex
    pts = np.array([[float(r["x"]), float(r["y"])] for r in rows])
    return PlanarCubature(pts, np.array([float(r["point_weight"]) for r in rows]),
                          [(ModeIndex(int(r["k"]), int(r["l"])), int(r["j"]), int(r["s"])) for r in rows],
                          np.array([float(r["node"]) for r in rows]),
                          np.array([float(r["weight"]) for r in rows]))
