"""Gauss rules for Jacobi-type measures on [0, R^2].

Single-term measures use the closed-form Jacobi recurrence mapped from
[-1, 1]; mixtures are discretised exactly with component Gauss rules and
re-orthogonalised by the Stieltjes procedure.  Nodes and weights come from
the Jacobi matrix through an implicit-shift QL iteration that tracks only
the first row of the eigenvector matrix.
"""
import csv
import io
import math
import threading
from dataclasses import dataclass

import numpy as np

from .exceptions import DomainError, RuleGenerationError
from .weights import ModeMeasure

QL_TOL = 1e-15
QL_MAX_SWEEPS = 50


@dataclass(frozen=True)
class RecurrenceCoefficients:
    """Monic three-term recurrence p_{n+1} = (x - alpha_n) p_n - beta_n p_{n-1}.

    beta[0] is the total mass of the (absolute) measure.
    """

    alpha: np.ndarray
    beta: np.ndarray

    def __len__(self):
        return len(self.alpha)


@dataclass(frozen=True)
class GaussRule:
    """N-point Gauss rule of a signed mode measure.

    ``weights`` already carry the sign of the measure; ``nodes`` are
    increasing and lie strictly inside (0, R^2).
    """

    nodes: np.ndarray
    weights: np.ndarray
    sign: int

    @property
    def N(self):
        return len(self.nodes)


def jacobi_recurrence(a, b, n, R=1.0, mass=None):
    """Recurrence of rho^a (R^2 - rho)^b on [0, R^2] for indices 0..n-1.

    ``mass`` overrides beta[0] (defaults to the measure's own integral).
    """
    if a <= -1 or b <= -1:
        raise DomainError(f"Jacobi exponents must exceed -1, got a={a}, b={b}")
    if n < 1:
        raise DomainError("need at least one recurrence coefficient")
    L = R * R
    # rho = L (1 + x) / 2 maps rho^a (L - rho)^b to (1 - x)^b (1 + x)^a
    al, be = float(b), float(a)
    s = al + be
    alpha = np.empty(n)
    beta = np.empty(n)
    for k in range(n):
        if k == 0:
            one_plus = 2.0 * (be + 1.0) / (s + 2.0)
        else:
            t = 2 * k + s
            one_plus = 1.0 + (be - al) * (be + al) / (t * (t + 2.0))
        alpha[k] = 0.5 * L * one_plus
        if k == 0:
            if mass is None:
                from .weights import beta_fn
                mass = L ** (a + b + 1) * beta_fn(a + 1, b + 1)
            beta[0] = mass
        elif k == 1:
            bj = 4.0 * (1 + al) * (1 + be) / ((2 + s) ** 2 * (3 + s))
            beta[1] = 0.25 * L * L * bj
        else:
            t = 2 * k + s
            bj = 4.0 * k * (k + al) * (k + be) * (k + s) / (t * t * (t + 1) * (t - 1))
            beta[k] = 0.25 * L * L * bj
    return RecurrenceCoefficients(alpha, beta)


def stieltjes(x, w, n):
    """Discretised Stieltjes procedure on the positive discrete measure (x, w)."""
    x = np.asarray(x, dtype=float)
    w = np.asarray(w, dtype=float)
    if np.any(w <= 0):
        raise RuleGenerationError("discretisation weights must be positive")
    alpha = np.empty(n)
    beta = np.empty(n)
    p_prev = np.zeros_like(x)
    p = np.ones_like(x)
    norm_prev = 1.0
    norm = math.fsum(w)
    beta[0] = norm
    for k in range(n):
        alpha[k] = math.fsum(w * x * p * p) / norm
        if k + 1 == n:
            break
        p_next = (x - alpha[k]) * p - (beta[k] if k else 0.0) * p_prev
        norm_prev, norm = norm, math.fsum(w * p_next * p_next)
        if not (norm > 0 and math.isfinite(norm)):
            raise RuleGenerationError(f"Stieltjes norm underflow at degree {k + 1}")
        beta[k + 1] = norm / norm_prev
        p_prev, p = p, p_next
        # rescale to keep the polynomials near unit size
        scale = math.sqrt(norm)
        p_prev, p = p_prev / scale, p / scale
        norm_prev, norm = norm_prev / norm, 1.0
    return RecurrenceCoefficients(alpha, beta)


def recurrence_for_measure(measure, n):
    """Recurrence of |mu| for the first n indices."""
    terms = measure.terms
    if len(terms) == 1:
        t = terms[0]
        return jacobi_recurrence(t.a, t.b, n, measure.R, mass=abs(t.integral(measure.R)))
    # a union of (n+1)-point component rules integrates degree 2n+1 exactly
    xs, ws = [], []
    sgn = measure.sign
    for t in terms:
        rec = jacobi_recurrence(t.a, t.b, n + 1, measure.R)
        x, w = eigen_rule(rec)
        xs.append(x)
        ws.append(sgn * t.c * w)
    x = np.concatenate(xs)
    w = np.concatenate(ws)
    keep = w != 0
    if np.any(w[keep] < 0):
        raise RuleGenerationError("mixture discretisation produced negative weights")
    return stieltjes(x[keep], w[keep], n)


def _tridiagonal_ql(d, e, z):
    """Eigenvalues of a symmetric tridiagonal matrix, in place.

    ``d`` is the diagonal, ``e[i]`` couples i and i+1 (e[-1] unused) and
    ``z`` is the first row of the eigenvector matrix, updated alongside.
    """
    n = len(d)
    for l in range(n):
        sweeps = 0
        while True:
            m = l
            while m < n - 1:
                dd = abs(d[m]) + abs(d[m + 1])
                if abs(e[m]) <= QL_TOL * dd:
                    break
                m += 1
            if m == l:
                break
            sweeps += 1
            if sweeps > QL_MAX_SWEEPS:
                raise RuleGenerationError(f"QL iteration did not converge for eigenvalue {l}")
            g = (d[l + 1] - d[l]) / (2.0 * e[l])
            r = math.hypot(g, 1.0)
            g = d[m] - d[l] + e[l] / (g + math.copysign(r, g))
            s = c = 1.0
            p = 0.0
            i = m - 1
            underflow = False
            while i >= l:
                f = s * e[i]
                b = c * e[i]
                r = math.hypot(f, g)
                e[i + 1] = r
                if r == 0.0:
                    d[i + 1] -= p
                    e[m] = 0.0
                    underflow = True
                    break
                s = f / r
                c = g / r
                g = d[i + 1] - p
                r = (d[i] - g) * s + 2.0 * c * b
                p = s * r
                d[i + 1] = g + p
                g = c * r - b
                f = z[i + 1]
                z[i + 1] = s * z[i] + c * f
                z[i] = c * z[i] - s * f
                i -= 1
            if underflow:
                continue
            d[l] -= p
            e[l] = g
            e[m] = 0.0


def eigen_rule(rec, n=None):
    """Golub-Welsch: nodes and positive weights from recurrence coefficients."""
    n = len(rec) if n is None else n
    if n > len(rec):
        raise DomainError("not enough recurrence coefficients")
    beta = rec.beta[:n]
    if not np.all(np.isfinite(beta)) or np.any(beta <= 0) or not np.all(np.isfinite(rec.alpha[:n])):
        raise RuleGenerationError("recurrence coefficients are not positive and finite")
    d = [float(v) for v in rec.alpha[:n]]
    e = [math.sqrt(float(v)) for v in beta[1:]] + [0.0]
    z = [1.0] + [0.0] * (n - 1)
    _tridiagonal_ql(d, e, z)
    order = np.argsort(d, kind="stable")
    nodes = np.asarray(d)[order]
    weights = float(beta[0]) * np.asarray(z)[order] ** 2
    return nodes, weights


_cache = {}
_cache_lock = threading.Lock()


def gauss_rule(measure, N):
    """N-point Gauss rule exact for degree 2N-1 against the signed measure.

    Rules are cached by the measure's fingerprint, so modes sharing a
    density share nodes.
    """
    if not isinstance(measure, ModeMeasure):
        raise DomainError("gauss_rule expects a ModeMeasure")
    if not isinstance(N, (int, np.integer)) or N < 1:
        raise DomainError(f"N must be a positive integer, got {N!r}")
    key = (measure.fingerprint, int(N))
    with _cache_lock:
        hit = _cache.get(key)
    if hit is not None:
        return hit
    rec = recurrence_for_measure(measure, N)
    nodes, weights = eigen_rule(rec)
    L = measure.R ** 2
    if nodes[0] <= 0 or nodes[-1] >= L or np.any(np.diff(nodes) <= 0):
        raise RuleGenerationError(f"nodes left the open interval (0, {L}) or coalesced")
    if np.any(weights <= 0) or not np.all(np.isfinite(weights)):
        raise RuleGenerationError("non-positive Gauss weight produced")
    # negative powers up to k = 64 must stay finite at the smallest node
    if not math.isfinite(nodes[0] ** -32.0):
        raise RuleGenerationError("smallest node underflows under rho^(-k/2)")
    rule = GaussRule(nodes, measure.sign * weights, measure.sign)
    rule.nodes.setflags(write=False)
    rule.weights.setflags(write=False)
    with _cache_lock:
        _cache.setdefault(key, rule)
    return rule


def clear_rule_cache():
    with _cache_lock:
        _cache.clear()


def leading_coefficient_kappa(measure, N):
    """Leading coefficient of the degree-N orthonormal polynomial of |mu|.

    kappa_N = (beta_0 beta_1 ... beta_N)^(-1/2), formed in log space.
    Returns the natural log alongside the value, which may overflow.
    """
    rec = recurrence_for_measure(measure, N + 1)
    log_kappa = -0.5 * math.fsum(math.log(b) for b in rec.beta[: N + 1])
    try:
        value = math.exp(log_kappa)
    except OverflowError:
        value = math.inf
    return value, log_kappa


RULE_HEADER = ["k", "l", "j", "node", "weight", "sign"]


def _g17(v):
    return format(float(v), ".17g")


def rules_to_csv(rules):
    """Serialise {ModeIndex: GaussRule} to CSV text (17 significant digits)."""
    buf = io.StringIO()
    wr = csv.writer(buf, lineterminator="\n")
    wr.writerow(RULE_HEADER)
    for idx in sorted(rules):
        rule = rules[idx]
        for j, (t, lam) in enumerate(zip(rule.nodes, rule.weights), start=1):
            wr.writerow([idx.k, idx.l, j, _g17(t), _g17(lam), rule.sign])
    return buf.getvalue()


def rules_from_csv(text):
    from .harmonics import ModeIndex
    rows = list(csv.DictReader(io.StringIO(text)))
    if not rows or list(rows[0].keys()) != RULE_HEADER:
        raise DomainError(f"rule CSV must have header {','.join(RULE_HEADER)}")
    grouped = {}
    for row in rows:
        idx = ModeIndex(int(row["k"]), int(row["l"]))
        grouped.setdefault(idx, []).append(row)
    out = {}
    for idx, rs in grouped.items():
        rs.sort(key=lambda r: int(r["j"]))
        sign = int(rs[0]["sign"])
        out[idx] = GaussRule(np.array([float(r["node"]) for r in rs]),
                             np.array([float(r["weight"]) for r in rs]), sign)
    return out
