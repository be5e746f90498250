"""Test integrands, their exact integrals, and an independent panel oracle.

Exact values involving Bessel functions are summed in rational arithmetic,
so the only floating-point error is the final rounding.
"""
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

import numpy as np

from .exceptions import DomainError
from .harmonics import SQRT_2PI, SQRT_PI, ModeIndex, eval_harmonic

BESSEL_MAX_ARG = 60.0
BESSEL_MAX_TERMS = 200


def bessel_j(n, x):
    """Bessel function J_n(x) of integer order from its power series.

    The series is summed exactly in rational arithmetic from the binary
    value of x, which removes the cancellation that limits a floating sum
    for large |x|.  Supported for |x| <= 60.
    """
    if not isinstance(n, (int, np.integer)) or n < 0:
        raise DomainError(f"order must be a non-negative integer, got {n!r}")
    x = float(x)
    if not math.isfinite(x) or abs(x) > BESSEL_MAX_ARG:
        raise DomainError(f"|x| must not exceed {BESSEL_MAX_ARG}, got {x}")
    if x == 0.0:
        return 1.0 if n == 0 else 0.0
    h = Fraction(x) / 2
    h2 = h * h
    term = h ** n / math.factorial(n)
    total = term
    for s in range(1, BESSEL_MAX_TERMS):
        term = -term * h2 / (s * (n + s))
        total += term
        if s > abs(x) / 2 and abs(term) <= Fraction(1, 10 ** 17) * abs(total):
            return float(total)
    raise DomainError(f"series for J_{n}({x}) did not converge in {BESSEL_MAX_TERMS} terms")


bessel_j_vec = np.vectorize(bessel_j, otypes=[float])


# --- test integrands ---------------------------------------------------------

def f0(x, y):
    return 1.0 + x ** 4 + y ** 3


def f1(x, y):
    r2 = x * x + y * y
    return 1.0 + x ** 3 / np.sqrt(r2) + y ** 7 / r2


def f2(x, y, a=10.0, b=20.0):
    return np.cos(a * x + b * y)


def f3(x, y):
    return np.hypot(x, y) ** 2.5


def f4(x, y):
    return 30.0 * x ** 12


def f5(x, y):
    return np.abs(y)


def w1(x, y):
    return (1.0 + x) / np.hypot(x, y)


def w2(x, y):
    return np.abs(y)


FUNCTIONS = {"f0": f0, "f1": f1, "f2": f2, "f3": f3, "f4": f4, "f5": f5}
WEIGHTS = {"w1": w1, "w2": w2}


# --- closed forms for cos(a x + b y) -----------------------------------------

def _rational_trig(a, b, k):
    """cos(2 k phi) and sin(2 k phi) of the direction (a, b), exactly."""
    a, b = Fraction(a), Fraction(b)
    n2 = a * a + b * b
    c, s = (a * a - b * b) / n2, 2 * a * b / n2
    re, im = Fraction(1), Fraction(0)
    for _ in range(k):
        re, im = re * c - im * s, re * s + im * c
    return re, im


def _radial_bessel_integral(order, q, R, power):
    """Integral over [0, R] of J_order(sqrt(q) r) r^power for rational q = a^2 + b^2.

    Only even orders occur, so every term of the series is rational.
    """
    quarter = q / 4
    total = Fraction(0)
    term_h = quarter ** (order // 2) / math.factorial(order)  # (sqrt(q)/2)^order / order!
    for s in range(400):
        e = order + 2 * s + power + 1
        t = term_h * R ** e / e
        total += t
        if s > 0 and abs(t) < Fraction(1, 10 ** 30) * abs(total):
            return total
        term_h = -term_h * quarter / ((s + 1) * (order + s + 1))
    raise DomainError("radial Bessel series did not converge")


def f2_w1_true_value(a=10.0, b=20.0, R=1.0):
    """2 pi times the integral of J_0(sqrt(a^2 + b^2) r) over [0, R]."""
    q = Fraction(a) ** 2 + Fraction(b) ** 2
    return 2.0 * math.pi * float(_radial_bessel_integral(0, q, Fraction(R), 0))


def f2_w2_true_value(a=10.0, b=20.0, R=1.0, K=None):
    """Mode-by-mode sum of f2 against |y| using the Bessel expansion of f2.

    With ``K`` the sum stops at mode order 2k <= K, giving the integral
    against the weight truncated at K.
    """
    q = Fraction(a) ** 2 + Fraction(b) ** 2
    R = Fraction(R)
    total = 4 * _radial_bessel_integral(0, q, R, 2)
    rho_R = math.sqrt(float(q)) * float(R)
    for k in range(1, 200):
        cos2k, _ = _rational_trig(a, b, k)
        sign = 1 if k % 2 else -1
        if K is not None and 2 * k > K:
            return float(total)
        total += sign * 8 * cos2k / (4 * k * k - 1) * _radial_bessel_integral(2 * k, q, R, 2)
        # |J_n(x)| <= (x/2)^n / n! bounds the rest of the series
        rest = 8.0 * math.exp(2 * k * math.log(rho_R / 2) - math.lgamma(2 * k + 1)) * float(R) ** 3
        if 2 * k > rho_R and rest < 1e-30:
            return float(total)
    raise DomainError("mode series did not converge")


def f2_fourier_coefficient(mode, r, a=10.0, b=20.0):
    """Exact (k,l) angular coefficient of cos(a x + b y) at radius r."""
    r = np.asarray(r, dtype=float)
    if mode.k % 2:
        return np.zeros_like(r)
    phi_ab = math.atan2(b, a)
    m = mode.k // 2
    amp = 2.0 * math.pi * float(eval_harmonic(mode, phi_ab)) * (-1) ** m
    return amp * bessel_j_vec(mode.k, r * math.hypot(a, b))


def f2_angular_derivative_sup(mode, order, a=10.0, b=20.0, R=1.0):
    """Certified bound on sup over the disk of |d^order/dphi^order (f2 * Y_kl)|.

    Uses the Jacobi-Anger series f2 = J_0 + 2 sum_m (-1)^m J_2m cos(2m(phi-phi0)),
    the estimate |J_n(x)| <= min(1, (x/2)^n / n!) and Leibniz' rule.
    """
    x = math.hypot(a, b) * R
    derivs = [1.0]
    for i in range(1, order + 1):
        acc = []
        for m in range(1, 2000):
            n = 2 * m
            log_j = n * math.log(x / 2) - math.lgamma(n + 1) if x > 0 else -math.inf
            t = 2.0 * n ** i * math.exp(min(0.0, log_j))
            acc.append(t)
            if n > x and t < 1e-18 * max(acc):
                break
        derivs.append(math.fsum(acc))
    k = mode.k
    total = []
    for i in range(order + 1):
        j = order - i
        if k == 0:
            y_sup = 1.0 / SQRT_2PI if j == 0 else 0.0
        else:
            y_sup = k ** j / SQRT_PI
        total.append(math.comb(order, i) * derivs[i] * y_sup)
    return math.fsum(total)


# --- catalog -----------------------------------------------------------------

@dataclass(frozen=True)
class TestCase:
    f: str
    w: str
    value: float
    note: str = ""

    @property
    def integrand(self):
        return FUNCTIONS[self.f]

    @property
    def weight(self):
        return WEIGHTS[self.w]


def _catalog():
    return {
        ("f0", "w1"): TestCase("f0", "w1", 43 * math.pi / 20, "43 pi / 20"),
        ("f1", "w1"): TestCase("f1", "w1", 35 * math.pi / 16, "35 pi / 16"),
        ("f2", "w1"): TestCase("f2", "w1", f2_w1_true_value(), "Bessel series"),
        ("f3", "w1"): TestCase("f3", "w1", 4 * math.pi / 7, "4 pi / 7"),
        ("f4", "w2"): TestCase("f4", "w2", 8 / 13, "8 / 13"),
        ("f5", "w2"): TestCase("f5", "w2", math.pi / 4, "pi / 4"),
        ("f2", "w2"): TestCase("f2", "w2", f2_w2_true_value(), "Bessel mode series"),
    }


CATALOG = _catalog()


def true_value(f, w):
    try:
        return CATALOG[(f, w)].value
    except KeyError:
        raise DomainError(f"no reference value for {f} with {w}") from None


# --- independent oracle ------------------------------------------------------

def panel_oracle(g, R=1.0, radial_panels=100, angular_panels=100, order=20, phi_breaks=(0.0, math.pi, 2 * math.pi)):
    """Composite Gauss-Legendre product rule for the integral of g over the disk.

    Integrates g(r cos phi, r sin phi) r over [0, R] x [0, 2 pi] with
    Legendre panels; ``phi_breaks`` lets panels align with angular kinks.
    Radial panels are graded geometrically toward the origin where
    integrands such as r^(5/2) lose smoothness.
    Built on numpy's Legendre nodes only, independent of the package's
    Gauss-Jacobi code.
    """
    x, wq = np.polynomial.legendre.leggauss(order)

    def panel_nodes(edges):
        lo, hi = edges[:-1, None], edges[1:, None]
        nodes = (0.5 * (hi - lo) * x[None, :] + 0.5 * (hi + lo)).ravel()
        weights = (0.5 * (hi - lo) * wq[None, :]).ravel()
        return nodes, weights

    graded = R * 0.5 ** np.arange(40, 0, -1)
    r_edges = np.unique(np.concatenate([[0.0], graded[:-1], np.linspace(graded[-1], R, radial_panels + 1)]))
    r, wr = panel_nodes(r_edges)
    pieces = []
    per = max(1, angular_panels // (len(phi_breaks) - 1))
    for lo, hi in zip(phi_breaks[:-1], phi_breaks[1:]):
        pieces.append(np.linspace(lo, hi, per + 1))
    phi, wp = panel_nodes(np.unique(np.concatenate(pieces)))
    X = np.outer(r, np.cos(phi))
    Y = np.outer(r, np.sin(phi))
    vals = np.asarray(g(X, Y), dtype=float)
    return float((wr * r) @ (vals @ wp))


def catalog_oracle(case, **kw):
    """Panel-oracle value for a catalog entry."""
    return panel_oracle(lambda x, y: case.integrand(x, y) * case.weight(x, y), **kw)
