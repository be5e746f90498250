"""Weight functions on the disk stored as finite sets of radial mode measures.

A weight w(r, phi) = sum_kl w_kl(r) Y_kl(phi) is represented mode by mode
through the one-dimensional measure

    d mu_kl(rho) = (1/2) rho^(k/2) w_kl(sqrt(rho)) d rho   on [0, R^2],

each given as a short mixture of Jacobi-type terms c * rho^a * (R^2 - rho)^b.
"""
import math
import re
from dataclasses import dataclass, field
from typing import Callable, Optional

import numpy as np

from .exceptions import DomainError
from .harmonics import SQRT_2PI, SQRT_PI, ModeIndex

_PROBES = 1024


def beta_fn(x, y):
    """Euler Beta function B(x, y) for x, y > 0."""
    if x <= 0 or y <= 0:
        raise DomainError(f"Beta function needs positive arguments, got ({x}, {y})")
    if y == 1.0:
        return 1.0 / x
    if x == 1.0:
        return 1.0 / y
    if x + y < 170.0:
        return math.gamma(x) * math.gamma(y) / math.gamma(x + y)
    return math.exp(math.lgamma(x) + math.lgamma(y) - math.lgamma(x + y))


@dataclass(frozen=True)
class JacobiTerm:
    """One term c * rho^a * (R^2 - rho)^b of a mode density."""

    c: float
    a: float
    b: float

    def __post_init__(self):
        for name in ("c", "a", "b"):
            v = getattr(self, name)
            if not isinstance(v, (int, float, np.floating, np.integer)) or not math.isfinite(v):
                raise DomainError(f"term coefficient {name}={v!r} must be a finite number")
        if self.c == 0:
            raise DomainError("term coefficient c must be non-zero")
        if self.a <= -1 or self.b <= -1:
            raise DomainError(f"exponents must exceed -1, got a={self.a}, b={self.b}")
        object.__setattr__(self, "c", float(self.c))
        object.__setattr__(self, "a", float(self.a))
        object.__setattr__(self, "b", float(self.b))

    def integral(self, R, s=0.0):
        """Integral of rho^s times this term over [0, R^2]."""
        L = R * R
        return self.c * L ** (self.a + self.b + 1 + s) * beta_fn(self.a + s + 1, self.b + 1)


@dataclass(frozen=True)
class ModeMeasure:
    """Signed one-dimensional measure attached to a single mode.

    The sign is found at construction by probing the density on a grid;
    densities that change sign on (0, R^2) are rejected.
    """

    mode: ModeIndex
    terms: tuple
    R: float = 1.0
    sign: int = field(init=False)

    def __post_init__(self):
        if not (isinstance(self.R, (int, float)) and math.isfinite(self.R) and self.R > 0):
            raise DomainError(f"radius must be positive and finite, got {self.R!r}")
        terms = tuple(t if isinstance(t, JacobiTerm) else JacobiTerm(*t) for t in self.terms)
        if not terms:
            raise DomainError(f"mode {self.mode} has no terms")
        object.__setattr__(self, "terms", terms)
        object.__setattr__(self, "R", float(self.R))
        rho = self.R ** 2 * (np.arange(_PROBES) + 0.5) / _PROBES
        vals = self.density(rho)
        scale = np.max(np.abs(vals))
        if not np.isfinite(scale) or scale == 0:
            raise DomainError(f"mode {self.mode} density vanishes or is not finite")
        tol = 1e-13 * scale
        pos, neg = np.any(vals > tol), np.any(vals < -tol)
        if pos and neg:
            raise DomainError(f"mode {self.mode} density changes sign on (0, R^2)")
        object.__setattr__(self, "sign", 1 if pos else -1)

    def density(self, rho):
        rho = np.asarray(rho, dtype=float)
        L = self.R ** 2
        out = np.zeros_like(rho)
        for t in self.terms:
            out = out + t.c * rho ** t.a * (L - rho) ** t.b
        return out

    def moment(self, s):
        """Signed moment: integral of rho^s d mu."""
        return math.fsum(t.integral(self.R, s) for t in self.terms)

    @property
    def total_mass(self):
        """Mass of |mu| on [0, R^2]."""
        return abs(self.moment(0))

    @property
    def radial_norm(self):
        """Integral of |w_kl(r)| r dr over [0, R], i.e. of rho^(-k/2) d|mu|."""
        if any(t.a - self.mode.k / 2 <= -1 for t in self.terms):
            return math.inf
        return abs(self.moment(-self.mode.k / 2))

    @property
    def fingerprint(self):
        """Hashable key identifying the measure up to its mode label."""
        return (self.R,) + tuple((t.c, t.a, t.b) for t in self.terms)

    def radial_profile(self, r):
        """Recover w_kl(r) = 2 r^(-k) * density(r^2)."""
        r = np.asarray(r, dtype=float)
        return 2.0 * r ** (-self.mode.k) * self.density(r * r)


def mode_total_mass(measure):
    return measure.total_mass


@dataclass(frozen=True)
class NormReport:
    """Summability norm split into the retained part and the analytic tail."""

    partial: float
    tail: float

    @property
    def total(self):
        return self.partial + self.tail

    @property
    def divergent(self):
        return math.isinf(self.tail)


@dataclass
class WeightSpec:
    """A weight function given by its retained modes.

    ``tail_norm(K)`` returns the summability norm of the untruncated weight
    carried by modes of order k > K (``inf`` when that series diverges).
    ``pointwise(x, y)`` evaluates the untruncated weight when a closed form
    is known; otherwise the truncated mode expansion is summed.
    """

    name: str
    R: float
    modes: dict
    tail_norm: Optional[Callable] = None
    pointwise: Optional[Callable] = None

    def __post_init__(self):
        if not self.modes:
            raise DomainError(f"weight {self.name!r} has no modes")
        for idx, m in self.modes.items():
            if m.mode != idx:
                raise DomainError(f"mode key {idx} does not match measure label {m.mode}")
            if m.R != self.R:
                raise DomainError(f"mode {idx} radius {m.R} differs from weight radius {self.R}")
        self.modes = dict(sorted(self.modes.items()))

    @property
    def k_max(self):
        return max(m.k for m in self.modes)

    def retained(self, K):
        """Modes with k <= K, in k-major order."""
        return [m for idx, m in self.modes.items() if idx.k <= K]

    def truncated(self, K):
        return WeightSpec(f"{self.name}[K={K}]", self.R,
                          {m.mode: m for m in self.retained(K)}, self.tail_norm, None)

    def __call__(self, x, y):
        if self.pointwise is not None:
            return self.pointwise(x, y)
        x = np.asarray(x, dtype=float)
        y = np.asarray(y, dtype=float)
        r = np.hypot(x, y)
        phi = np.arctan2(y, x)
        from .harmonics import eval_harmonic
        total = np.zeros(np.broadcast(x, y).shape)
        for idx, m in self.modes.items():
            total = total + m.radial_profile(r) * eval_harmonic(idx, phi)
        return total


def summability_norm(w, K=None):
    """Sum over modes k <= K of the integral of |w_kl(r)| r dr, plus the tail.

    With K = None every stored mode is included and the tail is measured
    beyond the largest stored order.
    """
    if K is None:
        K = w.k_max
    partial = math.fsum(m.radial_norm for m in w.retained(K))
    # orders between the stored maximum and K are missing, not zero
    tail = w.tail_norm(min(K, w.k_max)) if w.tail_norm is not None else 0.0
    return NormReport(partial, tail)


# --- built-in weights -------------------------------------------------------

def builtin_w1(R=1.0):
    """w(x, y) = (1 + x) / r, with exactly two modes."""
    modes = {
        ModeIndex(0, 1): ModeMeasure(ModeIndex(0, 1), ((0.5 * SQRT_2PI, -0.5, 0.0),), R),
        ModeIndex(1, 1): ModeMeasure(ModeIndex(1, 1), ((0.5 * SQRT_PI, 0.5, 0.0),), R),
    }
    return WeightSpec("w1", float(R), modes, lambda K: 0.0,
                      lambda x, y: (1.0 + np.asarray(x)) / np.hypot(x, y))


def builtin_w2(R=1.0, k_max=22):
    """w(x, y) = |y|; only even cosine modes are non-zero."""
    modes = {ModeIndex(0, 1): ModeMeasure(ModeIndex(0, 1), ((math.sqrt(2) / SQRT_PI, 0.5, 0.0),), R)}
    for k in range(1, k_max // 2 + 1):
        idx = ModeIndex(2 * k, 1)
        modes[idx] = ModeMeasure(idx, ((-(2 / SQRT_PI) / (4 * k * k - 1), k + 0.5, 0.0),), R)
    scale = 4.0 * R ** 3 / (3.0 * SQRT_PI)

    def tail(K):
        # sum_{k > K//2} 1/(4k^2 - 1) telescopes to 1/(2(2(K//2) + 1))
        return scale / (2.0 * (2 * (K // 2) + 1))

    return WeightSpec(f"w2:{k_max}", float(R), modes, tail, lambda x, y: np.abs(y))


def builtin_poisson(R=1.0, k_max=22):
    """Poisson kernel of the disk with pole at (R, 0); its harmonic norm diverges."""
    modes = {ModeIndex(0, 1): ModeMeasure(ModeIndex(0, 1), ((0.5 * SQRT_2PI, 0.0, 0.0),), R)}
    for k in range(1, k_max + 1):
        idx = ModeIndex(k, 1)
        modes[idx] = ModeMeasure(idx, ((SQRT_PI * R ** (-k), float(k), 0.0),), R)

    def pointwise(x, y):
        x = np.asarray(x, dtype=float)
        y = np.asarray(y, dtype=float)
        return (R * R - x * x - y * y) / ((R - x) ** 2 + y * y)

    return WeightSpec(f"poisson:{k_max}", float(R), modes, lambda K: math.inf, pointwise)


def builtin_unit(R=1.0):
    """The constant weight 1."""
    modes = {ModeIndex(0, 1): ModeMeasure(ModeIndex(0, 1), ((0.5 * SQRT_2PI, 0.0, 0.0),), R)}
    return WeightSpec("unit", float(R), modes, lambda K: 0.0,
                      lambda x, y: np.ones(np.broadcast(x, y).shape))


def builtin_weight(name, R=1.0, k_max=None):
    """Look up a built-in weight by name; ``name`` may carry ``:kmax``."""
    base, _, suffix = name.partition(":")
    if suffix:
        try:
            k_max = int(suffix)
        except ValueError:
            raise DomainError(f"bad kmax in weight name {name!r}") from None
    if base == "w1":
        return builtin_w1(R)
    if base == "unit":
        return builtin_unit(R)
    if base in ("w2", "poisson"):
        k_max = 22 if k_max is None else k_max
        if k_max < 0:
            raise DomainError("kmax must be non-negative")
        return builtin_w2(R, k_max) if base == "w2" else builtin_poisson(R, k_max)
    raise DomainError(f"unknown built-in weight {name!r}")


# --- text format ------------------------------------------------------------
#
#   name; R
#   mode k l sign : c a b + c a b ...
#
# one mode per line; '#' starts a comment.

_MODE_RE = re.compile(r"^mode\s+(\d+)\s+(\d+)\s+([+-]?1|[+-])\s*:\s*(.+)$")


def parse_weight_text(text):
    entries = []
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        entries += [p.strip() for p in line.split(";") if p.strip()]
    if len(entries) < 3:
        raise DomainError("weight text needs a name, a radius and at least one mode")
    name = entries[0]
    try:
        R = float(entries[1])
    except ValueError:
        raise DomainError(f"bad radius {entries[1]!r}") from None
    modes = {}
    for entry in entries[2:]:
        m = _MODE_RE.match(entry)
        if not m:
            raise DomainError(f"cannot parse mode entry {entry!r}")
        idx = ModeIndex(int(m.group(1)), int(m.group(2)))
        declared = -1 if m.group(3).startswith("-") else 1
        terms = []
        for chunk in re.split(r"\s\+\s", " " + m.group(4) + " "):
            parts = chunk.split()
            if not parts:
                continue
            if len(parts) != 3:
                raise DomainError(f"term {chunk.strip()!r} must have exactly c a b")
            try:
                terms.append(JacobiTerm(*(float(p) for p in parts)))
            except ValueError:
                raise DomainError(f"non-numeric term {chunk.strip()!r}") from None
        if idx in modes:
            raise DomainError(f"mode {idx} given twice")
        measure = ModeMeasure(idx, tuple(terms), R)
        if measure.sign != declared:
            raise DomainError(f"mode {idx} declared sign {declared:+d} but density has sign {measure.sign:+d}")
        modes[idx] = measure
    return WeightSpec(name, R, modes)


def format_weight_text(w):
    lines = [f"{w.name}; {w.R!r}"]
    for idx, m in w.modes.items():
        body = " + ".join(f"{t.c!r} {t.a!r} {t.b!r}" for t in m.terms)
        lines.append(f"mode {idx.k} {idx.l} {m.sign:+d} : {body}")
    return "\n".join(lines) + "\n"


def load_weight(spec, R=1.0, k_max=None):
    """Resolve a weight from a built-in name or a path to a weight text file."""
    import os
    if os.path.isfile(spec):
        with open(spec) as fh:
            return parse_weight_text(fh.read())
    return builtin_weight(spec, R, k_max)
