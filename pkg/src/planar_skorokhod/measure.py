"""Centered one-dimensional probability laws with CDF, quantile and moments.

Every law exposes the generalized inverse ``Q(u) = inf{x : F(x) >= u}``,
which is what the Gross construction consumes. Quantiles are vectorized over
numpy arrays; scalars go in and come out as floats.
"""
from __future__ import annotations

import csv
import math
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np
from scipy import integrate, special

from .errors import DomainError, UnsupportedError

MASS_TOL = 1e-12
CENTER_TOL = 1e-10


def _check_unit_interval(u):
    u = np.asarray(u, dtype=float)
    if np.any(~((u > 0.0) & (u < 1.0))):
        raise DomainError("quantile level must lie in the open interval (0, 1)")
    return u


def _abs_power_antiderivative(x, p):
    # d/dx of sign(x)|x|^(p+1)/(p+1) is |x|^p, continuous through 0
    x = np.asarray(x, dtype=float)
    return np.sign(x) * np.abs(x) ** (p + 1.0) / (p + 1.0)


def _out(values, like):
    return float(values) if np.ndim(like) == 0 else values


class Measure:
    """Base class. Subclasses implement ``cdf``, ``_quantile`` and ``moment``."""

    kind = "measure"

    def cdf(self, x):
        raise NotImplementedError

    def quantile(self, u):
        u = _check_unit_interval(u)
        return _out(self._quantile(u), u)

    def _quantile(self, u):
        raise NotImplementedError

    def moment(self, p: float) -> float:
        """Absolute moment ``int |x|^p dmu``."""
        raise NotImplementedError

    def mean(self) -> float:
        raise NotImplementedError

    def variance(self) -> float:
        return self.moment(2.0) - self.mean() ** 2

    @property
    def is_continuous(self) -> bool:
        return True

    def literal(self) -> str:
        """The CLI literal that rebuilds this law (files are not re-embedded)."""
        raise NotImplementedError


def _check_p(p):
    if not p > 0:
        raise DomainError(f"moment order must be positive, got {p}")


@dataclass(frozen=True)
class Uniform(Measure):
    a: float = -1.0
    b: float = 1.0
    kind = "uniform"

    def __post_init__(self):
        if not (math.isfinite(self.a) and math.isfinite(self.b) and self.a < self.b):
            raise DomainError(f"uniform law needs finite a < b, got ({self.a}, {self.b})")

    def cdf(self, x):
        x = np.asarray(x, dtype=float)
        return _out(np.clip((x - self.a) / (self.b - self.a), 0.0, 1.0), x)

    def _quantile(self, u):
        return self.a + (self.b - self.a) * u

    def moment(self, p):
        _check_p(p)
        lo, hi = _abs_power_antiderivative([self.a, self.b], p)
        return float((hi - lo) / (self.b - self.a))

    def mean(self):
        return 0.5 * (self.a + self.b)

    def literal(self):
        return f"uniform:{self.a!r},{self.b!r}"


@dataclass(frozen=True)
class ArcsineShifted(Measure):
    """Arcsine law on (-1, 1), density ``1 / (pi sqrt(1 - x^2))``."""

    kind = "arcsine"

    def cdf(self, x):
        x = np.asarray(x, dtype=float)
        return _out(0.5 + np.arcsin(np.clip(x, -1.0, 1.0)) / np.pi, x)

    def _quantile(self, u):
        return -np.cos(np.pi * u)

    def moment(self, p):
        _check_p(p)
        return float(special.gamma((p + 1) / 2) / (math.sqrt(math.pi) * special.gamma(p / 2 + 1)))

    def mean(self):
        return 0.0

    def literal(self):
        return "arcsine"


@dataclass(frozen=True)
class ShiftedDiskExit(Measure):
    """Law of Re Z at exit from the unit disk centred at ``-i kappa``.

    Density ``(1 - k^4) / (pi ((1 - k^2)^2 + 4 k^2 x^2) sqrt(1 - x^2))``
    on (-1, 1). With ``x = -cos t`` the CDF integrates in closed form to
    ``atan2(r sin t, cos t) / pi`` where ``r = (1 - k^2) / (1 + k^2)``.
    """

    kappa: float = 0.0
    kind = "diskexit"

    def __post_init__(self):
        if not 0.0 <= self.kappa < 1.0:
            raise DomainError(f"kappa must lie in [0, 1), got {self.kappa}")

    @property
    def ratio(self) -> float:
        k2 = self.kappa**2
        return (1.0 - k2) / (1.0 + k2)

    def density(self, x):
        x = np.asarray(x, dtype=float)
        k = self.kappa
        inside = np.abs(x) < 1.0
        xs = np.where(inside, x, 0.0)
        d = (1 - k**4) / (np.pi * ((1 - k**2) ** 2 + 4 * k**2 * xs**2) * np.sqrt(1 - xs**2))
        return _out(np.where(inside, d, 0.0), x)

    def cdf(self, x):
        x = np.asarray(x, dtype=float)
        xc = np.clip(x, -1.0, 1.0)
        f = np.arctan2(self.ratio * np.sqrt(1.0 - xc**2), -xc) / np.pi
        return _out(f, x)

    def _quantile(self, u):
        t = np.arctan2(np.sin(np.pi * u), self.ratio * np.cos(np.pi * u))
        return -np.cos(t)

    def moment(self, p):
        _check_p(p)
        if p == 2.0:
            return 0.5 * (1.0 - self.kappa**2)
        val, _ = integrate.quad(lambda u: abs(self._quantile(u)) ** p, 0.0, 1.0,
                                epsabs=1e-13, epsrel=1e-12, limit=400, points=[0.5])
        return float(val)

    def mean(self):
        return 0.0

    def literal(self):
        return f"diskexit:{self.kappa!r}"


class _StepQuantile(Measure):
    """Laws whose quantile is a left-continuous step function.

    ``levels`` are the distinct support points in ascending order and
    ``cum`` the cumulative masses ``F(levels)``; ``Q(u) = levels[i]`` for
    ``cum[i-1] < u <= cum[i]``.
    """

    levels: np.ndarray
    cum: np.ndarray

    @property
    def is_continuous(self):
        return False

    def cdf(self, x):
        x = np.asarray(x, dtype=float)
        i = np.searchsorted(self.levels, x, side="right")
        c = np.concatenate([[0.0], self.cum])
        return _out(np.minimum(c[i], 1.0), x)

    def _quantile(self, u):
        i = np.searchsorted(self.cum, u, side="left")
        return self.levels[np.minimum(i, len(self.levels) - 1)]

    @property
    def weights(self) -> np.ndarray:
        return np.diff(np.concatenate([[0.0], self.cum]))

    def moment(self, p):
        _check_p(p)
        return float(np.sum(self.weights * np.abs(self.levels) ** p))

    def mean(self):
        return float(np.sum(self.weights * self.levels))


@dataclass(frozen=True, eq=False)
class Atomic(_StepQuantile):
    positions: tuple
    masses: tuple
    kind = "atoms"
    levels: np.ndarray = field(init=False, repr=False)
    cum: np.ndarray = field(init=False, repr=False)

    def __post_init__(self):
        x = np.asarray(self.positions, dtype=float)
        w = np.asarray(self.masses, dtype=float)
        if x.shape != w.shape or x.size == 0:
            raise DomainError("atoms need matching, nonempty position and weight lists")
        if np.any(w < 0) or not np.all(np.isfinite(x)):
            raise DomainError("atom weights must be nonnegative and positions finite")
        if abs(w.sum() - 1.0) > MASS_TOL:
            raise DomainError(f"atom weights sum to {w.sum()!r}, not 1")
        levels, inv = np.unique(x, return_inverse=True)
        merged = np.zeros(levels.size)
        np.add.at(merged, inv, w)
        keep = merged > 0
        object.__setattr__(self, "levels", levels[keep])
        object.__setattr__(self, "cum", np.cumsum(merged[keep]))

    @classmethod
    def from_pairs(cls, pairs):
        pairs = list(pairs)
        return cls(tuple(p for p, _ in pairs), tuple(w for _, w in pairs))

    def literal(self):
        return "atoms:" + ",".join(f"{x!r}:{w!r}" for x, w in zip(self.levels, self.weights))


@dataclass(frozen=True, eq=False)
class Empirical(_StepQuantile):
    """Uniform weights ``1/M`` on ``M`` samples; ``Q(u) = x_(ceil(u M))``.

    ``shift`` records a recentring already applied to the samples.
    """

    samples: np.ndarray
    shift: float = 0.0
    kind = "empirical"
    levels: np.ndarray = field(init=False, repr=False)
    cum: np.ndarray = field(init=False, repr=False)

    def __post_init__(self):
        x = np.sort(np.asarray(self.samples, dtype=float).ravel())
        if x.size == 0 or not np.all(np.isfinite(x)):
            raise DomainError("empirical law needs a nonempty list of finite samples")
        object.__setattr__(self, "samples", x)
        object.__setattr__(self, "levels", x)
        object.__setattr__(self, "cum", np.arange(1, x.size + 1) / x.size)

    @property
    def size(self) -> int:
        return self.samples.size

    def cdf(self, x):
        x = np.asarray(x, dtype=float)
        return _out(np.searchsorted(self.samples, x, side="right") / self.size, x)

    def _quantile(self, u):
        i = np.ceil(u * self.size).astype(np.int64) - 1
        return self.samples[np.clip(i, 0, self.size - 1)]

    def moment(self, p):
        _check_p(p)
        return float(np.mean(np.abs(self.samples) ** p))

    def mean(self):
        return float(np.mean(self.samples))

    def literal(self):
        return f"empirical:<{self.size} samples>"


@dataclass(frozen=True, eq=False)
class PiecewiseDensity(Measure):
    """Piecewise-constant density: ``density[i]`` on ``[breaks[i], breaks[i+1])``."""

    breaks: np.ndarray
    density: np.ndarray
    kind = "density"

    def __post_init__(self):
        b = np.asarray(self.breaks, dtype=float)
        d = np.asarray(self.density, dtype=float)
        if b.ndim != 1 or b.size < 2 or d.shape != (b.size - 1,):
            raise DomainError("need K+1 breakpoints and K density values")
        if np.any(np.diff(b) <= 0) or not np.all(np.isfinite(b)):
            raise DomainError("breakpoints must be finite and strictly ascending")
        if np.any(d < 0) or not np.all(np.isfinite(d)):
            raise DomainError("density values must be finite and nonnegative")
        mass = float(np.sum(d * np.diff(b)))
        if abs(mass - 1.0) > MASS_TOL:
            raise DomainError(f"density integrates to {mass!r}, not 1")
        object.__setattr__(self, "breaks", b)
        object.__setattr__(self, "density", d)

    @classmethod
    def normalized(cls, breaks, density):
        b = np.asarray(breaks, dtype=float)
        d = np.asarray(density, dtype=float)
        return cls(b, d / np.sum(d * np.diff(b)))

    @property
    def cum(self) -> np.ndarray:
        c = np.concatenate([[0.0], np.cumsum(self.density * np.diff(self.breaks))])
        c[-1] = 1.0
        return c

    def cdf(self, x):
        x = np.asarray(x, dtype=float)
        return _out(np.interp(x, self.breaks, self.cum), x)

    def _quantile(self, u):
        c = self.cum
        j = np.clip(np.searchsorted(c, u, side="left"), 1, c.size - 1)
        # c[j-1] < u <= c[j] forces density[j-1] > 0
        return self.breaks[j - 1] + (u - c[j - 1]) / self.density[j - 1]

    def moment(self, p):
        _check_p(p)
        f = _abs_power_antiderivative(self.breaks, p)
        return float(np.sum(self.density * np.diff(f)))

    def mean(self):
        return float(np.sum(self.density * np.diff(self.breaks**2)) / 2.0)

    def literal(self):
        return f"density:<{self.density.size} cells>"


# -- module-level operations -------------------------------------------------

def cdf(m: Measure, x):
    if not np.all(np.isfinite(x)):
        raise DomainError("cdf argument must be finite")
    return m.cdf(x)


def quantile(m: Measure, u):
    return m.quantile(u)


def moment(m: Measure, p: float) -> float:
    return m.moment(p)


def variance(m: Measure) -> float:
    return m.variance()


def is_centered(m: Measure, tol: float = CENTER_TOL) -> bool:
    return abs(m.mean()) <= tol


def schlicht_normalization(m: Measure) -> float:
    """``(1/pi) int_{-pi}^{pi} Q(|t|/pi) cos t dt``, the first Gross coefficient.

    Schlicht-normalized laws have ``|value| == 1``; the arcsine law gives -1,
    i.e. the identity map composed with a half-turn.
    """
    from .fourier import quantile_cosine_coeffs

    return float(quantile_cosine_coeffs(m, 1).coeffs[0])


def rescale(m: Measure, c: float) -> Measure:
    """Push ``m`` forward under ``x -> c x`` (c > 0)."""
    if not c > 0:
        raise DomainError("scale factor must be positive")
    if isinstance(m, Uniform):
        return Uniform(c * m.a, c * m.b)
    if isinstance(m, Atomic):
        return Atomic(tuple(c * m.levels), tuple(m.weights))
    if isinstance(m, Empirical):
        return Empirical(c * m.samples, c * m.shift)
    if isinstance(m, PiecewiseDensity):
        return PiecewiseDensity(c * m.breaks, m.density / c)
    raise UnsupportedError(f"no closed-form rescaling for {m.kind} laws")


# -- literal syntax ------------------------------------------------------------

def _floats(text):
    return [float(t) for t in text.split(",") if t.strip()]


def read_empirical_csv(path) -> Empirical:
    values = []
    with open(path, newline="") as fh:
        for row in csv.reader(fh):
            if not row or row[0].lstrip().startswith("#"):
                continue
            try:
                values.append(float(row[0]))
            except ValueError:
                continue  # header line
    return Empirical(np.array(values))


def read_density_csv(path) -> PiecewiseDensity:
    """Rows ``breakpoint,value``; the value on the last row is ignored."""
    rows = []
    with open(path, newline="") as fh:
        for row in csv.reader(fh):
            if len(row) < 2 or row[0].lstrip().startswith("#"):
                continue
            try:
                rows.append((float(row[0]), float(row[1])))
            except ValueError:
                continue
    if len(rows) < 2:
        raise DomainError(f"{path}: need at least two breakpoint rows")
    b = [r[0] for r in rows]
    d = [r[1] for r in rows[:-1]]
    return PiecewiseDensity.normalized(b, d)


def parse_measure(spec: str) -> Measure:
    """Parse ``uniform:-1,1``, ``arcsine``, ``diskexit:0.9``,
    ``atoms:-1:0.5,1:0.5``, ``empirical:path.csv`` or ``density:path.csv``."""
    name, _, arg = spec.strip().partition(":")
    name = name.lower()
    try:
        if name == "uniform":
            a, b = _floats(arg) if arg else (-1.0, 1.0)
            return Uniform(a, b)
        if name == "arcsine":
            return ArcsineShifted()
        if name == "diskexit":
            return ShiftedDiskExit(float(arg))
        if name == "atoms":
            pairs = []
            for item in arg.split(","):
                pos, _, w = item.rpartition(":")
                pairs.append((float(pos), float(w)))
            return Atomic.from_pairs(pairs)
        if name == "empirical":
            return read_empirical_csv(Path(arg))
        if name == "density":
            return read_density_csv(Path(arg))
    except (TypeError, ValueError) as exc:
        if isinstance(exc, DomainError):
            raise
        raise DomainError(f"cannot parse measure literal {spec!r}: {exc}") from exc
    raise DomainError(f"unknown measure kind in {spec!r}")
