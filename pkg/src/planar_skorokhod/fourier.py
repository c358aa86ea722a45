"""Cosine coefficients of ``theta -> Q(|theta|/pi)`` and trace spectra.

For a law with quantile ``Q`` the coefficients are
``a_n = 2 int_0^1 Q(u) cos(n pi u) du``. Step quantiles (atoms, samples) and
piecewise-linear quantiles (piecewise-constant densities) are integrated
exactly cell by cell; the smooth closed-form laws go through QAWO adaptive
quadrature.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy import fft, integrate

from .errors import DomainError, UnsupportedError
from .measure import (ArcsineShifted, Atomic, Empirical, Measure,
                      PiecewiseDensity, ShiftedDiskExit, Uniform)
from .rearrange import BoundaryTrace, grid

DEFAULT_TERMS = 256
QUAD_TOL = 1e-10


@dataclass(frozen=True, eq=False)
class CosineSeries:
    coeffs: np.ndarray  # a_1..a_N

    def __post_init__(self):
        c = np.asarray(self.coeffs, dtype=float).ravel()
        if c.size < 1:
            raise DomainError("a cosine series needs at least one coefficient")
        if not np.all(np.isfinite(c)):
            raise UnsupportedError("non-finite cosine coefficient (quantile not integrable?)")
        object.__setattr__(self, "coeffs", c)

    @property
    def truncation(self) -> int:
        return self.coeffs.size

    def energy(self) -> float:
        """``sum a_n^2``; equals ``2 Var`` for the full series of a centered law."""
        return float(np.sum(self.coeffs**2))

    def to_json(self) -> dict:
        return {"truncation": self.truncation, "coeffs": self.coeffs.tolist()}

    @classmethod
    def from_json(cls, data):
        s = cls(np.asarray(data["coeffs"], dtype=float))
        if s.truncation != int(data.get("truncation", s.truncation)):
            raise DomainError("truncation header does not match coefficient count")
        return s


@dataclass(frozen=True, eq=False)
class TraceSpectrum:
    alpha: np.ndarray
    beta: np.ndarray
    mean_term: float

    @property
    def truncation(self) -> int:
        return self.alpha.size

    def to_json(self) -> dict:
        return {"truncation": self.truncation, "alpha": self.alpha.tolist(),
                "beta": self.beta.tolist(), "mean_term": self.mean_term}

    @classmethod
    def from_json(cls, data):
        return cls(np.asarray(data["alpha"], float), np.asarray(data["beta"], float),
                   float(data["mean_term"]))


# -- closed-form cross-checks -------------------------------------------------

def uniform_cosine_coeffs(a: float, b: float, N: int) -> np.ndarray:
    n = np.arange(1, N + 1)
    return 2.0 * (b - a) * ((-1.0) ** n - 1.0) / (n * np.pi) ** 2


def arcsine_cosine_coeffs(N: int) -> np.ndarray:
    out = np.zeros(N)
    out[0] = -1.0
    return out


# -- exact cell integrals -----------------------------------------------------

def _step_coeffs(levels, cum, N):
    # summation by parts: a_n = -(2/(n pi)) sum_i sin(n pi C_i) (x_{i+1} - x_i)
    jumps = np.diff(levels)
    inner = np.asarray(cum[:-1])
    n = np.arange(1, N + 1)
    if jumps.size == 0:
        return np.zeros(N)
    s = np.sin(np.pi * np.outer(n, inner)) @ jumps
    return -2.0 * s / (n * np.pi)


def _empirical_coeffs(samples, N):
    M = samples.size
    if M < 2:
        return np.zeros(N)
    # DST-I of the order-statistic gaps: y_k = 2 sum_i dx_i sin(pi (k+1) i / M)
    y = fft.dst(np.diff(samples), type=1)
    n = np.arange(1, N + 1)
    a = np.zeros(N)
    m = min(N, M - 1)
    a[:m] = -y[:m] / (n[:m] * np.pi)
    # beyond the DST length, sin(n pi i / M) is periodic in n with period 2M
    if N > M - 1:
        gaps = np.diff(samples)
        i = np.arange(1, M)
        for k in range(m, N):
            a[k] = -2.0 * np.dot(np.sin(np.pi * n[k] * i / M), gaps) / (n[k] * np.pi)
    return a


def _piecewise_linear_coeffs(m: PiecewiseDensity, N):
    c = m.cum
    mass = np.diff(c)
    keep = mass > 0
    u0, u1 = c[:-1][keep], c[1:][keep]
    x0, x1 = m.breaks[:-1][keep], m.breaks[1:][keep]
    slope = (x1 - x0) / (u1 - u0)
    w = np.arange(1, N + 1)[:, None] * np.pi
    # antiderivative of (x0 + s (u - u0)) cos(w u)
    def F(u, x):
        return x * np.sin(w * u) / w + slope * np.cos(w * u) / w**2
    return 2.0 * np.sum(F(u1, x1) - F(u0, x0), axis=1)


def _quad_coeffs(q, N, tol=QUAD_TOL):
    out = np.empty(N)
    for k in range(N):
        val, _ = integrate.quad(q, 0.0, 1.0, weight="cos", wvar=(k + 1) * np.pi,
                                epsabs=tol, epsrel=0.0, limit=500)
        out[k] = 2.0 * val
    return out


def quantile_cosine_coeffs(m: Measure, N: int = DEFAULT_TERMS) -> CosineSeries:
    """Coefficients ``a_1..a_N`` of ``Q(|theta|/pi) = sum a_n cos(n theta)``."""
    if N < 1:
        raise DomainError("need at least one term")
    if isinstance(m, Empirical):
        a = _empirical_coeffs(m.samples, N)
    elif isinstance(m, Atomic):
        a = _step_coeffs(m.levels, m.cum, N)
    elif isinstance(m, PiecewiseDensity):
        a = _piecewise_linear_coeffs(m, N)
    elif isinstance(m, (Uniform, ArcsineShifted, ShiftedDiskExit)):
        a = _quad_coeffs(m._quantile, N)
    else:
        raise UnsupportedError(f"no coefficient rule for {type(m).__name__}")
    return CosineSeries(a)


def trace_spectrum(trace: BoundaryTrace, N: int) -> TraceSpectrum:
    """Discrete projections of a midpoint-grid trace onto ``cos``/``sin(n theta)``.

    ``alpha_n = (2/G) sum v_j cos(n theta_j)``, likewise ``beta_n``; exact for
    trigonometric polynomials of degree at most ``N`` since ``N < G/2``.
    """
    G = trace.grid_size
    if N < 1 or N > G // 2 - 1:
        raise DomainError(f"truncation {N} too large for grid {G} (max {G // 2 - 1})")
    v = trace.values
    spec = np.fft.rfft(v)[: N + 1]
    n = np.arange(N + 1)
    # theta_j = theta_0 + 2 pi j / G
    spec = spec * np.exp(-1j * n * grid(G)[0])
    alpha = 2.0 * spec.real[1:] / G
    beta = -2.0 * spec.imag[1:] / G
    return TraceSpectrum(alpha, beta, float(spec.real[0] / G))


def evaluate_series(s: CosineSeries, theta):
    theta = np.asarray(theta, dtype=float)
    n = np.arange(1, s.truncation + 1)
    out = np.cos(np.multiply.outer(theta, n)) @ s.coeffs
    return float(out) if theta.ndim == 0 else out


def captured_energy(s: CosineSeries, m: Measure) -> float:
    """Fraction ``sum a_n^2 / (2 Var)`` of the quantile's energy kept by ``s``."""
    var = m.variance()
    return float(s.energy() / (2.0 * var)) if var > 0 else 1.0
