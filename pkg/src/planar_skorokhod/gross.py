"""Truncated power-series domains f(D), Gross domains, and shape functionals."""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
import shapely

from .errors import DomainError
from .fourier import DEFAULT_TERMS, quantile_cosine_coeffs
from .measure import CENTER_TOL, Measure
from .rearrange import BoundaryTrace, grid


@dataclass(frozen=True, eq=False)
class PowerSeriesDomain:
    """``f(z) = sum_{n>=1} c_n z^n`` with ``coeffs[n-1] = c_n``."""

    coeffs: np.ndarray
    provenance: str = "manual"

    def __post_init__(self):
        c = np.asarray(self.coeffs, dtype=complex).ravel()
        if c.size < 1 or not np.all(np.isfinite(c)):
            raise DomainError("coefficients must be a nonempty finite list")
        object.__setattr__(self, "coeffs", c)

    @property
    def truncation(self) -> int:
        return self.coeffs.size

    @property
    def is_degenerate(self) -> bool:
        return not np.any(self.coeffs)

    def __call__(self, z):
        z = np.asarray(z, dtype=complex)
        acc = np.zeros_like(z)
        for c in self.coeffs[::-1]:
            acc = acc * z + c
        return acc * z

    def derivative(self, z):
        z = np.asarray(z, dtype=complex)
        n = np.arange(1, self.truncation + 1)
        acc = np.zeros_like(z)
        for c in (n * self.coeffs)[::-1]:
            acc = acc * z + c
        return acc

    def on_circle(self, G: int, r: float = 1.0) -> np.ndarray:
        """``f(r e^{i theta_j})`` on the midpoint grid, via one FFT."""
        n = np.arange(1, self.truncation + 1)
        w = self.coeffs * r**n * np.exp(1j * n * grid(G)[0])
        folded = np.zeros(G, dtype=complex)
        np.add.at(folded, n % G, w)
        return np.fft.ifft(folded) * G

    def to_json(self) -> dict:
        return {"coeffs": [[float(c.real), float(c.imag)] for c in self.coeffs],
                "provenance": self.provenance, "truncation": self.truncation}

    @classmethod
    def from_json(cls, data: dict) -> "PowerSeriesDomain":
        c = np.array([complex(re, im) for re, im in data["coeffs"]])
        d = cls(c, data.get("provenance", "manual"))
        if d.truncation != int(data.get("truncation", d.truncation)):
            raise DomainError("truncation header does not match coefficient count")
        return d


def gross_domain(m: Measure, N: int = DEFAULT_TERMS, center_tol: float = CENTER_TOL) -> PowerSeriesDomain:
    """Gross domain: coefficients are the cosine coefficients of ``Q(|theta|/pi)``."""
    if abs(m.mean()) > center_tol:
        raise DomainError(f"law is not centered (mean {m.mean():.3e}, tolerance {center_tol:.1e})")
    a = quantile_cosine_coeffs(m, N).coeffs
    return PowerSeriesDomain(a.astype(complex), provenance=f"gross({m.literal()})")


def area(d: PowerSeriesDomain) -> float:
    n = np.arange(1, d.truncation + 1)
    return float(np.pi * np.sum(n * np.abs(d.coeffs) ** 2))


def skorokhod_energy(d: PowerSeriesDomain) -> float:
    n = np.arange(1, d.truncation + 1)
    return float(0.25 * np.sum(n**2 * np.abs(d.coeffs) ** 2))


@dataclass(frozen=True)
class EnergyDiagnostic:
    value: float
    last_term: float
    last_decade_fraction: float
    converged: bool


def energy_diagnostic(d: PowerSeriesDomain, threshold: float = 0.01) -> EnergyDiagnostic:
    """Partial Skorokhod energy plus a flag raised when the last decade of
    terms, ``N/10 < n <= N``, carries more than ``threshold`` of the total."""
    n = np.arange(1, d.truncation + 1)
    terms = 0.25 * n**2 * np.abs(d.coeffs) ** 2
    total = float(terms.sum())
    tail = float(terms[n > d.truncation / 10].sum())
    frac = tail / total if total > 0 else 0.0
    return EnergyDiagnostic(total, float(terms[-1]), frac, frac <= threshold)


def expected_exit_time(d: PowerSeriesDomain) -> float:
    return float(0.5 * np.sum(np.abs(d.coeffs) ** 2))


def boundary_trace(d: PowerSeriesDomain, G: int) -> tuple[BoundaryTrace, BoundaryTrace]:
    if G % 2 or G < 2 * d.truncation + 2:
        raise DomainError(f"grid {G} must be even and at least 2N+2 = {2 * d.truncation + 2}")
    w = d.on_circle(G)
    return BoundaryTrace(w.real), BoundaryTrace(w.imag)


@dataclass(frozen=True)
class UnivalenceReport:
    passed: bool
    reason: str
    simple: bool
    winding: int
    min_derivative: float
    grid_size: int


def winding_number(points: np.ndarray, about: complex = 0.0) -> int:
    rel = points - about
    steps = np.angle(np.roll(rel, -1) / rel)
    return int(round(steps.sum() / (2 * np.pi)))


def univalence_check(d: PowerSeriesDomain, G: int = 4096, r_inner: float = 0.99) -> UnivalenceReport:
    """Numeric screen: simple boundary polyline, winding 1 about f(0) = 0,
    and ``|f'|`` bounded away from 0 on ``|z| = r_inner``."""
    if d.is_degenerate:
        return UnivalenceReport(False, "degenerate: all coefficients vanish", False, 0, 0.0, G)
    if G < 4 * d.truncation:
        raise DomainError(f"grid {G} must be at least 4N = {4 * d.truncation}")
    pts = d.on_circle(G)
    if np.any(pts == 0):
        return UnivalenceReport(False, "boundary passes through f(0)", False, 0, 0.0, G)
    simple = bool(shapely.LinearRing(np.column_stack([pts.real, pts.imag])).is_simple)
    wind = winding_number(pts)
    zi = r_inner * np.exp(1j * grid(G))
    dmin = float(np.min(np.abs(d.derivative(zi))))
    reasons = []
    if not simple:
        reasons.append("boundary polyline self-intersects")
    if abs(wind) != 1:
        reasons.append(f"winding number {wind}")
    if not dmin > 0:
        reasons.append("derivative vanishes inside")
    passed = not reasons
    return UnivalenceReport(passed, "ok" if passed else "; ".join(reasons), simple, wind, dmin, G)


def coefficient_screen(d: PowerSeriesDomain) -> bool:
    """Sufficient condition ``sum_{n>=2} n |c_n| < |c_1|`` for univalence."""
    n = np.arange(2, d.truncation + 1)
    return bool(np.sum(n * np.abs(d.coeffs[1:])) < abs(d.coeffs[0]))


@dataclass(frozen=True)
class InnerCircleReport:
    n: int
    r: float
    energy_mode_n: float      # int |d/dtheta Re (r e^{i theta})^n|^2 dtheta
    energy_rearranged: float  # same for its rearrangement, Re(r e^{i theta})
    ratio: float              # n^2 r^(2n-2)
    inequality_holds: bool


def inner_circle_counterexample(n: int = 3, r: float = 0.5, G: int = 1024) -> InnerCircleReport:
    """Test ``sum k^2 r^2k |a_k|^2 <= sum k^2 r^2k |c_k|^2`` on ``cos(n theta)``
    against its rearrangement ``cos(theta)``.

    The Dirichlet integrals are computed by the (exact) trapezoid rule on the
    circle and checked against ``pi n^2 r^2n`` and ``pi r^2``.
    """
    if n < 1 or not 0 < r < 1:
        raise DomainError("need n >= 1 and 0 < r < 1")
    th = grid(G)
    h = 2 * np.pi / G
    lhs = float(np.sum((n * r**n * np.sin(n * th)) ** 2) * h)
    rhs = float(np.sum((r * np.sin(th)) ** 2) * h)
    for got, want in ((lhs, np.pi * n**2 * r ** (2 * n)), (rhs, np.pi * r**2)):
        if not math.isclose(got, want, rel_tol=1e-12, abs_tol=1e-300):
            raise AssertionError(f"quadrature {got} disagrees with closed form {want}")
    ratio = n**2 * r ** (2 * n - 2)
    return InnerCircleReport(n, r, lhs, rhs, ratio, bool(ratio >= 1.0))
