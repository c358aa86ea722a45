"""Brownian symmetrization B(U), raster Steiner symmetrization, the area ratio
rho = A(B(U)) / A(U), and desk-scale checks of the Gross area minimality."""
from __future__ import annotations

import csv
import math
from dataclasses import dataclass, field

import numpy as np
import shapely

from .errors import DomainError
from .fourier import DEFAULT_TERMS, trace_spectrum
from .gross import (PowerSeriesDomain, area, boundary_trace, expected_exit_time, gross_domain,
                    univalence_check)
from .measure import Measure, Uniform
from .rearrange import sdr
from .sampler import (Disk, GeometricDomain, Rectangle, ShiftedDisk, empirical_measure,
                      exit_samples)


# -- rasters ------------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class RasterDomain:
    """Occupancy grid ``occupancy[row, col]`` over a box symmetric about 0.

    Row ``i`` covers ``y in [y0 + i h, y0 + (i+1) h)`` with ``y0 = -rows h / 2``;
    rows is even, so the real axis is a grid line.
    """

    cell_size: float
    occupancy: np.ndarray

    def __post_init__(self):
        occ = np.asarray(self.occupancy, dtype=bool)
        if occ.ndim != 2 or occ.shape[0] % 2 or occ.shape[1] % 2:
            raise DomainError("occupancy must be a 2-D grid with even dimensions")
        object.__setattr__(self, "occupancy", occ)

    @property
    def count(self) -> int:
        return int(self.occupancy.sum())

    @property
    def area(self) -> float:
        return self.cell_size**2 * self.count

    def centers(self):
        rows, cols = self.occupancy.shape
        h = self.cell_size
        ys = (np.arange(rows) - rows / 2 + 0.5) * h
        xs = (np.arange(cols) - cols / 2 + 0.5) * h
        return xs, ys

    def origin_occupied(self) -> bool:
        rows, cols = self.occupancy.shape
        return bool(self.occupancy[rows // 2 - 1: rows // 2 + 1, cols // 2 - 1: cols // 2 + 1].any())


def _polygon(source, G=4096):
    if isinstance(source, PowerSeriesDomain):
        w = source.on_circle(G)
        return shapely.Polygon(np.column_stack([w.real, w.imag]))
    raise DomainError("no polygon for this source")


def rasterize(source, resolution: int = 512) -> RasterDomain:
    """Cell-centre rasterization on a ``resolution x resolution`` box."""
    if isinstance(source, GeometricDomain):
        x0, x1, y0, y1 = source.bbox()
        inside = lambda X, Y: source.contains(X, Y)  # noqa: E731
    else:
        poly = _polygon(source)
        x0, y0, x1, y1 = poly.bounds
        inside = lambda X, Y: shapely.contains_xy(poly, X, Y)  # noqa: E731
    half = 1.02 * max(abs(x0), abs(x1), abs(y0), abs(y1))
    res = resolution + resolution % 2
    h = 2 * half / res
    c = (np.arange(res) - res / 2 + 0.5) * h
    X, Y = np.meshgrid(c, c)
    return RasterDomain(h, inside(X, Y))


def steiner_raster(r: RasterDomain) -> RasterDomain:
    """Re-stack each column's occupied cells as one run centred on the real
    axis; an odd count puts its extra cell above the axis."""
    rows = r.occupancy.shape[0]
    counts = r.occupancy.sum(axis=0)
    lo = rows // 2 - counts // 2
    hi = lo + counts
    idx = np.arange(rows)[:, None]
    return RasterDomain(r.cell_size, (idx >= lo) & (idx < hi))


# -- Brownian symmetrization ---------------------------------------------------

@dataclass(eq=False)
class SymmetrizationReport:
    mu_hat: Measure
    gross: PowerSeriesDomain
    area_B: float
    area_U: float
    rho: float
    diagnostics: dict = field(default_factory=dict)
    annotations: list = field(default_factory=list)

    def to_json(self) -> dict:
        return {"area_B": self.area_B, "area_U": self.area_U, "rho": self.rho,
                "mu_hat": self.mu_hat.literal(), "gross": self.gross.to_json(),
                "diagnostics": self.diagnostics, "annotations": list(self.annotations)}


def source_area(source) -> float:
    if isinstance(source, PowerSeriesDomain):
        return area(source)
    if isinstance(source, GeometricDomain):
        return source.area
    raise DomainError(f"unsupported source {type(source).__name__}")


def rho(report: SymmetrizationReport) -> float:
    """``area_B / area_U``; 0 for infinite ``area_U`` and nan for zero area
    (the report's annotations say which)."""
    a = report.area_U
    if math.isinf(a):
        return 0.0
    if not a > 0:
        return math.nan
    return report.area_B / a


def _finish(mu, gross, area_U, diagnostics):
    rep = SymmetrizationReport(mu, gross, area(gross), area_U, math.nan, diagnostics)
    if math.isinf(area_U):
        rep.annotations.append("area_U is infinite; rho reported as 0")
    elif not area_U > 0:
        rep.annotations.append("area_U is zero; rho undefined")
    if gross.is_degenerate:
        rep.annotations.append("point-mass exit law: B(U) is degenerate with zero area")
    rep.rho = rho(rep)
    return rep


def brownian_symmetrize(source, n: int = 1_000_000, N: int = DEFAULT_TERMS, eps: float = 1e-6,
                        seed: int = 42, method: str = "auto") -> SymmetrizationReport:
    """Sample the exit law of ``source``, fit its empirical law, and build the
    Gross domain of that law."""
    area_U = source_area(source)
    samples = exit_samples(source, n, seed, eps, method)
    fit = empirical_measure(samples)
    mu = fit.measure
    gross = gross_domain(mu, N, center_tol=4.0 * fit.mean_stderr + 1e-12)
    var = mu.variance()
    diag = {
        "samples": samples.count, "excluded": samples.excluded, "seed": seed,
        "sampler": samples.sampler, "source": getattr(source, "literal", lambda: source.provenance)(),
        "truncation": N, "sample_variance": var, "sample_mean": fit.raw_mean,
        "recentered": fit.recentered, "expected_exit_time": expected_exit_time(gross),
        "captured_energy": expected_exit_time(gross) / var if var > 0 else 1.0,
        "variance_lower_bound": 2 * math.pi * var / area_U if area_U > 0 else math.nan,
    }
    return _finish(mu, gross, area_U, diag)


def uniform_law_fixture(N: int = 10_000) -> SymmetrizationReport:
    """Analytic case without sampling: the uniform law on (-1, 1) comes from an
    unbounded domain of infinite area whose Brownian symmetrization has area
    ``56 zeta(3) / pi^3``."""
    mu = Uniform(-1.0, 1.0)
    g = gross_domain(mu, N)
    return _finish(mu, g, math.inf, {"truncation": N})


# -- area minimality ----------------------------------------------------------

@dataclass(frozen=True)
class TrialResult:
    area_gross: float
    area_u: float
    ok: bool
    tol: float
    skipped: str = ""


def area_minimality_trial(u: PowerSeriesDomain, G: int = 2048, N: int | None = None,
                          screen: bool = True) -> TrialResult:
    """Rearrange the real boundary trace of ``u`` and compare the area of the
    resulting series against ``area(u)``. No sampling involved."""
    N = G // 4 if N is None else N
    if screen:
        rep = univalence_check(u, max(G, 4 * u.truncation))
        if not rep.passed:
            return TrialResult(math.nan, area(u), False, math.nan, f"univalence screen: {rep.reason}")
    phi, _ = boundary_trace(u, G)
    star = sdr(phi)
    spec = trace_spectrum(star, N)
    n = np.arange(1, N + 1)
    # rearranged trace is Q(1 - |theta|/pi), whose cosine coefficients are (-1)^n a_n
    gross = PowerSeriesDomain(((-1.0) ** n * spec.alpha).astype(complex), "rearranged trace")
    a_g = area(gross)
    a_u = area(u)
    energy = 2.0 * np.mean((star.values - spec.mean_term) ** 2)
    tail = max(energy - float(np.sum(spec.alpha**2 + spec.beta**2)), 0.0)
    tol = 10.0 * (tail + 1.0 / G)
    return TrialResult(a_g, a_u, bool(a_g <= a_u + tol), tol)


def perturbed_disk(rng: np.random.Generator, degree: int = 8, scale: float = 0.5) -> PowerSeriesDomain:
    """``c_1 = 1`` plus random-phase ``c_n`` with ``|c_n| <= scale / n^3``."""
    n = np.arange(2, degree + 1)
    mags = rng.uniform(0.0, 1.0, n.size) * scale / n**3
    phases = rng.uniform(-np.pi, np.pi, n.size)
    c = np.concatenate([[1.0 + 0j], mags * np.exp(1j * phases)])
    return PowerSeriesDomain(c, "perturbed disk")


# -- variance collapse --------------------------------------------------------

@dataclass(frozen=True)
class SweepRow:
    kind: str
    param: float
    variance: float
    variance_stderr: float
    area_U: float
    area_B: float
    rho: float
    closed_form_variance: float = math.nan


SWEEP_COLUMNS = list(SweepRow.__dataclass_fields__)


def sweep_domain(kind: str, param: float, a: float = 1.0):
    if kind == "shifted_disk":
        return ShiftedDisk(param)
    if kind == "thin_rectangle":
        b = param
        return Rectangle(a / (2 * b), b / 2)
    if kind == "disk":
        return Disk(param)
    raise DomainError(f"unknown sweep kind {kind!r}")


def variance_collapse_sweep(kind: str, params, n: int = 1_000_000, eps: float = 1e-6, seed: int = 42,
                            N: int = DEFAULT_TERMS, a: float = 1.0, method: str = "auto") -> list[SweepRow]:
    params = list(params)
    if not params:
        raise DomainError("parameter list is empty")
    rows = []
    for p in params:
        dom = sweep_domain(kind, p, a)
        rep = brownian_symmetrize(dom, n, N, eps, seed, method)
        samples_var = rep.diagnostics["sample_variance"]
        se = _variance_stderr(rep.mu_hat.samples)
        closed = 0.5 * (1 - p**2) if kind == "shifted_disk" else math.nan
        rows.append(SweepRow(kind, float(p), samples_var, se, rep.area_U, rep.area_B, rep.rho, closed))
    return rows


def _variance_stderr(x):
    c = x - x.mean()
    return float(math.sqrt(max(np.mean(c**4) - np.mean(c**2) ** 2, 0.0) / x.size))


def write_sweep_csv(rows, path) -> None:
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(SWEEP_COLUMNS)
        for r in rows:
            w.writerow([getattr(r, c) if isinstance(getattr(r, c), str) else repr(float(getattr(r, c)))
                        for c in SWEEP_COLUMNS])
