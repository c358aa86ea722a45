"""Exit-law samples of Re Z_tau for planar domains.

All randomness goes through ``numpy.random.SeedSequence(seed).spawn``: the
draws are cut into fixed-size chunks, each with its own child stream, so a
run is reproducible from ``(seed, sampler, domain, n)`` regardless of how many
threads process the chunks.
"""
from __future__ import annotations

import csv
import logging
import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .errors import DomainError
from .gross import PowerSeriesDomain, univalence_check
from .measure import Empirical

log = logging.getLogger(__name__)

CHUNK = 1 << 16
THREADS_ENV = "PLANAR_SKOROKHOD_THREADS"


# -- geometric domains --------------------------------------------------------

class GeometricDomain:
    """Bounded shape containing the origin, with distance-to-boundary queries."""

    def distance(self, x, y):
        raise NotImplementedError

    def nearest_boundary_real(self, x, y):
        raise NotImplementedError

    def contains(self, x, y):
        return self.distance(x, y) > 0

    @property
    def area(self) -> float:
        raise NotImplementedError

    def bbox(self):
        raise NotImplementedError

    def literal(self) -> str:
        raise NotImplementedError


@dataclass(frozen=True)
class Disk(GeometricDomain):
    radius: float = 1.0

    def __post_init__(self):
        if not self.radius > 0:
            raise DomainError("radius must be positive")

    def distance(self, x, y):
        return self.radius - np.hypot(x, y)

    def nearest_boundary_real(self, x, y):
        return self.radius * x / np.hypot(x, y)

    @property
    def area(self):
        return math.pi * self.radius**2

    def bbox(self):
        r = self.radius
        return (-r, r, -r, r)

    def literal(self):
        return f"disk:{self.radius!r}"


@dataclass(frozen=True)
class ShiftedDisk(GeometricDomain):
    """Unit disk centred at ``-i kappa``."""

    kappa: float = 0.0

    def __post_init__(self):
        if not 0.0 <= self.kappa < 1.0:
            raise DomainError(f"kappa must lie in [0, 1), got {self.kappa}")

    def distance(self, x, y):
        return 1.0 - np.hypot(x, y + self.kappa)

    def nearest_boundary_real(self, x, y):
        return x / np.hypot(x, y + self.kappa)

    @property
    def area(self):
        return math.pi

    def bbox(self):
        return (-1.0, 1.0, -1.0 - self.kappa, 1.0 - self.kappa)

    def literal(self):
        return f"diskexit:{self.kappa!r}"


@dataclass(frozen=True)
class Rectangle(GeometricDomain):
    half_width: float
    half_height: float

    def __post_init__(self):
        if not (self.half_width > 0 and self.half_height > 0):
            raise DomainError("rectangle half-sizes must be positive")

    def _edge_gaps(self, x, y):
        # edge order: right, top, left, bottom; argmin breaks ties to the lower index
        return np.stack([self.half_width - x, self.half_height - y,
                         self.half_width + x, self.half_height + y])

    def distance(self, x, y):
        return np.min(self._edge_gaps(x, y), axis=0)

    def nearest_boundary_real(self, x, y):
        edge = np.argmin(self._edge_gaps(x, y), axis=0)
        hw = self.half_width
        return np.select([edge == 0, edge == 2], [hw, -hw], np.clip(x, -hw, hw))

    @property
    def area(self):
        return 4.0 * self.half_width * self.half_height

    def bbox(self):
        return (-self.half_width, self.half_width, -self.half_height, self.half_height)

    def literal(self):
        return f"rect:{self.half_width!r},{self.half_height!r}"


UNBOUNDED = {"strip", "halfplane", "half-plane", "bm", "bm:uniform", "plane"}


def parse_domain(spec: str):
    """``disk``, ``disk:r``, ``diskexit:kappa``, ``rect:hw,hh`` or
    ``series:path.json`` (a power-series domain file)."""
    name, _, arg = spec.strip().partition(":")
    name = name.lower()
    if spec.strip().lower() in UNBOUNDED or name in UNBOUNDED:
        raise DomainError(f"{spec!r} is unbounded; only bounded domains can be simulated")
    try:
        if name == "disk":
            return Disk(float(arg) if arg else 1.0)
        if name in ("diskexit", "shifted"):
            return ShiftedDisk(float(arg))
        if name == "rect":
            hw, hh = (float(t) for t in arg.split(","))
            return Rectangle(hw, hh)
        if name == "series":
            import json
            with open(arg) as fh:
                return PowerSeriesDomain.from_json(json.load(fh))
    except ValueError as exc:
        if isinstance(exc, DomainError):
            raise
        raise DomainError(f"cannot parse domain {spec!r}: {exc}") from exc
    raise DomainError(f"unknown domain kind in {spec!r}")


# -- sample sets -------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class SampleSet:
    values: np.ndarray
    seed: int
    sampler: str
    domain: str = ""
    excluded: int = 0
    extra: dict = field(default_factory=dict)

    @property
    def count(self) -> int:
        return self.values.size

    def mean(self) -> float:
        return float(self.values.mean())

    def variance(self) -> float:
        return float(self.values.var())

    def variance_stderr(self) -> float:
        """Standard error of the sample variance, ``sqrt((m4 - m2^2) / n)``."""
        c = self.values - self.values.mean()
        m2 = np.mean(c**2)
        m4 = np.mean(c**4)
        return float(math.sqrt(max(m4 - m2**2, 0.0) / self.count))

    def write_csv(self, path) -> None:
        with open(path, "w", newline="") as fh:
            fh.write(f"# seed={self.seed} sampler={self.sampler} domain={self.domain} "
                     f"count={self.count} excluded={self.excluded}\n")
            w = csv.writer(fh)
            for v in self.values:
                w.writerow([repr(float(v))])


def _threads() -> int:
    try:
        return max(1, int(os.environ.get(THREADS_ENV, "1")))
    except ValueError:
        return 1


def _run_chunks(seed: int, n: int, work) -> list:
    """Apply ``work(rng, size)`` to each chunk; results come back in chunk order."""
    sizes = [CHUNK] * (n // CHUNK) + ([n % CHUNK] if n % CHUNK else [])
    streams = np.random.SeedSequence(seed).spawn(len(sizes))
    jobs = [(np.random.default_rng(ss), k) for ss, k in zip(streams, sizes)]
    threads = _threads()
    if threads == 1 or len(jobs) == 1:
        return [work(rng, k) for rng, k in jobs]
    with ThreadPoolExecutor(max_workers=threads) as pool:
        return list(pool.map(lambda job: work(*job), jobs))


def _check_n(n):
    n = int(n)
    if n < 1:
        raise DomainError("sample count must be positive")
    return n


def conformal_exit_samples(d: PowerSeriesDomain, n: int, seed: int = 42, screen: bool = True) -> SampleSet:
    """``Re f(e^{i Theta})`` with ``Theta`` uniform on (-pi, pi)."""
    n = _check_n(n)
    if screen and not d.is_degenerate:
        rep = univalence_check(d, max(4096, 4 * d.truncation))
        if not rep.passed:
            log.warning("series failed the univalence screen (%s); samples may not be an exit law",
                        rep.reason)

    def work(rng, k):
        z = np.exp(1j * rng.uniform(-np.pi, np.pi, k))
        return d(z).real

    vals = np.concatenate(_run_chunks(seed, n, work))
    return SampleSet(vals, seed, "ConformalExact", d.provenance)


def mobius_map(kappa: float, z):
    """Conformal map of the unit disk onto ``D - i kappa`` fixing 0."""
    z = np.asarray(z, dtype=complex)
    return z * (1.0 - kappa**2) / (1.0 - 1j * kappa * z)


def mobius_shifted_disk_samples(kappa: float, n: int, seed: int = 42) -> SampleSet:
    if not 0.0 <= kappa < 1.0:
        raise DomainError(f"kappa must lie in [0, 1), got {kappa}")
    n = _check_n(n)

    def work(rng, k):
        return mobius_map(kappa, np.exp(1j * rng.uniform(-np.pi, np.pi, k))).real

    vals = np.concatenate(_run_chunks(seed, n, work))
    return SampleSet(vals, seed, "Mobius", ShiftedDisk(kappa).literal())


def wos_exit_samples(g: GeometricDomain, eps: float = 1e-6, n: int = 100_000, seed: int = 42,
                     max_steps: int = 10_000) -> SampleSet:
    """Walk-on-spheres from the origin until within ``eps`` of the boundary;
    report the real part of the nearest boundary point. Walkers still active
    after ``max_steps`` jumps are dropped and counted in ``excluded``."""
    if not eps > 0:
        raise DomainError("eps must be positive")
    n = _check_n(n)
    if not g.distance(0.0, 0.0) > 0:
        raise DomainError("origin must lie inside the domain")

    def work(rng, k):
        x = np.zeros(k)
        y = np.zeros(k)
        out = np.full(k, np.nan)
        steps = np.zeros(k, dtype=np.int64)
        active = np.arange(k)
        for _ in range(max_steps + 1):
            if active.size == 0:
                break
            r = g.distance(x[active], y[active])
            hit = r < eps
            if np.any(hit):
                idx = active[hit]
                out[idx] = g.nearest_boundary_real(x[idx], y[idx])
                active = active[~hit]
                r = r[~hit]
            if active.size == 0:
                break
            phi = rng.uniform(0.0, 2.0 * np.pi, active.size)
            x[active] += r * np.cos(phi)
            y[active] += r * np.sin(phi)
            steps[active] += 1
        good = ~np.isnan(out)
        return out[good], int((~good).sum()), float(steps.mean())

    parts = _run_chunks(seed, n, work)
    vals = np.concatenate([p[0] for p in parts])
    excluded = sum(p[1] for p in parts)
    if excluded:
        log.warning("walk-on-spheres: %d of %d walkers exceeded %d steps", excluded, n, max_steps)
    mean_steps = float(np.average([p[2] for p in parts], weights=[p[0].size + p[1] for p in parts]))
    return SampleSet(vals, seed, f"WoS({eps:g})", g.literal(), excluded,
                     {"mean_steps": mean_steps, "max_steps": max_steps})


def exit_samples(source, n: int, seed: int = 42, eps: float = 1e-6, method: str = "auto") -> SampleSet:
    """Dispatch: conformal for series, Mobius for shifted disks (and disks of
    radius 1), walk-on-spheres otherwise or when ``method='wos'``."""
    if isinstance(source, PowerSeriesDomain):
        return conformal_exit_samples(source, n, seed)
    if method == "wos":
        return wos_exit_samples(source, eps, n, seed)
    if method != "auto":
        raise DomainError(f"unknown sampling method {method!r}")
    if isinstance(source, ShiftedDisk):
        return mobius_shifted_disk_samples(source.kappa, n, seed)
    if isinstance(source, Disk):
        s = mobius_shifted_disk_samples(0.0, n, seed)
        return SampleSet(source.radius * s.values, seed, "Mobius", source.literal())
    return wos_exit_samples(source, eps, n, seed)


@dataclass(frozen=True, eq=False)
class EmpiricalFit:
    measure: Empirical
    raw_mean: float
    mean_stderr: float
    recentered: bool


def empirical_measure(s: SampleSet, z: float = 3.0) -> EmpiricalFit:
    """Empirical law of the samples, recentred (and flagged) when the sample
    mean is more than ``z`` standard errors away from zero."""
    if s.count < 2:
        raise DomainError("need at least two samples")
    mean = s.mean()
    se = float(s.values.std(ddof=1) / math.sqrt(s.count))
    recenter = abs(mean) > z * se
    if recenter:
        log.warning("sample mean %.3e exceeds %.0f standard errors; recentring", mean, z)
        return EmpiricalFit(Empirical(s.values - mean, shift=mean), mean, se, True)
    return EmpiricalFit(Empirical(s.values), mean, se, False)
