"""Boundary traces on the midpoint circle grid and their symmetric decreasing
rearrangement."""
from __future__ import annotations

import csv
import json
from dataclasses import dataclass

import numpy as np

from .errors import DomainError
from .measure import Measure


def grid(G: int) -> np.ndarray:
    """Midpoint nodes ``-pi + (j + 1/2) 2 pi / G``; none at 0 or +-pi."""
    return -np.pi + (np.arange(G) + 0.5) * (2.0 * np.pi / G)


@dataclass(frozen=True, eq=False)
class BoundaryTrace:
    values: np.ndarray

    def __post_init__(self):
        v = np.asarray(self.values, dtype=float).ravel()
        if v.size < 4 or v.size % 2:
            raise DomainError(f"grid size must be even and >= 4, got {v.size}")
        object.__setattr__(self, "values", v)

    @property
    def grid_size(self) -> int:
        return self.values.size

    @property
    def theta(self) -> np.ndarray:
        return grid(self.grid_size)

    @classmethod
    def from_function(cls, fn, G: int) -> "BoundaryTrace":
        return cls(fn(grid(G)))

    def mirrored(self) -> np.ndarray:
        """Values at ``-theta_j``, aligned with ``theta_j``."""
        return self.values[::-1]

    def to_json(self) -> dict:
        return {"grid_size": self.grid_size, "values": self.values.tolist()}

    @classmethod
    def from_json(cls, data: dict) -> "BoundaryTrace":
        t = cls(np.asarray(data["values"], dtype=float))
        if t.grid_size != int(data.get("grid_size", t.grid_size)):
            raise DomainError("grid_size header does not match the number of values")
        return t

    def write_csv(self, path) -> None:
        with open(path, "w", newline="") as fh:
            fh.write(f"# grid_size={self.grid_size}\n")
            w = csv.writer(fh)
            w.writerow(["theta", "value"])
            for t, v in zip(self.theta, self.values):
                w.writerow([repr(float(t)), repr(float(v))])

    @classmethod
    def read_csv(cls, path) -> "BoundaryTrace":
        vals = []
        with open(path, newline="") as fh:
            for row in csv.reader(fh):
                if not row or row[0].startswith("#") or row[0] == "theta":
                    continue
                vals.append(float(row[1]))
        return cls(np.array(vals))


def _radial_order(G: int) -> np.ndarray:
    # nodes by |theta| ascending; within a pair the nonnegative node first
    half = G // 2
    pos = half + np.arange(half)
    neg = half - 1 - np.arange(half)
    return np.column_stack([pos, neg]).ravel()


def sdr(trace: BoundaryTrace) -> BoundaryTrace:
    """Discrete symmetric decreasing rearrangement.

    Sorted values (descending) are dealt to the nodes in order of increasing
    ``|theta|``; each mirror pair receives two consecutive values, the larger
    one on the nonnegative node. The output is a permutation of the input.
    """
    v = trace.values
    if not np.all(np.isfinite(v)):
        raise DomainError("trace values must be finite")
    out = np.empty_like(v)
    out[_radial_order(v.size)] = np.sort(v)[::-1]
    return BoundaryTrace(out)


def quantile_sdr(q: Measure, G: int) -> BoundaryTrace:
    """The trace ``theta -> Q(1 - |theta|/pi)``."""
    return BoundaryTrace(q.quantile(1.0 - np.abs(grid(G)) / np.pi))


def equimeasurable(a: BoundaryTrace, b: BoundaryTrace, tol: float = 1e-12) -> bool:
    if a.grid_size != b.grid_size:
        raise DomainError(f"grid mismatch: {a.grid_size} vs {b.grid_size}")
    return bool(np.all(np.abs(np.sort(a.values) - np.sort(b.values)) <= tol))


def trace_from_json(text: str) -> BoundaryTrace:
    return BoundaryTrace.from_json(json.loads(text))
