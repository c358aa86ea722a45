"""Periodic fractional seminorms on the midpoint circle grid.

Gagliardo form (squared)::

    (1 / 2^{1+2s}) iint |u(x) - u(y)|^2 / |sin((x - y)/2)|^{1+2s} dx dy

discretized as a midpoint double sum over off-diagonal node pairs. The
kernel depends only on the index gap, so the sum reduces to the circular
autocorrelation of the trace and costs one FFT.

Fourier form: ``sum_{n>=1} n^{2s} (alpha_n^2 + beta_n^2)``, i.e. twice the
two-sided ``sum_k |k|^{2s} |u_k|^2`` with ``u_{+-n} = (alpha_n -+ i beta_n)/2``.
With this convention ``cos(theta)`` has Fourier seminorm 1, and a Gross trace
at ``s = 1/2`` has Fourier seminorm ``area / pi``.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DomainError
from .fourier import TraceSpectrum, trace_spectrum
from .rearrange import BoundaryTrace, grid, sdr


def _check_s(s, upper_open=True):
    ok = 0.0 < s < 1.0 if upper_open else 0.0 < s <= 1.0
    if not ok:
        raise DomainError(f"smoothness s must lie in (0, 1{')' if upper_open else ']'}, got {s}")


def gap_kernel(G: int, s: float) -> np.ndarray:
    """``K_d = 1 / (2^{1+2s} |sin(pi d / G)|^{1+2s})`` for d = 1..G-1."""
    d = np.arange(1, G)
    return 1.0 / (2.0 ** (1 + 2 * s) * np.abs(np.sin(np.pi * d / G)) ** (1 + 2 * s))


def gagliardo_seminorm(trace: BoundaryTrace, s: float) -> float:
    """Squared periodic Gagliardo seminorm; diagonal cells omitted."""
    _check_s(s)
    u = trace.values - trace.values.mean()  # constant shift leaves differences unchanged
    G = u.size
    spec = np.fft.rfft(u)
    autocorr = np.fft.irfft(np.abs(spec) ** 2, n=G)
    # sum_j (u_j - u_{j+d})^2 = 2 sum u^2 - 2 R_d
    diffs = np.maximum(2.0 * autocorr[0] - 2.0 * autocorr[1:], 0.0)
    h = 2.0 * np.pi / G
    return float(h * h * np.dot(gap_kernel(G, s), diffs))


def gagliardo_direct(trace: BoundaryTrace, s: float) -> float:
    """O(G^2) reference implementation of :func:`gagliardo_seminorm`."""
    _check_s(s)
    th = trace.theta
    u = trace.values
    diff = np.subtract.outer(th, th)
    np.fill_diagonal(diff, 1.0)
    ker = 1.0 / (2.0 ** (1 + 2 * s) * np.abs(np.sin(diff / 2)) ** (1 + 2 * s))
    np.fill_diagonal(ker, 0.0)
    h = 2.0 * np.pi / u.size
    return float(h * h * np.sum(ker * np.subtract.outer(u, u) ** 2))


def fourier_seminorm(spec: TraceSpectrum, s: float) -> float:
    _check_s(s, upper_open=False)
    n = np.arange(1, spec.truncation + 1)
    return float(np.sum(n ** (2 * s) * (spec.alpha**2 + spec.beta**2)))


@dataclass(frozen=True)
class EtaEstimate:
    mean: float
    spread: float      # (max - min) / mean over the modes
    ratios: tuple


def eta_constant(s: float, G: int = 4096, K: int = 6) -> EtaEstimate:
    """Gagliardo / Fourier ratio on the pure modes ``cos(k theta)``, k = 1..K."""
    _check_s(s)
    if K < 1 or K > G // 2 - 1:
        raise DomainError("mode count must satisfy 1 <= K < G/2")
    th = grid(G)
    ratios = []
    for k in range(1, K + 1):
        t = BoundaryTrace(np.cos(k * th))
        ratios.append(gagliardo_seminorm(t, s) / fourier_seminorm(trace_spectrum(t, K), s))
    r = np.array(ratios)
    mean = float(r.mean())
    return EtaEstimate(mean, float((r.max() - r.min()) / mean), tuple(float(x) for x in r))


@dataclass(frozen=True)
class PolyaSzego:
    lhs: float   # seminorm of the rearranged trace
    rhs: float   # seminorm of the original trace
    ok: bool


def polya_szego_check(trace: BoundaryTrace, s: float, tol: float = 1e-6) -> PolyaSzego:
    lhs = gagliardo_seminorm(sdr(trace), s)
    rhs = gagliardo_seminorm(trace, s)
    return PolyaSzego(lhs, rhs, bool(lhs <= rhs * (1.0 + tol)))


@dataclass(frozen=True)
class SeminormReport:
    gagliardo_value: float
    fourier_value: float
    s: float
    grid_size: int
    truncation: int

    def to_json(self) -> dict:
        return dict(self.__dict__)


def seminorm_report(trace: BoundaryTrace, s: float, N: int | None = None) -> SeminormReport:
    G = trace.grid_size
    N = G // 2 - 1 if N is None else N
    return SeminormReport(gagliardo_seminorm(trace, s), fourier_seminorm(trace_spectrum(trace, N), s),
                          s, G, N)
