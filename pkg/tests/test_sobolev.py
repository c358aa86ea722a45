import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from planar_skorokhod.errors import DomainError
from planar_skorokhod.fourier import trace_spectrum
from planar_skorokhod.gross import area, boundary_trace, gross_domain
from planar_skorokhod.measure import ShiftedDiskExit, Uniform
from planar_skorokhod.rearrange import BoundaryTrace, grid, quantile_sdr, sdr
from planar_skorokhod.sobolev import (eta_constant, fourier_seminorm, gagliardo_direct,
                                      gagliardo_seminorm, polya_szego_check, seminorm_report)
from planar_skorokhod.verify import random_trig_polynomial


def mode(k, G, fn=np.cos):
    return BoundaryTrace(fn(k * grid(G)))


def test_fourier_convention_on_pure_modes():
    # pinned first: cos(theta) has Fourier seminorm 1 for every s
    for s in (0.25, 0.5, 1.0):
        assert fourier_seminorm(trace_spectrum(mode(1, 64), 10), s) == pytest.approx(1.0)
        assert fourier_seminorm(trace_spectrum(mode(3, 64, np.sin), 10), s) == pytest.approx(9**s)


def test_fft_matches_direct_double_sum(rng):
    t = BoundaryTrace(rng.standard_normal(128))
    for s in (0.1, 0.5, 0.9):
        assert gagliardo_seminorm(t, s) == pytest.approx(gagliardo_direct(t, s), rel=1e-10)


def test_constant_trace_is_zero():
    assert gagliardo_seminorm(BoundaryTrace(np.full(64, 3.0)), 0.5) == 0.0
    assert fourier_seminorm(trace_spectrum(BoundaryTrace(np.full(64, 3.0)), 10), 0.5) == 0.0


def test_half_order_modes_are_exact():
    # at s = 1/2 the discrete value of cos(k theta) is 2 pi^2 k (1 - k/G)
    G = 2048
    for k in (1, 2, 5):
        assert gagliardo_seminorm(mode(k, G), 0.5) == pytest.approx(2 * math.pi**2 * k * (1 - k / G),
                                                                    rel=1e-10)


def test_mode_scaling_at_half_order():
    G = 4096
    base = gagliardo_seminorm(mode(1, G), 0.5)
    for k in range(2, 9):
        assert gagliardo_seminorm(mode(k, G), 0.5) / base == pytest.approx(k, rel=0.01)


def test_other_orders_are_only_comparable():
    for s in (0.25, 0.75):
        est = eta_constant(s, 4096, 8)
        r = np.array(est.ratios)
        assert est.spread > 0.05
        assert 0.5 < r.min() / r.max() <= 1.0
        # ratios settle as k grows
        assert abs(r[-1] - r[-2]) < abs(r[1] - r[0])


def test_eta_examples():
    est = eta_constant(0.5, 4096, 6)
    assert est.spread < 0.01
    assert est.mean == pytest.approx(2 * math.pi**2, rel=0.01)
    assert eta_constant(0.3, 256, 1).spread == 0.0
    assert eta_constant(0.5, 1024, 6).spread > eta_constant(0.5, 4096, 6).spread


def test_invariances(rng):
    t = random_trig_polynomial(rng, 512)
    v = gagliardo_seminorm(t, 0.4)
    assert gagliardo_seminorm(BoundaryTrace(t.values + 7.0), 0.4) == pytest.approx(v, rel=1e-12)
    assert gagliardo_seminorm(BoundaryTrace(np.roll(t.values, 37)), 0.4) == pytest.approx(v, rel=1e-12)
    assert gagliardo_seminorm(BoundaryTrace(-2.5 * t.values), 0.4) == pytest.approx(6.25 * v, rel=1e-12)


def test_polya_szego_examples():
    r = polya_szego_check(mode(3, 2048), 0.5)
    assert r.ok and r.lhs / r.rhs == pytest.approx(1 / 3, rel=0.01)
    fixed = quantile_sdr(ShiftedDiskExit(0.3), 1024)
    r = polya_szego_check(fixed, 0.5)
    assert r.ok and r.lhs == pytest.approx(r.rhs, rel=1e-12)


def test_gross_trace_bridges_area():
    d = gross_domain(ShiftedDiskExit(0.5), 64)
    re, _ = boundary_trace(d, 1024)
    rep = seminorm_report(re, 0.5, 200)
    assert math.pi * rep.fourier_value == pytest.approx(area(d), rel=1e-10)


def test_bad_s_rejected():
    for s in (0.0, 1.0, -0.2):
        with pytest.raises(DomainError):
            gagliardo_seminorm(mode(1, 16), s)


@given(st.integers(0, 2**32 - 1), st.sampled_from([0.2, 0.5, 0.8]))
def test_fourier_side_polya_szego(seed, s):
    rng = np.random.default_rng(seed)
    t = random_trig_polynomial(rng, 256)
    N = 100
    before = trace_spectrum(t, N)
    after = trace_spectrum(sdr(t), N)
    # the rearranged trace is not band-limited, so its sum is truncated at N
    n = np.arange(1, N + 1)
    lhs = np.sum(n ** (2 * s) * after.alpha**2)
    rhs = np.sum(n ** (2 * s) * (before.alpha**2 + before.beta**2))
    assert lhs <= rhs * (1 + 1e-6) + 1e-12


@given(st.integers(0, 2**32 - 1), st.sampled_from([0.3, 0.5, 0.7]))
def test_gagliardo_polya_szego(seed, s):
    t = random_trig_polynomial(np.random.default_rng(seed), 512)
    assert polya_szego_check(t, s).ok
