import math

import numpy as np
import pytest
from hypothesis import given, strategies as st
from scipy import integrate

from planar_skorokhod.errors import DomainError
from planar_skorokhod.fourier import (CosineSeries, arcsine_cosine_coeffs, captured_energy,
                                      evaluate_series, quantile_cosine_coeffs, trace_spectrum,
                                      uniform_cosine_coeffs)
from planar_skorokhod.measure import (ArcsineShifted, Atomic, Empirical, PiecewiseDensity,
                                      ShiftedDiskExit, Uniform)
from planar_skorokhod.rearrange import BoundaryTrace, grid, quantile_sdr


def brute_cells(samples, N):
    x = np.sort(samples)
    M = x.size
    k = np.arange(1, M + 1)
    n = np.arange(1, N + 1)[:, None]
    cells = np.sin(n * np.pi * k / M) - np.sin(n * np.pi * (k - 1) / M)
    return 2.0 * (cells @ x) / (np.arange(1, N + 1) * np.pi)


def test_uniform_examples():
    a = quantile_cosine_coeffs(Uniform(-1, 1), 6).coeffs
    assert a[0] == pytest.approx(-8 / math.pi**2, abs=1e-10)
    assert abs(a[1]) < 1e-10
    assert a[2] == pytest.approx(-8 / (9 * math.pi**2), abs=1e-10)


def test_arcsine_is_single_mode():
    a = quantile_cosine_coeffs(ArcsineShifted(), 32).coeffs
    assert np.allclose(a, arcsine_cosine_coeffs(32), atol=1e-10)


def test_quadrature_matches_closed_form_on_shifted_uniform():
    a = quantile_cosine_coeffs(Uniform(-0.5, 2.0), 50).coeffs
    assert np.allclose(a, uniform_cosine_coeffs(-0.5, 2.0, 50), atol=1e-9)


def test_diskexit_against_direct_integration():
    m = ShiftedDiskExit(0.6)
    a = quantile_cosine_coeffs(m, 5).coeffs
    for n in range(1, 6):
        ref = 2 * integrate.quad(lambda u: m.quantile(u) * math.cos(n * math.pi * u), 1e-15,
                                 1 - 1e-15, limit=400)[0]
        assert a[n - 1] == pytest.approx(ref, abs=1e-8)


def test_empirical_dst_matches_cell_sum(rng):
    x = rng.standard_normal(257)
    a = quantile_cosine_coeffs(Empirical(x), 40).coeffs
    assert np.allclose(a, brute_cells(x, 40), atol=1e-12)


def test_atomic_matches_empirical_with_repeats():
    atoms = Atomic((-1.0, 0.0, 2.0), (0.25, 0.5, 0.25))
    emp = Empirical(np.array([-1.0, 0.0, 0.0, 2.0]))
    assert np.allclose(quantile_cosine_coeffs(atoms, 20).coeffs,
                       quantile_cosine_coeffs(emp, 20).coeffs, atol=1e-13)


def test_piecewise_density_against_quadrature():
    m = PiecewiseDensity.normalized([-1.0, -0.2, 0.5, 1.5], [0.3, 0.4, 0.14])
    a = quantile_cosine_coeffs(m, 8).coeffs
    for n in (1, 4, 8):
        ref = 2 * integrate.quad(lambda u: m.quantile(u) * math.cos(n * math.pi * u), 1e-14,
                                 1 - 1e-14, limit=400, points=m.cum[1:-1])[0]
        assert a[n - 1] == pytest.approx(ref, abs=1e-9)


def test_parseval_gives_twice_the_variance():
    # the series carries Q(|theta|/pi) over (-pi, pi), so sum a_n^2 = 2 Var
    for m in (Uniform(-1, 1), ShiftedDiskExit(0.5), ArcsineShifted()):
        s = quantile_cosine_coeffs(m, 4000)
        assert s.energy() == pytest.approx(2 * m.variance(), rel=2e-4)
        assert captured_energy(s, m) <= 1 + 1e-9


def test_evaluate_series_examples():
    s = CosineSeries(arcsine_cosine_coeffs(8))
    assert evaluate_series(s, 0.0) == pytest.approx(-1.0)
    assert evaluate_series(s, math.pi / 2) == pytest.approx(0.0, abs=1e-15)


def test_uniform_partial_sum_at_pi_misses_by_its_tail():
    s = quantile_cosine_coeffs(Uniform(-1, 1), 200)
    k = np.arange(101, 2_000_001)
    tail = 8 / math.pi**2 * (np.pi**2 / 8 - np.sum(1.0 / (2 * np.arange(1, 101) - 1) ** 2))
    assert tail == pytest.approx(8 / math.pi**2 * np.sum(1.0 / (2 * k - 1) ** 2), rel=1e-4)
    assert 1.0 - evaluate_series(s, math.pi) == pytest.approx(tail, abs=1e-9)


def test_trace_spectrum_recovers_polynomial():
    th = grid(64)
    t = BoundaryTrace(0.5 + 2 * np.cos(3 * th) - np.sin(5 * th))
    sp = trace_spectrum(t, 31)
    assert sp.mean_term == pytest.approx(0.5)
    assert sp.alpha[2] == pytest.approx(2.0) and sp.beta[4] == pytest.approx(-1.0)
    mask = np.ones(31, bool)
    mask[[2, 4]] = False
    assert np.max(np.abs(sp.alpha[mask])) < 1e-13 and np.max(np.abs(sp.beta[mask])) < 1e-13
    with pytest.raises(DomainError):
        trace_spectrum(t, 32)


def test_trace_spectrum_examples():
    th = grid(64)
    sp = trace_spectrum(BoundaryTrace(np.cos(3 * th)), 5)
    assert np.allclose(sp.alpha, [0, 0, 1, 0, 0], atol=1e-14) and np.allclose(sp.beta, 0, atol=1e-14)
    sp = trace_spectrum(BoundaryTrace(2 * np.sin(th) + np.cos(2 * th)), 5)
    assert np.allclose(sp.alpha, [0, 1, 0, 0, 0], atol=1e-14)
    assert np.allclose(sp.beta, [2, 0, 0, 0, 0], atol=1e-14)


def test_centered_quantile_trace_has_small_mean_term():
    for m in (Uniform(-1, 1), ShiftedDiskExit(0.5), ArcsineShifted()):
        t = BoundaryTrace(m.quantile(np.abs(grid(4096)) / np.pi))
        assert abs(trace_spectrum(t, 8).mean_term) < 1e-6


def test_smooth_kinds_match_trace_spectrum():
    # Q(|theta|/pi) is smooth for these laws; the uniform trace has a kink at 0
    for m in (ArcsineShifted(), ShiftedDiskExit(0.5)):
        t = BoundaryTrace(m.quantile(np.abs(grid(4096)) / np.pi))
        a = quantile_cosine_coeffs(m, 30).coeffs
        assert np.max(np.abs(trace_spectrum(t, 30).alpha - a)) < 1e-8


def test_rearranged_trace_flips_signs():
    G, N = 4096, 20
    m = ShiftedDiskExit(0.5)
    a = quantile_cosine_coeffs(m, N).coeffs
    sp = trace_spectrum(quantile_sdr(m, G), N)
    n = np.arange(1, N + 1)
    assert np.allclose(sp.alpha, (-1.0) ** n * a, atol=1e-8)
    assert np.max(np.abs(sp.beta)) < 1e-12


def test_uniform_trace_agrees_to_aliasing_order():
    G, N = 4096, 20
    t = BoundaryTrace(Uniform(-1, 1).quantile(np.abs(grid(G)) / np.pi))
    a = uniform_cosine_coeffs(-1, 1, N)
    assert np.max(np.abs(trace_spectrum(t, N).alpha - a)) < 2.0 / G**2


def test_series_json_round_trip():
    s = CosineSeries(np.array([1.0, -0.5]))
    assert np.array_equal(CosineSeries.from_json(s.to_json()).coeffs, s.coeffs)


@given(st.floats(-5, 5), st.floats(0.1, 5), st.integers(1, 30))
def test_uniform_linearity(lo, width, N):
    a = quantile_cosine_coeffs(Uniform(lo, lo + width), N).coeffs
    assert np.allclose(a, uniform_cosine_coeffs(lo, lo + width, N), atol=1e-8 * (1 + width))
