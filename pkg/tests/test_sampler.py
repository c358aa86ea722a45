import math

import numpy as np
import pytest
from scipy import stats

from planar_skorokhod.errors import DomainError
from planar_skorokhod.gross import PowerSeriesDomain, gross_domain
from planar_skorokhod.measure import ShiftedDiskExit, Uniform
from planar_skorokhod.rearrange import grid
from planar_skorokhod.sampler import (THREADS_ENV, Disk, Rectangle, SampleSet, ShiftedDisk,
                                      conformal_exit_samples, empirical_measure, exit_samples,
                                      mobius_map, mobius_shifted_disk_samples, parse_domain,
                                      wos_exit_samples)


@pytest.mark.parametrize("kappa", [0.0, 0.3, 0.5, 0.9])
def test_mobius_oracle(kappa):
    assert mobius_map(kappa, 0.0) == 0
    w = mobius_map(kappa, np.exp(1j * grid(256)))
    assert np.allclose(np.abs(w + 1j * kappa), 1.0, atol=1e-13)


def test_conformal_identity_gives_arcsine():
    n = 50_000
    s = conformal_exit_samples(PowerSeriesDomain(np.array([1.0])), n, seed=3)
    ks = stats.kstest(s.values, lambda x: 0.5 + np.arcsin(np.clip(x, -1, 1)) / np.pi).statistic
    assert ks < 1.63 / math.sqrt(n)
    assert s.sampler == "ConformalExact"


def test_conformal_uniform_gross_domain():
    n = 50_000
    s = conformal_exit_samples(gross_domain(Uniform(-1, 1), 1024), n, seed=4)
    assert stats.kstest(s.values, stats.uniform(-1, 2).cdf).statistic < 1.63 / math.sqrt(n)


def test_conformal_recovers_law_two_sample():
    m = ShiftedDiskExit(0.5)
    s = conformal_exit_samples(gross_domain(m, 512), 40_000, seed=5)
    u = np.random.default_rng(6).uniform(size=40_000)
    assert stats.ks_2samp(s.values, m.quantile(u)).pvalue > 0.01


def test_zero_series_samples_are_zero():
    s = conformal_exit_samples(PowerSeriesDomain(np.zeros(3)), 10, seed=1)
    assert np.all(s.values == 0)


def test_mobius_variance_examples():
    for kappa in (0.5, 0.9):
        s = mobius_shifted_disk_samples(kappa, 1_000_000, seed=42)
        assert abs(s.variance() - (1 - kappa**2) / 2) < 4 * s.variance_stderr()
    with pytest.raises(DomainError):
        mobius_shifted_disk_samples(1.0, 10)


def test_mobius_kappa_zero_is_disk():
    a = mobius_shifted_disk_samples(0.0, 1000, seed=9).values
    b = exit_samples(Disk(1.0), 1000, seed=9).values
    assert np.array_equal(a, b)


def test_wos_disk_and_shifted_disk():
    d = wos_exit_samples(Disk(1.0), 1e-6, 100_000, seed=11)
    assert d.excluded == 0
    assert abs(d.variance() - 0.5) < 4 * d.variance_stderr()
    w = wos_exit_samples(ShiftedDisk(0.5), 1e-6, 100_000, seed=12)
    m = mobius_shifted_disk_samples(0.5, 100_000, seed=13)
    z = abs(w.variance() - m.variance()) / math.hypot(w.variance_stderr(), m.variance_stderr())
    assert z < 4


def test_wos_thin_rectangle_variance_shrinks():
    v = [wos_exit_samples(Rectangle(0.5 / b, b / 2), 1e-6, 20_000, seed=1).variance() for b in (1, 4)]
    assert v[1] < (0.5 / 4) ** 2 < v[0]


def test_rectangle_tie_break():
    r = Rectangle(1.0, 1.0)
    # corner (1, 1): right edge wins the tie
    assert r.nearest_boundary_real(np.array([1.0]), np.array([1.0]))[0] == 1.0
    assert r.nearest_boundary_real(np.array([0.2]), np.array([0.99]))[0] == 0.2


def test_wos_budget_exclusion():
    s = wos_exit_samples(Rectangle(0.01, 5.0), 1e-12, 500, seed=1, max_steps=3)
    assert s.excluded > 0 and s.count + s.excluded == 500


def test_determinism_and_thread_invariance(monkeypatch):
    a = wos_exit_samples(ShiftedDisk(0.2), 1e-6, 150_000, seed=7)
    b = wos_exit_samples(ShiftedDisk(0.2), 1e-6, 150_000, seed=7)
    assert np.array_equal(a.values, b.values)
    monkeypatch.setenv(THREADS_ENV, "4")
    c = wos_exit_samples(ShiftedDisk(0.2), 1e-6, 150_000, seed=7)
    assert np.array_equal(a.values, c.values)
    assert not np.array_equal(a.values, wos_exit_samples(ShiftedDisk(0.2), 1e-6, 150_000, seed=8).values)


def test_empirical_measure_examples():
    fit = empirical_measure(SampleSet(np.array([-1.0, 1.0]), 0, "manual"))
    assert not fit.recentered
    assert fit.measure.quantile(0.5) == -1.0 and fit.measure.quantile(0.51) == 1.0
    point = empirical_measure(SampleSet(np.full(5, 2.0), 0, "manual"))
    assert point.measure.variance() == 0.0
    shifted = empirical_measure(SampleSet(np.random.default_rng(0).normal(1.0, 1.0, 1000), 0, "manual"))
    assert shifted.recentered and abs(shifted.measure.mean()) < 1e-12
    m = empirical_measure(mobius_shifted_disk_samples(0.5, 100_000, seed=2))
    assert not m.recentered
    with pytest.raises(DomainError):
        empirical_measure(SampleSet(np.array([1.0]), 0, "manual"))


def test_parse_domain():
    assert parse_domain("disk") == Disk(1.0)
    assert parse_domain("diskexit:0.9") == ShiftedDisk(0.9)
    assert parse_domain("rect:0.05,5") == Rectangle(0.05, 5.0)
    for bad in ("strip", "halfplane", "blob:1", "rect:1", "diskexit:1.2"):
        with pytest.raises(DomainError):
            parse_domain(bad)


def test_csv_header(tmp_path):
    s = mobius_shifted_disk_samples(0.5, 4, seed=1)
    p = tmp_path / "s.csv"
    s.write_csv(p)
    lines = p.read_text().splitlines()
    assert lines[0].startswith("# seed=1 sampler=Mobius domain=diskexit:0.5")
    assert len(lines) == 5
