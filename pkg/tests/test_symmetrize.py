import math

import numpy as np
import pytest
from scipy import special

from planar_skorokhod.errors import DomainError
from planar_skorokhod.gross import PowerSeriesDomain, area, gross_domain
from planar_skorokhod.measure import ArcsineShifted, ShiftedDiskExit
from planar_skorokhod.sampler import Disk, Rectangle, ShiftedDisk
from planar_skorokhod.symmetrize import (RasterDomain, area_minimality_trial, brownian_symmetrize,
                                         perturbed_disk, rasterize, rho, steiner_raster,
                                         uniform_law_fixture, variance_collapse_sweep,
                                         write_sweep_csv)


def test_raster_basics():
    r = rasterize(Disk(1.0), 200)
    assert r.origin_occupied()
    assert r.area == pytest.approx(math.pi, rel=0.01)
    with pytest.raises(DomainError):
        RasterDomain(0.1, np.zeros((3, 4), bool))


def test_steiner_examples():
    disk = rasterize(Disk(1.0), 256)
    assert np.array_equal(steiner_raster(disk).occupancy, disk.occupancy)
    shifted = rasterize(ShiftedDisk(0.5), 256)
    st = steiner_raster(shifted)
    assert st.count == shifted.count
    assert np.array_equal(steiner_raster(st).occupancy, st.occupancy)
    occ = np.zeros((8, 8), bool)
    occ[0:6, 1] = True
    occ[0, 1:6] = True  # an L shape touching the bottom edge
    ell = steiner_raster(RasterDomain(1.0, occ))
    assert ell.count == occ.sum()
    assert np.array_equal(ell.occupancy.sum(axis=0), occ.sum(axis=0))
    # odd runs put the extra cell above the axis
    assert ell.occupancy[4, 2] and not ell.occupancy[3, 2]


def test_disk_is_a_fixed_point():
    rep = brownian_symmetrize(Disk(1.0), 1_000_000, seed=42)
    a = rep.gross.coeffs.real
    assert abs(abs(a[0]) - 1) < 0.01
    assert np.sum(a[1:] ** 2) < 1e-3
    assert rep.rho == pytest.approx(1.0, abs=0.02)
    assert rep.diagnostics["seed"] == 42 and rep.diagnostics["samples"] == 1_000_000


def test_square_is_a_fixed_point():
    rep = brownian_symmetrize(Rectangle(0.5, 0.5), 1_000_000, seed=42)
    assert rep.rho == pytest.approx(1.0, abs=0.03)


def test_shifted_disk_report():
    k = 0.9
    rep = brownian_symmetrize(ShiftedDisk(k), 1_000_000, seed=42)
    assert rep.rho < 1
    lower = 2 * math.pi * (1 - k**2) / 2
    assert rep.area_B >= lower * 0.97
    assert rep.rho >= rep.diagnostics["variance_lower_bound"] * 0.97
    # Parseval-side identity under truncation: never above the sample variance
    assert rep.diagnostics["expected_exit_time"] <= rep.diagnostics["sample_variance"] + 1e-12


def test_gross_output_is_steiner_fixed():
    rep = brownian_symmetrize(ShiftedDisk(0.5), 200_000, seed=1)
    r = rasterize(rep.gross, 256)
    diff = np.abs(steiner_raster(r).occupancy.astype(int) - r.occupancy.astype(int))
    # at most one cell per column at each end may move
    assert np.all(diff.sum(axis=0) <= 2)


def test_point_mass_source_flags_zero_area():
    rep = brownian_symmetrize(PowerSeriesDomain(np.zeros(4)), 1000, seed=0)
    assert rep.area_B == 0 and rep.gross.is_degenerate
    assert any("degenerate" in a for a in rep.annotations)


def test_uniform_fixture():
    rep = uniform_law_fixture()
    assert rep.area_B == pytest.approx(56 * special.zeta(3) / math.pi**3, abs=1e-6)
    assert rep.rho == 0.0 and math.isinf(rep.area_U)
    assert rep.annotations


def test_rho_undefined_for_zero_area():
    rep = uniform_law_fixture(8)
    rep.area_U = 0.0
    assert math.isnan(rho(rep))


def test_trial_examples():
    t = area_minimality_trial(gross_domain(ArcsineShifted(), 8), G=2048)
    assert t.ok and t.area_gross == pytest.approx(t.area_u, abs=1e-8)
    u = PowerSeriesDomain(np.array([1.0, 0.1j]))
    t = area_minimality_trial(u, G=2048)
    assert t.area_u == pytest.approx(math.pi * 1.02)
    assert t.ok and t.area_gross <= t.area_u
    bad = area_minimality_trial(PowerSeriesDomain(np.array([0.0, 1.0])), G=256)
    assert bad.skipped


def test_trial_on_gross_domain_is_near_equality():
    d = gross_domain(ShiftedDiskExit(0.5), 64)
    t = area_minimality_trial(d, G=2048)
    assert t.ok and t.area_gross == pytest.approx(t.area_u, rel=1e-3)


def test_perturbed_disks_pass(rng):
    for _ in range(20):
        t = area_minimality_trial(perturbed_disk(rng), G=1024)
        assert t.ok and not t.skipped


def test_sweep_table(tmp_path):
    rows = variance_collapse_sweep("shifted_disk", [0.0, 0.5, 0.9, 0.99], n=400_000, seed=42)
    for r in rows:
        assert abs(r.variance - r.closed_form_variance) < 4 * r.variance_stderr
        assert r.area_B <= r.area_U * 1.02
    p = tmp_path / "sweep.csv"
    write_sweep_csv(rows, p)
    assert p.read_text().splitlines()[0].startswith("kind,param,variance")
    with pytest.raises(DomainError):
        variance_collapse_sweep("shifted_disk", [])


def test_two_atom_area_grows_only_logarithmically():
    # thin-rectangle exit laws are close to the atoms +-h; their Gross area is
    # (16 h^2 / pi) sum_{odd n <= N} 1/n, far below the rectangle's area
    from planar_skorokhod.measure import Atomic
    h = 1 / 32
    for N in (64, 1024):
        d = gross_domain(Atomic((-h, h), (0.5, 0.5)), N)
        odd = np.arange(1, N + 1, 2)
        assert area(d) == pytest.approx(16 * h**2 / math.pi * np.sum(1.0 / odd), rel=1e-10)
