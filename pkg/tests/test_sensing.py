import math
from dataclasses import replace

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from anisosense.config import SweepSpec, preset
from anisosense.errors import ConfigurationError, PeakNotFoundError, PeakTruncationError
from anisosense.plasmon import MechanicalMode
from anisosense.response import ProbeSpectrum
from anisosense.sensing import (
    SWEEP_COLUMNS,
    analyse_run,
    casimir_force,
    compare_reference,
    find_peak,
    lorentzian_spectrum,
    mass_resolution,
    run_sweep,
)

W0, G = 4.7e11, 1.9e9


def lor_grid(n=3001, half=30):
    return np.linspace(W0 - half * G, W0 + half * G, n)


def test_lorentzian_fwhm_exact():
    stats = find_peak(lorentzian_spectrum(lor_grid(), W0, G), (W0 - 20 * G, W0 + 20 * G), baseline=0.0)
    assert stats.fwhm == pytest.approx(G, rel=1e-6)
    assert stats.center == pytest.approx(W0, rel=1e-12)
    assert stats.height == pytest.approx(1.0, rel=1e-12)
    assert stats.left < stats.center < stats.right
    assert stats.polarity == "peak"


def test_default_baseline_is_edge_median():
    grid = lor_grid()
    spec = lorentzian_spectrum(grid, W0, G)
    stats = find_peak(spec, (W0 - 20 * G, W0 + 20 * G))
    mask = (grid >= W0 - 20 * G) & (grid <= W0 + 20 * G)
    v = spec.t_sq[mask]
    k = math.ceil(0.05 * v.size)
    assert stats.baseline == pytest.approx(np.median(np.r_[v[:k], v[-k:]]), rel=1e-12)
    # half level sits at (1 + b)/2, so the width is G sqrt((1 - b)/(1 + b))
    b = stats.baseline
    assert stats.fwhm == pytest.approx(G * math.sqrt((1 - b) / (1 + b)), rel=1e-6)


@given(st.floats(-10, 10))
def test_translation_invariance(u):
    # a skewed line shape, shifted together with its grid and window
    def resp(c):
        def f(d):
            x = (np.asarray(d, dtype=float) - c) / (G / 2)
            return 1 / (1 + x**2) + 0.1 / (1 + (x - 1.5) ** 2)
        return f

    grid = lor_grid()
    s = u * G
    a = find_peak(ProbeSpectrum.from_function(grid, resp(W0)), (W0 - 20 * G, W0 + 20 * G))
    b = find_peak(ProbeSpectrum.from_function(grid + s, resp(W0 + s)),
                  (W0 + s - 20 * G, W0 + s + 20 * G))
    assert b.center - a.center == pytest.approx(s, abs=1e-6 * G)
    assert b.fwhm == pytest.approx(a.fwhm, rel=1e-6)
    assert b.height == pytest.approx(a.height, rel=1e-9)


def test_dip_detection():
    grid = lor_grid()
    spec = ProbeSpectrum.from_function(grid, lambda d: 1 - 0.3 / (1 + ((np.asarray(d) - W0) / (G / 2)) ** 2))
    stats = find_peak(spec, (W0 - 20 * G, W0 + 20 * G), baseline=1.0)
    assert stats.polarity == "dip"
    assert stats.prominence == pytest.approx(0.3, rel=1e-12)
    assert stats.fwhm == pytest.approx(G, rel=1e-6)
    assert stats.height < stats.baseline


def test_monotone_spectrum_not_found():
    grid = lor_grid()
    spec = ProbeSpectrum.from_function(grid, lambda d: 1 + 1e-12 * (np.asarray(d) - W0))
    with pytest.raises(PeakNotFoundError):
        find_peak(spec, (W0 - 10 * G, W0 + 10 * G))


def test_peak_near_edge_truncated():
    spec = lorentzian_spectrum(lor_grid(), W0, G)
    with pytest.raises(PeakTruncationError):
        find_peak(spec, (W0 - 0.2 * G, W0 + 10 * G), polarity="peak", baseline=0.0)


def test_window_validation():
    spec = lorentzian_spectrum(lor_grid(), W0, G)
    with pytest.raises(ConfigurationError):
        find_peak(spec, (W0 - 40 * G, W0))
    with pytest.raises(ConfigurationError):
        find_peak(spec, (W0, W0 + 0.1 * G))
    with pytest.raises(ConfigurationError):
        find_peak(spec, (W0 - G, W0 + G), polarity="bump")


@pytest.mark.parametrize("name", ["aniso-AR0.002", "silver-iso"])
def test_fwhm_grid_robust(name):
    cfg = preset(name)
    _, spec, coarse = analyse_run(cfg)
    fine_cfg = replace(cfg, drive=replace(cfg.drive, grid_num=2 * cfg.drive.grid_num - 1))
    _, _, fine = analyse_run(fine_cfg)
    assert fine.fwhm == pytest.approx(coarse.fwhm, rel=1e-3)
    assert coarse.polarity == "dip"
    assert abs(coarse.center - cfg.mech.omega_m) < cfg.mech.gamma_m


def mech(m=3e-22, w=4.7e11):
    return MechanicalMode(w, 1.9e9, m, 1e-15)


def test_mass_resolution_values():
    assert mass_resolution(mech(), 0.0) == 0.0
    assert mass_resolution(mech(), 0.18e9) == pytest.approx(2.297872340425532e-25, rel=1e-14)
    with pytest.raises(ConfigurationError):
        mass_resolution(mech(), -1.0)


@given(st.floats(1e-25, 1e-18), st.floats(1e9, 1e13), st.floats(1e5, 1e11), st.floats(0.1, 10))
def test_mass_resolution_linearity(m, w, dw, k):
    base = mass_resolution(mech(m, w), dw)
    assert mass_resolution(mech(m, w), k * dw) == pytest.approx(k * base, rel=1e-13)
    assert mass_resolution(mech(k * m, w), dw) == pytest.approx(k * base, rel=1e-13)
    assert mass_resolution(mech(m, k * w), dw) == pytest.approx(base / k, rel=1e-13)


def test_casimir_scaling():
    F = casimir_force(10e-9, 3e-9)
    assert F < 0
    assert abs(F) == pytest.approx(1.0085e-9, rel=1e-3)
    assert casimir_force(10e-9, 1.5e-9) / F == pytest.approx(8.0, rel=1e-13)
    assert abs(casimir_force(10e-9, 1e3)) < 1e-40
    with pytest.raises(ConfigurationError):
        casimir_force(0.0, 1e-9)


def test_compare_reference_flag():
    assert compare_reference(1.05, 1.0)["paper_discrepancy"] is False
    r = compare_reference(2.298e-25, 1.2e-24)
    assert r["paper_discrepancy"] is True and r["ratio"] == pytest.approx(0.1915, rel=1e-3)


# --- sweeps --------------------------------------------------------------------

def test_single_value_sweep_equals_direct_run():
    cfg = preset("aniso-AR0.01")
    (row,) = run_sweep(SweepSpec("AR_inf", (0.01,)), cfg)
    mode, spec, stats = analyse_run(cfg)
    assert row["error"] == ""
    assert row["omega_n"] == mode.omega_n and row["g_op"] == mode.g_op
    assert row["peak_center"] == stats.center and row["fwhm"] == stats.fwhm
    assert row["peak_height"] == stats.height and row["peak_baseline"] == stats.baseline
    assert row["delta_m"] == mass_resolution(cfg.mech, stats.fwhm)
    assert set(row) == set(SWEEP_COLUMNS)


def test_sweep_order_and_threads():
    cfg = preset("silver-iso")
    spec = SweepSpec("AR_inf", (1.0, 0.1, 0.01), modes=(1, 2))
    serial = run_sweep(spec, cfg)
    threaded = run_sweep(spec, cfg, workers=4)
    assert serial == threaded
    assert [(r["value"], r["n"]) for r in serial] == [(v, n) for v in (1.0, 0.1, 0.01) for n in (1, 2)]


def test_sweep_records_errors_and_continues():
    cfg = preset("silver-iso")
    rows = run_sweep(SweepSpec("r_m", (14e-9, 9e-9)), cfg)
    assert rows[0]["error"] == ""
    assert "ConfigurationError" in rows[1]["error"]


def test_mode_axis_sweep():
    rows = run_sweep(SweepSpec("n", (1, 2, 3)), preset("aniso-AR0.01"))
    assert [r["n"] for r in rows] == [1, 2, 3]
    assert rows[0]["omega_n"] < rows[1]["omega_n"] < rows[2]["omega_n"]


def test_sweep_spec_validation():
    with pytest.raises(ConfigurationError):
        SweepSpec("AR_inf", ())
    with pytest.raises(ConfigurationError):
        SweepSpec("AR_inf", (1.0, 0.1, 0.5))
    with pytest.raises(ConfigurationError):
        SweepSpec("colour", (1.0,))
    with pytest.raises(ConfigurationError):
        SweepSpec("n", (1, 1.5))


def test_rounding_noise_is_not_a_peak():
    grid = lor_grid()
    rng = np.random.default_rng(0)
    noise = 1 + 4e-16 * rng.standard_normal(grid.size)
    spec = ProbeSpectrum.from_function(grid, lambda d: np.interp(d, grid, noise))
    with pytest.raises(PeakNotFoundError, match="resolution floor"):
        find_peak(spec, (W0 - 20 * G, W0 + 20 * G))
