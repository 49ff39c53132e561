import warnings
from dataclasses import replace

import numpy as np
import oracles as O
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from anisosense.config import preset
from anisosense.errors import ConfigurationError, PerturbativeWarning, ResonanceError
from anisosense.plasmon import plasmon_mode
from anisosense.response import (
    DriveConfig,
    SteadyState,
    drive_coupling,
    incident_field,
    probe_amplitude,
    steady_state,
    transmission_spectrum,
)

CFG = preset("aniso-AR0.002")
MECH = CFG.mech
MODE = plasmon_mode(CFG.material, CFG.geometry, MECH, 1)
BARE = replace(MODE, g_op=0.0)
DELTA = MECH.omega_m
ZERO = SteadyState(0j, 0.0, 0.0, (0.0,))


def test_incident_field_and_drive():
    assert incident_field(4e9) == pytest.approx(np.sqrt(2 * 4e9 / (O.EPS0 * O.C0)), rel=1e-14)
    ref = MODE.kappa * np.sqrt(O.EPS0 * MODE.mode_volume / (2 * O.HBAR * MODE.omega_n)) * 10 * incident_field(4e9) / 2
    assert drive_coupling(MODE, 4e9) == pytest.approx(ref, rel=1e-12)
    assert drive_coupling(MODE, 4e9, 20) == pytest.approx(2 * ref, rel=1e-14)
    with pytest.raises(ConfigurationError):
        drive_coupling(MODE, 1.0, enhancement=0.5)
    with pytest.raises(ConfigurationError):
        incident_field(-1.0)


@given(st.floats(-50, 50))
def test_bare_cavity_reduction(u):
    delta = DELTA + u * MODE.kappa
    r = probe_amplitude(BARE, MECH, ZERO, DELTA, delta, 1.0)
    assert r.a_plus == pytest.approx(1.0 / (MODE.kappa + 1j * (DELTA - delta)), rel=1e-12)
    assert abs(r.t) == pytest.approx(1.0, rel=1e-12)


def test_bare_cavity_on_resonance():
    r = probe_amplitude(BARE, MECH, ZERO, DELTA, DELTA, 3.0)
    assert r.t == pytest.approx(-1.0, abs=1e-15)
    assert r.transmission_rate == pytest.approx(1.0)


@given(st.floats(0.5, 1.5), st.floats(1e-3, 1e3))
@settings(max_examples=40)
def test_probe_linearity(dr, scale):
    ss = steady_state(MODE, MECH, DELTA, drive_coupling(MODE, 4e9))
    a = probe_amplitude(MODE, MECH, ss, DELTA, dr * DELTA, 1.0)
    b = probe_amplitude(MODE, MECH, ss, DELTA, dr * DELTA, scale)
    assert b.a_plus == pytest.approx(scale * a.a_plus, rel=1e-12)
    assert b.t == pytest.approx(a.t, rel=1e-12)


@given(st.floats(1e5, 4e10), st.floats(1, 1e4))
@settings(max_examples=40)
def test_steady_state_matches_fixed_point(intensity, boost):
    mode = replace(MODE, g_op=MODE.g_op * boost)
    pu = drive_coupling(mode, intensity)
    ss = steady_state(mode, MECH, DELTA, pu)
    a0, n0 = O.steady_state_fixed_point(mode.kappa, mode.g_op, MECH.omega_m, DELTA, pu)
    if ss.multistable:
        return
    assert ss.a0 == pytest.approx(a0, rel=1e-9)
    assert ss.n0 == pytest.approx(n0, rel=1e-9)
    s = 2 * mode.g_op**2 / MECH.omega_m
    resid = ss.omega0 * ((DELTA - s * ss.omega0) ** 2 + mode.kappa**2) - pu**2
    assert abs(resid) <= 1e-10 * pu**2


def test_multistability_reported():
    # strong coupling, pump blue of a red-shifting cavity
    mode = replace(MODE, g_op=MODE.g_op * 3e5)
    Delta = 5 * mode.kappa
    s = 2 * mode.g_op**2 / MECH.omega_m
    roots = []
    for pu_scale in np.geomspace(0.01, 100, 60):
        pu = pu_scale * mode.kappa * np.sqrt(mode.kappa / s)
        ss = steady_state(mode, MECH, Delta, pu)
        roots.append(len(ss.roots))
        assert ss.omega0 == pytest.approx(min(ss.roots))
    assert max(roots) == 3 and min(roots) == 1


def test_zero_pump_steady_state():
    ss = steady_state(MODE, MECH, DELTA, 0.0)
    assert ss.a0 == 0 and ss.n0 == 0 and not ss.multistable


@given(st.floats(0.8, 1.2), st.floats(1, 1e4))
@settings(max_examples=60)
def test_sideband_against_linear_system(dr, boost):
    mode = replace(MODE, g_op=MODE.g_op * boost)
    ss = steady_state(mode, MECH, DELTA, drive_coupling(mode, 4e9))
    if ss.multistable:
        return
    delta = dr * MECH.omega_m
    r = probe_amplitude(mode, MECH, ss, DELTA, delta, 1.0)
    ap, amc, _ = O.sideband_linear_solve(mode.kappa, mode.g_op, MECH.omega_m, MECH.gamma_m,
                                         ss.a0, ss.n0, DELTA, delta, 1.0)
    assert r.a_plus == pytest.approx(ap, rel=1e-9)
    assert np.conj(r.a_minus) == pytest.approx(amc, rel=1e-9, abs=1e-12 * abs(ap))


def test_pole_raises():
    lossless = replace(BARE, kappa=0.0)
    with pytest.raises(ResonanceError):
        probe_amplitude(lossless, MECH, ZERO, DELTA, DELTA, 1.0)
    with pytest.raises(ConfigurationError):
        probe_amplitude(MODE, MECH, ZERO, DELTA, DELTA, 0.0)


def _spectrum(intensity=4e9, half=25):
    grid = np.linspace(DELTA - half * MECH.gamma_m, DELTA + half * MECH.gamma_m, 4001)
    return transmission_spectrum(MODE, MECH, DriveConfig(grid, pump_intensity=intensity,
                                                         probe_intensity=4e5))


def test_feature_located_at_mechanical_frequency():
    spec = _spectrum()
    dev = np.abs(spec.t_sq - np.median(spec.t_sq))
    assert abs(spec.delta[np.argmax(dev)] - MECH.omega_m) <= 5 * MECH.gamma_m


def test_flat_far_detuned_tail():
    grid = np.linspace(DELTA - 400 * MECH.gamma_m, DELTA + 400 * MECH.gamma_m, 8001)
    spec = transmission_spectrum(MODE, MECH, DriveConfig(grid, pump_intensity=4e9, probe_intensity=4e5))
    d = np.abs(np.diff(spec.t_sq))
    assert d[0] < 1e-6 and d[-1] < 1e-6


def test_spectrum_metadata_and_flags():
    spec = _spectrum()
    assert spec.Delta == DELTA
    assert spec.meta["pump_frequency"] == pytest.approx(MODE.omega_n - DELTA)
    assert spec.meta["perturbative_ratio"] < 0.1
    assert all(f == "" for f in spec.flags)
    np.testing.assert_allclose(spec.response(spec.delta), spec.t_sq, rtol=1e-12)


def test_drive_config_validation():
    with pytest.raises(ConfigurationError):
        DriveConfig(np.array([1.0, 1.0, 2.0]), pump_intensity=1.0, probe_intensity=1.0)
    with pytest.raises(ConfigurationError):
        DriveConfig(np.array([1.0, 2.0]), probe_intensity=1.0)
    d = DriveConfig(np.array([1.0, 2.0]), pump_intensity=1.0, probe_intensity=1.0)
    with pytest.warns(PerturbativeWarning):
        d.rates(MODE)
    assert d.detuning(MECH) == MECH.omega_m
    d2 = DriveConfig(np.array([1.0, 2.0]), omega_pu=5.0, omega_pr=0.1, pump_detuning=3.0)
    with warnings.catch_warnings():
        warnings.simplefilter("error")
        assert d2.rates(MODE) == (5.0, 0.1)
    assert d2.detuning(MECH) == 3.0
