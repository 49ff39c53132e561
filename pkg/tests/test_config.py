import math

import pytest
import yaml

import anisosense.config as C
from anisosense.config import (
    ConfigValidationError,
    available_presets,
    load_config,
    preset,
)
from anisosense.errors import ConfigurationError
from anisosense.units import (
    frequency_to_rad_s,
    intensity_to_w_m2,
    length_to_m,
    mass_to_kg,
    raman_element_si,
)

pytestmark = pytest.mark.usefixtures("quiet_nonlocal")


@pytest.mark.parametrize("name", available_presets())
def test_every_preset_builds(name):
    cfg = preset(name)
    assert cfg.name == name
    assert cfg.material.radial.omega_p in (1.9e15, 0.19e15)
    assert cfg.geometry.R == pytest.approx(10e-9)
    assert cfg.drive.grid_center == cfg.mech.omega_m


def test_preset_list():
    names = available_presets()
    assert {"silver-iso", "aniso-AR0.01", "aniso-AR0.002", "silver-iso-0.19PHz"} <= set(names)


def test_unknown_key_reports_path():
    with pytest.raises(ConfigValidationError) as err:
        load_config(preset="silver-iso", overrides={"geometry": {"colour": 1}})
    assert err.value.path == "geometry"
    assert "colour" in str(err.value)


def test_missing_mass_is_a_validation_error(tmp_path):
    doc = yaml.safe_load((C._PKG / "presets" / "silver-iso.yaml").read_text())
    del doc["mechanics"]["mass"]
    p = tmp_path / "c.yaml"
    p.write_text(yaml.safe_dump(doc))
    with pytest.raises(ConfigValidationError) as err:
        load_config(p)
    assert "mass" in str(err.value)


@pytest.mark.parametrize("overrides", [
    {"modes": {"n_max": 0}},
    {"geometry": {"r_m": {"value": 9, "units": "nm"}}},
    {"material": {"ar_inf": -1}},
    {"geometry": {"R": {"value": 10, "units": "furlong"}}},
    {"sense": {"fwhm_override": {"value": 0, "units": "GHz"}}},
    {"sweep": {"axis": "AR_inf", "values": [1, 0.1, 0.5]}},
])
def test_invalid_values_rejected(overrides):
    with pytest.raises(ConfigurationError):
        load_config(preset="silver-iso", overrides=overrides)


def test_quantity_override_replaces_whole_quantity():
    cfg = load_config(preset="silver-iso", overrides={"geometry": {"r_m": {"value": 0.02, "units": "um"}}})
    assert cfg.geometry.r_m == pytest.approx(20e-9)


def test_ordinary_frequency_flag():
    a = preset("silver-iso")
    b = load_config(preset="silver-iso", overrides={"units": {"frequencies_are_ordinary": True}})
    assert b.frequencies_are_ordinary
    assert b.material.radial.omega_p == pytest.approx(2 * math.pi * a.material.radial.omega_p)
    assert b.mech.omega_m == pytest.approx(2 * math.pi * a.mech.omega_m)


def test_preset_chain_and_cycle(monkeypatch):
    docs = {"a": {"preset": "b", "name": "a"}, "b": {"preset": "a"}}
    real = C._preset_doc
    monkeypatch.setattr(C, "_preset_doc", lambda n: docs[n] if n in docs else real(n))
    with pytest.raises(ConfigValidationError, match="cycle"):
        C.resolve_document({"preset": "a"})
    docs["b"] = {"preset": "aniso-AR0.01", "geometry": {"r_m": {"value": 16, "units": "nm"}}}
    cfg = C.build_config({"preset": "a"})
    assert cfg.name == "a"
    assert cfg.geometry.r_m == pytest.approx(16e-9)
    assert cfg.material.ar_inf == pytest.approx(0.01)


def test_unknown_preset():
    with pytest.raises(ConfigValidationError, match="available"):
        preset("gold")


def test_file_preset_takes_precedence(tmp_path):
    p = tmp_path / "c.yaml"
    p.write_text("preset: aniso-AR0.01\n")
    assert load_config(p, preset="silver-iso").material.ar_inf == pytest.approx(0.01)


def test_sweep_section_units():
    cfg = load_config(preset="silver-iso",
                      overrides={"sweep": {"axis": "r_m", "values": [20, 14], "units": "nm"}})
    assert cfg.sweep.values == pytest.approx((20e-9, 14e-9))
    moved = cfg.with_axis_value("r_m", 16e-9)
    assert moved.geometry.r_m == 16e-9 and moved.geometry.R == cfg.geometry.R


def test_with_axis_value_ar():
    cfg = preset("silver-iso").with_axis_value("AR_inf", 0.1)
    assert cfg.material.ar_inf == pytest.approx(0.1)
    assert cfg.material.radial == preset("silver-iso").material.radial


def test_unit_conversions():
    assert frequency_to_rad_s(1.9, "PHz") == 1.9e15
    assert frequency_to_rad_s(1.0, "GHz", True) == pytest.approx(2 * math.pi * 1e9)
    assert frequency_to_rad_s(5.0, "rad/s", True) == 5.0
    assert length_to_m(14, "nm") == pytest.approx(14e-9)
    assert mass_to_kg(1, "amu") == pytest.approx(1.66053906660e-27, rel=1e-9)
    assert intensity_to_w_m2(400, "kW/cm^2") == pytest.approx(4e9)
    assert raman_element_si(1e-40 / 1e-3, "m^4/kg") == pytest.approx(
        raman_element_si(1e-40 / 1e-3 / 1e-40 * 1.66053906660e-27, "angstrom^4/amu"), rel=1e-9)
    for fn in (length_to_m, mass_to_kg, intensity_to_w_m2, frequency_to_rad_s):
        with pytest.raises(ConfigurationError):
            fn(1.0, "parsec")
