"""Run configuration: YAML documents with explicit units, validated then converted to SI.

A document may name a ``preset``; its own keys are deep-merged over the
preset. The merged document is validated against ``schemas/config.schema.json``
(unknown keys are errors) before anything is computed.
"""
from __future__ import annotations

import copy
import json
import math
from dataclasses import dataclass, field, replace
from importlib import resources
from pathlib import Path

import jsonschema
import numpy as np
import yaml

from . import units as U
from .errors import ConfigurationError
from .geometry import Geometry
from .material import AnisotropicMaterial, DrudeModel
from .plasmon import MechanicalMode
from .response import DriveConfig

SWEEP_AXES = ("AR_inf", "r_m", "n", "pump_intensity", "R")

_PKG = resources.files("anisosense")


class ConfigValidationError(ConfigurationError):
    """Schema or semantic validation failure; ``path`` names the offending field."""

    def __init__(self, message, path=""):
        self.path = path
        super().__init__(f"{path}: {message}" if path else message)


def load_schema(name: str) -> dict:
    return json.loads((_PKG / "schemas" / name).read_text())


def available_presets() -> list[str]:
    return sorted(p.name[:-5] for p in (_PKG / "presets").iterdir() if p.name.endswith(".yaml"))


def _preset_doc(name: str) -> dict:
    path = _PKG / "presets" / f"{name}.yaml"
    if not path.is_file():
        raise ConfigValidationError(
            f"unknown preset {name!r}; available: {', '.join(available_presets())}", "preset")
    return yaml.safe_load(path.read_text()) or {}


def _deep_merge(base: dict, over: dict) -> dict:
    out = copy.deepcopy(base)
    for k, v in over.items():
        if isinstance(v, dict) and isinstance(out.get(k), dict) and not {"value", "units"} & set(v):
            out[k] = _deep_merge(out[k], v)
        else:
            out[k] = copy.deepcopy(v)
    return out


def resolve_document(doc: dict, _seen=()) -> dict:
    """Expand ``preset`` references recursively and merge."""
    if not isinstance(doc, dict):
        raise ConfigValidationError("configuration must be a mapping")
    name = doc.get("preset")
    if name is None:
        return copy.deepcopy(doc)
    if name in _seen:
        raise ConfigValidationError(f"preset cycle through {name!r}", "preset")
    base = resolve_document(_preset_doc(name), _seen + (name,))
    merged = _deep_merge(base, {k: v for k, v in doc.items() if k != "preset"})
    merged.pop("preset", None)
    return merged


def validate_document(doc: dict) -> None:
    validator = jsonschema.Draft202012Validator(load_schema("config.schema.json"))
    errors = sorted(validator.iter_errors(doc), key=lambda e: list(e.absolute_path))
    if errors:
        e = errors[0]
        raise ConfigValidationError(e.message, ".".join(str(p) for p in e.absolute_path))


@dataclass(frozen=True)
class DriveSettings:
    pump_intensity: float | None
    probe_intensity: float | None
    omega_pu: float | None
    omega_pr: float | None
    enhancement: float
    pump_detuning: float | None
    grid_center: float
    grid_half_width: float
    grid_num: int


@dataclass(frozen=True)
class SpectrumSettings:
    omega_min_over_wp: float = 0.02
    omega_max_over_wp: float = 0.5
    num: int = 4801


@dataclass(frozen=True)
class SenseSettings:
    window_half_width: float
    fwhm_override: float | None = None
    casimir_gap: float = 3e-9
    polarity: str = "auto"
    synthetic_center: float | None = None
    synthetic_width: float | None = None


@dataclass(frozen=True)
class SweepSpec:
    """One-parameter sweep; ``values`` are SI (or dimensionless) and strictly monotone."""

    axis: str
    values: tuple
    modes: tuple | None = None

    def __post_init__(self):
        if self.axis not in SWEEP_AXES:
            raise ConfigValidationError(f"unknown sweep axis {self.axis!r}", "sweep.axis")
        v = np.asarray(self.values, dtype=float)
        if v.size == 0:
            raise ConfigValidationError("sweep values must be non-empty", "sweep.values")
        d = np.diff(v)
        if v.size > 1 and not (np.all(d > 0) or np.all(d < 0)):
            raise ConfigValidationError("sweep values must be strictly monotone", "sweep.values")
        if self.axis == "n" and any(int(x) != x or x < 1 for x in v):
            raise ConfigValidationError("n sweep needs integers >= 1", "sweep.values")


@dataclass(frozen=True)
class RunConfig:
    name: str
    material: AnisotropicMaterial
    geometry: Geometry
    mech: MechanicalMode
    drive: DriveSettings
    n_max: int
    mode: int
    spectrum: SpectrumSettings
    sense: SenseSettings
    sweep: SweepSpec | None = None
    frequencies_are_ordinary: bool = False
    document: dict = field(default_factory=dict, compare=False, repr=False)

    def drive_config(self) -> DriveConfig:
        d = self.drive
        grid = np.linspace(d.grid_center - d.grid_half_width, d.grid_center + d.grid_half_width,
                           d.grid_num)
        return DriveConfig(
            delta_grid=grid,
            pump_intensity=d.pump_intensity,
            probe_intensity=d.probe_intensity,
            omega_pu=d.omega_pu,
            omega_pr=d.omega_pr,
            enhancement=d.enhancement,
            pump_detuning=d.pump_detuning,
        )

    def with_axis_value(self, axis: str, value: float) -> "RunConfig":
        """Copy with one sweepable parameter replaced (SI / dimensionless value)."""
        if axis == "AR_inf":
            return replace(self, material=AnisotropicMaterial.from_ratio(self.material.radial, value))
        if axis == "r_m":
            return replace(self, geometry=Geometry(self.geometry.R, value))
        if axis == "R":
            return replace(self, geometry=Geometry(value, self.geometry.r_m))
        if axis == "n":
            return replace(self, mode=int(value), n_max=max(self.n_max, int(value)))
        if axis == "pump_intensity":
            return replace(self, drive=replace(self.drive, pump_intensity=value, omega_pu=None))
        raise ConfigValidationError(f"unknown sweep axis {axis!r}", "sweep.axis")


def _freq(q, ordinary):
    return U.frequency_to_rad_s(q["value"], q["units"], ordinary)


def _opt(section, key, conv):
    return conv(section[key]) if key in section else None


def _sweep_value(axis, value, unit, ordinary):
    if axis in ("AR_inf", "n"):
        return float(value)
    if axis in ("r_m", "R"):
        return U.length_to_m(value, unit or "m")
    return U.intensity_to_w_m2(value, unit or "W/m^2")


def build_config(doc: dict) -> RunConfig:
    """Resolve presets, validate and convert a configuration document to SI."""
    merged = resolve_document(doc)
    validate_document(merged)
    ordinary = merged.get("units", {}).get("frequencies_are_ordinary", False)
    f = lambda q: _freq(q, ordinary)  # noqa: E731

    m = merged["material"]
    try:
        radial = DrudeModel(m["eps_inf"], f(m["omega_p"]), f(m["gamma_p"]))
        if "tangential" in m:
            if "ar_inf" in m:
                raise ConfigValidationError("give either ar_inf or tangential, not both", "material")
            t = m["tangential"]
            material = AnisotropicMaterial(
                radial, DrudeModel(t["eps_inf"], f(t["omega_p"]), f(t["gamma_p"])),
                constrained=m.get("constrained", True))
        else:
            material = AnisotropicMaterial.from_ratio(radial, m.get("ar_inf", 1.0))
    except ConfigValidationError:
        raise
    except ConfigurationError as exc:
        raise ConfigValidationError(str(exc), "material") from None

    g = merged["geometry"]
    try:
        geometry = Geometry(U.length_to_m(**g["R"]), U.length_to_m(**g["r_m"]))
    except ConfigurationError as exc:
        raise ConfigValidationError(str(exc), "geometry") from None

    me = merged["mechanics"]
    try:
        mech = MechanicalMode(
            omega_m=f(me["omega_m"]),
            gamma_m=f(me["gamma_m"]),
            mass=U.mass_to_kg(**me["mass"]),
            raman_element=U.raman_element_si(me["raman_sq"]["value"], me["raman_sq"]["units"]),
            quantum_yield=me.get("quantum_yield"),
        )
    except ConfigurationError as exc:
        raise ConfigValidationError(str(exc), "mechanics") from None

    dr = merged["drive"]
    grid = dr.get("grid", {})
    if "pump_intensity" not in dr and "omega_pu" not in dr:
        raise ConfigValidationError("need pump_intensity or omega_pu", "drive")
    if "probe_intensity" not in dr and "omega_pr" not in dr:
        raise ConfigValidationError("need probe_intensity or omega_pr", "drive")
    drive = DriveSettings(
        pump_intensity=_opt(dr, "pump_intensity", lambda q: U.intensity_to_w_m2(**q)),
        probe_intensity=_opt(dr, "probe_intensity", lambda q: U.intensity_to_w_m2(**q)),
        omega_pu=_opt(dr, "omega_pu", f),
        omega_pr=_opt(dr, "omega_pr", f),
        enhancement=float(dr.get("enhancement", 10.0)),
        pump_detuning=_opt(dr, "pump_detuning", f),
        grid_center=f(grid["center"]) if "center" in grid else mech.omega_m,
        grid_half_width=f(grid["half_width"]) if "half_width" in grid else 25.0 * mech.gamma_m,
        grid_num=int(grid.get("num", 2001)),
    )
    if not drive.grid_half_width > 0:
        raise ConfigValidationError("grid half width must be > 0", "drive.grid.half_width")

    modes = merged["modes"]
    n_max = int(modes["n_max"])
    mode = int(modes.get("mode", 1))

    sp = merged.get("spectrum", {})
    spectrum = SpectrumSettings(
        omega_min_over_wp=float(sp.get("omega_min_over_wp", 0.02)),
        omega_max_over_wp=float(sp.get("omega_max_over_wp", 0.5)),
        num=int(sp.get("num", 4801)),
    )
    if spectrum.omega_max_over_wp <= spectrum.omega_min_over_wp:
        raise ConfigValidationError("omega_max_over_wp must exceed omega_min_over_wp", "spectrum")

    se = merged.get("sense", {})
    syn = se.get("synthetic_lorentzian")
    sense = SenseSettings(
        window_half_width=f(se["window_half_width"]) if "window_half_width" in se
        else 20.0 * mech.gamma_m,
        fwhm_override=_opt(se, "fwhm_override", f),
        casimir_gap=U.length_to_m(**se["casimir_gap"]) if "casimir_gap" in se else 3e-9,
        polarity=se.get("polarity", "auto"),
        synthetic_center=(f(syn["center"]) if "center" in syn else mech.omega_m) if syn else None,
        synthetic_width=f(syn["width"]) if syn else None,
    )
    if sense.fwhm_override is not None and not sense.fwhm_override > 0:
        raise ConfigValidationError("fwhm_override must be > 0", "sense.fwhm_override")

    sweep = None
    if "sweep" in merged:
        sw = merged["sweep"]
        vals = tuple(_sweep_value(sw["axis"], v, sw.get("units"), ordinary) for v in sw["values"])
        try:
            sweep = SweepSpec(sw["axis"], vals, tuple(sw["modes"]) if "modes" in sw else None)
        except ConfigurationError as exc:
            if isinstance(exc, ConfigValidationError):
                raise
            raise ConfigValidationError(str(exc), "sweep") from None

    return RunConfig(
        name=str(merged.get("name", "run")),
        material=material,
        geometry=geometry,
        mech=mech,
        drive=drive,
        n_max=n_max,
        mode=mode,
        spectrum=spectrum,
        sense=sense,
        sweep=sweep,
        frequencies_are_ordinary=bool(ordinary),
        document=merged,
    )


def load_config(path: str | Path | None = None, preset: str | None = None, overrides: dict | None = None) -> RunConfig:
    """Load a YAML config file and/or a named preset.

    ``preset`` (e.g. from the command line) is used as the base when the
    file does not name one itself.
    """
    doc: dict = {}
    if path is not None:
        try:
            doc = yaml.safe_load(Path(path).read_text()) or {}
        except yaml.YAMLError as exc:
            raise ConfigValidationError(f"YAML parse error: {exc}") from None
        except OSError as exc:
            raise ConfigValidationError(f"cannot read config: {exc}") from None
        if not isinstance(doc, dict):
            raise ConfigValidationError("configuration must be a mapping")
    if preset is not None and "preset" not in doc:
        doc = {"preset": preset, **doc}
    if overrides:
        doc = _deep_merge(doc, overrides)
    if not doc:
        raise ConfigValidationError("no configuration given (use --config and/or --preset)")
    return build_config(doc)


def preset(name: str) -> RunConfig:
    return build_config({"preset": name})


def casimir_reference_gap(cfg: RunConfig) -> float:
    return cfg.sense.casimir_gap if math.isfinite(cfg.sense.casimir_gap) else cfg.geometry.gap
