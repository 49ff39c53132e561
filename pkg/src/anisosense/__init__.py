"""Plasmonic-optomechanical mass sensing with radially anisotropic nanospheres."""
from .config import RunConfig, SweepSpec, load_config, preset
from .geometry import Geometry
from .material import AnisotropicMaterial, DrudeModel, effective_drude, effective_order
from .plasmon import MechanicalMode, PlasmonMode, mode_catalog, plasmon_mode
from .response import DriveConfig, transmission_spectrum
from .sensing import PeakStats, casimir_force, find_peak, mass_resolution, run_sweep

__version__ = "0.1.0"

__all__ = [
    "AnisotropicMaterial",
    "DriveConfig",
    "DrudeModel",
    "Geometry",
    "MechanicalMode",
    "PeakStats",
    "PlasmonMode",
    "RunConfig",
    "SweepSpec",
    "casimir_force",
    "effective_drude",
    "effective_order",
    "find_peak",
    "load_config",
    "mass_resolution",
    "mode_catalog",
    "plasmon_mode",
    "preset",
    "run_sweep",
    "transmission_spectrum",
]
