"""Physical constants and unit conversion at the configuration boundary.

Everything inside the package is SI with angular frequencies in rad/s.
"""
import math

from scipy import constants as _c

from .errors import ConfigurationError

HBAR = _c.hbar
C0 = _c.c
EPS0 = _c.epsilon_0
AMU = _c.atomic_mass
ANGSTROM = _c.angstrom

# Nonlocal response becomes important closer than this ribbon distance.
NONLOCAL_LIMIT_M = 11e-9

_FREQ_PREFIX = {"Hz": 1.0, "kHz": 1e3, "MHz": 1e6, "GHz": 1e9, "THz": 1e12, "PHz": 1e15}
_LENGTH = {"m": 1.0, "mm": 1e-3, "um": 1e-6, "nm": 1e-9, "angstrom": 1e-10}
_MASS = {"kg": 1.0, "g": 1e-3, "amu": AMU}
_INTENSITY = {"W/m^2": 1.0, "W/cm^2": 1e4, "kW/cm^2": 1e7, "MW/cm^2": 1e10}
_FORCE = {"N": 1.0}

UNITS = {
    "frequency": tuple(_FREQ_PREFIX) + ("rad/s",),
    "length": tuple(_LENGTH),
    "mass": tuple(_MASS),
    "intensity": tuple(_INTENSITY),
    "raman_sq": ("angstrom^4/amu", "m^4/kg"),
}


def frequency_to_rad_s(value, units, frequencies_are_ordinary=False):
    """Convert a frequency to rad/s.

    Values quoted in Hz-like units are read as angular frequencies
    (``1 PHz -> 1e15 rad/s``) unless ``frequencies_are_ordinary`` is set,
    in which case they are multiplied by 2*pi.
    """
    if units == "rad/s":
        return float(value)
    try:
        scale = _FREQ_PREFIX[units]
    except KeyError:
        raise ConfigurationError(f"unknown frequency unit {units!r}") from None
    if frequencies_are_ordinary:
        scale *= 2.0 * math.pi
    return float(value) * scale


def length_to_m(value, units):
    try:
        return float(value) * _LENGTH[units]
    except KeyError:
        raise ConfigurationError(f"unknown length unit {units!r}") from None


def mass_to_kg(value, units):
    try:
        return float(value) * _MASS[units]
    except KeyError:
        raise ConfigurationError(f"unknown mass unit {units!r}") from None


def intensity_to_w_m2(value, units):
    try:
        return float(value) * _INTENSITY[units]
    except KeyError:
        raise ConfigurationError(f"unknown intensity unit {units!r}") from None


def raman_element_si(value_sq, units="angstrom^4/amu"):
    """Raman tensor element in SI from its square given as a polarizability volume.

    The squared element is given in volume units (e.g. 1e3 A^4/amu). The
    element is the square root, converted to an SI polarizability derivative
    by the factor 4*pi*eps0, so that the optomechanical coupling comes out
    in rad/s.
    """
    if units == "angstrom^4/amu":
        vol_sq = float(value_sq) * ANGSTROM**4 / AMU
    elif units == "m^4/kg":
        vol_sq = float(value_sq)
    else:
        raise ConfigurationError(f"unknown Raman unit {units!r}")
    if vol_sq <= 0:
        raise ConfigurationError("Raman element squared must be positive")
    return 4.0 * math.pi * EPS0 * math.sqrt(vol_sq)
