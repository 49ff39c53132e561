"""Localized-surface-plasmon mode catalog and the optomechanical coupling.

Every LSP_n of the (effective) sphere is a Lorentzian resonance at
``omega_n`` with total width ``Gamma_n = Gamma_p + Gamma_rad``. The ribbon
at distance ``r_m`` couples to it with strength ``g_op`` (rad/s).
"""
from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

import numpy as np

from .errors import ConfigurationError, TruncationWarning
from .geometry import Geometry
from .material import AnisotropicMaterial, effective_drude, effective_order
from .mie import MieInputs, mie_BM_exact, mie_BN_exact
from .specfun import double_factorial, riccati_zeta, sph_hankel1
from .units import C0, EPS0, HBAR

__all__ = [
    "Geometry",
    "MechanicalMode",
    "PlasmonMode",
    "lsp_frequency",
    "radiative_width",
    "mode_volume",
    "coupling_strength",
    "coupling_strength_explicit",
    "coupling_prefactor",
    "coupling_spectrum",
    "greens_tangential",
    "plasmon_mode",
    "mode_catalog",
]

GREENS_N_MAX = 12


@dataclass(frozen=True)
class MechanicalMode:
    """Breathing-like ribbon mode.

    ``raman_element`` is the SI Raman tensor element (see
    :func:`anisosense.units.raman_element_si`). ``quantum_yield`` is carried
    as metadata; no implemented relation uses it.
    """

    omega_m: float
    gamma_m: float
    mass: float
    raman_element: float
    quantum_yield: float | None = None

    def __post_init__(self):
        for name in ("omega_m", "gamma_m", "mass", "raman_element"):
            v = getattr(self, name)
            if not (v > 0 and math.isfinite(v)):
                raise ConfigurationError(f"{name} must be finite and > 0, got {v}")

    @property
    def quality_factor(self) -> float:
        return self.omega_m / self.gamma_m

    @property
    def zpf_factor(self) -> float:
        """sqrt(hbar / 2 omega_m)."""
        return math.sqrt(HBAR / (2.0 * self.omega_m))


@dataclass(frozen=True)
class PlasmonMode:
    n: int
    nu: float
    omega_p_eff: float
    eps_inf_eff: float
    omega_n: float
    gamma_ohmic: float
    gamma_rad: float
    gamma_total: float
    kappa: float
    mode_volume: float
    g_op: float

    def as_row(self) -> dict:
        return {
            "n": self.n,
            "nu": self.nu,
            "omega_p_eff": self.omega_p_eff,
            "eps_inf_eff": self.eps_inf_eff,
            "omega_n": self.omega_n,
            "gamma_ohmic": self.gamma_ohmic,
            "gamma_rad": self.gamma_rad,
            "gamma_total": self.gamma_total,
            "kappa": self.kappa,
            "V_n": self.mode_volume,
            "g_op": self.g_op,
        }


def _denominator(material, n):
    d = effective_drude(material, n)
    return d, n * d.eps_inf + (n + 1)


def lsp_frequency(material: AnisotropicMaterial, n: int) -> float:
    """omega_n = omega_p_eff * sqrt(n / (n eps_inf_eff + n + 1))."""
    d, den = _denominator(material, n)
    return d.omega_p * math.sqrt(n / den)


def radiative_width(material: AnisotropicMaterial, geometry: Geometry, n: int) -> float:
    """Radiation damping rate of LSP_n in the small-particle limit."""
    d, den = _denominator(material, n)
    w = d.omega_p * math.sqrt(n / den)
    kr = w / C0 * geometry.R
    return (
        w * (2 * n + 1) * (n + 1) * kr ** (2 * n + 1)
        / (n * den * double_factorial(2 * n - 1) * double_factorial(2 * n + 1))
    )


def mode_volume(material: AnisotropicMaterial, geometry: Geometry, n: int) -> float:
    """V_n = 8 pi (n eps_inf_eff + n + 1) r_m^(2n+4) / (n(n+1)(2n+1) R^(2n+1))."""
    _, den = _denominator(material, n)
    R, r = geometry.R, geometry.r_m
    return 8.0 * math.pi * den * r ** (2 * n + 4) / (n * (n + 1) * (2 * n + 1) * R ** (2 * n + 1))


def coupling_strength(material, geometry, mech: MechanicalMode, n: int) -> float:
    """g_op = Rbar sqrt(hbar/2 omega_m) omega_n / (eps0 V_n), in rad/s."""
    return (
        mech.raman_element * mech.zpf_factor * lsp_frequency(material, n)
        / (EPS0 * mode_volume(material, geometry, n))
    )


def coupling_strength_explicit(material, geometry, mech: MechanicalMode, n: int) -> float:
    """Same quantity written without the mode volume (cross-check form)."""
    _, den = _denominator(material, n)
    R, r = geometry.R, geometry.r_m
    return (
        mech.zpf_factor * mech.raman_element * lsp_frequency(material, n)
        * n * (n + 1) * (2 * n + 1) * R ** (2 * n + 1)
        / (8.0 * math.pi * EPS0 * den * r ** (2 * n + 4))
    )


def coupling_prefactor(material, geometry, mech: MechanicalMode, n: int) -> float:
    """Area under K_n(omega); equals g_op / 2."""
    _, den = _denominator(material, n)
    R, r = geometry.R, geometry.r_m
    return (
        mech.zpf_factor * mech.raman_element * lsp_frequency(material, n)
        / (16.0 * math.pi * EPS0)
        * n * (n + 1) * (2 * n + 1) * R ** (2 * n + 1) / (den * r ** (2 * n + 4))
    )


def coupling_spectrum(material, geometry, mech: MechanicalMode, n: int, omega):
    """Near-field coupling spectrum K_n(omega): unit-area Lorentzian times g_op/2.

    Evaluated for any real ``omega`` (scalar or array); only ``omega > 0``
    is physical.
    """
    w_n = lsp_frequency(material, n)
    gam = material.radial.gamma_p + radiative_width(material, geometry, n)
    omega = np.asarray(omega, dtype=float)
    lor = (gam / (2 * math.pi)) / ((w_n - omega) ** 2 + (gam / 2) ** 2)
    out = coupling_prefactor(material, geometry, mech, n) * lor
    return float(out) if out.ndim == 0 else out


def plasmon_mode(material, geometry, mech: MechanicalMode, n: int) -> PlasmonMode:
    d = effective_drude(material, n)
    w_n = lsp_frequency(material, n)
    g_ohm = material.radial.gamma_p
    g_rad = radiative_width(material, geometry, n)
    total = g_ohm + g_rad
    return PlasmonMode(
        n=n,
        nu=effective_order(n, material.ar_inf),
        omega_p_eff=d.omega_p,
        eps_inf_eff=d.eps_inf,
        omega_n=w_n,
        gamma_ohmic=g_ohm,
        gamma_rad=g_rad,
        gamma_total=total,
        kappa=total / 2.0,
        mode_volume=mode_volume(material, geometry, n),
        g_op=coupling_strength(material, geometry, mech, n),
    )


def mode_catalog(material, geometry, mech, n_max: int) -> list[PlasmonMode]:
    if int(n_max) != n_max or n_max < 1:
        raise ConfigurationError(f"n_max must be an integer >= 1, got {n_max}")
    return [plasmon_mode(material, geometry, mech, n) for n in range(1, int(n_max) + 1)]


def greens_terms(material, geometry, omega: float, n_max: int = GREENS_N_MAX) -> np.ndarray:
    """Individual multipole terms of the tangential scattering Green's function."""
    if n_max < 1:
        raise ConfigurationError("n_max must be >= 1")
    k1 = omega / C0
    x = k1 * geometry.r_m
    pref = 1j * omega / (8.0 * math.pi * C0)
    out = np.empty(n_max, dtype=complex)
    for n in range(1, n_max + 1):
        inputs = MieInputs(geometry, material, n, omega)
        dz = riccati_zeta(n, x).derivative / x
        h = sph_hankel1(n, x)
        out[n - 1] = pref * (2 * n + 1) * (
            mie_BN_exact(inputs) * dz * dz + mie_BM_exact(inputs) * h * h
        )
    return out


def greens_tangential(material, geometry, omega: float, n_max: int = GREENS_N_MAX) -> complex:
    """Tangential scattering Green's function at the ribbon position (units 1/m).

    Partial multipole sum up to ``n_max``; warns when the last term is not
    smaller than the one before it.
    """
    terms = greens_terms(material, geometry, omega, n_max)
    if n_max >= 2 and abs(terms[-1]) >= abs(terms[-2]):
        warnings.warn(
            f"Green's function multipole sum not converging at n_max={n_max}",
            TruncationWarning,
            stacklevel=2,
        )
    return complex(terms.sum())
