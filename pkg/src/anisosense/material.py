"""Drude dispersion and the radially anisotropic -> effective isotropic mapping.

A radially anisotropic sphere with permittivity components (eps_r, eps_t)
responds in its n-th multipole like an isotropic sphere of permittivity
``(nu/n) * eps_r`` where ``nu = sqrt(n(n+1) AR + 1/4) - 1/2`` and
``AR = eps_t/eps_r``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import ConfigurationError, DomainError

# relative tolerance for the plasma-frequency constraint between components
CONSTRAINT_RTOL = 1e-12


@dataclass(frozen=True)
class DrudeModel:
    """Free-electron permittivity ``eps_inf - omega_p**2 / (omega (omega + i gamma_p))``.

    Frequencies are angular (rad/s).
    """

    eps_inf: float
    omega_p: float
    gamma_p: float = 0.0

    def __post_init__(self):
        # effective (anisotropic) models legitimately have eps_inf < 1
        if not self.eps_inf > 0:
            raise ConfigurationError(f"eps_inf must be > 0, got {self.eps_inf}")
        if not self.omega_p > 0:
            raise ConfigurationError(f"omega_p must be > 0, got {self.omega_p}")
        if not self.gamma_p >= 0:
            raise ConfigurationError(f"gamma_p must be >= 0, got {self.gamma_p}")

    def eps(self, omega):
        return drude_eps(self, omega)


def drude_eps(model: DrudeModel, omega):
    """Complex relative permittivity of a Drude model at angular frequency ``omega``.

    Accepts scalars or arrays; raises DomainError for any omega <= 0.
    """
    w = np.asarray(omega, dtype=float)
    if np.any(~(w > 0)):
        raise DomainError("drude_eps requires omega > 0")
    out = model.eps_inf - model.omega_p**2 / (w * (w + 1j * model.gamma_p))
    return complex(out) if out.ndim == 0 else out


@dataclass(frozen=True)
class AnisotropicMaterial:
    """Radially anisotropic Drude material.

    In constraint mode (the default) the two components must share
    ``omega_p**2/eps_inf`` and the damping rate, which makes the anisotropy
    ratio frequency independent and equal to ``eps_inf_t/eps_inf_r``.
    """

    radial: DrudeModel
    tangential: DrudeModel
    constrained: bool = True

    def __post_init__(self):
        if self.constrained and not self.satisfies_constraint():
            raise ConfigurationError(
                "components violate omega_pr^2/eps_inf_r = omega_pt^2/eps_inf_t "
                "and gamma_pr = gamma_pt; pass constrained=False for a general material"
            )

    @classmethod
    def from_ratio(cls, radial: DrudeModel, ar_inf: float) -> "AnisotropicMaterial":
        if not ar_inf > 0:
            raise ConfigurationError(f"AR_inf must be > 0, got {ar_inf}")
        tangential = DrudeModel(
            eps_inf=ar_inf * radial.eps_inf,
            omega_p=math.sqrt(ar_inf) * radial.omega_p,
            gamma_p=radial.gamma_p,
        )
        return cls(radial, tangential, constrained=True)

    @classmethod
    def isotropic(cls, model: DrudeModel) -> "AnisotropicMaterial":
        return cls(model, model, constrained=True)

    def satisfies_constraint(self) -> bool:
        r, t = self.radial, self.tangential
        a = r.omega_p**2 / r.eps_inf
        b = t.omega_p**2 / t.eps_inf
        return abs(a - b) <= CONSTRAINT_RTOL * max(abs(a), abs(b)) and r.gamma_p == t.gamma_p

    @property
    def ar_inf(self) -> float:
        return self.tangential.eps_inf / self.radial.eps_inf

    def ar(self, omega):
        """Anisotropy ratio eps_t/eps_r at ``omega`` (complex in general)."""
        if self.constrained:
            return self.ar_inf
        return drude_eps(self.tangential, omega) / drude_eps(self.radial, omega)

    def eps_r(self, omega):
        return drude_eps(self.radial, omega)

    def eps_t(self, omega):
        if self.constrained:
            # exact in constraint mode, avoids a second rounding path
            return self.ar_inf * drude_eps(self.radial, omega)
        return drude_eps(self.tangential, omega)


@dataclass(frozen=True)
class EffectiveMode:
    n: int
    nu: float
    drude_eff: DrudeModel


def _check_n(n):
    if int(n) != n or n < 1:
        raise DomainError(f"multipole index must be an integer >= 1, got {n}")
    return int(n)


def effective_order(n: int, ar: float) -> float:
    """Non-integer angular order ``sqrt(n(n+1) AR + 1/4) - 1/2`` for real AR > 0."""
    n = _check_n(n)
    if not ar > 0:
        raise DomainError(f"anisotropy ratio must be > 0, got {ar}")
    return math.sqrt(n * (n + 1) * ar + 0.25) - 0.5


def _effective_order_any(n, ar):
    # complex AR (general two-Drude material): principal branch
    if np.iscomplexobj(ar) and np.any(np.imag(ar) != 0):
        return np.sqrt(n * (n + 1) * np.asarray(ar) + 0.25) - 0.5
    return effective_order(n, float(np.real(ar)))


def effective_eps(material: AnisotropicMaterial, n: int, omega):
    """Effective isotropic permittivity ``(nu/n) eps_r`` seen by multipole ``n``."""
    n = _check_n(n)
    eps_r = material.eps_r(omega)
    if material.constrained:
        nu = effective_order(n, material.ar_inf)
    else:
        nu = _effective_order_any(n, material.ar(omega))
    return (nu / n) * eps_r


def effective_drude(material: AnisotropicMaterial, n: int) -> DrudeModel:
    """Drude parameters of the effective sphere for multipole ``n``.

    Only defined when the anisotropy ratio is frequency independent.
    """
    n = _check_n(n)
    if not material.constrained:
        raise ConfigurationError(
            "effective Drude parameters need a constraint-mode material; "
            "use effective_eps at each frequency instead"
        )
    if material.ar_inf == 1.0:
        return material.radial
    scale = effective_order(n, material.ar_inf) / n
    r = material.radial
    return DrudeModel(
        eps_inf=scale * r.eps_inf,
        omega_p=math.sqrt(scale) * r.omega_p,
        gamma_p=r.gamma_p,
    )


def effective_mode(material: AnisotropicMaterial, n: int) -> EffectiveMode:
    nu = effective_order(n, material.ar_inf)
    return EffectiveMode(n=_check_n(n), nu=nu, drude_eff=effective_drude(material, n))
