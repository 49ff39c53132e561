"""T-matrix elements and Mie coefficients of a radially anisotropic sphere in vacuum.

TM-type (``N``) waves inside the sphere see the non-integer order ``nu``;
outside they are ordinary integer-order waves of order ``n``. With the
Bohren-Huffman coefficients ``a_n, b_n`` of an isotropic sphere, the
coefficients here satisfy ``B_N = -a_n`` and ``B_M = -b_n``.
"""
from __future__ import annotations

import cmath
from dataclasses import dataclass

import numpy as np

from .errors import (
    ConfigurationError,
    DegenerateMatrixError,
    ResonanceError,
    ValidityError,
)
from .geometry import Geometry
from .material import AnisotropicMaterial, effective_eps, effective_order
from .specfun import double_factorial, riccati_psi, riccati_zeta
from .units import C0

QSA_KR_MAX = 0.1
RESONANCE_RTOL = 1e-12


@dataclass(frozen=True)
class MieInputs:
    geometry: Geometry
    material: AnisotropicMaterial
    n: int
    omega: float

    def __post_init__(self):
        if not self.omega > 0:
            raise ConfigurationError("omega must be > 0")
        if int(self.n) != self.n or self.n < 1:
            raise ConfigurationError(f"n must be an integer >= 1, got {self.n}")

    @property
    def k1(self) -> float:
        return self.omega / C0

    @property
    def size_parameter(self) -> float:
        return self.k1 * self.geometry.R

    @property
    def eps_t(self) -> complex:
        return complex(self.material.eps_t(self.omega))

    @property
    def nu(self) -> float:
        ar = self.material.ar(self.omega)
        if np.iscomplexobj(ar) and np.imag(ar) != 0:
            raise ConfigurationError(
                "exact T-matrix needs a real anisotropy ratio (constraint-mode material)"
            )
        return effective_order(self.n, float(np.real(ar)))


def _sqrt_eps(eps: complex) -> complex:
    s = cmath.sqrt(eps)
    # decaying waves inside the sphere
    return -s if s.imag < 0 else s


def t_matrix_N(inputs: MieInputs):
    """(T11, T12) of the TM-type transfer matrix for multipole ``n``."""
    n, nu = inputs.n, inputs.nu
    x = inputs.size_parameter
    m_t = _sqrt_eps(inputs.eps_t)  # k_t / k_1 and 1/eta_t, with mu_t = 1
    y = m_t * x
    inv_eta_t, inv_eta_1 = m_t, 1.0

    psi_in = riccati_psi(nu, y)
    zeta_in = riccati_zeta(nu, y)
    psi_out = riccati_psi(n, x)
    zeta_out = riccati_zeta(n, x)

    denom = (psi_in.value * zeta_in.derivative - zeta_in.value * psi_in.derivative) * inv_eta_t
    t11 = (
        psi_in.value * zeta_out.derivative * inv_eta_t
        - zeta_out.value * psi_in.derivative * inv_eta_1
    ) / denom
    t12 = (
        psi_in.value * psi_out.derivative * inv_eta_t
        - psi_out.value * psi_in.derivative * inv_eta_1
    ) / denom
    if t11 == 0:
        raise DegenerateMatrixError(f"T11 vanished for n={n} at omega={inputs.omega:.6g}")
    return t11, t12


def mie_BN_exact(inputs: MieInputs) -> complex:
    """Exact TM Mie coefficient ``B_N = -T12/T11``."""
    t11, t12 = t_matrix_N(inputs)
    return -t12 / t11


def mie_BM_exact(inputs: MieInputs) -> complex:
    """TE Mie coefficient ``B_M = -b_n`` using the tangential permittivity only.

    TE waves carry no radial electric field, so radial anisotropy does not
    enter; this is the isotropic form evaluated with ``eps_t``.
    """
    n = inputs.n
    x = inputs.size_parameter
    m = _sqrt_eps(inputs.eps_t)
    psi_in = riccati_psi(n, m * x)
    psi_out = riccati_psi(n, x)
    zeta_out = riccati_zeta(n, x)
    num = psi_in.value * psi_out.derivative - m * psi_out.value * psi_in.derivative
    den = psi_in.value * zeta_out.derivative - m * zeta_out.value * psi_in.derivative
    if den == 0:
        raise DegenerateMatrixError(f"TE denominator vanished for n={n}")
    return -num / den


def _check_qsa(inputs):
    if inputs.size_parameter >= QSA_KR_MAX:
        raise ValidityError(
            f"quasi-static forms need k1 R < {QSA_KR_MAX}, got {inputs.size_parameter:.4g}"
        )


def mie_BN_qsa(inputs: MieInputs) -> complex:
    """Quasi-static TM coefficient

    ``i x^(2n+1) [(n+1) eps_t - (nu+1)] / ((2n-1)!! (2n+1)!! [n eps_t + nu + 1])``
    with ``x = k1 R``.
    """
    _check_qsa(inputs)
    n, nu = inputs.n, inputs.nu
    eps_t = inputs.eps_t
    num = (n + 1) * eps_t - (nu + 1)
    den = n * eps_t + (nu + 1)
    if abs(den) < RESONANCE_RTOL * max(abs(n * eps_t), nu + 1):
        raise ResonanceError(f"quasi-static pole: n eps_t + nu + 1 = 0 (n={n})")
    x = inputs.size_parameter
    return 1j * x ** (2 * n + 1) * num / (double_factorial(2 * n - 1) * double_factorial(2 * n + 1) * den)


def polarizability_eff(inputs: MieInputs) -> complex:
    """Multipolar polarizability of the effective sphere, units m^(2n+1)."""
    _check_qsa(inputs)
    n = inputs.n
    eps = complex(effective_eps(inputs.material, n, inputs.omega))
    den = n * eps + n + 1
    if abs(den) < RESONANCE_RTOL * max(abs(n * eps), n + 1):
        raise ResonanceError(f"polarizability pole: n eps_eff + n + 1 = 0 (n={n})")
    return n * (eps - 1) * inputs.geometry.R ** (2 * n + 1) / den


def qsa_bn_alpha_factor(n: int) -> float:
    """Constant c_n in ``B_N(QSA) = i c_n k1^(2n+1) alpha_eff``.

    Follows from ``n eps_t = (nu+1)(nu eps_r + n + 1)/(n+1)`` and
    ``(n+1) eps_t - (nu+1) = (nu+1)(eps_eff - 1)``.
    """
    return (n + 1) / (n * double_factorial(2 * n - 1) * double_factorial(2 * n + 1))
