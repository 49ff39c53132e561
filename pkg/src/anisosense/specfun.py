"""Spherical Bessel, Hankel and Riccati functions of real (fractional) order.

All functions use ascending power series in ``z``, which are accurate for
moderate arguments (|z| <= Z_MAX). The anisotropic sphere needs orders
``nu`` that are not integers, which rules out the usual upward recurrences.

Conventions::

    j_nu(z) = sqrt(pi / 2z) J_{nu+1/2}(z)
    y_nu(z) = sqrt(pi / 2z) Y_{nu+1/2}(z)
    h_nu(z) = j_nu(z) + i y_nu(z)
    psi_nu(z) = z j_nu(z),   zeta_nu(z) = z h_nu(z)
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from typing import NamedTuple

from .errors import DomainError, SingularityError, ValidityError

Z_MAX = 30.0
QSA_Z_MAX = 0.1
SERIES_RTOL = 1e-16
SERIES_MAX_TERMS = 200

_SQRT_PI = math.sqrt(math.pi)
_EULER_GAMMA = 0.5772156649015329


def gamma_fn(x: float) -> float:
    """Euler gamma function for real ``x``; poles at 0, -1, -2, ... raise DomainError."""
    x = float(x)
    if x <= 0 and x.is_integer():
        raise DomainError(f"gamma has a pole at {x}")
    return math.gamma(x)


def double_factorial(k: int) -> int:
    """k!! for k >= -1, with (-1)!! = 0!! = 1."""
    if int(k) != k or k < -1:
        raise DomainError(f"double factorial needs an integer k >= -1, got {k}")
    out = 1
    k = int(k)
    while k > 1:
        out *= k
        k -= 2
    return out


def _check_z(z, allow_zero=True):
    z = complex(z)
    if abs(z) > Z_MAX:
        raise ValidityError(f"|z| = {abs(z):.3g} exceeds the series validity radius {Z_MAX}")
    if not allow_zero and z == 0:
        raise SingularityError("function is singular at z = 0")
    return z


def _hyp_series(a: float, z: complex) -> complex:
    """sum_k (-z^2/4)^k / (k! Gamma(k + a)) for non-pole ``a``."""
    w = -0.25 * z * z
    term = 1.0 / gamma_fn(a)
    total = term
    for k in range(SERIES_MAX_TERMS):
        denom = (k + 1) * (k + a)
        term = term * w / denom
        total += term
        # stop only once terms are shrinking, otherwise a tiny early term lies
        if abs(w) < abs(denom) and abs(term) < SERIES_RTOL * abs(total):
            return total
    raise ValidityError(f"series did not converge in {SERIES_MAX_TERMS} terms (z={z})")


def _j_series(nu: float, z: complex) -> complex:
    # (sqrt(pi)/2) (z/2)^nu sum_k (-z^2/4)^k / (k! Gamma(k + nu + 3/2)), any real nu
    if z == 0:
        if nu == 0:
            return 1.0 + 0j
        if nu > 0:
            return 0j
        raise SingularityError("negative-order spherical Bessel series is singular at 0")
    return 0.5 * _SQRT_PI * (0.5 * z) ** nu * _hyp_series(nu + 1.5, z)


def _is_integer(x, tol=0.0):
    return abs(x - round(x)) <= tol


def _bessel_y_integer(m: int, z: complex) -> complex:
    """Cylindrical Y_m(z) for integer m >= 0 (ascending series with log term)."""
    half = 0.5 * z
    w = -0.25 * z * z
    # finite part
    finite = 0j
    for k in range(m):
        finite += math.factorial(m - k - 1) / math.factorial(k) * (-w) ** k
    finite *= -(half ** (-m)) / math.pi
    # J_m and the digamma-weighted series share the same terms
    term = 1.0 / math.factorial(m)
    harm_k, harm_mk = 0.0, sum(1.0 / j for j in range(1, m + 1))
    jm = term
    dig = term * (harm_k + harm_mk - 2 * _EULER_GAMMA)
    for k in range(SERIES_MAX_TERMS):
        denom = (k + 1) * (m + k + 1)
        term = term * w / denom
        harm_k += 1.0 / (k + 1)
        harm_mk += 1.0 / (m + k + 1)
        jm += term
        dig += term * (harm_k + harm_mk - 2 * _EULER_GAMMA)
        if abs(w) < denom and abs(term) < SERIES_RTOL * min(abs(jm), abs(dig) or 1.0):
            break
    else:
        raise ValidityError(f"Y_{m} series did not converge (z={z})")
    jm *= half**m
    dig *= half**m
    return finite + (2.0 / math.pi) * cmath.log(half) * jm - dig / math.pi


def _check_nu(nu):
    nu = float(nu)
    if nu < 0:
        raise DomainError(f"order must be >= 0, got {nu}")
    return nu


def sph_bessel_j(nu: float, z) -> complex:
    """Spherical Bessel function of the first kind j_nu(z), real order nu >= 0."""
    nu = _check_nu(nu)
    return _j_series(nu, _check_z(z))


def _y_raw(nu: float, z: complex) -> complex:
    mu = nu + 0.5
    if _is_integer(mu, 1e-12):
        return cmath.sqrt(0.5 * math.pi / z) * _bessel_y_integer(int(round(mu)), z)
    if _is_integer(nu):
        n = int(round(nu))
        return (-1) ** (n + 1) * _j_series(-nu - 1.0, z)
    s, c = math.sin(math.pi * nu), math.cos(math.pi * nu)
    return -(_j_series(nu, z) * s + _j_series(-nu - 1.0, z)) / c


def sph_bessel_y(nu: float, z) -> complex:
    """Spherical Bessel function of the second kind y_nu(z); singular at z = 0."""
    nu = _check_nu(nu)
    return _y_raw(nu, _check_z(z, allow_zero=False))


def sph_hankel1(nu: float, z) -> complex:
    """Spherical Hankel function of the first kind h_nu = j_nu + i y_nu."""
    nu = _check_nu(nu)
    z = _check_z(z, allow_zero=False)
    return _j_series(nu, z) + 1j * _y_raw(nu, z)


@dataclass(frozen=True)
class RiccatiPair:
    """Value and argument-derivative of a Riccati-Bessel type function."""

    value: complex
    derivative: complex


def riccati_psi(nu: float, z) -> RiccatiPair:
    """psi_nu(z) = z j_nu(z) and its derivative (nu+1) j_nu - z j_{nu+1}."""
    nu = _check_nu(nu)
    z = _check_z(z)
    j0 = _j_series(nu, z)
    j1 = _j_series(nu + 1.0, z)
    return RiccatiPair(z * j0, (nu + 1.0) * j0 - z * j1)


def riccati_zeta(nu: float, z) -> RiccatiPair:
    """zeta_nu(z) = z h_nu(z) and its derivative (nu+1) h_nu - z h_{nu+1}."""
    nu = _check_nu(nu)
    z = _check_z(z, allow_zero=False)
    h0 = _j_series(nu, z) + 1j * _y_raw(nu, z)
    h1 = _j_series(nu + 1.0, z) + 1j * _y_raw(nu + 1.0, z)
    return RiccatiPair(z * h0, (nu + 1.0) * h0 - z * h1)


class QSARiccati(NamedTuple):
    psi: complex
    zeta: complex
    dpsi: complex
    dzeta: complex


def qsa_riccati(nu: float, z) -> QSARiccati:
    """Leading small-argument forms of psi_nu, zeta_nu and their derivatives.

    psi keeps the sqrt(pi) factor of the true j_nu limit. ``z y_nu`` is a
    sum of two power series, ``-tan(nu pi) psi`` and one starting at
    ``z^-nu``; the leading term of each is kept, as is the real part
    ``psi`` of zeta. For nu < 1/2 the dropped terms would otherwise give a
    relative error O(z^(2nu+1)) instead of O(z^2). At half-integer nu the
    two series merge (log term) and only the ``z^-nu`` term is kept.
    """
    nu = _check_nu(nu)
    z = complex(z)
    if abs(z) >= QSA_Z_MAX:
        raise ValidityError(f"QSA needs |z| < {QSA_Z_MAX}, got {abs(z):.3g}")
    if z == 0:
        raise SingularityError("zeta is singular at z = 0")
    a = _SQRT_PI / (2.0 ** (nu + 1.0) * gamma_fn(nu + 1.5))
    b = gamma_fn(nu + 0.5) * 2.0**nu / _SQRT_PI
    psi = a * z ** (nu + 1.0)
    dpsi = a * (nu + 1.0) * z**nu
    t = 0.0 if _is_integer(nu + 0.5, 1e-12) else math.tan(math.pi * nu)
    zy = -b * z ** (-nu) - t * psi
    dzy = nu * b * z ** (-nu - 1.0) - t * dpsi
    return QSARiccati(psi, psi + 1j * zy, dpsi, dpsi + 1j * dzy)
