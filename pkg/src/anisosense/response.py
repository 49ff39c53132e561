"""Pump-probe response of one LSP mode coupled to the ribbon.

Rotating frame of the pump. ``Delta = omega_n - omega_pu`` is the pump
detuning and ``delta = omega_pr - omega_pu`` the probe-pump detuning.
The probe sideband amplitude is the linear response around the
optomechanical steady state, and the probe transmission is
``t = 1 - 2 kappa a_+ / Omega_pr``.
"""
from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from .errors import (
    ConfigurationError,
    NumericalError,
    PerturbativeWarning,
    ResonanceError,
)
from .plasmon import MechanicalMode, PlasmonMode
from .units import C0, EPS0, HBAR

PROBE_RATIO_LIMIT = 0.1


def incident_field(intensity: float) -> float:
    """Peak field amplitude (V/m) of a plane wave of the given intensity (W/m^2)."""
    if intensity < 0:
        raise ConfigurationError("intensity must be >= 0")
    return math.sqrt(2.0 * intensity / (EPS0 * C0))


def drive_coupling(mode: PlasmonMode, intensity: float, enhancement: float = 10.0) -> float:
    """Coherent drive rate ``kappa sqrt(eps0 V / 2 hbar omega_n) E_max / 2`` (rad/s)."""
    if enhancement < 1:
        raise ConfigurationError("enhancement factor must be >= 1")
    e_max = enhancement * incident_field(intensity)
    return mode.kappa * math.sqrt(EPS0 * mode.mode_volume / (2.0 * HBAR * mode.omega_n)) * e_max / 2.0


@dataclass
class DriveConfig:
    """Pump/probe drive and the probe-detuning grid.

    Either intensities (W/m^2) or direct drive rates (rad/s) may be given;
    a direct rate wins. ``pump_detuning`` defaults to ``omega_m``.
    """

    delta_grid: np.ndarray
    pump_intensity: float | None = None
    probe_intensity: float | None = None
    omega_pu: float | None = None
    omega_pr: float | None = None
    enhancement: float = 10.0
    pump_detuning: float | None = None

    def __post_init__(self):
        self.delta_grid = np.asarray(self.delta_grid, dtype=float)
        g = self.delta_grid
        if g.ndim != 1 or g.size == 0:
            raise ConfigurationError("delta grid must be a non-empty 1-D array")
        if np.any(np.diff(g) <= 0):
            raise ConfigurationError("delta grid must be strictly increasing")
        if self.omega_pu is None and self.pump_intensity is None:
            raise ConfigurationError("give pump_intensity or omega_pu")
        if self.omega_pr is None and self.probe_intensity is None:
            raise ConfigurationError("give probe_intensity or omega_pr")

    def rates(self, mode: PlasmonMode) -> tuple[float, float]:
        pu = self.omega_pu if self.omega_pu is not None else drive_coupling(
            mode, self.pump_intensity, self.enhancement)
        pr = self.omega_pr if self.omega_pr is not None else drive_coupling(
            mode, self.probe_intensity, self.enhancement)
        if pr <= 0:
            raise ConfigurationError("probe drive must be > 0")
        if pu > 0 and pr / pu >= PROBE_RATIO_LIMIT:
            warnings.warn(
                f"probe/pump drive ratio {pr / pu:.3g} >= {PROBE_RATIO_LIMIT}",
                PerturbativeWarning,
                stacklevel=2,
            )
        return pu, pr

    def detuning(self, mech: MechanicalMode) -> float:
        return mech.omega_m if self.pump_detuning is None else self.pump_detuning

    def pump_frequency(self, mode: PlasmonMode, mech: MechanicalMode) -> float:
        return mode.omega_n - self.detuning(mech)


@dataclass(frozen=True)
class SteadyState:
    a0: complex
    omega0: float
    n0: float
    roots: tuple = ()

    @property
    def multistable(self) -> bool:
        return len(self.roots) > 1


def _cubic_roots(g, omega_m, Delta, kappa, Omega_pu):
    # omega0 [(Delta - 2 g^2 omega0/omega_m)^2 + kappa^2] = Omega_pu^2
    s = 2.0 * g * g / omega_m
    coeffs = [s * s, -2.0 * Delta * s, Delta * Delta + kappa * kappa, -Omega_pu * Omega_pu]
    if s == 0:
        return [Omega_pu**2 / (Delta**2 + kappa**2)]
    r = np.roots(coeffs)
    tol = 1e-9 * max(1.0, np.max(np.abs(r)))
    real = sorted(float(v.real) for v in r if abs(v.imag) <= tol and v.real >= -tol)
    # polish on the cubic itself
    out = []
    for v in real:
        v = max(v, 0.0)
        for _ in range(3):
            f = v * ((Delta - s * v) ** 2 + kappa**2) - Omega_pu**2
            df = (Delta - s * v) ** 2 + kappa**2 - 2 * s * v * (Delta - s * v)
            if df == 0:
                break
            v -= f / df
        out.append(v)
    return out


def steady_state(mode: PlasmonMode, mech: MechanicalMode, Delta: float, Omega_pu: float) -> SteadyState:
    """Mean intracavity amplitude and ribbon displacement under a constant pump.

    Returns the smallest non-negative root of the steady-state cubic; all
    roots are kept in ``roots`` when the system is multistable.
    """
    kappa, g = mode.kappa, mode.g_op
    if not kappa > 0:
        raise ConfigurationError("kappa must be > 0")
    if Omega_pu == 0:
        return SteadyState(0j, 0.0, 0.0, (0.0,))
    roots = _cubic_roots(g, mech.omega_m, Delta, kappa, Omega_pu)
    if not roots:
        raise NumericalError("steady-state cubic has no non-negative real root")
    omega0 = roots[0]
    n0 = 2.0 * g * omega0 / mech.omega_m
    a0 = Omega_pu / (1j * (Delta - g * n0) + kappa)
    return SteadyState(complex(a0), float(abs(a0) ** 2), float(2.0 * g * abs(a0) ** 2 / mech.omega_m),
                       tuple(roots))


@dataclass(frozen=True)
class ProbeResponse:
    a_plus: complex
    a_minus: complex
    t: complex
    w: complex
    x: complex
    y: complex
    z: complex
    omega_pr: float

    @property
    def transmission_rate(self) -> float:
        return abs(self.t) ** 2


def _sideband(kappa, g, omega_m, gamma_m, ss, Delta, delta, Omega_pr):
    delta = np.asarray(delta, dtype=float)
    w = omega_m**2 - delta**2 - 1j * gamma_m * delta
    z = 2j * omega_m * ss.omega0 * g * g
    y = 1j * Delta - 1j * ss.n0 * g
    x = kappa - 1j * delta
    num = w * (x - y) + z
    den = w * (x * x - y * y) + 2.0 * y * z
    return w, x, y, z, num, den


def probe_amplitude(mode: PlasmonMode, mech: MechanicalMode, ss: SteadyState,
                    Delta: float, delta: float, Omega_pr: float) -> ProbeResponse:
    """Probe sideband amplitude a_+ and transmission at a single detuning."""
    if not Omega_pr > 0:
        raise ConfigurationError("Omega_pr must be > 0")
    w, x, y, z, num, den = _sideband(mode.kappa, mode.g_op, mech.omega_m, mech.gamma_m,
                                     ss, Delta, delta, Omega_pr)
    w, x, y, z, num, den = (complex(v) for v in (w, x, y, z, num, den))
    if den == 0:
        raise ResonanceError(
            f"probe response pole at delta={delta:.6g} (Delta={Delta:.6g}, g={mode.g_op:.6g}, "
            f"kappa={mode.kappa:.6g})"
        )
    a_plus = Omega_pr * num / den
    # conjugate lower sideband, from the same linear system
    a_minus = (-2j * mech.omega_m * mode.g_op**2 * ss.a0.conjugate() ** 2 * a_plus
               / (w * (x - y) + z)).conjugate() if ss.a0 != 0 else 0j
    t = 1.0 - 2.0 * mode.kappa * a_plus / Omega_pr
    return ProbeResponse(a_plus, complex(a_minus), t, w, x, y, z, Omega_pr)


def transmission_function(mode, mech, ss, Delta) -> Callable:
    """Vectorised |t(delta)|^2 for the given steady state (independent of Omega_pr)."""
    def f(delta):
        _, _, _, _, num, den = _sideband(mode.kappa, mode.g_op, mech.omega_m, mech.gamma_m,
                                         ss, Delta, delta, 1.0)
        t = 1.0 - 2.0 * mode.kappa * num / den
        out = np.abs(t) ** 2
        return float(out) if np.ndim(out) == 0 else out
    return f


@dataclass
class ProbeSpectrum:
    """Complex probe transmission over a detuning grid.

    ``response`` evaluates |t|^2 at arbitrary detuning, so peak analysis can
    refine beyond the grid.
    """

    delta: np.ndarray
    t: np.ndarray
    flags: list
    response: Callable
    mode: PlasmonMode | None = None
    steady: SteadyState | None = None
    Delta: float | None = None
    omega_pu_drive: float | None = None
    omega_pr_drive: float | None = None
    meta: dict = field(default_factory=dict)

    @property
    def t_sq(self) -> np.ndarray:
        return np.abs(self.t) ** 2

    @classmethod
    def from_function(cls, delta, func: Callable, **kw) -> "ProbeSpectrum":
        """Wrap an arbitrary real response (e.g. a synthetic line shape)."""
        delta = np.asarray(delta, dtype=float)
        vals = np.asarray(func(delta), dtype=float)
        return cls(delta=delta, t=np.sqrt(vals).astype(complex), flags=[""] * delta.size,
                   response=func, **kw)


def transmission_spectrum(mode: PlasmonMode, mech: MechanicalMode, drive: DriveConfig) -> ProbeSpectrum:
    """Probe transmission across ``drive.delta_grid`` at fixed pump detuning."""
    Omega_pu, Omega_pr = drive.rates(mode)
    Delta = drive.detuning(mech)
    ss = steady_state(mode, mech, Delta, Omega_pu)
    grid = drive.delta_grid
    with np.errstate(divide="ignore", invalid="ignore"):
        _, _, _, _, num, den = _sideband(mode.kappa, mode.g_op, mech.omega_m, mech.gamma_m,
                                         ss, Delta, grid, Omega_pr)
        a_plus = Omega_pr * num / den
        t = 1.0 - 2.0 * mode.kappa * a_plus / Omega_pr
    flags = []
    for i in range(grid.size):
        if den[i] == 0 or not np.isfinite(t[i]):
            flags.append("pole")
            t[i] = np.nan
        else:
            flags.append("")
    if ss.multistable:
        flags = [(f + ";" if f else "") + "multistable" for f in flags]
    # sideband vs mean amplitude; small when the linearisation holds
    ratio = float(np.nanmax(np.abs(a_plus)) / abs(ss.a0)) if ss.a0 != 0 else None
    return ProbeSpectrum(
        delta=grid.copy(),
        t=t,
        flags=flags,
        response=transmission_function(mode, mech, ss, Delta),
        mode=mode,
        steady=ss,
        Delta=Delta,
        omega_pu_drive=Omega_pu,
        omega_pr_drive=Omega_pr,
        meta={"perturbative_ratio": ratio, "pump_frequency": mode.omega_n - Delta},
    )
