"""Spectrum analytics: peak statistics, mass resolution, Casimir estimate and sweeps."""
from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np
from scipy.optimize import brentq, minimize_scalar

from .config import SweepSpec  # noqa: F401  (re-exported)
from .errors import (
    AnisosenseError,
    ConfigurationError,
    PeakNotFoundError,
    PeakTruncationError,
)
from .plasmon import MechanicalMode, plasmon_mode
from .response import ProbeSpectrum, transmission_spectrum
from .units import C0, HBAR

# published reference values for the two headline sensing numbers
PUBLISHED_DELTA_M = 1.2e-24  # kg
PUBLISHED_CASIMIR = 9e-27  # N
DISCREPANCY_RTOL = 0.1

MIN_WINDOW_POINTS = 16
# features smaller than this fraction of the signal level are rounding noise
RESOLUTION_FLOOR = 1e-10


@dataclass(frozen=True)
class PeakStats:
    """Extremum of a spectral feature and its full width at half prominence.

    For ``polarity == "dip"`` the feature is a minimum and ``height`` lies
    below ``baseline``.
    """

    center: float
    height: float
    fwhm: float
    baseline: float
    polarity: str = "peak"
    left: float = math.nan
    right: float = math.nan

    @property
    def prominence(self) -> float:
        return abs(self.height - self.baseline)

    def as_dict(self) -> dict:
        return {
            "center": self.center,
            "height": self.height,
            "fwhm": self.fwhm,
            "baseline": self.baseline,
            "prominence": self.prominence,
            "polarity": self.polarity,
            "left": self.left,
            "right": self.right,
        }


def _edge_median(vals: np.ndarray) -> float:
    k = max(1, int(math.ceil(0.05 * vals.size)))
    edge = np.concatenate([vals[:k], vals[-k:]])
    edge = edge[np.isfinite(edge)]
    if edge.size == 0:
        raise PeakNotFoundError("no finite points at the window edges for the baseline")
    return float(np.median(edge))


def find_peak(spectrum: ProbeSpectrum, window: tuple[float, float], polarity: str = "auto",
              baseline: float | None = None) -> PeakStats:
    """Locate the dominant feature of ``|t|^2`` inside ``window`` and measure it.

    The grid extremum is refined by a parabola through its neighbours and
    then polished on the continuous response. Half-prominence crossings are
    found by root bracketing on ``spectrum.response``, so the width does not
    depend on the grid spacing.

    Parameters
    ----------
    spectrum
        Evaluated spectrum with a callable ``response``.
    window
        ``(lo, hi)`` detuning interval in rad/s, inside the grid.
    polarity
        ``"peak"``, ``"dip"`` or ``"auto"`` (larger excursion from baseline).
    baseline
        Background level; default is the median of the outermost 10% of
        window points.
    """
    lo, hi = map(float, window)
    grid = spectrum.delta
    if not hi > lo:
        raise ConfigurationError("window must satisfy lo < hi")
    if lo < grid[0] or hi > grid[-1]:
        raise ConfigurationError(
            f"window [{lo:.6g}, {hi:.6g}] outside grid [{grid[0]:.6g}, {grid[-1]:.6g}]")
    if polarity not in ("auto", "peak", "dip"):
        raise ConfigurationError(f"unknown polarity {polarity!r}")
    mask = (grid >= lo) & (grid <= hi)
    x = grid[mask]
    if x.size < MIN_WINDOW_POINTS:
        raise ConfigurationError(f"window holds {x.size} grid points, need {MIN_WINDOW_POINTS}")
    v = np.asarray(spectrum.t_sq, dtype=float)[mask]
    b = _edge_median(v) if baseline is None else float(baseline)

    if polarity == "auto":
        up = np.nanmax(v) - b
        down = b - np.nanmin(v)
        polarity = "peak" if up >= down else "dip"
    s = 1.0 if polarity == "peak" else -1.0

    def f(d):
        return s * (spectrum.response(d) - b)

    fv = s * (v - b)
    fv = np.where(np.isfinite(fv), fv, -np.inf)
    i = int(np.argmax(fv))
    if i == 0 or i == x.size - 1 or not (fv[i] >= fv[i - 1] and fv[i] >= fv[i + 1]):
        raise PeakNotFoundError(f"no interior {polarity} in window [{lo:.6g}, {hi:.6g}]")
    if not fv[i] > RESOLUTION_FLOOR * max(abs(b), float(np.nanmax(np.abs(v)))):
        raise PeakNotFoundError(
            f"{polarity} of {fv[i]:.3g} in window [{lo:.6g}, {hi:.6g}] is below the resolution floor")

    # parabola through the three grid points around the maximum
    y0, y1, y2 = fv[i - 1], fv[i], fv[i + 1]
    curv = y0 - 2 * y1 + y2
    h = x[i + 1] - x[i]
    c0 = x[i] + (0.5 * h * (y0 - y2) / curv if curv < 0 else 0.0)
    c0 = min(max(c0, x[i - 1]), x[i + 1])
    res = minimize_scalar(lambda d: -f(d), bounds=(x[i - 1], x[i + 1]), method="bounded",
                          options={"xatol": 1e-10 * max(abs(x[i]), h)})
    center = float(res.x) if -res.fun >= f(c0) else c0
    top = f(center)
    half = 0.5 * top

    def crossing(direction):
        j = i
        while True:
            j += direction
            if j < 0 or j >= x.size:
                raise PeakTruncationError(
                    f"half-maximum crossing on the {'left' if direction < 0 else 'right'} "
                    f"lies outside the window")
            if np.isfinite(fv[j]) and fv[j] < half:
                break
        inner = x[j - direction] if j - direction != i else center
        a, c = sorted((x[j], inner))
        return brentq(lambda d: f(d) - half, a, c, xtol=1e-14 * max(abs(a), 1.0), rtol=1e-15)

    left = crossing(-1)
    right = crossing(+1)
    return PeakStats(
        center=center,
        height=b + s * top,
        fwhm=float(right - left),
        baseline=b,
        polarity=polarity,
        left=float(left),
        right=float(right),
    )


def mass_resolution(mech: MechanicalMode, fwhm: float) -> float:
    """Smallest resolvable adsorbed mass, ``2 m fwhm / omega_m`` (kg)."""
    if fwhm < 0:
        raise ConfigurationError("fwhm must be >= 0")
    return 2.0 * mech.mass * fwhm / mech.omega_m


def casimir_force(R: float, h: float) -> float:
    """Sphere-plate Casimir force ``-pi^3 hbar c R / (360 h^3)`` in newtons (attractive)."""
    if not (R > 0 and h > 0):
        raise ConfigurationError("R and h must be > 0")
    return -(math.pi**3) * HBAR * C0 * R / (360.0 * h**3)


def compare_reference(value: float, reference: float, rtol: float = DISCREPANCY_RTOL) -> dict:
    """Computed value next to a published one, flagged when they differ by more than rtol."""
    value = float(value)
    ratio = abs(value) / abs(reference)
    return {
        "value": value,
        "paper_value": reference,
        "ratio": ratio,
        "paper_discrepancy": bool(abs(ratio - 1.0) > rtol),
    }


def lorentzian_spectrum(delta, center: float, width: float) -> ProbeSpectrum:
    """Unit-height Lorentzian of full width ``width`` wrapped as a spectrum."""
    if not width > 0:
        raise ConfigurationError("width must be > 0")

    def resp(d):
        d = np.asarray(d, dtype=float)
        out = 1.0 / (1.0 + ((d - center) / (0.5 * width)) ** 2)
        return float(out) if out.ndim == 0 else out

    return ProbeSpectrum.from_function(delta, resp, meta={"synthetic": "lorentzian"})


# --- sweeps -----------------------------------------------------------------

SWEEP_COLUMNS = (
    "axis", "value", "n", "omega_n", "gamma_total", "g_op", "pump_detuning",
    "peak_center", "peak_height", "peak_baseline", "peak_prominence", "fwhm",
    "polarity", "delta_m", "perturbative_ratio", "flags", "error",
)


def analyse_run(cfg, n: int | None = None):
    """Mode, spectrum and peak statistics for one configuration and mode order.

    Returns ``(mode, spectrum, stats)``. Peak-finding failures propagate.
    """
    n = cfg.mode if n is None else n
    mode = plasmon_mode(cfg.material, cfg.geometry, cfg.mech, n)
    drive = cfg.drive_config()
    spec = transmission_spectrum(mode, cfg.mech, drive)
    c = cfg.drive.grid_center
    w = cfg.sense.window_half_width
    stats = find_peak(spec, (max(c - w, spec.delta[0]), min(c + w, spec.delta[-1])),
                      polarity=cfg.sense.polarity)
    return mode, spec, stats


def _sweep_point(cfg, axis, value, n):
    row = dict.fromkeys(SWEEP_COLUMNS, None)
    row.update(axis=axis, value=float(value), n=int(n), flags="", error="")
    try:
        mode, spec, stats = analyse_run(cfg, n)
        row.update(omega_n=mode.omega_n, gamma_total=mode.gamma_total, g_op=mode.g_op,
                   pump_detuning=spec.Delta)
        row.update(
            peak_center=stats.center,
            peak_height=stats.height,
            peak_baseline=stats.baseline,
            peak_prominence=stats.prominence,
            fwhm=stats.fwhm,
            polarity=stats.polarity,
            delta_m=mass_resolution(cfg.mech, stats.fwhm),
            perturbative_ratio=spec.meta.get("perturbative_ratio"),
            flags=";".join(sorted({f for fl in spec.flags for f in fl.split(";") if f})),
        )
    except (AnisosenseError, ValueError, ArithmeticError) as exc:
        row["error"] = f"{type(exc).__name__}: {exc}"
    return row


def run_sweep(spec, base, workers: int = 1) -> list[dict]:
    """One row per (axis value, mode); failures are recorded in the ``error`` column.

    Rows come back ordered by axis index then mode, whatever ``workers`` is.
    """
    modes = spec.modes or ((base.mode,) if spec.axis != "n" else (None,))
    jobs = []
    for value in spec.values:
        try:
            cfg = base.with_axis_value(spec.axis, value)
        except AnisosenseError as exc:
            for n in modes:
                row = dict.fromkeys(SWEEP_COLUMNS, None)
                row.update(axis=spec.axis, value=float(value),
                           n=int(value) if n is None else int(n), flags="",
                           error=f"{type(exc).__name__}: {exc}")
                jobs.append(row)
            continue
        for n in modes:
            jobs.append((cfg, spec.axis, value, cfg.mode if n is None else n))

    def work(job):
        return job if isinstance(job, dict) else _sweep_point(*job)

    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            return list(pool.map(work, jobs))
    return [work(j) for j in jobs]
