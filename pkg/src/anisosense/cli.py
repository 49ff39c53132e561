"""Command-line front end: ``anisosense {modes,spectrum,transmission,sense,sweep}``.

Exit codes: 0 success, 2 configuration/validation error, 3 numerical failure.
"""
from __future__ import annotations

import argparse
import sys
import warnings
from dataclasses import replace
from pathlib import Path

import numpy as np

from .config import RunConfig, load_config
from .errors import ConfigurationError, NumericalError
from .outputs import write_csv, write_json
from .plasmon import coupling_spectrum, mode_catalog, plasmon_mode
from .response import transmission_spectrum
from .sensing import (
    PUBLISHED_CASIMIR,
    PUBLISHED_DELTA_M,
    SWEEP_COLUMNS,
    analyse_run,
    casimir_force,
    compare_reference,
    find_peak,
    lorentzian_spectrum,
    mass_resolution,
    run_sweep,
)

EXIT_OK, EXIT_VALIDATION, EXIT_NUMERICAL = 0, 2, 3

MODE_COLUMNS = ["n", "nu", "omega_p_eff", "eps_inf_eff", "omega_n", "omega_n_over_wp",
                "gamma_ohmic", "gamma_rad", "gamma_total", "kappa", "V_n", "g_op"]
TRANSMISSION_COLUMNS = ["delta_rad_s", "re_t", "im_t", "t_sq", "flags"]

T_CONVENTION = "transmission rate = |t|^2 with t = 1 - 2 kappa a_+ / Omega_pr; re_t, im_t also given"
DELTA_CONVENTION = "delta = omega_pr - omega_pu; delta_fig = omega_n - omega_pr = Delta - delta"


# --- table builders (pure; reused by scripts and tests) ---------------------

def modes_table(cfg: RunConfig) -> list[dict]:
    wp = cfg.material.radial.omega_p
    rows = []
    for m in mode_catalog(cfg.material, cfg.geometry, cfg.mech, cfg.n_max):
        row = m.as_row()
        row["omega_n_over_wp"] = m.omega_n / wp
        rows.append(row)
    return rows


def spectrum_table(cfg: RunConfig) -> tuple[list[str], list[dict]]:
    wp = cfg.material.radial.omega_p
    s = cfg.spectrum
    ratio = np.linspace(s.omega_min_over_wp, s.omega_max_over_wp, s.num)
    omega = ratio * wp
    cols = {f"K_{n}": coupling_spectrum(cfg.material, cfg.geometry, cfg.mech, n, omega)
            for n in range(1, cfg.n_max + 1)}
    columns = ["omega_rad_s", "omega_over_wp", *cols]
    rows = [
        {"omega_rad_s": omega[i], "omega_over_wp": ratio[i], **{k: v[i] for k, v in cols.items()}}
        for i in range(omega.size)
    ]
    return columns, rows


def transmission_run(cfg: RunConfig, figure_axes: bool = False):
    """Returns (columns, rows, meta, spectrum) for the configured mode."""
    mode = plasmon_mode(cfg.material, cfg.geometry, cfg.mech, cfg.mode)
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always")
        spec = transmission_spectrum(mode, cfg.mech, cfg.drive_config())
    columns = list(TRANSMISSION_COLUMNS) + (["delta_fig_rad_s"] if figure_axes else [])
    rows = []
    for i, d in enumerate(spec.delta):
        t = spec.t[i]
        row = {"delta_rad_s": d, "re_t": t.real, "im_t": t.imag, "t_sq": abs(t) ** 2,
               "flags": spec.flags[i]}
        if figure_axes:
            row["delta_fig_rad_s"] = spec.Delta - d
        rows.append(row)
    ss = spec.steady
    meta = {
        "name": cfg.name,
        "mode": mode.as_row(),
        "pump_detuning": spec.Delta,
        "pump_detuning_source": "default_omega_m" if cfg.drive.pump_detuning is None else "configured",
        "enhancement": cfg.drive.enhancement,
        "transmission_convention": T_CONVENTION,
        "delta_convention": DELTA_CONVENTION,
        "figure_axes": figure_axes,
        "omega_pu_drive": spec.omega_pu_drive,
        "omega_pr_drive": spec.omega_pr_drive,
        "pump_frequency": spec.meta["pump_frequency"],
        "perturbative_ratio": spec.meta["perturbative_ratio"],
        "steady_state": {"a0": ss.a0, "photon_number": ss.omega0, "n0": ss.n0,
                         "roots": list(ss.roots), "multistable": ss.multistable},
        "grid_points": int(spec.delta.size),
        "pole_points": sum("pole" in f for f in spec.flags),
        "warnings": sorted({f"{w.category.__name__}: {w.message}" for w in caught}),
        "config": cfg.document,
    }
    return columns, rows, meta, spec


def sense_summary(cfg: RunConfig) -> dict:
    se = cfg.sense
    out = {"name": cfg.name, "mode": cfg.mode}
    peak_error = None
    stats = None
    if se.synthetic_width is not None:
        out["source"] = "synthetic_lorentzian"
        d = cfg.drive
        grid = np.linspace(d.grid_center - d.grid_half_width, d.grid_center + d.grid_half_width,
                           d.grid_num)
        spec = lorentzian_spectrum(grid, se.synthetic_center, se.synthetic_width)
        w = se.window_half_width
        c = se.synthetic_center
        # the synthetic line shape has an exact zero background
        try:
            stats = find_peak(spec, (max(c - w, grid[0]), min(c + w, grid[-1])),
                              polarity="peak", baseline=0.0)
        except NumericalError as exc:
            peak_error = exc
    else:
        out["source"] = "transmission"
        try:
            _, _, stats = analyse_run(cfg)
        except NumericalError as exc:
            peak_error = exc
    if peak_error is not None and se.fwhm_override is None:
        raise peak_error
    out["peak"] = stats.as_dict() if stats is not None else None
    if peak_error is not None:
        out["peak_error"] = f"{type(peak_error).__name__}: {peak_error}"
    if se.fwhm_override is not None:
        fwhm, src = se.fwhm_override, "override"
    else:
        fwhm, src = stats.fwhm, "measured"
    out["fwhm_used"] = fwhm
    out["fwhm_source"] = src
    dm = mass_resolution(cfg.mech, fwhm)
    out["mass_resolution"] = {**compare_reference(dm, PUBLISHED_DELTA_M), "units": "kg"}
    R, h = cfg.geometry.R, se.casimir_gap
    out["casimir"] = {**compare_reference(casimir_force(R, h), PUBLISHED_CASIMIR),
                      "units": "N", "R": R, "h": h}
    out["conventions"] = {
        "delta_m": "2 m fwhm / omega_m",
        "baseline": "0 (synthetic)" if out["source"] == "synthetic_lorentzian"
        else "median of outermost 10% of window points",
        "discrepancy_rtol": 0.1,
        "transmission": T_CONVENTION,
    }
    out["config"] = cfg.document
    return out


def sweep_rows(cfg: RunConfig, workers: int = 1) -> list[dict]:
    if cfg.sweep is None:
        raise ConfigurationError("config has no sweep section")
    return run_sweep(cfg.sweep, cfg, workers=workers)


# --- commands ----------------------------------------------------------------

def cmd_modes(cfg, out: Path, args) -> list[Path]:
    return [write_csv(out / "modes.csv", MODE_COLUMNS, modes_table(cfg), "modes")]


def cmd_spectrum(cfg, out: Path, args) -> list[Path]:
    columns, rows = spectrum_table(cfg)
    return [write_csv(out / "spectrum.csv", columns, rows, "spectrum")]


def cmd_transmission(cfg, out: Path, args) -> list[Path]:
    columns, rows, meta, _ = transmission_run(cfg, figure_axes=args.figure_axes)
    return [
        write_csv(out / "transmission.csv", columns, rows, "transmission"),
        write_json(out / "transmission.meta.json", meta, "transmission_meta"),
    ]


def cmd_sense(cfg, out: Path, args) -> list[Path]:
    return [write_json(out / "sense.json", sense_summary(cfg), "sense")]


def cmd_sweep(cfg, out: Path, args) -> list[Path]:
    rows = sweep_rows(cfg, workers=args.workers)
    summary = {"name": cfg.name, "axis": cfg.sweep.axis, "values": list(cfg.sweep.values),
               "rows": rows, "config": cfg.document}
    return [
        write_csv(out / "sweep.csv", list(SWEEP_COLUMNS), rows, "sweep"),
        write_json(out / "sweep.json", summary, "sweep_summary"),
    ]


COMMANDS = {
    "modes": cmd_modes,
    "spectrum": cmd_spectrum,
    "transmission": cmd_transmission,
    "sense": cmd_sense,
    "sweep": cmd_sweep,
}


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="anisosense", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)
    for name, fn in COMMANDS.items():
        sp = sub.add_parser(name)
        sp.add_argument("--config", type=Path, help="YAML run configuration")
        sp.add_argument("--preset", help="named preset used as the base configuration")
        sp.add_argument("--out", type=Path, default=Path("."), help="output directory")
        sp.add_argument("--mode", type=int, help="LSP mode order n for single-mode commands")
        sp.add_argument("--figure-axes", action="store_true",
                        help="also export delta_fig = omega_n - omega_pr")
        sp.add_argument("--workers", type=int, default=1, help="threads for sweep points")
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        cfg = load_config(args.config, preset=args.preset)
        if args.mode is not None:
            if args.mode < 1:
                raise ConfigurationError("--mode must be >= 1")
            cfg = replace(cfg, mode=args.mode, n_max=max(cfg.n_max, args.mode))
        with warnings.catch_warnings():
            warnings.simplefilter("default")
            paths = COMMANDS[args.command](cfg, args.out, args)
    except ConfigurationError as exc:
        print(f"validation error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    except (NumericalError, ArithmeticError) as exc:
        print(f"numerical error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL
    for path in paths:
        print(path)
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
